//! Z/2 simplicial homology of nerve complexes, a raster oracle for unions
//! of regions, and Betti-number agreement between the two.
//!
//! Equal `(b0, b1)` is a necessary condition for equal homotopy type; it is
//! all that is checked here.

mod raster;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{intersection_area, ClosedRegion};
use crate::{Scalar, Tolerance};

pub use raster::{betti_of_union, MIN_RESOLUTION};

/// Abstract simplicial complex of a family of regions, capped at dimension 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveComplex {
    pub vertices: usize,
    /// Sorted pairs `i < j`, lexicographic.
    pub edges: Vec<[usize; 2]>,
    /// Sorted triples `i < j < k`, lexicographic.
    pub triangles: Vec<[usize; 3]>,
}

impl NerveComplex {
    /// Normalizes vertex order within each simplex and the simplex order.
    pub fn new(vertices: usize, mut edges: Vec<[usize; 2]>, mut triangles: Vec<[usize; 3]>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
        }
        for t in &mut triangles {
            t.sort_unstable();
        }
        edges.sort_unstable();
        edges.dedup();
        triangles.sort_unstable();
        triangles.dedup();
        NerveComplex {
            vertices,
            edges,
            triangles,
        }
    }

    /// Every face of every simplex is present.
    pub fn is_downward_closed(&self) -> bool {
        self.edges.iter().all(|&[a, b]| a < b && b < self.vertices)
            && self.triangles.iter().all(|&[a, b, c]| {
                a < b
                    && b < c
                    && [[a, b], [a, c], [b, c]]
                        .iter()
                        .all(|e| self.edges.binary_search(e).is_ok())
            })
    }
}

/// Vertex per region, edge per pair with common area above `ε_area`,
/// triangle per triple with common area above `ε_area`.
pub fn build_nerve_complex<T: Scalar>(family: &[ClosedRegion<T>], tol: &Tolerance<T>) -> NerveComplex {
    let n = family.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if intersection_area(&[&family[i], &family[j]], tol) > tol.area {
                edges.push([i, j]);
            }
        }
    }
    let mut triangles = Vec::new();
    for (k, &[i, j]) in edges.iter().enumerate() {
        for &[i2, l] in &edges[k + 1..] {
            if i2 == i
                && edges.binary_search(&[j, l]).is_ok()
                && intersection_area(&[&family[i], &family[j], &family[l]], tol) > tol.area
            {
                triangles.push([i, j, l]);
            }
        }
    }
    NerveComplex::new(n, edges, triangles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiPair {
    pub b0: usize,
    pub b1: usize,
}

/// Rank over Z/2 of columns given as sets of row indices.
fn rank_z2(columns: impl Iterator<Item = Vec<usize>>, rows: usize) -> usize {
    let words = rows.div_ceil(64).max(1);
    // basis[pivot] holds a reduced column whose highest set bit is `pivot`
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v = vec![0u64; words];
        for r in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        while let Some(top) = (0..words).rev().find(|&w| v[w] != 0) {
            let pivot = top * 64 + 63 - v[top].leading_zeros() as usize;
            match &basis[pivot] {
                Some(b) => v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis[pivot] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `b0 = |V| − rank ∂1`, `b1 = |E| − rank ∂1 − rank ∂2` over Z/2.
pub fn betti(nc: &NerveComplex) -> Result<BettiPair> {
    if !nc.is_downward_closed() {
        return Err(Error::Malformed("nerve complex is not downward closed".to_string()));
    }
    let r1 = rank_z2(nc.edges.iter().map(|e| e.to_vec()), nc.vertices);
    let edge_index = |e: [usize; 2]| nc.edges.binary_search(&e).expect("downward closed");
    let r2 = rank_z2(
        nc.triangles
            .iter()
            .map(|&[a, b, c]| vec![edge_index([a, b]), edge_index([a, c]), edge_index([b, c])]),
        nc.edges.len(),
    );
    Ok(BettiPair {
        b0: nc.vertices - r1,
        b1: nc.edges.len() - r1 - r2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub regions: usize,
    pub resolution: usize,
    pub nerve: BettiPair,
    pub union: BettiPair,
    pub passed: bool,
    pub note: &'static str,
}

pub const BETTI_NOTE: &str = "agreement of (b0, b1) is necessary for, not a certificate of, equal homotopy type";

/// Compares the Betti numbers of the nerve with those of the rasterized
/// union. Every region must be convex and hole-free.
pub fn verify_nerve_theorem<T: Scalar>(
    family: &[ClosedRegion<T>],
    resolution: usize,
    tol: &Tolerance<T>,
) -> Result<TheoremReport> {
    for (k, r) in family.iter().enumerate() {
        if !r.holes.is_empty() || !r.outer.is_convex(tol.geo) {
            return Err(Error::NotConvex(k));
        }
    }
    let union = betti_of_union(family, resolution)?;
    let nerve = betti(&build_nerve_complex(family, tol))?;
    Ok(TheoremReport {
        regions: family.len(),
        resolution,
        nerve,
        union,
        passed: nerve == union,
        note: BETTI_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(b0: usize, b1: usize) -> BettiPair {
        BettiPair { b0, b1 }
    }

    #[test]
    fn small_complexes() {
        assert_eq!(betti(&NerveComplex::new(1, vec![], vec![])).unwrap(), bp(1, 0));
        let hollow = NerveComplex::new(3, vec![[0, 1], [1, 2], [0, 2]], vec![]);
        assert_eq!(betti(&hollow).unwrap(), bp(1, 1));
        let filled = NerveComplex::new(3, vec![[0, 1], [1, 2], [0, 2]], vec![[0, 1, 2]]);
        assert_eq!(betti(&filled).unwrap(), bp(1, 0));
        assert_eq!(betti(&NerveComplex::new(0, vec![], vec![])).unwrap(), bp(0, 0));
    }

    #[test]
    fn missing_face_is_malformed() {
        let bad = NerveComplex::new(3, vec![[0, 1], [1, 2]], vec![[0, 1, 2]]);
        assert_eq!(betti(&bad).unwrap_err().code(), "MALFORMED");
    }

    #[test]
    fn rank_spans_words() {
        // a path on 130 vertices crosses two bitset words
        let edges = (0..129).map(|i| [i, i + 1]).collect();
        assert_eq!(betti(&NerveComplex::new(130, edges, vec![])).unwrap(), bp(1, 0));
        let mut cyc: Vec<[usize; 2]> = (0..129).map(|i| [i, i + 1]).collect();
        cyc.push([0, 129]);
        assert_eq!(betti(&NerveComplex::new(130, cyc, vec![])).unwrap(), bp(1, 1));
    }
}
