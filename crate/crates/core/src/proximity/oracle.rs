//! Independent brute-force oracles used by the axiom fuzzer. Nothing here
//! reuses the predicates or the boolean engine of the geometry module.

use crate::complex::CellGeometry;
use crate::geometry::Shape;
use crate::Scalar;

type P = (f64, f64);

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: P, b: P) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn point_segment(p: P, a: P, b: P) -> f64 {
    let d = sub(b, a);
    let len2 = d.0 * d.0 + d.1 * d.1;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / len2).clamp(0.0, 1.0)
    };
    let q = (a.0 + t * d.0, a.1 + t * d.1);
    ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
}

/// Crossing point of two segments when their interiors cross transversally.
fn crossing(a: P, b: P, c: P, d: P) -> Option<P> {
    let r = sub(b, a);
    let s = sub(d, c);
    let den = cross(r, s);
    if den == 0.0 {
        return None;
    }
    let t = cross(sub(c, a), s) / den;
    let u = cross(sub(c, a), r) / den;
    (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0).then_some((a.0 + t * r.0, a.1 + t * r.1))
}

fn segment_segment(a: P, b: P, c: P, d: P) -> f64 {
    if crossing(a, b, c, d).is_some() {
        return 0.0;
    }
    point_segment(a, c, d)
        .min(point_segment(b, c, d))
        .min(point_segment(c, a, b))
        .min(point_segment(d, a, b))
}

fn segs<T: Scalar>(g: &CellGeometry<T>) -> Vec<(P, P)> {
    g.segments
        .iter()
        .map(|s| ((s.a.x.as_f64(), s.a.y.as_f64()), (s.b.x.as_f64(), s.b.y.as_f64())))
        .collect()
}

fn verts<T: Scalar>(g: &CellGeometry<T>) -> Vec<P> {
    g.vertices.iter().map(|(_, p)| (p.x.as_f64(), p.y.as_f64())).collect()
}

/// Smallest distance between the point-sets of two cells.
pub fn point_set_distance<T: Scalar>(a: &CellGeometry<T>, b: &CellGeometry<T>) -> f64 {
    let (sa, sb) = (segs(a), segs(b));
    let (va, vb) = (verts(a), verts(b));
    let mut best = f64::INFINITY;
    for &(p, q) in &sa {
        for &(r, s) in &sb {
            best = best.min(segment_segment(p, q, r, s));
        }
        for &v in &vb {
            best = best.min(point_segment(v, p, q));
        }
    }
    for &v in &va {
        for &(r, s) in &sb {
            best = best.min(point_segment(v, r, s));
        }
        for &w in &vb {
            best = best.min(((v.0 - w.0).powi(2) + (v.1 - w.1).powi(2)).sqrt());
        }
    }
    best
}

struct Loops {
    /// Per region: outer loop then hole loops.
    regions: Vec<Vec<Vec<P>>>,
}

impl Loops {
    fn of<T: Scalar>(s: &Shape<T>) -> Self {
        Loops {
            regions: s
                .parts
                .iter()
                .map(|r| {
                    r.loops()
                        .map(|l| l.points().iter().map(|p| (p.x.as_f64(), p.y.as_f64())).collect())
                        .collect()
                })
                .collect(),
        }
    }

    fn contains(&self, p: P) -> bool {
        self.regions
            .iter()
            .any(|r| ray_inside(&r[0], p) && !r[1..].iter().any(|h| ray_inside(h, p)))
    }

    fn edges(&self) -> impl Iterator<Item = (P, P)> + '_ {
        self.regions.iter().flatten().flat_map(|l| {
            let n = l.len();
            (0..n).map(move |k| (l[k], l[(k + 1) % n]))
        })
    }

    fn vertices(&self) -> impl Iterator<Item = P> + '_ {
        self.regions.iter().flatten().flatten().copied()
    }
}

fn ray_inside(l: &[P], p: P) -> bool {
    let mut inside = false;
    let n = l.len();
    for k in 0..n {
        let (a, b) = (l[k], l[(k + 1) % n]);
        if (a.1 <= p.1 && b.1 > p.1) || (b.1 <= p.1 && a.1 > p.1) {
            let x = a.0 + (p.1 - a.1) / (b.1 - a.1) * (b.0 - a.0);
            if x > p.0 {
                inside = !inside;
            }
        }
    }
    inside
}

/// Exact area of the common interior of two shapes by vertical slab
/// decomposition: between consecutive event abscissae no edges cross, so
/// the covered length is linear in `x` and the midpoint rule is exact.
pub fn overlap_area<T: Scalar>(a: &Shape<T>, b: &Shape<T>) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let (la, lb) = (Loops::of(a), Loops::of(b));
    let edges: Vec<(P, P)> = la.edges().chain(lb.edges()).collect();
    let mut xs: Vec<f64> = la.vertices().chain(lb.vertices()).map(|p| p.0).collect();
    for (i, &(p, q)) in edges.iter().enumerate() {
        for &(r, s) in &edges[i + 1..] {
            if let Some(x) = crossing(p, q, r, s) {
                xs.push(x.0);
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut area = 0.0;
    let mut ys = Vec::new();
    for w in xs.windows(2) {
        let width = w[1] - w[0];
        if width <= 0.0 {
            continue;
        }
        let xm = 0.5 * (w[0] + w[1]);
        ys.clear();
        for &(p, q) in &edges {
            if (p.0 < xm) != (q.0 < xm) {
                ys.push(p.1 + (xm - p.0) / (q.0 - p.0) * (q.1 - p.1));
            }
        }
        ys.sort_by(f64::total_cmp);
        for v in ys.windows(2) {
            let h = v[1] - v[0];
            if h <= 0.0 {
                continue;
            }
            let m = (xm, 0.5 * (v[0] + v[1]));
            if la.contains(m) && lb.contains(m) {
                area += h * width;
            }
        }
    }
    area
}

/// Whether two closed filled shapes share a point.
pub fn filled_meet<T: Scalar>(a: &Shape<T>, b: &Shape<T>, eps: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let (la, lb) = (Loops::of(a), Loops::of(b));
    for (p, q) in la.edges() {
        for (r, s) in lb.edges() {
            if segment_segment(p, q, r, s) <= eps {
                return true;
            }
        }
    }
    la.vertices().any(|v| lb.contains(v)) || lb.vertices().any(|v| la.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ClosedRegion, Polygon};

    fn sq(x: f64, y: f64, s: f64) -> Shape<f64> {
        Shape::new(vec![ClosedRegion::solid(Polygon::from_xy(&[
            (x, y),
            (x + s, y),
            (x + s, y + s),
            (x, y + s),
        ]))])
    }

    #[test]
    fn slab_area_matches_hand_values() {
        assert!((overlap_area(&sq(0.0, 0.0, 1.0), &sq(0.5, 0.5, 1.0)) - 0.25).abs() < 1e-12);
        assert_eq!(overlap_area(&sq(0.0, 0.0, 1.0), &sq(1.0, 0.0, 1.0)), 0.0);
        let holed = Shape::new(vec![ClosedRegion::new(
            Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]),
            vec![Polygon::from_xy(&[(1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0)])],
        )]);
        assert!((overlap_area(&holed, &sq(0.0, 0.0, 4.0)) - 12.0).abs() < 1e-12);
        assert!(!filled_meet(&sq(1.5, 1.5, 1.0), &holed, 1e-9));
        assert!(filled_meet(&sq(0.5, 0.5, 1.0), &holed, 1e-9));
    }
}
