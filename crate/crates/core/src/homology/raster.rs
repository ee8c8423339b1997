//! Scanline rasterization of a union of regions and Betti numbers of the
//! resulting binary grid (4-connected foreground, 8-connected background).

use std::collections::VecDeque;

use super::BettiPair;
use crate::error::{Error, Result};
use crate::geometry::ClosedRegion;
use crate::Scalar;

pub const MIN_RESOLUTION: usize = 64;

/// Features narrower than this many cells are refused.
const MIN_FEATURE_CELLS: f64 = 3.0;

struct Grid {
    w: usize,
    h: usize,
    cells: Vec<bool>,
}

impl Grid {
    /// Number of connected components of cells equal to `value`.
    fn components(&self, value: bool, diagonal: bool) -> usize {
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::new();
        let mut count = 0;
        let steps: &[(isize, isize)] = if diagonal {
            &[(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)]
        } else {
            &[(0, -1), (-1, 0), (1, 0), (0, 1)]
        };
        for start in 0..self.cells.len() {
            if seen[start] || self.cells[start] != value {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(k) = queue.pop_front() {
                let (x, y) = ((k % self.w) as isize, (k / self.w) as isize);
                for &(dx, dy) in steps {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= self.w as isize || ny >= self.h as isize {
                        continue;
                    }
                    let j = ny as usize * self.w + nx as usize;
                    if !seen[j] && self.cells[j] == value {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        count
    }
}

type Loop = Vec<(f64, f64)>;

fn loops_of<T: Scalar>(r: &ClosedRegion<T>) -> Vec<Loop> {
    r.loops()
        .map(|l| l.points().iter().map(|p| (p.x.as_f64(), p.y.as_f64())).collect())
        .collect()
}

fn diameter(l: &Loop) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in l.iter().enumerate() {
        for b in &l[i + 1..] {
            d = d.max((a.0 - b.0).hypot(a.1 - b.1));
        }
    }
    d
}

/// Betti numbers of the union of `family` rasterized with `resolution`
/// cells along the longer side of its bounding box. `b0` counts filled
/// components, `b1` bounded empty components.
pub fn betti_of_union<T: Scalar>(family: &[ClosedRegion<T>], resolution: usize) -> Result<BettiPair> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::ResolutionTooLow(format!(
            "resolution {resolution} is below {MIN_RESOLUTION}"
        )));
    }
    if family.is_empty() {
        return Ok(BettiPair { b0: 0, b1: 0 });
    }
    let regions: Vec<Vec<Loop>> = family.iter().map(loops_of).collect();
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in regions.iter().flat_map(|r| &r[0]) {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    let side = (hi.0 - lo.0).max(hi.1 - lo.1);
    if side.is_nan() || side <= 0.0 {
        return Err(Error::ResolutionTooLow("family has no extent".to_string()));
    }
    let cell = side / resolution as f64;
    let floor = MIN_FEATURE_CELLS * cell;
    for (k, r) in regions.iter().enumerate() {
        for (li, l) in r.iter().enumerate() {
            let n = l.len();
            for i in 0..n {
                let (a, b) = (l[i], l[(i + 1) % n]);
                if (a.0 - b.0).hypot(a.1 - b.1) < floor {
                    return Err(Error::ResolutionTooLow(format!(
                        "region {k}: an edge spans fewer than 3 cells"
                    )));
                }
            }
            if li > 0 && diameter(l) < floor {
                return Err(Error::ResolutionTooLow(format!(
                    "region {k}: a hole spans fewer than 3 cells"
                )));
            }
        }
    }
    // one empty border cell on every side keeps the outside connected
    let w = ((hi.0 - lo.0) / cell).ceil().max(1.0) as usize + 2;
    let h = ((hi.1 - lo.1) / cell).ceil().max(1.0) as usize + 2;
    let mut grid = Grid {
        w,
        h,
        cells: vec![false; w * h],
    };
    let mut xs = Vec::new();
    for row in 1..h - 1 {
        let y = lo.1 + (row as f64 - 0.5) * cell;
        for r in &regions {
            xs.clear();
            for l in r {
                let n = l.len();
                for i in 0..n {
                    let (a, b) = (l[i], l[(i + 1) % n]);
                    if (a.1 <= y) != (b.1 <= y) {
                        xs.push(a.0 + (y - a.1) / (b.1 - a.1) * (b.0 - a.0));
                    }
                }
            }
            xs.sort_by(f64::total_cmp);
            for pair in xs.chunks_exact(2) {
                // columns whose centre lies in [pair[0], pair[1]]
                let first = ((pair[0] - lo.0) / cell + 0.5).ceil().max(1.0) as usize;
                let last = ((pair[1] - lo.0) / cell + 0.5).floor().min((w - 2) as f64);
                if last < 1.0 {
                    continue;
                }
                for col in first..=last as usize {
                    grid.cells[row * w + col] = true;
                }
            }
        }
    }
    let b0 = grid.components(true, false);
    let b1 = grid.components(false, true) - 1;
    Ok(BettiPair { b0, b1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polygon;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> ClosedRegion<f64> {
        ClosedRegion::solid(Polygon::from_xy(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)]))
    }

    #[test]
    fn counts_components_and_holes() {
        assert_eq!(
            betti_of_union(&[rect(0.0, 0.0, 1.0, 1.0)], 64).unwrap(),
            BettiPair { b0: 1, b1: 0 }
        );
        let two = [rect(0.0, 0.0, 1.0, 1.0), rect(2.0, 0.0, 3.0, 1.0)];
        assert_eq!(betti_of_union(&two, 128).unwrap(), BettiPair { b0: 2, b1: 0 });
        let frame = [
            rect(0.0, 0.0, 4.0, 1.0),
            rect(0.0, 3.0, 4.0, 4.0),
            rect(0.0, 0.0, 1.0, 4.0),
            rect(3.0, 0.0, 4.0, 4.0),
        ];
        assert_eq!(betti_of_union(&frame, 64).unwrap(), BettiPair { b0: 1, b1: 1 });
        let holed: ClosedRegion<f64> = ClosedRegion::new(
            Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]),
            vec![Polygon::from_xy(&[(1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0)])],
        );
        assert_eq!(betti_of_union(&[holed], 64).unwrap(), BettiPair { b0: 1, b1: 1 });
    }

    #[test]
    fn refuses_coarse_grids() {
        let r = [rect(0.0, 0.0, 1.0, 1.0)];
        assert_eq!(betti_of_union(&r, 63).unwrap_err().code(), "RESOLUTION_TOO_LOW");
        let thin = [rect(0.0, 0.0, 10.0, 0.01)];
        assert_eq!(betti_of_union(&thin, 512).unwrap_err().code(), "RESOLUTION_TOO_LOW");
    }
}
