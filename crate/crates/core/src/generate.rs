//! Seeded generators: random valid complexes on a half-unit lattice and
//! random convex families that are resolvable on a raster.
//!
//! Complex vertices are pooled by lattice position, so skeletons built
//! near each other share vertex ids and meet exactly.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{
    build_vortex_cycle, detect_nerve, validate_skeleton, CellComplex, ComplexParts, Payload, Skeleton,
};
use crate::geometry::predicates::{point_segment_distance, proper_crossing};
use crate::geometry::{clip_convex, polygon_gap, ClosedRegion, Point, Polygon};

/// Lattice spacing and extent: coordinates are `0.5 * k`, `k ∈ 0..=LATTICE`.
const STEP: f64 = 0.5;
const LATTICE: i32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexOptions {
    pub min_skeletons: usize,
    pub max_skeletons: usize,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            min_skeletons: 6,
            max_skeletons: 25,
        }
    }
}

struct Builder {
    rng: ChaCha8Rng,
    parts: ComplexParts<f64>,
    pool: HashMap<(i32, i32), String>,
    next: usize,
}

#[derive(Clone, Copy)]
enum Kind {
    Vertex,
    Segment,
    Triangle,
    Punctured,
    Path,
    Cycle,
    Vortex,
}

impl Builder {
    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }

    fn lattice_point(&mut self) -> (i32, i32) {
        (self.rng.gen_range(0..=LATTICE), self.rng.gen_range(0..=LATTICE))
    }

    fn near(&mut self, p: (i32, i32), reach: i32) -> (i32, i32) {
        let dx = self.rng.gen_range(-reach..=reach);
        let dy = self.rng.gen_range(-reach..=reach);
        ((p.0 + dx).clamp(0, LATTICE), (p.1 + dy).clamp(0, LATTICE))
    }

    /// Pooled vertex id at a lattice point.
    fn vertex(&mut self, p: (i32, i32)) -> String {
        if let Some(id) = self.pool.get(&p) {
            return id.clone();
        }
        let id = format!("v{}", self.pool.len());
        self.parts.vertex(&id, p.0 as f64 * STEP, p.1 as f64 * STEP);
        self.pool.insert(p, id.clone());
        id
    }

    fn some_vertex(&mut self) -> (i32, i32) {
        if !self.pool.is_empty() && self.rng.gen_bool(0.5) {
            let mut keys: Vec<_> = self.pool.keys().copied().collect();
            keys.sort_unstable();
            keys[self.rng.gen_range(0..keys.len())]
        } else {
            self.lattice_point()
        }
    }

    /// Star-shaped lattice polygon around `c`, counter-clockwise.
    fn star(&mut self, c: (i32, i32), radius: i32) -> Vec<(i32, i32)> {
        let k = self.rng.gen_range(3..=6);
        let base = self.rng.gen_range(0.0..TAU);
        let mut out: Vec<(i32, i32)> = Vec::new();
        for m in 0..k {
            let a = base + TAU * m as f64 / k as f64 + self.rng.gen_range(-0.3..0.3);
            let r = radius as f64 * self.rng.gen_range(0.7..1.0);
            let p = (
                (c.0 as f64 + r * a.cos()).round() as i32,
                (c.1 as f64 + r * a.sin()).round() as i32,
            );
            out.push((p.0.clamp(0, LATTICE), p.1.clamp(0, LATTICE)));
        }
        out
    }

    fn cycle_from(&mut self, pts: &[(i32, i32)]) -> String {
        let id = self.fresh("c");
        let ids: Vec<String> = pts.iter().map(|&p| self.vertex(p)).collect();
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        self.parts.cycle(&id, &refs);
        id
    }

    /// Small triangular hole around `p`, off the lattice.
    fn hole_at(&mut self, p: Point<f64>, r: f64) -> String {
        let cid = self.fresh("hc");
        let xy: Vec<(f64, f64)> = (0..3)
            .map(|m| {
                let a = TAU * m as f64 / 3.0 + 0.25;
                (p.x + r * a.cos(), p.y + r * a.sin())
            })
            .collect();
        self.parts.polygon(&cid, &xy);
        let hid = self.fresh("h");
        self.parts.hole(&hid, &cid);
        hid
    }

    fn shareable_cycles(&self) -> Vec<String> {
        let holes: Vec<&str> = self.parts.holes.iter().map(|h| h.boundary.as_str()).collect();
        self.parts
            .cycles
            .iter()
            .filter(|c| !holes.contains(&c.id.as_str()))
            .map(|c| c.id.clone())
            .collect()
    }

    /// Proposes one skeleton; returns it with any vortex/nerve entities
    /// already pushed into `parts`.
    fn propose(&mut self, kind: Kind, sid: &str) -> Option<Skeleton> {
        Some(match kind {
            Kind::Vertex => {
                let p = self.some_vertex();
                Skeleton::new(sid, Payload::Vertex(self.vertex(p)))
            }
            Kind::Segment => {
                let a = self.some_vertex();
                let b = self.near(a, 4);
                Skeleton::new(sid, Payload::Edge(self.vertex(a), self.vertex(b)))
            }
            Kind::Triangle | Kind::Punctured => {
                let a = self.some_vertex();
                let reach = if matches!(kind, Kind::Punctured) { 6 } else { 4 };
                let (b, c) = (self.near(a, reach), self.near(a, reach));
                let ids = [self.vertex(a), self.vertex(b), self.vertex(c)];
                let s = Skeleton::new(sid, Payload::Triangle(ids));
                if matches!(kind, Kind::Punctured) {
                    let ctr = Point::new(
                        (a.0 + b.0 + c.0) as f64 * STEP / 3.0,
                        (a.1 + b.1 + c.1) as f64 * STEP / 3.0,
                    );
                    let h = self.hole_at(ctr, 0.25);
                    s.with_holes(&[&h])
                } else {
                    s
                }
            }
            Kind::Path => {
                let mut p = self.some_vertex();
                let mut ids = vec![self.vertex(p)];
                for _ in 0..self.rng.gen_range(2..=3) {
                    p = self.near(p, 4);
                    ids.push(self.vertex(p));
                }
                Skeleton::new(sid, Payload::Path(ids))
            }
            Kind::Cycle => {
                let c = self.lattice_point();
                let r = self.rng.gen_range(2..=5);
                let pts = self.star(c, r);
                Skeleton::new(sid, Payload::Cycle(self.cycle_from(&pts)))
            }
            Kind::Vortex => return self.propose_vortex(sid),
        })
    }

    fn propose_vortex(&mut self, sid: &str) -> Option<Skeleton> {
        let shared = self.shareable_cycles();
        let mut members = Vec::new();
        let centre;
        if !shared.is_empty() && self.rng.gen_bool(0.35) {
            // plant a cycle shared with an earlier skeleton
            let c = shared[self.rng.gen_range(0..shared.len())].clone();
            let cx = self.parts.build().ok()?;
            let ctr = cx.cycle_polygon(&c).ok()?.centroid();
            centre = ((ctr.x / STEP).round() as i32, (ctr.y / STEP).round() as i32);
            members.push(c);
        } else {
            centre = self.lattice_point();
            let r = self.rng.gen_range(3..=5);
            let pts = self.star(centre, r);
            members.push(self.cycle_from(&pts));
        }
        for _ in 0..self.rng.gen_range(1..=2) {
            let c = self.near(centre, 1);
            let r = self.rng.gen_range(2..=5);
            let pts = self.star(c, r);
            members.push(self.cycle_from(&pts));
        }
        let vid = self.fresh("V");
        let mut holes = Vec::new();
        if self.rng.gen_bool(0.3) {
            let cx = self.parts.build().ok()?;
            let p = cx.cycle_polygon(&members[0]).ok()?.centroid();
            holes.push(self.hole_at(p, 0.2));
        }
        let cx = self.parts.build().ok()?;
        let refs: Vec<&str> = members.iter().map(String::as_str).collect();
        let hrefs: Vec<&str> = holes.iter().map(String::as_str).collect();
        let v = build_vortex_cycle(&vid, &refs, &hrefs, &cx).ok()?;
        let nerve = detect_nerve(&v, &cx).ok()?;
        self.parts.vortex(&vid, &refs, &hrefs);
        Some(match nerve {
            Some(n) if self.rng.gen_bool(0.7) => {
                self.parts.nerve(&n.id, &vid);
                Skeleton::new(sid, Payload::Nerve(n.id))
            }
            _ => Skeleton::new(sid, Payload::Vortex(vid)),
        })
    }
}

/// A valid random complex with between `min_skeletons` and
/// `max_skeletons` skeletons of every kind. Deterministic in `seed`.
pub fn random_complex(seed: u64, opts: ComplexOptions) -> CellComplex<f64> {
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(seed),
        parts: ComplexParts {
            id: format!("random-{seed}"),
            ..ComplexParts::default()
        },
        pool: HashMap::new(),
        next: 0,
    };
    let target = b
        .rng
        .gen_range(opts.min_skeletons..=opts.max_skeletons.max(opts.min_skeletons));
    const KINDS: [(Kind, u32); 7] = [
        (Kind::Vertex, 2),
        (Kind::Segment, 2),
        (Kind::Triangle, 3),
        (Kind::Punctured, 1),
        (Kind::Path, 1),
        (Kind::Cycle, 3),
        (Kind::Vortex, 4),
    ];
    let total: u32 = KINDS.iter().map(|k| k.1).sum();
    let mut attempts = 0;
    while b.parts.skeletons.len() < target && attempts < 50 * target {
        attempts += 1;
        let mut roll = b.rng.gen_range(0..total);
        let kind = KINDS
            .iter()
            .find(|k| {
                if roll < k.1 {
                    true
                } else {
                    roll -= k.1;
                    false
                }
            })
            .map(|k| k.0)
            .unwrap_or(Kind::Vertex);
        let saved = (b.parts.clone(), b.pool.clone(), b.next);
        let sid = format!("s{}", b.parts.skeletons.len());
        let accepted = match b.propose(kind, &sid) {
            Some(s) => {
                b.parts.skeleton(s.clone());
                matches!(b.parts.build(), Ok(cx) if validate_skeleton(&s, None, &cx).ok)
            }
            None => false,
        };
        if !accepted {
            (b.parts, b.pool, b.next) = saved;
        }
    }
    b.parts.build().expect("generated ids resolve")
}

/// Minimal width of a convex polygon: the smallest extent perpendicular
/// to one of its edges.
fn width(p: &Polygon<f64>) -> f64 {
    p.edges()
        .map(|e| {
            let d = e.b - e.a;
            let n = d.norm();
            p.points()
                .iter()
                .map(|q| (*q - e.a).cross(d).abs() / n)
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

fn gap_to(p: Point<f64>, poly: &Polygon<f64>) -> f64 {
    poly.edges()
        .map(|e| point_segment_distance(p, e))
        .fold(f64::INFINITY, f64::min)
}

/// Every interior angle is at least 100°, so each corner contains one of
/// the four axis directions and its tip cell stays 4-connected.
fn blunt(p: &Polygon<f64>) -> bool {
    let pts = p.points();
    let n = pts.len();
    let max_cos = -(10f64.to_radians().sin());
    (0..n).all(|i| {
        let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
        let (u, v) = (a - b, c - b);
        u.dot(v) <= max_cos * u.norm() * v.norm()
    })
}

/// Boundary crossings of `a` and `b` make angles between 45° and 135°, so
/// every sector at a crossing contains one of the eight grid directions and
/// no sampled cell is stranded at the tip of a thin wedge.
fn crossings_open(a: &Polygon<f64>, b: &Polygon<f64>) -> bool {
    let min_sine = std::f64::consts::FRAC_1_SQRT_2;
    a.edges().all(|e| {
        b.edges().all(|f| {
            let (d, g) = (e.b - e.a, f.b - f.a);
            proper_crossing(e, f).is_none() || d.cross(g).abs() >= min_sine * d.norm() * g.norm()
        })
    })
}

/// Whether every feature of a family of convex polygons is at least
/// `margin` wide: gaps between disjoint members, widths of pairwise and
/// triple overlaps, the empty pocket enclosed by three pairwise
/// overlapping members with no common point, and the angles at corners and
/// at which boundaries cross.
pub fn well_separated(family: &[Polygon<f64>], margin: f64) -> bool {
    if !family.iter().all(blunt) {
        return false;
    }
    let n = family.len();
    let mut overlaps = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if !crossings_open(&family[i], &family[j]) {
                return false;
            }
            let q = clip_convex(&family[i], &family[j]);
            if q.len() >= 3 && q.area() > 0.0 {
                if width(&q) < margin {
                    return false;
                }
                overlaps.insert((i, j), q);
            } else if polygon_gap(&family[i], &family[j]) < margin {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (Some(ij), Some(jk), Some(ik)) =
                    (overlaps.get(&(i, j)), overlaps.get(&(j, k)), overlaps.get(&(i, k)))
                else {
                    continue;
                };
                let q = clip_convex(ij, &family[k]);
                if q.len() >= 3 && q.area() > 0.0 {
                    if width(&q) < margin {
                        return false;
                    }
                    continue;
                }
                // the triangle on one point of each pairwise overlap has its
                // sides inside the union, so the uncovered part of it is the
                // enclosed pocket; require room for a disc of radius `margin`
                let tri = Polygon::new(vec![ij.centroid(), jk.centroid(), ik.centroid()]);
                let (lo, hi) = tri.bbox();
                let step = margin / 2.0;
                let mut found = false;
                let mut y = lo.y;
                while y <= hi.y && !found {
                    let mut x = lo.x;
                    while x <= hi.x && !found {
                        let p = Point::new(x, y);
                        found = tri.strictly_contains(p, 0.0)
                            && [i, j, k]
                                .iter()
                                .all(|&m| !family[m].strictly_contains(p, 0.0) && gap_to(p, &family[m]) >= margin);
                        x += step;
                    }
                    y += step;
                }
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

/// Convex polygon with `k` vertices on a rotated ellipse.
fn ellipse(rng: &mut ChaCha8Rng) -> Polygon<f64> {
    let (cx, cy) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
    let (rx, ry) = (rng.gen_range(1.5..4.0), rng.gen_range(1.5..4.0));
    let rot: f64 = rng.gen_range(0.0..TAU);
    let k = rng.gen_range(5..=10);
    let mut angles: Vec<f64> = (0..k)
        .map(|m| TAU * m as f64 / k as f64 + rng.gen_range(-0.2..0.2))
        .collect();
    angles.sort_by(f64::total_cmp);
    Polygon::new(
        angles
            .iter()
            .map(|a| {
                let (x, y) = (rx * a.cos(), ry * a.sin());
                Point::new(cx + x * rot.cos() - y * rot.sin(), cy + x * rot.sin() + y * rot.cos())
            })
            .collect(),
    )
}

/// Thin convex band along the segment `p`–`q`, overshooting both ends.
fn band(rng: &mut ChaCha8Rng, p: (f64, f64), q: (f64, f64)) -> Polygon<f64> {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let len = dx.hypot(dy);
    let (ux, uy) = (dx / len, dy / len);
    let (half, thick) = (0.5 * len * rng.gen_range(1.1..1.3), rng.gen_range(0.5..1.0));
    let (mx, my) = (0.5 * (p.0 + q.0), 0.5 * (p.1 + q.1));
    let tip = half + 0.6 * thick;
    Polygon::new(
        [
            (-half, -thick),
            (half, -thick),
            (tip, 0.0),
            (half, thick),
            (-half, thick),
            (-tip, 0.0),
        ]
        .iter()
        .map(|&(s, t)| Point::new(mx + s * ux - t * uy, my + s * uy + t * ux))
        .collect(),
    )
}

/// A seeded family of 2–3 convex polygons whose features are at least 8
/// grid cells wide at `resolution`, so the raster resolves its topology.
/// About one family in five is three bands along the sides of a roughly
/// equilateral triangle, which usually encloses a pocket.
pub fn random_convex_family(seed: u64, resolution: usize) -> Vec<ClosedRegion<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let family: Vec<Polygon<f64>> = if rng.gen_bool(0.2) {
            let (cx, cy, r) = (
                rng.gen_range(3.0..7.0),
                rng.gen_range(3.0..7.0),
                rng.gen_range(3.0..5.0),
            );
            let base = rng.gen_range(0.0..TAU);
            let t: Vec<(f64, f64)> = (0..3)
                .map(|k| {
                    let a = base + TAU * k as f64 / 3.0 + rng.gen_range(-0.25..0.25);
                    (cx + r * a.cos(), cy + r * a.sin())
                })
                .collect();
            (0..3).map(|k| band(&mut rng, t[k], t[(k + 1) % 3])).collect()
        } else {
            let n = rng.gen_range(2..=3);
            (0..n).map(|_| ellipse(&mut rng)).collect()
        };
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in family.iter().flat_map(|f| f.points()) {
            (lo, hi) = (lo.min(p.x), hi.max(p.x));
            (lo_y, hi_y) = (lo_y.min(p.y), hi_y.max(p.y));
        }
        let cell = (hi - lo).max(hi_y - lo_y) / resolution as f64;
        let edges_ok = family.iter().all(|f| f.edges().all(|e| e.length() >= 3.0 * cell));
        if edges_ok && family.iter().all(|f| f.is_convex(1e-9)) && well_separated(&family, 8.0 * cell) {
            return family.into_iter().map(ClosedRegion::solid).collect();
        }
    }
}

/// Three convex bands forming a triangle around an empty pocket: every
/// pair overlaps, the triple does not.
pub fn hollow_triple() -> Vec<ClosedRegion<f64>> {
    [
        vec![(0.0, 0.0), (6.0, 0.0), (6.0, 1.5), (0.0, 1.5)],
        vec![(0.0, 0.0), (1.5, 0.0), (1.5, 6.0), (0.0, 6.0)],
        vec![(4.5, 0.0), (6.0, 0.0), (0.0, 6.0), (0.0, 4.5)],
    ]
    .iter()
    .map(|xy| ClosedRegion::solid(Polygon::from_xy(xy)))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_complex;

    #[test]
    fn random_complexes_are_valid_and_reproducible() {
        for seed in 0..5 {
            let cx = random_complex(seed, ComplexOptions::default());
            assert!(cx.skeletons().len() <= 25);
            let reports = validate_complex(&cx, &vec![None; cx.skeletons().len()]);
            assert!(reports.iter().all(|r| r.ok), "seed {seed}: {reports:?}");
            assert_eq!(cx, random_complex(seed, ComplexOptions::default()));
        }
    }

    #[test]
    fn convex_families_are_convex() {
        for seed in 0..5 {
            let f = random_convex_family(seed, 512);
            assert!((2..=3).contains(&f.len()));
            assert!(f.iter().all(|r| r.outer.is_convex(1e-9)));
        }
    }
}
