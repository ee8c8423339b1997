//! Planar predicates and measures: containment, interior/boundary/closure,
//! area, perimeter, diameter and interior overlap.
//!
//! All curves are polygonal. Incidence uses the `geo` tolerance of a
//! [`Tolerance`]; emptiness of a region uses the `area` tolerance.

pub mod boolean;
pub mod predicates;

use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::{Scalar, Tolerance};
use boolean::{crossing_inside, Arrangement, Expr};
use predicates::{orient, point_segment_distance, proper_crossing, segment_closest};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment<T> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(a: Point<T>, b: Point<T>) -> Self {
        Segment { a, b }
    }

    pub fn at(&self, t: T) -> Point<T> {
        self.a + (self.b - self.a) * t
    }

    pub fn length(&self) -> T {
        self.a.distance(self.b)
    }
}

/// Open ball `B_r(p)`; the tolerance band of [`point_location`] is one of
/// these around every boundary point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Scalar> Ball<T> {
    pub fn new(center: Point<T>, radius: T) -> Result<Self> {
        if radius.is_nan() || radius <= T::zero() || !center.is_finite() {
            return Err(Error::Malformed("ball radius must be positive".into()));
        }
        Ok(Ball { center, radius })
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        self.center.distance(p) < self.radius
    }
}

/// Closed polygonal curve stored as its vertex list (closing edge implied).
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon<T> {
    pts: Vec<Point<T>>,
}

impl<T: Scalar> Polygon<T> {
    pub fn new(pts: Vec<Point<T>>) -> Self {
        Polygon { pts }
    }

    pub fn from_xy(xy: &[(f64, f64)]) -> Self {
        Polygon::new(xy.iter().map(|&(x, y)| Point::new(T::lit(x), T::lit(y))).collect())
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.pts
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment<T>> + '_ {
        let n = self.pts.len();
        (0..n).map(move |k| Segment::new(self.pts[k], self.pts[(k + 1) % n]))
    }

    /// Shoelace signed area, positive for counter-clockwise order.
    pub fn signed_area(&self) -> T {
        let half = T::lit(0.5);
        self.edges().fold(T::zero(), |acc, e| acc + e.a.cross(e.b)) * half
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> T {
        self.edges().fold(T::zero(), |acc, e| acc + e.length())
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> T {
        let mut best = T::zero();
        for (i, p) in self.pts.iter().enumerate() {
            for q in &self.pts[i + 1..] {
                best = best.max(p.distance(*q));
            }
        }
        best
    }

    /// Area centroid; falls back to the vertex mean for degenerate loops.
    pub fn centroid(&self) -> Point<T> {
        let a = self.signed_area();
        if a.abs() <= T::epsilon() {
            let n = T::from_usize(self.pts.len().max(1)).unwrap();
            let s = self.pts.iter().fold(Point::default(), |acc: Point<T>, p| acc + *p);
            return Point::new(s.x / n, s.y / n);
        }
        let six = T::lit(6.0);
        let mut c = Point::new(T::zero(), T::zero());
        for e in self.edges() {
            let w = e.a.cross(e.b);
            c = c + (e.a + e.b) * w;
        }
        Point::new(c.x / (six * a), c.y / (six * a))
    }

    pub fn bbox(&self) -> (Point<T>, Point<T>) {
        let inf = T::infinity();
        let mut lo = Point::new(inf, inf);
        let mut hi = Point::new(-inf, -inf);
        for p in &self.pts {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn reversed(&self) -> Self {
        let mut pts = self.pts.clone();
        pts.reverse();
        Polygon { pts }
    }

    pub fn translated(&self, d: Point<T>) -> Self {
        Polygon::new(self.pts.iter().map(|p| *p + d).collect())
    }

    pub fn scaled(&self, k: T) -> Self {
        Polygon::new(self.pts.iter().map(|p| *p * k).collect())
    }

    /// Rotation about the origin by `theta` radians.
    pub fn rotated(&self, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Polygon::new(
            self.pts
                .iter()
                .map(|p| Point::new(p.x * c - p.y * s, p.x * s + p.y * c))
                .collect(),
        )
    }

    /// Convex when every turn has the same sign (collinear turns allowed).
    pub fn is_convex(&self, eps: T) -> bool {
        let n = self.pts.len();
        if n < 3 {
            return false;
        }
        let (mut pos, mut neg) = (false, false);
        for i in 0..n {
            let (a, b, c) = (self.pts[i], self.pts[(i + 1) % n], self.pts[(i + 2) % n]);
            let scale = (b - a).norm() * (c - b).norm();
            let o = orient(a, b, c);
            if o > eps * scale {
                pos = true;
            } else if o < -eps * scale {
                neg = true;
            }
        }
        !(pos && neg) && self.area() > T::zero()
    }

    /// Whether `p` lies within `eps` of the closed curve.
    pub fn on_boundary(&self, p: Point<T>, eps: T) -> bool {
        self.edges().any(|e| point_segment_distance(p, e) <= eps)
    }

    /// Strict interior test (boundary band excluded).
    pub fn strictly_contains(&self, p: Point<T>, eps: T) -> bool {
        !self.on_boundary(p, eps) && crossing_inside(&self.pts, p)
    }

    /// Whether the two closed curves come within `eps` of each other.
    pub fn boundaries_meet(&self, other: &Polygon<T>, eps: T) -> bool {
        self.edges()
            .any(|e| other.edges().any(|f| segment_closest(e, f).2 <= eps))
    }
}

/// Defects that stop a closed polygonal curve from being a simple Jordan
/// curve with nonempty interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CurveDefect {
    TooFewVertices { count: usize },
    NonFiniteCoordinate { index: usize },
    CoincidentVertices { first: usize, second: usize },
    SelfIntersection { first_edge: usize, second_edge: usize },
    NonPositiveArea,
}

/// Lists every simplicity defect of `poly`; empty means a valid Jordan curve.
pub fn curve_defects<T: Scalar>(poly: &Polygon<T>, eps: T) -> Vec<CurveDefect> {
    let n = poly.len();
    let mut out = Vec::new();
    if n < 3 {
        out.push(CurveDefect::TooFewVertices { count: n });
        return out;
    }
    for (index, p) in poly.points().iter().enumerate() {
        if !p.is_finite() {
            out.push(CurveDefect::NonFiniteCoordinate { index });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let pts = poly.points();
    for i in 0..n {
        for j in i + 1..n {
            if pts[i].distance(pts[j]) <= eps {
                out.push(CurveDefect::CoincidentVertices { first: i, second: j });
            }
        }
    }
    let edges: Vec<_> = poly.edges().collect();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let hit = if adjacent {
                // adjacent edges may only share their common vertex
                let (e, f) = (edges[i], edges[j]);
                let (e_far, f_far) = if j == i + 1 { (e.a, f.b) } else { (e.b, f.a) };
                point_segment_distance(e_far, f) <= eps || point_segment_distance(f_far, e) <= eps
            } else {
                proper_crossing(edges[i], edges[j]).is_some() || segment_closest(edges[i], edges[j]).2 <= eps
            };
            if hit {
                out.push(CurveDefect::SelfIntersection {
                    first_edge: i,
                    second_edge: j,
                });
            }
        }
    }
    if poly.area().is_nan() || poly.area() <= eps * eps {
        out.push(CurveDefect::NonPositiveArea);
    }
    out
}

/// Outcome of [`point_location`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Planar region bounded by `outer` with 2-holes removed. A hole has an
/// empty interior, so points strictly inside a hole are exterior.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedRegion<T> {
    pub outer: Polygon<T>,
    pub holes: Vec<Polygon<T>>,
}

impl<T: Scalar> ClosedRegion<T> {
    pub fn new(outer: Polygon<T>, holes: Vec<Polygon<T>>) -> Self {
        ClosedRegion { outer, holes }
    }

    pub fn solid(outer: Polygon<T>) -> Self {
        ClosedRegion {
            outer,
            holes: Vec::new(),
        }
    }

    /// Checks the region invariants: simple curves, holes strictly inside
    /// the outer curve and pairwise disjoint.
    pub fn check(&self, tol: &Tolerance<T>) -> Result<()> {
        if !curve_defects(&self.outer, tol.geo).is_empty() {
            return Err(Error::Malformed("outer boundary is not a simple closed curve".into()));
        }
        for (k, h) in self.holes.iter().enumerate() {
            if !curve_defects(h, tol.geo).is_empty() {
                return Err(Error::Malformed(format!("hole {k} is not a simple closed curve")));
            }
            if !hole_strictly_inside(&self.outer, h, tol.geo) {
                return Err(Error::Malformed(format!(
                    "hole {k} is not strictly inside the outer boundary"
                )));
            }
            for (l, g) in self.holes.iter().enumerate().skip(k + 1) {
                if !polygons_disjoint(h, g, tol.geo) {
                    return Err(Error::Malformed(format!("holes {k} and {l} are not disjoint")));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn register(&self, arr: &mut Arrangement<T>) -> Expr {
        let outer = arr.add(&self.outer);
        if self.holes.is_empty() {
            return outer;
        }
        let holes = self.holes.iter().map(|h| arr.add(h)).collect();
        Expr::All(vec![outer, Expr::outside(Expr::Any(holes))])
    }

    pub fn loops(&self) -> impl Iterator<Item = &Polygon<T>> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }
}

/// Whether `hole` sits strictly inside `outer` with no boundary contact.
pub fn hole_strictly_inside<T: Scalar>(outer: &Polygon<T>, hole: &Polygon<T>, eps: T) -> bool {
    hole.points().iter().all(|p| outer.strictly_contains(*p, eps)) && !outer.boundaries_meet(hole, eps)
}

/// Closed polygonal regions that share no point.
pub fn polygons_disjoint<T: Scalar>(a: &Polygon<T>, b: &Polygon<T>, eps: T) -> bool {
    !a.boundaries_meet(b, eps)
        && !a.points().iter().any(|p| crossing_inside(b.points(), *p))
        && !b.points().iter().any(|p| crossing_inside(a.points(), *p))
}

/// Interior / boundary / exterior classification with an `eps` boundary band.
pub fn point_location<T: Scalar>(p: Point<T>, r: &ClosedRegion<T>, tol: &Tolerance<T>) -> Location {
    if r.loops().any(|l| l.on_boundary(p, tol.geo)) {
        return Location::Boundary;
    }
    if !crossing_inside(r.outer.points(), p) {
        return Location::Exterior;
    }
    if r.holes.iter().any(|h| crossing_inside(h.points(), p)) {
        Location::Exterior
    } else {
        Location::Interior
    }
}

/// Shoelace area of the outer curve minus the hole areas.
pub fn area<T: Scalar>(r: &ClosedRegion<T>) -> T {
    let holes = r.holes.iter().fold(T::zero(), |acc, h| acc + h.area());
    (r.outer.area() - holes).max(T::zero())
}

pub fn perimeter<T: Scalar>(c: &Polygon<T>) -> T {
    c.perimeter()
}

pub fn diameter<T: Scalar>(c: &Polygon<T>) -> T {
    c.diameter()
}

/// Area of the common part of all `regions` (holes subtracted).
pub fn intersection_area<T: Scalar>(regions: &[&ClosedRegion<T>], tol: &Tolerance<T>) -> T {
    if regions.is_empty() {
        return T::zero();
    }
    let mut arr = Arrangement::new(tol.geo);
    let parts = regions.iter().map(|r| r.register(&mut arr)).collect();
    arr.measure(&Expr::All(parts)).area
}

/// True iff the interiors share positive area; tangency is not overlap.
pub fn interiors_overlap<T: Scalar>(a: &ClosedRegion<T>, b: &ClosedRegion<T>, tol: &Tolerance<T>) -> bool {
    intersection_area(&[a, b], tol) > tol.area
}

/// Union of closed regions: the filled point set of a composite cell such as
/// a vortex cycle (member cycles, each minus the vortex holes).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Shape<T> {
    pub parts: Vec<ClosedRegion<T>>,
}

impl<T: Scalar> Shape<T> {
    pub fn new(parts: Vec<ClosedRegion<T>>) -> Self {
        Shape { parts }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub(crate) fn register(&self, arr: &mut Arrangement<T>) -> Expr {
        Expr::Any(self.parts.iter().map(|r| r.register(arr)).collect())
    }

    pub fn area(&self, tol: &Tolerance<T>) -> T {
        match self.parts.as_slice() {
            [] => T::zero(),
            [only] => area(only),
            _ => {
                let mut arr = Arrangement::new(tol.geo);
                let e = self.register(&mut arr);
                arr.measure(&e).area
            }
        }
    }

    /// Length of the boundary of the union of the parts' outer curves.
    pub fn outline_length(&self, tol: &Tolerance<T>) -> T {
        let mut arr = Arrangement::new(tol.geo);
        let outers = self.parts.iter().map(|r| arr.add(&r.outer)).collect();
        arr.measure(&Expr::Any(outers)).boundary
    }

    pub fn location(&self, p: Point<T>, tol: &Tolerance<T>) -> Location {
        let mut best = Location::Exterior;
        for r in &self.parts {
            match point_location(p, r, tol) {
                Location::Interior => return Location::Interior,
                Location::Boundary => best = Location::Boundary,
                Location::Exterior => {}
            }
        }
        best
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point<T>> + '_ {
        self.parts
            .iter()
            .flat_map(|r| r.loops().flat_map(|l| l.points().iter().copied()))
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<T>> + '_ {
        self.parts.iter().flat_map(|r| r.loops().flat_map(|l| l.edges()))
    }
}

/// Area of the common part of several shapes.
pub fn shapes_intersection_area<T: Scalar>(shapes: &[&Shape<T>], tol: &Tolerance<T>) -> T {
    if shapes.is_empty() || shapes.iter().any(|s| s.is_empty()) {
        return T::zero();
    }
    let mut arr = Arrangement::new(tol.geo);
    let parts = shapes.iter().map(|s| s.register(&mut arr)).collect();
    arr.measure(&Expr::All(parts)).area
}

/// Area of `a` not covered by `b`.
pub fn shape_difference_area<T: Scalar>(a: &Shape<T>, b: &Shape<T>, tol: &Tolerance<T>) -> T {
    if a.is_empty() {
        return T::zero();
    }
    let mut arr = Arrangement::new(tol.geo);
    let ea = a.register(&mut arr);
    let eb = b.register(&mut arr);
    arr.measure(&Expr::All(vec![ea, Expr::outside(eb)])).area
}

/// Whether two closed filled shapes share at least one point.
pub fn shapes_meet<T: Scalar>(a: &Shape<T>, b: &Shape<T>, tol: &Tolerance<T>) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    for s in a.segments() {
        for r in b.segments() {
            if segment_closest(s, r).2 <= tol.geo {
                return true;
            }
        }
    }
    a.vertices().any(|p| b.location(p, tol) != Location::Exterior)
        || b.vertices().any(|p| a.location(p, tol) != Location::Exterior)
}

/// Sutherland-Hodgman clip of `subject` by the convex polygon `clip`.
pub fn clip_convex<T: Scalar>(subject: &Polygon<T>, clip: &Polygon<T>) -> Polygon<T> {
    let clip = if clip.signed_area() < T::zero() {
        clip.reversed()
    } else {
        clip.clone()
    };
    let mut out = subject.points().to_vec();
    for e in clip.edges() {
        if out.is_empty() {
            break;
        }
        let input = std::mem::take(&mut out);
        let inside = |p: Point<T>| orient(e.a, e.b, p) >= T::zero();
        let n = input.len();
        for i in 0..n {
            let cur = input[i];
            let prev = input[(i + n - 1) % n];
            let (ci, pi) = (inside(cur), inside(prev));
            if ci != pi {
                let d1 = orient(e.a, e.b, prev);
                let d2 = orient(e.a, e.b, cur);
                let t = d1 / (d1 - d2);
                out.push(prev + (cur - prev) * t);
            }
            if ci {
                out.push(cur);
            }
        }
    }
    Polygon::new(out)
}

/// Smallest distance between the boundaries of two polygons, zero if they
/// overlap.
pub fn polygon_gap<T: Scalar>(a: &Polygon<T>, b: &Polygon<T>) -> T {
    if a.points().iter().any(|p| crossing_inside(b.points(), *p))
        || b.points().iter().any(|p| crossing_inside(a.points(), *p))
    {
        return T::zero();
    }
    let mut best = T::infinity();
    for s in a.edges() {
        for r in b.edges() {
            best = best.min(segment_closest(s, r).2);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x: f64, y: f64, side: f64) -> Polygon<f64> {
        Polygon::from_xy(&[(x, y), (x + side, y), (x + side, y + side), (x, y + side)])
    }

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn locations_in_unit_square() {
        let r = ClosedRegion::solid(square(0.0, 0.0, 1.0));
        assert_eq!(point_location(Point::new(0.5, 0.5), &r, &tol()), Location::Interior);
        assert_eq!(point_location(Point::new(0.5, 0.0), &r, &tol()), Location::Boundary);
        assert_eq!(point_location(Point::new(1.5, 0.5), &r, &tol()), Location::Exterior);
        let holed = ClosedRegion::new(square(0.0, 0.0, 1.0), vec![square(0.4, 0.4, 0.2)]);
        assert_eq!(point_location(Point::new(0.5, 0.5), &holed, &tol()), Location::Exterior);
        assert_eq!(point_location(Point::new(0.4, 0.5), &holed, &tol()), Location::Boundary);
    }

    #[test]
    fn areas() {
        assert_eq!(area(&ClosedRegion::solid(square(0.0, 0.0, 1.0))), 1.0);
        let tri: Polygon<f64> = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(area(&ClosedRegion::solid(tri)), 0.5);
        let hole: Polygon<f64> = Polygon::from_xy(&[(0.2, 0.2), (0.4, 0.2), (0.2, 0.4)]);
        let r = ClosedRegion::new(square(0.0, 0.0, 1.0), vec![hole]);
        // shoelace oracle: 1 - 0.5 * 0.2 * 0.2
        assert!((area(&r) - 0.98).abs() < 1e-15);
        r.check(&tol()).unwrap();
    }

    #[test]
    fn perimeter_and_diameter() {
        let sq = square(0.0, 0.0, 1.0);
        assert_eq!(perimeter(&sq), 4.0);
        assert!((diameter(&sq) - 2f64.sqrt()).abs() < 1e-15);
        let h = 3f64.sqrt() / 2.0;
        let eq: Polygon<f64> = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]);
        assert!((perimeter(&eq) - 3.0).abs() < 1e-15);
        assert!((diameter(&eq) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cycle_a2_measures_match_pairwise_oracle() {
        let xy = [
            (1.00, 0.5),
            (2.00, 0.65),
            (3.0, 0.25),
            (3.25, -0.25),
            (2.25, -0.70),
            (1.5, -0.55),
        ];
        let poly: Polygon<f64> = Polygon::from_xy(&xy);
        // frozen from an all-pairs / consecutive-pairs enumeration
        let mut per = 0.0;
        let mut dia: f64 = 0.0;
        for i in 0..xy.len() {
            let (a, b) = (xy[i], xy[(i + 1) % xy.len()]);
            per += ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            for c in &xy {
                dia = dia.max(((a.0 - c.0).powi(2) + (a.1 - c.1).powi(2)).sqrt());
            }
        }
        assert!((poly.perimeter() - per).abs() < 1e-12);
        assert!((poly.diameter() - dia).abs() < 1e-12);
        assert!((dia - 2.3717082451262845).abs() < 1e-12);
        assert!((per - 5.671646248582967).abs() < 1e-12);
    }

    #[test]
    fn overlap_cases() {
        let a = ClosedRegion::solid(square(0.0, 0.0, 1.0));
        let b = ClosedRegion::solid(square(0.5, 0.0, 1.0));
        let c = ClosedRegion::solid(square(2.0, 0.0, 1.0));
        let touching = ClosedRegion::solid(square(1.0, 0.0, 1.0));
        assert!(interiors_overlap(&a, &b, &tol()));
        assert!(interiors_overlap(&b, &a, &tol()));
        assert!(!interiors_overlap(&a, &c, &tol()));
        assert!(!interiors_overlap(&a, &touching, &tol()));
        assert!(interiors_overlap(&a, &a, &tol()));
        let big = ClosedRegion::solid(square(-1.0, -1.0, 4.0));
        assert!(interiors_overlap(&big, &a, &tol()));
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bow: Polygon<f64> = Polygon::from_xy(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]);
        let d = curve_defects(&bow, 1e-9);
        assert!(d.contains(&CurveDefect::SelfIntersection {
            first_edge: 0,
            second_edge: 2
        }));
        let tri: Polygon<f64> = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert!(curve_defects(&tri, 1e-9).is_empty());
    }

    #[test]
    fn convex_clip() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(0.5, 0.5, 1.0);
        let c = clip_convex(&a, &b);
        assert!((c.area() - 0.25).abs() < 1e-15);
    }
}
