//! Orientation, distance and segment incidence predicates.

use super::{Point, Segment};
use crate::Scalar;

/// Twice the signed area of triangle `a b c`; positive when counter-clockwise.
#[inline]
pub fn orient<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> T {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Parameter of the orthogonal projection of `p` onto the line through `s`,
/// clamped to `[0, 1]`.
pub fn project_param<T: Scalar>(p: Point<T>, s: Segment<T>) -> T {
    let d = s.b - s.a;
    let len2 = d.dot(d);
    if len2 <= T::zero() {
        return T::zero();
    }
    let t = (p - s.a).dot(d) / len2;
    t.max(T::zero()).min(T::one())
}

pub fn point_segment_distance<T: Scalar>(p: Point<T>, s: Segment<T>) -> T {
    let t = project_param(p, s);
    p.distance(s.at(t))
}

/// Closest pair of points between two segments and their distance.
pub fn segment_closest<T: Scalar>(s: Segment<T>, r: Segment<T>) -> (Point<T>, Point<T>, T) {
    if let Some(x) = proper_crossing(s, r) {
        return (x, x, T::zero());
    }
    let mut best = (s.a, r.a, T::infinity());
    let mut consider = |p: Point<T>, q: Point<T>| {
        let d = p.distance(q);
        if d < best.2 {
            best = (p, q, d);
        }
    };
    consider(s.a, r.at(project_param(s.a, r)));
    consider(s.b, r.at(project_param(s.b, r)));
    consider(s.at(project_param(r.a, s)), r.a);
    consider(s.at(project_param(r.b, s)), r.b);
    best
}

pub fn segment_distance<T: Scalar>(s: Segment<T>, r: Segment<T>) -> T {
    segment_closest(s, r).2
}

/// Intersection point when the open segments cross transversally.
pub fn proper_crossing<T: Scalar>(s: Segment<T>, r: Segment<T>) -> Option<Point<T>> {
    let d1 = orient(r.a, r.b, s.a);
    let d2 = orient(r.a, r.b, s.b);
    let d3 = orient(s.a, s.b, r.a);
    let d4 = orient(s.a, s.b, r.b);
    let z = T::zero();
    let opposite = |u: T, v: T| (u > z && v < z) || (u < z && v > z);
    if opposite(d1, d2) && opposite(d3, d4) {
        let t = d1 / (d1 - d2);
        Some(s.at(t))
    } else {
        None
    }
}

/// Whether two closed segments come within `eps` of each other.
pub fn segments_meet<T: Scalar>(s: Segment<T>, r: Segment<T>, eps: T) -> bool {
    segment_distance(s, r) <= eps
}

/// Parameters along `s` (strictly inside `(0, 1)`) at which `r` crosses,
/// touches, or starts/stops overlapping `s`.
pub fn split_params<T: Scalar>(s: Segment<T>, r: Segment<T>, eps: T, out: &mut Vec<T>) {
    let len = s.length();
    if len <= eps {
        return;
    }
    let rel = eps / len;
    let mut push = |t: T| {
        if t > rel && t < T::one() - rel {
            out.push(t);
        }
    };
    if let Some(x) = proper_crossing(s, r) {
        push(project_param(x, s));
    }
    for q in [r.a, r.b] {
        if point_segment_distance(q, s) <= eps {
            push(project_param(q, s));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment<f64> {
        Segment::new(Point::new(ax, ay), Point::new(bx, by))
    }

    #[test]
    fn orientation_sign() {
        let o = Point::new(0.0, 0.0);
        assert!(orient(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0)) > 0.0);
        assert!(orient(o, Point::new(0.0, 1.0), Point::new(1.0, 0.0)) < 0.0);
        assert_eq!(orient(o, Point::new(1.0, 1.0), Point::new(2.0, 2.0)), 0.0);
    }

    #[test]
    fn crossing_and_touching() {
        let a = seg(0.0, 0.0, 1.0, 1.0);
        let b = seg(1.0, 0.0, 0.0, 1.0);
        let x = proper_crossing(a, b).unwrap();
        assert!((x.x - 0.5).abs() < 1e-15 && (x.y - 0.5).abs() < 1e-15);
        // T-junction is not a proper crossing but the segments meet
        let c = seg(0.5, 0.5, 2.0, 0.5);
        assert!(proper_crossing(a, c).is_none());
        assert!(segments_meet(a, c, 1e-12));
        assert!(!segments_meet(seg(0.0, 0.0, 1.0, 0.0), seg(0.0, 1.0, 1.0, 1.0), 1e-9));
    }

    #[test]
    fn split_points_on_overlap() {
        let s = seg(0.0, 0.0, 4.0, 0.0);
        let r = seg(1.0, 0.0, 3.0, 0.0);
        let mut out = Vec::new();
        split_params(s, r, 1e-9, &mut out);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(out, vec![0.25, 0.75]);
    }
}
