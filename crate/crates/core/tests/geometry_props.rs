use proptest::prelude::*;
use vortexprox::geometry::{clip_convex, intersection_area, point_location, Location, Point};
use vortexprox::{ClosedRegion, Polygon, Tolerance};

/// Star-shaped simple polygon around `c` from sorted angles.
fn star(c: (f64, f64), spokes: &[(f64, f64)]) -> Polygon {
    let mut s = spokes.to_vec();
    s.sort_by(|a, b| a.0.total_cmp(&b.0));
    s.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-3);
    Polygon::new(
        s.iter()
            .map(|&(a, r)| Point::new(c.0 + r * a.cos(), c.1 + r * a.sin()))
            .collect(),
    )
}

fn spokes() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0..std::f64::consts::TAU, 0.5f64..5.0), 3..12)
}

fn convex(c: (f64, f64), r: f64, k: usize, phase: f64) -> Polygon {
    Polygon::new(
        (0..k)
            .map(|m| {
                let a = phase + std::f64::consts::TAU * m as f64 / k as f64;
                Point::new(c.0 + r * a.cos(), c.1 + r * a.sin())
            })
            .collect(),
    )
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn measures_are_invariant_under_rigid_motion(s in spokes(), theta in 0.0f64..6.3, dx in -50.0f64..50.0, dy in -50.0f64..50.0) {
        let p = star((0.0, 0.0), &s);
        prop_assume!(p.len() >= 3 && p.area() > 1e-6);
        let q = p.rotated(theta).translated(Point::new(dx, dy));
        prop_assert!(close(p.area(), q.area()));
        prop_assert!(close(p.perimeter(), q.perimeter()));
        prop_assert!(close(p.diameter(), q.diameter()));
    }

    #[test]
    fn measures_scale(s in spokes(), k in 0.1f64..10.0) {
        let p = star((0.0, 0.0), &s);
        prop_assume!(p.len() >= 3 && p.area() > 1e-6);
        let q = p.scaled(k);
        prop_assert!(close(q.area(), k * k * p.area()));
        prop_assert!(close(q.perimeter(), k * p.perimeter()));
        prop_assert!(close(q.diameter(), k * p.diameter()));
    }

    #[test]
    fn boolean_area_matches_convex_clipping(
        c in (-3.0f64..3.0, -3.0f64..3.0), r in 0.5f64..4.0, k in 3usize..9, phase in 0.0f64..6.3,
        r2 in 0.5f64..4.0, k2 in 3usize..9, phase2 in 0.0f64..6.3,
    ) {
        let a = convex((0.0, 0.0), r, k, phase);
        let b = convex(c, r2, k2, phase2);
        let clipped = clip_convex(&a, &b);
        let expect = if clipped.len() >= 3 { clipped.area() } else { 0.0 };
        let got = intersection_area(&[&ClosedRegion::solid(a), &ClosedRegion::solid(b)], &Tolerance::default());
        prop_assert!((got - expect).abs() <= 1e-9 * expect.max(1.0), "{got} vs {expect}");
    }

    #[test]
    fn reversal_keeps_area_and_interior(s in spokes()) {
        let p = star((1.0, 2.0), &s);
        prop_assume!(p.len() >= 3 && p.area() > 1e-6);
        prop_assert!(close(p.area(), p.reversed().area()));
        // the star centre is interior whenever every spoke is long enough
        let tol = Tolerance::default();
        let r = ClosedRegion::solid(p.clone());
        let loc = point_location(Point::new(1.0, 2.0), &r, &tol);
        let rev = point_location(Point::new(1.0, 2.0), &ClosedRegion::solid(p.reversed()), &tol);
        prop_assert_eq!(loc, rev);
        prop_assert_eq!(point_location(Point::new(100.0, 100.0), &r, &tol), Location::Exterior);
    }
}
