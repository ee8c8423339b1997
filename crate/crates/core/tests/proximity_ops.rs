use proptest::prelude::*;
use vortexprox::complex::{CellRef, Payload, Skeleton};
use vortexprox::descriptors::{MatchMode, MatchPolicy, ProbeId};
use vortexprox::generate::{random_complex, ComplexOptions};
use vortexprox::proximity::{check_axioms, conn, dsconn, evaluate_relator, sconn, Evidence, Relation, Relator, Space};
use vortexprox::ComplexParts;

fn sk(id: &str) -> CellRef {
    CellRef::Skeleton(id.into())
}

fn tri(id: &str, ids: [&str; 3]) -> Skeleton {
    Skeleton::new(id, Payload::Triangle(ids.map(String::from)))
}

fn plane() -> vortexprox::CellComplex {
    let mut p = ComplexParts::default();
    for (id, x, y) in [
        ("a", 0.0, 0.0),
        ("b", 2.0, 0.0),
        ("c", 0.0, 2.0),
        ("d", 2.0, 2.0),
        ("e", 1.0, -1.0),
        ("f", 1.0, 3.0),
        ("g", 9.0, 9.0),
        ("h", 3.0, 1.0),
    ] {
        p.vertex(id, x, y);
    }
    p.skeleton(tri("left", ["a", "b", "c"]));
    p.skeleton(tri("right", ["b", "d", "c"]));
    p.skeleton(Skeleton::new("stick", Payload::Edge("e".into(), "f".into())));
    p.skeleton(Skeleton::new("lone", Payload::Vertex("g".into())));
    p.skeleton(tri("wide", ["a", "h", "c"]));
    p.build().unwrap()
}

#[test]
fn shared_edge_is_conn_but_not_sconn() {
    let cx = plane();
    let v = conn(&cx, &sk("left"), &sk("right")).unwrap();
    assert!(v.near);
    assert_eq!(v.smirnov, 0);
    assert_eq!(v.witness.unwrap().evidence, Evidence::Vertex { id: "b".into() });
    let s = sconn(&cx, &sk("left"), &sk("right")).unwrap();
    assert!(!s.near);
    assert_eq!(s.smirnov, 1);
    let o = sconn(&cx, &sk("left"), &sk("wide")).unwrap();
    assert!(o.near);
}

#[test]
fn crossing_without_shared_vertex_witnesses_a_point() {
    let cx = plane();
    let v = conn(&cx, &sk("stick"), &sk("left")).unwrap();
    match v.witness.unwrap().evidence {
        Evidence::Point { x, y } => assert!((x - 1.0).abs() < 1e-12 && y.abs() < 1e-12, "{x} {y}"),
        e => panic!("unexpected evidence {e:?}"),
    }
    assert!(!conn(&cx, &sk("lone"), &sk("left")).unwrap().near);
}

#[test]
fn triangles_are_descriptively_near_by_vertex_count() {
    let cx = plane();
    let policy = MatchPolicy::new(&[ProbeId::VertexCount], MatchMode::Any).unwrap();
    assert!(dsconn(&cx, &sk("left"), &sk("wide"), &policy).unwrap().near);
    assert!(!dsconn(&cx, &sk("left"), &sk("lone"), &policy).unwrap().near);
}

#[test]
fn relator_needs_relations_and_a_policy_for_dsconn() {
    assert_eq!(Relator::new(&[], None).unwrap_err().code(), "EMPTY_ARGUMENT");
    assert_eq!(
        Relator::new(&[Relation::Dsconn], None).unwrap_err().code(),
        "MISSING_PROBE"
    );
    let cx = plane();
    let r = Relator::new(&[Relation::Conn, Relation::Sconn], None).unwrap();
    let v = evaluate_relator(&cx, &sk("left"), &sk("right"), &r).unwrap();
    assert_eq!(v.iter().map(|v| v.near).collect::<Vec<_>>(), [true, false]);
    let space = Space::new(&cx, vec![sk("left")], None).unwrap();
    assert_eq!(
        space.near(Relation::Conn, &[], &[0]).unwrap_err().code(),
        "EMPTY_ARGUMENT"
    );
}

#[test]
fn fuzzer_finds_nothing_on_random_complexes() {
    for seed in 100..103 {
        let cx = random_complex(seed, ComplexOptions::default());
        let r = check_axioms(&cx, 100, seed).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(r.axioms.iter().all(|a| a.violated == 0));
    }
    assert_eq!(check_axioms(&plane(), 0, 1).unwrap_err().code(), "MALFORMED");
}

#[test]
fn fuzzer_reports_are_reproducible() {
    let cx = random_complex(7, ComplexOptions::default());
    assert_eq!(check_axioms(&cx, 50, 3).unwrap(), check_axioms(&cx, 50, 3).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn relations_are_symmetric(seed in 0u64..10_000) {
        let cx = random_complex(seed, ComplexOptions { min_skeletons: 4, max_skeletons: 10 });
        let cells: Vec<CellRef> = cx.skeletons().iter().map(|s| sk(&s.id)).collect();
        let policy = MatchPolicy::new(&[ProbeId::VertexCount, ProbeId::HoleCount], MatchMode::All).unwrap();
        let space = Space::new(&cx, cells, Some(policy)).unwrap();
        for rel in [Relation::Conn, Relation::Sconn, Relation::Dsconn] {
            for i in 0..space.len() {
                prop_assert!(space.pair(rel, i, i).unwrap() || rel == Relation::Sconn || rel == Relation::Conn);
                for j in 0..space.len() {
                    prop_assert_eq!(space.pair(rel, i, j).unwrap(), space.pair(rel, j, i).unwrap());
                }
            }
        }
    }
}
