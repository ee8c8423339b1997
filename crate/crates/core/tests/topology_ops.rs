use vortexprox::complex::{CellRef, Payload, Skeleton};
use vortexprox::descriptors::{MatchMode, MatchPolicy, ProbeId};
use vortexprox::generate::{random_complex, ComplexOptions};
use vortexprox::proximity::{Relation, Space};
use vortexprox::topology::{build_leader_topology, check_cw, cluster_cw, leader_violations};
use vortexprox::ComplexParts;

fn shared_edge() -> vortexprox::CellComplex {
    let mut p = ComplexParts::default();
    for (id, x, y) in [("a", 0.0, 0.0), ("b", 2.0, 0.0), ("c", 0.0, 2.0), ("d", 2.0, 2.0)] {
        p.vertex(id, x, y);
    }
    p.skeleton(Skeleton::new(
        "t1",
        Payload::Triangle(["a", "b", "c"].map(String::from)),
    ));
    p.skeleton(Skeleton::new(
        "t2",
        Payload::Triangle(["b", "d", "c"].map(String::from)),
    ));
    p.build().unwrap()
}

fn skeletons(cx: &vortexprox::CellComplex) -> Vec<CellRef> {
    cx.skeletons().iter().map(|s| CellRef::Skeleton(s.id.clone())).collect()
}

#[test]
fn triangles_sharing_an_edge_meet_in_a_closed_segment() {
    let r = check_cw(&shared_edge()).unwrap();
    assert!(r.passed && r.closure_finite && r.weak_topology);
    assert_eq!(r.contacts.len(), 1);
    let c = &r.contacts[0];
    assert_eq!((c.points, c.segments), (0, 1));
    // the shared edge b–c has length 2√2
    assert!((c.length - 8f64.sqrt()).abs() < 1e-12);
    assert_eq!(c.area, 0.0);
    assert!(r.counts.iter().all(|k| k.meets == 1));
}

#[test]
fn empty_complex_passes_vacuously() {
    let cx = ComplexParts::default().build().unwrap();
    let r = check_cw(&cx).unwrap();
    assert!(r.passed && r.counts.is_empty() && r.contacts.is_empty());
}

#[test]
fn singleton_universe_has_one_cluster() {
    let cx = shared_edge();
    let space = Space::new(&cx, vec![CellRef::Skeleton("t1".into())], None).unwrap();
    let t = build_leader_topology(&space, Relation::Conn).unwrap();
    assert_eq!(t.clusters.len(), 1);
    assert_eq!(t.clusters[0].members, vec![CellRef::Skeleton("t1".into())]);
    assert!(t.pairs.is_empty());
    assert!(cluster_cw(&t, "t1", &cx).unwrap().passed);
    assert_eq!(cluster_cw(&t, "nope", &cx).unwrap_err().code(), "UNKNOWN_CLUSTER");
}

#[test]
fn dsconn_clusters_need_a_policy() {
    let cx = shared_edge();
    let space = Space::new(&cx, skeletons(&cx), None).unwrap();
    assert_eq!(
        build_leader_topology(&space, Relation::Dsconn).unwrap_err().code(),
        "MISSING_PROBE"
    );
}

#[test]
fn random_clusters_satisfy_leader_and_cw_invariants() {
    let policy = MatchPolicy::new(&[ProbeId::VertexCount], MatchMode::Any).unwrap();
    for seed in 0..4 {
        let cx = random_complex(seed, ComplexOptions::default());
        let space = Space::new(&cx, skeletons(&cx), Some(policy.clone())).unwrap();
        for rel in [Relation::Conn, Relation::Sconn, Relation::Dsconn] {
            let t = build_leader_topology(&space, rel).unwrap();
            assert_eq!(t.clusters.len(), space.len());
            assert!(leader_violations(&t, &space).unwrap().is_empty());
            for c in &t.clusters {
                let r = cluster_cw(&t, c.anchor.id(), &cx).unwrap();
                assert!(r.passed, "seed {seed} {rel} {}: {:?}", c.anchor, r.contacts);
            }
        }
    }
}

#[test]
fn more_probes_under_all_never_enlarge_a_cluster() {
    let few = MatchPolicy::new(&[ProbeId::VertexCount], MatchMode::All).unwrap();
    let many = MatchPolicy::new(
        &[ProbeId::VertexCount, ProbeId::Diameter, ProbeId::Area],
        MatchMode::All,
    )
    .unwrap();
    for seed in 10..14 {
        let cx = random_complex(seed, ComplexOptions::default());
        let a = build_leader_topology(
            &Space::new(&cx, skeletons(&cx), Some(few.clone())).unwrap(),
            Relation::Dsconn,
        )
        .unwrap();
        let b = build_leader_topology(
            &Space::new(&cx, skeletons(&cx), Some(many.clone())).unwrap(),
            Relation::Dsconn,
        )
        .unwrap();
        for (x, y) in a.clusters.iter().zip(&b.clusters) {
            assert!(y.members.iter().all(|m| x.members.contains(m)));
        }
    }
}
