use std::path::PathBuf;

use proptest::prelude::*;
use vortexprox::complex::SkeletonKind;
use vortexprox::Tolerance;
use vortexprox_cli::commands::generate;
use vortexprox_cli::document::{
    ComplexDocument, CycleEntry, EdgeEntry, HoleEntry, NerveEntry, ProbeEntry, SkeletonEntry, VertexEntry, VortexEntry,
};

fn ident() -> impl Strategy<Value = String> {
    "[a-zA-Z][a-zA-Z0-9_.:-]{0,6}"
}

fn ids(n: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(ident(), 0..n)
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(0.0),
        Just(-0.0),
    ]
}

fn kind() -> impl Strategy<Value = SkeletonKind> {
    prop::sample::select(vec![
        SkeletonKind::K0,
        SkeletonKind::K1,
        SkeletonKind::K1_5,
        SkeletonKind::K2,
        SkeletonKind::Path,
        SkeletonKind::Cycle,
        SkeletonKind::Vortex,
        SkeletonKind::Nerve,
    ])
}

prop_compose! {
    fn document()(
        id in ident(),
        vertices in prop::collection::vec((ident(), finite(), finite()), 0..8),
        edges in prop::collection::vec((ident(), ident()), 0..4),
        cycles in prop::collection::vec((ident(), ids(5)), 0..4),
        holes in prop::collection::vec((ident(), ident()), 0..3),
        skeletons in prop::collection::vec((ident(), kind(), ids(4), ids(2)), 0..4),
        vortices in prop::collection::vec((ident(), ids(3), ids(2)), 0..3),
        nerves in prop::collection::vec((ident(), ident()), 0..3),
        probes in prop::collection::vec((ident(), ident(), finite()), 0..3),
    ) -> ComplexDocument {
        ComplexDocument {
            version: "1".to_string(),
            id,
            vertices: vertices.into_iter().map(|(id, x, y)| VertexEntry { id, x, y }).collect(),
            edges: edges.into_iter().map(|(source, target)| EdgeEntry { source, target }).collect(),
            cycles: cycles.into_iter().map(|(id, vertices)| CycleEntry { id, vertices }).collect(),
            holes: holes.into_iter().map(|(id, boundary)| HoleEntry { id, boundary }).collect(),
            skeletons: skeletons
                .into_iter()
                .map(|(id, kind, payload, holes)| SkeletonEntry { id, kind, payload, holes })
                .collect(),
            vortex_cycles: vortices.into_iter().map(|(id, cycles, holes)| VortexEntry { id, cycles, holes }).collect(),
            vortex_nerves: nerves.into_iter().map(|(id, vortex)| NerveEntry { id, vortex }).collect(),
            probes: probes.into_iter().map(|(entity, probe, value)| ProbeEntry { entity, probe, value }).collect(),
        }
    }
}

proptest! {
    #[test]
    fn parse_inverts_emit(doc in document()) {
        let text = doc.emit();
        let back = ComplexDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        for (a, b) in back.vertices.iter().zip(&doc.vertices) {
            prop_assert_eq!(a.x.to_bits(), b.x.to_bits());
            prop_assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
        prop_assert_eq!(back.emit(), text);
    }

    #[test]
    fn generated_documents_round_trip_through_the_complex(seed in 0u64..10_000) {
        let doc = generate(seed);
        let (cx, _) = doc.to_complex(Tolerance::default()).unwrap();
        prop_assert_eq!(ComplexDocument::from_complex(&cx), doc.clone());
        prop_assert_eq!(ComplexDocument::parse(&doc.emit()).unwrap(), doc);
    }
}

#[test]
fn fixtures_round_trip() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.file_name().unwrap() == "truncated.json" {
            continue;
        }
        let doc = ComplexDocument::load(&path).unwrap();
        assert_eq!(ComplexDocument::parse(&doc.emit()).unwrap(), doc, "{}", path.display());
        let (cx, _) = doc.to_complex(Tolerance::default()).unwrap();
        assert_eq!(ComplexDocument::from_complex(&cx), doc, "{}", path.display());
        n += 1;
    }
    assert!(n >= 12);
}

#[test]
fn unknown_keys_are_rejected() {
    let err = ComplexDocument::parse(r#"{"version":"1","id":"x","colour":"red"}"#).unwrap_err();
    assert_eq!(err.code(), "PARSE_ERROR");
}

#[test]
fn dangling_references_are_reported_at_build() {
    let doc =
        ComplexDocument::parse(r#"{"version":"1","id":"x","cycles":[{"id":"c","vertices":["a","b","c"]}]}"#).unwrap();
    let err = doc.to_complex(Tolerance::default()).unwrap_err();
    assert_eq!(err.code(), "UNRESOLVED_VERTEX");
}
