//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use vortexprox::complex::{CellComplex, CellRef, ComplexParts, Payload, Skeleton};
use vortexprox::descriptors::{describe, MatchMode, MatchPolicy, ProbeId, Target};
use vortexprox::generate::{hollow_triple, random_complex, random_convex_family, ComplexOptions};
use vortexprox::geometry::{self, Polygon};
use vortexprox::homology::verify_nerve_theorem;
use vortexprox::proximity::{conn, dsconn, sconn, Evidence, Relation, Space};
use vortexprox::topology::{build_leader_topology, cluster_cw, leader_violations};
use vortexprox::Tolerance;
use vortexprox_cli::commands::{self, Context};
use vortexprox_cli::document::ComplexDocument;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> CellComplex<f64> {
    ComplexDocument::load(&fixture(name))
        .and_then(|d| d.to_complex(Tolerance::default()))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .0
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let (mut checks, mut found, mut largest) = (0usize, 0usize, 0usize);
    for seed in 0..20u64 {
        let cx = random_complex(seed, ComplexOptions::default());
        largest = largest.max(cx.skeletons().len());
        let r = commands::axioms_on(&cx, json!({"seed": seed}), 500, seed).map_err(|e| e.to_string())?;
        let tallies = r.result["axioms"].as_array().expect("tallies");
        checks += tallies
            .iter()
            .map(|t| t["checked"].as_u64().unwrap() as usize)
            .sum::<usize>();
        found += r.failures.len();
        if let Some(f) = r.failures.first() {
            return Err(format!("seed {seed}: {} {}", f.entity, f.message));
        }
    }
    let t = start.elapsed();
    check(largest <= 25, || format!("complex with {largest} skeletons"))?;
    check(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "20 complexes x 500 samples, {checks} checks, {found} counterexamples, {:.1}s",
        t.as_secs_f64()
    ))
}

fn nerve_detection() -> Outcome {
    let r = commands::nerves(&Context::default(), &fixture("two_vortices.json")).map_err(|e| e.to_string())?;
    let res = &r.result;
    check(res["nerves"] == json!(["B"]), || format!("nerves {}", res["nerves"]))?;
    let v = res["vortices"].as_array().unwrap();
    check(v[0]["vortex"] == "A" && v[0]["nerve"] == false, || {
        "vortex A reported as a nerve".into()
    })?;
    let w = &v[1]["pairs"][0]["witness"];
    check(*w == json!({"type": "vertex", "at": "v13"}), || format!("witness {w}"))?;
    Ok("one nerve (B, shared vertex v13); none for A".into())
}

fn skeleton_conn() -> Outcome {
    let cx = load("vortex_and_paths.json");
    let (a, e, h) = (
        CellRef::Vortex("A".into()),
        CellRef::Skeleton("E".into()),
        CellRef::Skeleton("H".into()),
    );
    let ae = conn(&cx, &a, &e).map_err(|e| e.to_string())?;
    let w = ae.witness.as_ref().map(|w| w.evidence.clone());
    check(ae.near && w == Some(Evidence::Vertex { id: "v6".into() }), || {
        format!("conn(A,E) = {ae:?}")
    })?;
    let eh = conn(&cx, &e, &h).map_err(|e| e.to_string())?;
    check(!eh.near && eh.smirnov == 1, || format!("conn(E,H) = {eh:?}"))?;
    Ok("conn(vcyc A, skel E) near via v6; conn(skel E, skel H) far".into())
}

fn supplied_compare() -> Outcome {
    let ctx = Context::default();
    let (k1, k2) = (fixture("supplied_k1.json"), fixture("supplied_k2.json"));
    let near = commands::compare(
        &ctx,
        &k1,
        &k2,
        &[ProbeId::VertexCount, ProbeId::NerveCount],
        MatchMode::Any,
    )
    .map_err(|e| e.to_string())?;
    check(near.result["near"] == true, || {
        format!("{{vertexCount, nerveCount}} ANY: {}", near.result["near"])
    })?;
    let probes: Vec<&str> = near.result["witness"]["probes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap())
        .collect();
    check(probes == ["vertexCount", "nerveCount"], || {
        format!("matching probes {probes:?}")
    })?;
    let far = commands::compare(&ctx, &k1, &k2, &[ProbeId::HoleCount], MatchMode::All).map_err(|e| e.to_string())?;
    check(far.result["near"] == false, || "{holeCount} ALL came out near".into())?;
    let row = &far.result["matrix"][0]["against"][0]["probes"][0];
    check(row["a"] == 13.0 && row["b"] == 5.0, || format!("holeCount row {row}"))?;
    Ok("{vertexCount, nerveCount}/ANY near (35, 21 match); {holeCount}/ALL far (13 vs 5)".into())
}

fn far_but_alike() -> Outcome {
    let cx = load("four_nerves_shared.json");
    let by_cycles = MatchPolicy::new(&[ProbeId::CycleCount], MatchMode::Any).unwrap();
    let by_vertices = MatchPolicy::new(&[ProbeId::VertexCount], MatchMode::Any).unwrap();
    let nerve = |s: &str| CellRef::Nerve(s.into());
    let cycle = |s: &str| CellRef::Cycle(s.into());
    let mut pairs = Vec::new();
    for (a, b) in [("A", "B"), ("A", "H"), ("E", "B"), ("E", "H")] {
        pairs.push((nerve(a), nerve(b), &by_cycles));
    }
    for (a, b) in [("A2", "H1"), ("A2", "B2"), ("A1", "H1"), ("A1", "B2")] {
        pairs.push((cycle(a), cycle(b), &by_vertices));
    }
    for (a, b, policy) in &pairs {
        let c = conn(&cx, a, b).map_err(|e| e.to_string())?;
        let d = dsconn(&cx, a, b, policy).map_err(|e| e.to_string())?;
        check(!c.near, || format!("{a} conn {b} should be far: {c:?}"))?;
        check(d.near, || format!("{a} dsconn {b} should be near"))?;
    }
    for (a, b) in [("A", "E"), ("B", "H")] {
        let s = sconn(&cx, &nerve(a), &nerve(b)).map_err(|e| e.to_string())?;
        check(s.near, || format!("nerves {a}, {b} should overlap"))?;
    }
    Ok(format!(
        "{} farconn + dsconn pairs reproduced; A/E and B/H overlap",
        pairs.len()
    ))
}

fn nerve_theorem() -> Outcome {
    let start = Instant::now();
    let tol = Tolerance::default();
    let mut hollow = 0;
    for seed in 0..100u64 {
        let family = random_convex_family(seed, 512);
        let r = verify_nerve_theorem(&family, 512, &tol).map_err(|e| format!("seed {seed}: {e}"))?;
        check(r.passed, || {
            format!("seed {seed}: nerve {:?} union {:?}", r.nerve, r.union)
        })?;
        hollow += usize::from(r.nerve.b1 == 1);
    }
    let r = verify_nerve_theorem(&hollow_triple(), 512, &tol).map_err(|e| e.to_string())?;
    check(
        r.passed && r.nerve.b0 == 1 && r.nerve.b1 == 1 && r.union.b0 == 1 && r.union.b1 == 1,
        || format!("hollow triple: nerve {:?} union {:?}", r.nerve, r.union),
    )?;
    let f =
        commands::nerve_theorem(&Context::default(), &fixture("hollow_triple.json"), 512).map_err(|e| e.to_string())?;
    check(f.ok, || "hollow triple fixture failed".into())?;
    let t = start.elapsed();
    check(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "100/100 families pass ({hollow} with b1 = 1); hollow triple (1,1) = (1,1); {:.1}s",
        t.as_secs_f64()
    ))
}

fn leader_cw() -> Outcome {
    let policy = MatchPolicy::new(&[ProbeId::VertexCount], MatchMode::Any).unwrap();
    let (mut clusters, mut violations) = (0usize, 0usize);
    for seed in 1000..1020u64 {
        let cx = random_complex(seed, ComplexOptions::default());
        let cells = cx.skeletons().iter().map(|s| CellRef::Skeleton(s.id.clone())).collect();
        let space = Space::new(&cx, cells, Some(policy.clone())).map_err(|e| e.to_string())?;
        for rel in [Relation::Conn, Relation::Sconn, Relation::Dsconn] {
            let t = build_leader_topology(&space, rel).map_err(|e| e.to_string())?;
            let v = leader_violations(&t, &space).map_err(|e| e.to_string())?;
            violations += v.len();
            if let Some(first) = v.first() {
                return Err(format!("seed {seed} {rel}: {first}"));
            }
            for c in &t.clusters {
                let cw = cluster_cw(&t, &c.anchor.to_string(), &cx).map_err(|e| e.to_string())?;
                check(cw.closure_finite && cw.weak_topology, || {
                    format!("seed {seed} {rel} cluster {}: {cw:?}", c.anchor)
                })?;
                clusters += 1;
            }
        }
    }
    Ok(format!(
        "20 universes, {clusters} clusters under CONN/SCONN/DSCONN, {violations} violations"
    ))
}

fn star_polygon(rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let n = rng.gen_range(3..=40);
    let scale = 10f64.powf(rng.gen_range(-1.0..2.0));
    let (ox, oy) = (rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    if angles.len() < 3 {
        angles = vec![0.0, 2.0, 4.0];
    }
    angles
        .iter()
        .map(|a| {
            let r = scale * rng.gen_range(0.2..1.0);
            (ox + r * a.cos(), oy + r * a.sin())
        })
        .collect()
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

fn geometry_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0f64;
    for k in 0..1000 {
        let xy = star_polygon(&mut rng);
        let n = xy.len();
        // trapezoid form of the shoelace sum
        let area = (0..n)
            .map(|i| {
                let (a, b) = (xy[i], xy[(i + 1) % n]);
                (b.0 - a.0) * (b.1 + a.1)
            })
            .sum::<f64>()
            .abs()
            / 2.0;
        let perimeter: f64 = (0..n)
            .map(|i| {
                let (a, b) = (xy[i], xy[(i + 1) % n]);
                (b.0 - a.0).hypot(b.1 - a.1)
            })
            .sum();
        let mut diameter = 0f64;
        for a in &xy {
            for b in &xy {
                diameter = diameter.max((a.0 - b.0).hypot(a.1 - b.1));
            }
        }
        let poly = Polygon::<f64>::from_xy(&xy);
        let mut parts = ComplexParts::<f64>::default();
        parts.polygon("P", &xy);
        parts.skeleton(Skeleton::new("P", Payload::Cycle("P".into())));
        let cx = parts.build().map_err(|e| e.to_string())?;
        let fv = describe(
            &cx,
            &Target::Cell(CellRef::Skeleton("P".into())),
            &[ProbeId::Area, ProbeId::Perimeter, ProbeId::Diameter],
        )
        .map_err(|e| format!("polygon {k}: {e}"))?;
        let got = [
            (geometry::area(&geometry::ClosedRegion::solid(poly.clone())), area),
            (geometry::perimeter(&poly), perimeter),
            (geometry::diameter(&poly), diameter),
            (fv.get(ProbeId::Area).unwrap(), area),
            (fv.get(ProbeId::Perimeter).unwrap(), perimeter),
            (fv.get(ProbeId::Diameter).unwrap(), diameter),
        ];
        for (g, w) in got {
            let e = rel_err(g, w);
            worst = worst.max(e);
            check(e <= 1e-9, || format!("polygon {k}: {g} vs {w} (rel {e:e})"))?;
        }
    }
    Ok(format!("1000 polygons, worst relative error {worst:.1e}"))
}

fn round_trip() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut fixtures = 0;
    let mut names: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "truncated.json")
        .collect();
    names.sort();
    for p in &names {
        let doc = ComplexDocument::load(p).map_err(|e| format!("{}: {e}", p.display()))?;
        let back = ComplexDocument::parse(&doc.emit()).map_err(|e| e.to_string())?;
        check(back == doc, || format!("{} does not round-trip", p.display()))?;
        fixtures += 1;
    }
    for seed in 0..200u64 {
        let doc = commands::generate(seed);
        let text = doc.emit();
        let back = ComplexDocument::parse(&text).map_err(|e| e.to_string())?;
        check(back == doc && back.emit() == text, || {
            format!("random document {seed} does not round-trip")
        })?;
    }
    // equal seeds, equal bytes: in-process and through the binary
    let ctx = Context::default();
    let cx = random_complex(42, ComplexOptions::default());
    let a = commands::axioms_on(&cx, Value::Null, 100, 9)
        .map_err(|e| e.to_string())?
        .to_json();
    let b = commands::axioms_on(&cx, Value::Null, 100, 9)
        .map_err(|e| e.to_string())?
        .to_json();
    check(a == b, || "axiom reports differ across runs".into())?;
    let c1 = commands::clusters(
        &ctx,
        &fixture("four_nerves_shared.json"),
        Relation::Sconn,
        None,
        commands::Universe::Nerves,
    )
    .map_err(|e| e.to_string())?
    .to_json();
    let c2 = commands::clusters(
        &ctx,
        &fixture("four_nerves_shared.json"),
        Relation::Sconn,
        None,
        commands::Universe::Nerves,
    )
    .map_err(|e| e.to_string())?
    .to_json();
    check(c1 == c2, || "cluster reports differ across runs".into())?;
    let bin = env!("CARGO_BIN_EXE_vortexprox");
    let doc = fixture("vortex_and_paths.json");
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            Command::new(bin)
                .env_remove("VORTEXPROX_EPS_GEO")
                .args(["axioms", doc.to_str().unwrap(), "--samples", "200", "--seed", "17"])
                .output()
                .map(|o| o.stdout)
                .unwrap_or_default()
        })
        .collect();
    check(!runs[0].is_empty() && runs[0] == runs[1], || {
        "binary reports differ across runs".into()
    })?;
    Ok(format!(
        "{fixtures} fixtures and 200 random documents round-trip; reports byte-identical"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axiom suite", axiom_suite),
        ("two vortex cycles: nerve detection", nerve_detection),
        ("connectedness of skeletons", skeleton_conn),
        ("complex feature comparison", supplied_compare),
        ("far but descriptively near nerves and cycles", far_but_alike),
        ("nerve theorem on convex families", nerve_theorem),
        ("Leader clusters and CW checks", leader_cw),
        ("geometry oracles", geometry_oracles),
        ("round trip and determinism", round_trip),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".to_string())))
            .collect()
    });
    let mut failed = 0;
    for (k, ((name, _), outcome)) in criteria.iter().zip(&outcomes).enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({reason})", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
