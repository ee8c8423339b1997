//! One function per subcommand. Each returns a [`Report`]; `Err` is kept
//! for failures that prevent a report (unreadable input, bad arguments).

use std::path::Path;

use serde_json::{json, Map, Value};
use vortexprox::complex::{
    build_vortex_cycle, detect_nerve, geometry_of, point_sets_meet, validate_complex, CellComplex, CellRef, Payload,
    Violation,
};
use vortexprox::descriptors::{describe, features_match, FeatureVector, MatchMode, MatchPolicy, ProbeId, Target};
use vortexprox::generate::{random_complex, ComplexOptions};
use vortexprox::geometry::ClosedRegion;
use vortexprox::homology::{betti, betti_of_union, build_nerve_complex, verify_nerve_theorem};
use vortexprox::proximity::{check_axioms, Relation, Space};
use vortexprox::topology::{build_leader_topology, cluster_cw, leader_violations};
use vortexprox::{Error, Tolerance};

use crate::document::{ComplexDocument, Loaded};
use crate::error::CliError;
use crate::report::{Failure, Report};

pub const EPS_GEO_VAR: &str = "VORTEXPROX_EPS_GEO";

/// Settings shared by every command.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Context {
    pub tol: Tolerance<f64>,
}

impl Context {
    /// Defaults, with ε_geo taken from `VORTEXPROX_EPS_GEO` when set.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(EPS_GEO_VAR) {
            Ok(s) => {
                let geo: f64 = s.trim().parse().map_err(|_| CliError::Usage {
                    name: EPS_GEO_VAR,
                    message: format!("`{s}` is not a number"),
                })?;
                if !(geo.is_finite() && geo > 0.0) {
                    return Err(CliError::Usage {
                        name: EPS_GEO_VAR,
                        message: "must be positive and finite".to_string(),
                    });
                }
                Ok(Context {
                    tol: Tolerance::with_geo(geo),
                })
            }
            Err(_) => Ok(Context::default()),
        }
    }

    pub fn load(&self, path: &Path) -> Result<Loaded, CliError> {
        ComplexDocument::load(path)?.to_complex(self.tol)
    }
}

/// Which elements a cluster universe is made of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    Skeletons,
    Cycles,
    Vortices,
    Nerves,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::Skeletons => "skeletons",
            Universe::Cycles => "cycles",
            Universe::Vortices => "vortices",
            Universe::Nerves => "nerves",
        }
    }

    pub fn elements(self, cx: &CellComplex<f64>) -> Vec<CellRef> {
        match self {
            Universe::Skeletons => cx.skeletons().iter().map(|s| CellRef::Skeleton(s.id.clone())).collect(),
            Universe::Cycles => solid_cycles(cx).map(|c| CellRef::Cycle(c.to_string())).collect(),
            Universe::Vortices => cx
                .vortex_cycles()
                .iter()
                .map(|v| CellRef::Vortex(v.id.clone()))
                .collect(),
            Universe::Nerves => cx
                .vortex_nerves()
                .iter()
                .map(|n| CellRef::Nerve(n.id.clone()))
                .collect(),
        }
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// Cycles that are not hole boundaries.
fn solid_cycles(cx: &CellComplex<f64>) -> impl Iterator<Item = &str> {
    let holes: Vec<&str> = cx.hole_boundaries().collect();
    cx.cycles()
        .iter()
        .map(|c| c.id.as_str())
        .filter(move |c| !holes.contains(c))
}

fn label(cx: &CellComplex<f64>, t: &Target) -> String {
    match t {
        Target::Complex => format!("complex:{}", cx.id),
        Target::Cell(c) => c.to_string(),
    }
}

/// The complex itself, then every cycle, skeleton, vortex cycle and nerve.
fn targets(cx: &CellComplex<f64>) -> Vec<Target> {
    let mut out = vec![Target::Complex];
    out.extend(cx.cycles().iter().map(|c| Target::Cell(CellRef::Cycle(c.id.clone()))));
    out.extend(
        cx.skeletons()
            .iter()
            .map(|s| Target::Cell(CellRef::Skeleton(s.id.clone()))),
    );
    out.extend(
        cx.vortex_cycles()
            .iter()
            .map(|v| Target::Cell(CellRef::Vortex(v.id.clone()))),
    );
    out.extend(
        cx.vortex_nerves()
            .iter()
            .map(|n| Target::Cell(CellRef::Nerve(n.id.clone()))),
    );
    out
}

fn features_value(fv: &FeatureVector) -> Value {
    let mut m = Map::new();
    for (p, v) in fv.entries() {
        m.insert(p.name().to_string(), json!(v));
    }
    Value::Object(m)
}

fn error_value(e: &Error) -> Value {
    json!({"code": e.code(), "message": e.to_string()})
}

fn violation_code(v: &Violation) -> String {
    match v {
        Violation::Error { code, .. } => code.clone(),
        other => serde_json::to_value(other)
            .ok()
            .and_then(|x| x.get("kind").and_then(Value::as_str).map(str::to_string))
            .unwrap_or_else(|| "INVALID".to_string()),
    }
}

/// Structural validation of every cycle, hole, skeleton, vortex cycle and
/// declared nerve.
pub fn validate(ctx: &Context, path: &Path) -> Result<Report, CliError> {
    let (cx, kinds) = ctx.load(path)?;
    let reports = validate_complex(&cx, &kinds);
    let failures = reports
        .iter()
        .filter(|r| !r.ok)
        .map(|r| {
            Failure::new(
                format!("{}:{}", r.entity_type, r.entity),
                violation_code(&r.violations[0]),
                serde_json::to_string(&r.violations).expect("serializable"),
            )
        })
        .collect();
    Ok(Report::new(
        "validate",
        json!({"path": path_str(path)}),
        json!({"complex": cx.id, "entities": reports}),
        failures,
    ))
}

/// Feature vectors per entity. Without `probes`, every applicable probe;
/// with `probes`, exactly those, and an inapplicable one is a failure.
pub fn features(ctx: &Context, path: &Path, probes: Option<&[ProbeId]>) -> Result<Report, CliError> {
    let (cx, _) = ctx.load(path)?;
    let mut entities = Vec::new();
    let mut failures = Vec::new();
    for t in targets(&cx) {
        let name = label(&cx, &t);
        match probes {
            Some(ps) => match describe(&cx, &t, ps) {
                Ok(fv) => entities.push(json!({"entity": name, "features": features_value(&fv)})),
                Err(e) => {
                    failures.push(Failure::new(&name, e.code(), e.to_string()));
                    entities.push(json!({"entity": name, "error": error_value(&e)}));
                }
            },
            None => {
                let mut found = Vec::new();
                for p in ProbeId::ALL {
                    match describe(&cx, &t, &[p]) {
                        Ok(fv) => found.extend_from_slice(fv.entries()),
                        Err(Error::ProbeInapplicable { .. }) => {}
                        Err(e) => failures.push(Failure::new(&name, e.code(), e.to_string())),
                    }
                }
                let fv = FeatureVector::new(found)?;
                entities.push(json!({"entity": name, "features": features_value(&fv)}));
            }
        }
    }
    let requested: Value = match probes {
        Some(ps) => json!(ps.iter().map(|p| p.name()).collect::<Vec<_>>()),
        None => Value::Null,
    };
    Ok(Report::new(
        "features",
        json!({"path": path_str(path), "probes": requested}),
        json!({"complex": cx.id, "entities": entities}),
        failures,
    ))
}

/// Entities of a complex every probe of `policy` applies to, with their
/// descriptions.
fn applicable(cx: &CellComplex<f64>, policy: &MatchPolicy) -> Result<Vec<(String, FeatureVector)>, CliError> {
    let probes = policy.probe_ids();
    let mut out = Vec::new();
    for t in targets(cx) {
        match describe(cx, &t, &probes) {
            Ok(fv) => out.push((label(cx, &t), fv)),
            Err(Error::ProbeInapplicable { .. } | Error::MissingProbe(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// Descriptive connectedness between two documents.
///
/// Each document is read as the set of its entities that every requested
/// probe applies to; the verdict is set-level, so the documents are near
/// iff some pair matches. `diagonal` pairs entities of the same name.
pub fn compare(ctx: &Context, a: &Path, b: &Path, probes: &[ProbeId], mode: MatchMode) -> Result<Report, CliError> {
    let policy = MatchPolicy::new(probes, mode)?;
    let (ca, _) = ctx.load(a)?;
    let (cb, _) = ctx.load(b)?;
    let ea = applicable(&ca, &policy)?;
    let eb = applicable(&cb, &policy)?;
    if ea.is_empty() || eb.is_empty() {
        let which = if ea.is_empty() { path_str(a) } else { path_str(b) };
        return Err(Error::Malformed(format!(
            "no entity of `{which}` admits every requested probe; proximity to the empty set is undefined"
        ))
        .into());
    }
    let mut rows = Vec::new();
    let mut witness = Value::Null;
    let mut diagonal = Vec::new();
    for (na, fa) in &ea {
        let mut cols = Vec::new();
        for (nb, fb) in &eb {
            let m = features_match(fa, fb, &policy)?;
            if m.matched && witness.is_null() {
                witness =
                    json!({"a": na, "b": nb, "probes": m.matching_probes().map(|p| p.name()).collect::<Vec<_>>()});
            }
            if na == nb || (na.starts_with("complex:") && nb.starts_with("complex:")) {
                diagonal.push(json!({"entity": na, "near": m.matched}));
            }
            cols.push(json!({"entity": nb, "near": m.matched, "probes": m.probes}));
        }
        rows.push(json!({"entity": na, "a": features_value(fa), "against": cols}));
    }
    let near = !witness.is_null();
    Ok(Report::new(
        "compare",
        json!({
            "a": path_str(a),
            "b": path_str(b),
            "probes": probes.iter().map(|p| p.name()).collect::<Vec<_>>(),
            "mode": mode,
        }),
        json!({
            "relation": Relation::Dsconn,
            "near": near,
            "smirnov": u8::from(!near),
            "witness": witness,
            "diagonal": diagonal,
            "matrix": rows,
        }),
        Vec::new(),
    ))
}

/// Nerve detection over every vortex cycle, with the contact of each pair
/// of member cycles.
pub fn nerves(ctx: &Context, path: &Path) -> Result<Report, CliError> {
    let (cx, _) = ctx.load(path)?;
    let mut vortices = Vec::new();
    let mut found = Vec::new();
    let mut failures = Vec::new();
    for v in cx.vortex_cycles() {
        let cycles: Vec<&str> = v.cycles.iter().map(String::as_str).collect();
        let holes: Vec<&str> = v.holes.iter().map(String::as_str).collect();
        if let Err(e) = build_vortex_cycle(&v.id, &cycles, &holes, &cx) {
            failures.push(Failure::new(format!("vortex:{}", v.id), e.code(), e.to_string()));
            vortices.push(json!({"vortex": v.id, "error": error_value(&e)}));
            continue;
        }
        let geoms = v
            .cycles
            .iter()
            .map(|c| geometry_of(&cx, &CellRef::Cycle(c.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut pairs = Vec::new();
        for i in 0..geoms.len() {
            for j in i + 1..geoms.len() {
                let w = point_sets_meet(&geoms[i], &geoms[j], cx.tolerance());
                pairs.push(json!({"a": v.cycles[i], "b": v.cycles[j], "meet": w.is_some(), "witness": w}));
            }
        }
        let nerve = detect_nerve(v, &cx)?;
        if let Some(n) = &nerve {
            found.push(n.id.clone());
        }
        vortices.push(json!({"vortex": v.id, "nerve": nerve.is_some(), "pairs": pairs}));
    }
    for n in cx.vortex_nerves() {
        if !found.contains(&n.vortex) && !failures.iter().any(|f| f.entity == format!("vortex:{}", n.vortex)) {
            failures.push(Failure::new(
                format!("nerve:{}", n.id),
                "NOT_A_NERVE",
                format!("member cycles of vortex `{}` do not pairwise intersect", n.vortex),
            ));
        }
    }
    Ok(Report::new(
        "nerves",
        json!({"path": path_str(path)}),
        json!({"complex": cx.id, "nerves": found, "vortices": vortices}),
        failures,
    ))
}

/// Anchored Leader clusters and CW checks per cluster.
pub fn clusters(
    ctx: &Context,
    path: &Path,
    relation: Relation,
    policy: Option<MatchPolicy>,
    universe: Universe,
) -> Result<Report, CliError> {
    let (cx, _) = ctx.load(path)?;
    if relation == Relation::Dsconn && policy.is_none() {
        return Err(Error::MissingProbe("dsconn clusters need --probes".to_string()).into());
    }
    let inputs = json!({
        "path": path_str(path),
        "relation": relation,
        "probes": policy.as_ref().map(|p| p.probe_ids().iter().map(|x| x.name()).collect::<Vec<_>>()),
        "mode": policy.as_ref().map(|p| p.mode()),
        "universe": universe.name(),
    });
    let space = Space::new(&cx, universe.elements(&cx), policy)?;
    let t = build_leader_topology(&space, relation)?;
    let violations = leader_violations(&t, &space)?;
    let mut failures: Vec<Failure> = violations
        .iter()
        .map(|v| Failure::new(&cx.id, "LEADER_VIOLATION", v))
        .collect();
    let mut out = Vec::new();
    for c in &t.clusters {
        let cw = cluster_cw(&t, &c.anchor.to_string(), &cx)?;
        if !cw.passed {
            failures.push(Failure::new(
                c.anchor.to_string(),
                "CW_FAILURE",
                format!(
                    "closure finite: {}, weak topology: {}",
                    cw.closure_finite, cw.weak_topology
                ),
            ));
        }
        out.push(json!({
            "anchor": c.anchor.to_string(),
            "members": c.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "cw": cw,
        }));
    }
    let pairs: Vec<Value> = t
        .pairs
        .iter()
        .map(|p| {
            json!({
                "first": p.first.to_string(),
                "second": p.second.to_string(),
                "intersection": p.intersection.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "union": p.union.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Report::new(
        "clusters",
        inputs,
        json!({"complex": cx.id, "relation": relation, "clusters": out, "pairs": pairs, "violations": violations}),
        failures,
    ))
}

/// Filled regions of the 2-dimensional skeletons (K2, K1_5, CYCLE), with
/// their skeleton ids.
fn two_cells(cx: &CellComplex<f64>) -> Result<(Vec<String>, Vec<ClosedRegion<f64>>), CliError> {
    let mut ids = Vec::new();
    let mut family = Vec::new();
    for s in cx.skeletons() {
        if matches!(s.payload, Payload::Triangle(_) | Payload::Cycle(_)) {
            let g = geometry_of(cx, &CellRef::Skeleton(s.id.clone()))?;
            for part in g.shape.parts {
                ids.push(s.id.clone());
                family.push(part);
            }
        }
    }
    Ok((ids, family))
}

/// Betti numbers of the nerve of the 2-cells and of their union.
pub fn betti_cmd(ctx: &Context, path: &Path, resolution: usize) -> Result<Report, CliError> {
    let (cx, _) = ctx.load(path)?;
    let (ids, family) = two_cells(&cx)?;
    let nerve_complex = build_nerve_complex(&family, cx.tolerance());
    let nerve = betti(&nerve_complex)?;
    let union = betti_of_union(&family, resolution)?;
    Ok(Report::new(
        "betti",
        json!({"path": path_str(path), "resolution": resolution}),
        json!({
            "complex": cx.id,
            "regions": ids,
            "nerve_complex": nerve_complex,
            "nerve": nerve,
            "union": union,
        }),
        Vec::new(),
    ))
}

/// Compares the Betti numbers of the nerve and of the union of the
/// 2-cells; a mismatch is a failure.
pub fn nerve_theorem(ctx: &Context, path: &Path, resolution: usize) -> Result<Report, CliError> {
    let (cx, _) = ctx.load(path)?;
    let (ids, family) = two_cells(&cx)?;
    let r = verify_nerve_theorem(&family, resolution, cx.tolerance())?;
    let failures = if r.passed {
        Vec::new()
    } else {
        vec![Failure::new(
            &cx.id,
            "BETTI_MISMATCH",
            format!("nerve {:?} vs union {:?}", r.nerve, r.union),
        )]
    };
    Ok(Report::new(
        "nerve-theorem",
        json!({"path": path_str(path), "resolution": resolution}),
        json!({"complex": cx.id, "regions": ids, "theorem": r}),
        failures,
    ))
}

/// Axiom fuzzing over an already built complex.
pub fn axioms_on(cx: &CellComplex<f64>, inputs: Value, samples: usize, seed: u64) -> Result<Report, CliError> {
    let r = check_axioms(cx, samples, seed)?;
    let failures = r
        .counterexamples
        .iter()
        .map(|c| {
            Failure::new(
                c.axiom,
                "COUNTEREXAMPLE",
                format!("sample {} (seed {}): {}", c.sample, c.seed, c.detail),
            )
        })
        .collect();
    Ok(Report::new(
        "axioms",
        inputs,
        serde_json::to_value(&r).expect("serializable"),
        failures,
    ))
}

pub fn axioms(ctx: &Context, path: &Path, samples: usize, seed: u64) -> Result<Report, CliError> {
    let (cx, _) = ctx.load(path)?;
    axioms_on(
        &cx,
        json!({"path": path_str(path), "samples": samples, "seed": seed}),
        samples,
        seed,
    )
}

/// A seeded random valid complex as a document.
pub fn generate(seed: u64) -> ComplexDocument {
    ComplexDocument::from_complex(&random_complex(seed, ComplexOptions::default()))
}
