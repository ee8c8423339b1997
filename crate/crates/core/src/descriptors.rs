//! Probe functions, feature vectors and descriptive matching.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::complex::{cycles_meet, geometry_of, CellComplex, CellGeometry, CellRef, Payload, VortexCycle};
use crate::error::{Error, Result};
use crate::geometry::Shape;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProbeId {
    VertexCount,
    HoleCount,
    CycleCount,
    OverlapCount,
    Area,
    MaxArea,
    Perimeter,
    Diameter,
    NerveCount,
    NerveCycleCount,
    PersistenceDuration,
}

impl ProbeId {
    pub const ALL: [ProbeId; 11] = [
        ProbeId::VertexCount,
        ProbeId::HoleCount,
        ProbeId::CycleCount,
        ProbeId::OverlapCount,
        ProbeId::Area,
        ProbeId::MaxArea,
        ProbeId::Perimeter,
        ProbeId::Diameter,
        ProbeId::NerveCount,
        ProbeId::NerveCycleCount,
        ProbeId::PersistenceDuration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProbeId::VertexCount => "vertexCount",
            ProbeId::HoleCount => "holeCount",
            ProbeId::CycleCount => "cycleCount",
            ProbeId::OverlapCount => "overlapCount",
            ProbeId::Area => "area",
            ProbeId::MaxArea => "maxArea",
            ProbeId::Perimeter => "perimeter",
            ProbeId::Diameter => "diameter",
            ProbeId::NerveCount => "nerveCount",
            ProbeId::NerveCycleCount => "nerveCycleCount",
            ProbeId::PersistenceDuration => "persistenceDuration",
        }
    }

    /// Parses a probe name; unknown names are inapplicable to everything.
    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::ProbeInapplicable {
                probe: name.to_string(),
                target: "any target (unknown probe)".to_string(),
            })
    }

    /// Parses a comma separated probe list.
    pub fn parse_list(list: &str) -> Result<Vec<Self>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Self::parse)
            .collect()
    }

    pub fn is_count(self) -> bool {
        matches!(
            self,
            ProbeId::VertexCount
                | ProbeId::HoleCount
                | ProbeId::CycleCount
                | ProbeId::OverlapCount
                | ProbeId::NerveCount
                | ProbeId::NerveCycleCount
        )
    }
}

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ProbeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The image of a description map: `(probe, value)` pairs in request order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FeatureVector {
    entries: Vec<(ProbeId, f64)>,
}

impl FeatureVector {
    pub fn new(entries: Vec<(ProbeId, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (p, v) in &entries {
            if !seen.insert(*p) {
                return Err(Error::Malformed(format!(
                    "probe `{p}` appears twice in a feature vector"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Malformed(format!("probe `{p}` has a non-finite value")));
            }
        }
        Ok(FeatureVector { entries })
    }

    pub fn entries(&self) -> &[(ProbeId, f64)] {
        &self.entries
    }

    pub fn get(&self, probe: ProbeId) -> Option<f64> {
        self.entries.iter().find(|(p, _)| *p == probe).map(|(_, v)| *v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum ProbeTolerance {
    Absolute(f64),
    /// Relative to the larger magnitude of the two values.
    Relative(f64),
}

impl ProbeTolerance {
    pub fn accepts(self, a: f64, b: f64) -> bool {
        let d = (a - b).abs();
        match self {
            ProbeTolerance::Absolute(t) => d <= t,
            ProbeTolerance::Relative(t) => d <= t * a.abs().max(b.abs()),
        }
    }

    /// Exact for counts, `1e-6` relative for geometric measures.
    pub fn default_for(probe: ProbeId) -> Self {
        if probe.is_count() {
            ProbeTolerance::Absolute(0.0)
        } else {
            ProbeTolerance::Relative(1e-6)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MatchMode {
    /// At least one probe matches.
    #[default]
    Any,
    /// Every probe matches.
    All,
}

impl MatchMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "any" => Some(MatchMode::Any),
            "all" => Some(MatchMode::All),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchPolicy {
    probes: Vec<(ProbeId, ProbeTolerance)>,
    mode: MatchMode,
}

impl MatchPolicy {
    /// Policy with default tolerances; `probes` must be nonempty.
    pub fn new(probes: &[ProbeId], mode: MatchMode) -> Result<Self> {
        Self::with_tolerances(
            probes.iter().map(|p| (*p, ProbeTolerance::default_for(*p))).collect(),
            mode,
        )
    }

    pub fn with_tolerances(probes: Vec<(ProbeId, ProbeTolerance)>, mode: MatchMode) -> Result<Self> {
        if probes.is_empty() {
            return Err(Error::ProbeInapplicable {
                probe: String::new(),
                target: "an empty probe list".to_string(),
            });
        }
        Ok(MatchPolicy { probes, mode })
    }

    pub fn probes(&self) -> impl Iterator<Item = ProbeId> + '_ {
        self.probes.iter().map(|(p, _)| *p)
    }

    pub fn probe_ids(&self) -> Vec<ProbeId> {
        self.probes().collect()
    }

    pub fn mode(&self) -> MatchMode {
        self.mode
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeMatch {
    pub probe: ProbeId,
    pub a: f64,
    pub b: f64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchReport {
    pub probes: Vec<ProbeMatch>,
    pub mode: MatchMode,
    pub matched: bool,
}

impl MatchReport {
    pub fn matching_probes(&self) -> impl Iterator<Item = ProbeId> + '_ {
        self.probes.iter().filter(|m| m.matches).map(|m| m.probe)
    }
}

/// Compares two feature vectors probe by probe under `policy`.
pub fn features_match(a: &FeatureVector, b: &FeatureVector, policy: &MatchPolicy) -> Result<MatchReport> {
    let mut probes = Vec::with_capacity(policy.probes.len());
    for &(p, tol) in &policy.probes {
        let va = a.get(p).ok_or_else(|| Error::MissingProbe(p.name().to_string()))?;
        let vb = b.get(p).ok_or_else(|| Error::MissingProbe(p.name().to_string()))?;
        probes.push(ProbeMatch {
            probe: p,
            a: va,
            b: vb,
            matches: tol.accepts(va, vb),
        });
    }
    let matched = match policy.mode {
        MatchMode::Any => probes.iter().any(|m| m.matches),
        MatchMode::All => probes.iter().all(|m| m.matches),
    };
    Ok(MatchReport {
        probes,
        mode: policy.mode,
        matched,
    })
}

/// What a feature vector describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Cell(CellRef),
    Complex,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Cell(c) => c.fmt(f),
            Target::Complex => f.write_str("complex"),
        }
    }
}

/// What kind of object a target resolves to, after following skeleton
/// payloads.
enum Resolved<'a> {
    Cycle,
    Bare,
    Filled,
    Vortex(&'a VortexCycle, bool),
    Complex,
}

fn resolve<'a, T: Scalar>(cx: &'a CellComplex<T>, target: &Target) -> Result<Resolved<'a>> {
    Ok(match target {
        Target::Complex => Resolved::Complex,
        Target::Cell(CellRef::Cycle(_)) => Resolved::Cycle,
        Target::Cell(CellRef::Vortex(v)) => Resolved::Vortex(cx.vortex_cycle(v)?, false),
        Target::Cell(CellRef::Nerve(n)) => Resolved::Vortex(cx.vortex_cycle(&cx.vortex_nerve(n)?.vortex)?, true),
        Target::Cell(CellRef::Skeleton(s)) => match &cx.skeleton(s)?.payload {
            Payload::Vertex(_) => Resolved::Bare,
            Payload::Edge(..) => Resolved::Bare,
            Payload::Path(_) => Resolved::Bare,
            Payload::Triangle(_) | Payload::Cycle(_) => Resolved::Filled,
            Payload::Vortex(v) => Resolved::Vortex(cx.vortex_cycle(v)?, false),
            Payload::Nerve(n) => Resolved::Vortex(cx.vortex_cycle(&cx.vortex_nerve(n)?.vortex)?, true),
        },
    })
}

fn count(n: usize) -> f64 {
    n as f64
}

fn diameter<T: Scalar>(g: &CellGeometry<T>) -> f64 {
    let mut best = T::zero();
    for (i, (_, p)) in g.vertices.iter().enumerate() {
        for (_, q) in &g.vertices[i + 1..] {
            best = best.max(p.distance(*q));
        }
    }
    best.as_f64()
}

fn overlap_count<T: Scalar>(cycles: &[String], cx: &CellComplex<T>) -> Result<usize> {
    let mut n = 0;
    for a in cycles {
        let mut hit = false;
        for b in cycles {
            if a != b && cycles_meet(a, b, cx)? {
                hit = true;
                break;
            }
        }
        n += usize::from(hit);
    }
    Ok(n)
}

fn vortex_shape<T: Scalar>(v: &VortexCycle, cx: &CellComplex<T>) -> Result<Shape<T>> {
    Ok(geometry_of(cx, &CellRef::Vortex(v.id.clone()))?.shape)
}

fn supplied<T: Scalar>(cx: &CellComplex<T>, target: &Target, probe: ProbeId) -> Option<f64> {
    let entity = match target {
        Target::Complex => cx.id.as_str(),
        Target::Cell(c) => c.id(),
    };
    cx.supplied_probes()
        .iter()
        .find(|s| s.entity == entity && s.probe == probe.name())
        .map(|s| s.value)
}

/// Feature vector of `target` for `probes`, in request order.
///
/// A value supplied with the complex for the same entity and probe takes
/// precedence over the computed one; `persistenceDuration` is only ever
/// supplied.
pub fn describe<T: Scalar>(cx: &CellComplex<T>, target: &Target, probes: &[ProbeId]) -> Result<FeatureVector> {
    if probes.is_empty() {
        return Err(Error::ProbeInapplicable {
            probe: String::new(),
            target: "an empty probe list".to_string(),
        });
    }
    let resolved = resolve(cx, target)?;
    let tol = cx.tolerance();
    let geom = match (&resolved, target) {
        (Resolved::Complex, _) => None,
        (_, Target::Cell(c)) => Some(geometry_of(cx, c)?),
        _ => None,
    };
    let inapplicable = |p: ProbeId| Error::ProbeInapplicable {
        probe: p.name().to_string(),
        target: target.to_string(),
    };
    let mut entries = Vec::with_capacity(probes.len());
    for &p in probes {
        if let Some(v) = supplied(cx, target, p) {
            entries.push((p, v));
            continue;
        }
        let v = match (&resolved, p) {
            (_, ProbeId::PersistenceDuration) => return Err(inapplicable(p)),
            (Resolved::Complex, _) => complex_probe(cx, p).ok_or_else(|| inapplicable(p))??,
            (r, _) => {
                let g = geom.as_ref().expect("cell geometry");
                match (r, p) {
                    (_, ProbeId::VertexCount) => count(g.vertices.len()),
                    (_, ProbeId::Diameter) => diameter(g),
                    (_, ProbeId::Area) => g.shape.area(tol).as_f64(),
                    (Resolved::Bare, ProbeId::HoleCount) => 0.0,
                    (Resolved::Cycle, ProbeId::HoleCount) => 0.0,
                    (Resolved::Cycle | Resolved::Filled, ProbeId::CycleCount) => 1.0,
                    (Resolved::Cycle | Resolved::Filled, ProbeId::Perimeter) => {
                        g.shape.parts[0].outer.perimeter().as_f64()
                    }
                    (Resolved::Filled, ProbeId::HoleCount) => count(g.shape.parts[0].holes.len()),
                    (Resolved::Vortex(v, _), ProbeId::HoleCount) => count(v.holes.len()),
                    (Resolved::Vortex(v, _), ProbeId::CycleCount) => count(v.cycles.len()),
                    (Resolved::Vortex(v, true), ProbeId::NerveCycleCount) => count(v.cycles.len()),
                    (Resolved::Vortex(v, _), ProbeId::OverlapCount) => count(overlap_count(&v.cycles, cx)?),
                    (Resolved::Vortex(_, _), ProbeId::Perimeter) => g.shape.outline_length(tol).as_f64(),
                    (Resolved::Vortex(v, _), ProbeId::MaxArea) => {
                        let mut best = T::zero();
                        for c in &v.cycles {
                            best = best.max(cx.cycle_polygon(c)?.area());
                        }
                        best.as_f64()
                    }
                    _ => return Err(inapplicable(p)),
                }
            }
        };
        entries.push((p, v));
    }
    FeatureVector::new(entries)
}

/// Complex-level probes; `None` when inapplicable.
fn complex_probe<T: Scalar>(cx: &CellComplex<T>, p: ProbeId) -> Option<Result<f64>> {
    let hole_cycles: BTreeSet<&str> = cx.hole_boundaries().collect();
    let solid_cycles = || cx.cycles().iter().filter(|c| !hole_cycles.contains(c.id.as_str()));
    Some(match p {
        ProbeId::VertexCount => Ok(count(cx.vertices().len())),
        ProbeId::HoleCount => Ok(count(cx.holes().len())),
        ProbeId::CycleCount => Ok(count(solid_cycles().count())),
        ProbeId::OverlapCount => {
            let ids: Vec<String> = solid_cycles().map(|c| c.id.clone()).collect();
            overlap_count(&ids, cx).map(count)
        }
        ProbeId::Diameter => {
            let mut best = T::zero();
            let vs = cx.vertices();
            for (i, a) in vs.iter().enumerate() {
                for b in &vs[i + 1..] {
                    best = best.max(a.position.distance(b.position));
                }
            }
            Ok(best.as_f64())
        }
        ProbeId::MaxArea => (|| {
            let mut best = T::zero();
            for v in cx.vortex_cycles() {
                best = best.max(vortex_shape(v, cx)?.area(cx.tolerance()));
            }
            Ok(best.as_f64())
        })(),
        ProbeId::NerveCount => Ok(count(cx.vortex_nerves().len())),
        ProbeId::NerveCycleCount => (|| {
            let mut set = BTreeSet::new();
            for n in cx.vortex_nerves() {
                set.extend(cx.vortex_cycle(&n.vortex)?.cycles.iter().cloned());
            }
            Ok(count(set.len()))
        })(),
        ProbeId::Area | ProbeId::Perimeter | ProbeId::PersistenceDuration => return None,
    })
}
