//! The JSON complex document: a flat, id-referenced description of a
//! planar cell complex. Keys are emitted in declaration order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use vortexprox::complex::{
    CellComplex, ComplexParts, Cycle, Edge, Hole, Payload, Skeleton, SkeletonKind, SuppliedProbe, Vertex, VortexCycle,
    VortexNerve,
};
use vortexprox::geometry::Point;
use vortexprox::Tolerance;

use crate::error::CliError;
use crate::report::to_json;

pub const VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub version: String,
    pub id: String,
    #[serde(default)]
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
    #[serde(default)]
    pub cycles: Vec<CycleEntry>,
    #[serde(default)]
    pub holes: Vec<HoleEntry>,
    #[serde(default)]
    pub skeletons: Vec<SkeletonEntry>,
    #[serde(default)]
    pub vortex_cycles: Vec<VortexEntry>,
    #[serde(default)]
    pub vortex_nerves: Vec<NerveEntry>,
    /// Supplied probe values, e.g. `persistenceDuration`.
    #[serde(default)]
    pub probes: Vec<ProbeEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleEntry {
    pub id: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoleEntry {
    pub id: String,
    pub boundary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletonEntry {
    pub id: String,
    pub kind: SkeletonKind,
    pub payload: Vec<String>,
    #[serde(default)]
    pub holes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VortexEntry {
    pub id: String,
    pub cycles: Vec<String>,
    #[serde(default)]
    pub holes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NerveEntry {
    pub id: String,
    pub vortex: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeEntry {
    pub entity: String,
    pub probe: String,
    pub value: f64,
}

/// A built complex plus the skeleton kinds the document declared, by
/// position.
pub type Loaded = (CellComplex<f64>, Vec<Option<SkeletonKind>>);

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.version != VERSION {
            return Err(vortexprox::Error::Malformed(format!(
                "unsupported document version `{}` (expected `{VERSION}`)",
                doc.version
            ))
            .into());
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Pretty JSON with 17 significant digits per number.
    pub fn emit(&self) -> String {
        to_json(self)
    }

    /// Builds the complex; referential integrity is checked here, geometry
    /// by the validators.
    pub fn to_complex(&self, tol: Tolerance<f64>) -> Result<Loaded, CliError> {
        let mut parts = ComplexParts::<f64> {
            id: self.id.clone(),
            ..Default::default()
        };
        parts.vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                position: Point::new(v.x, v.y),
            })
            .collect();
        parts.edges = self
            .edges
            .iter()
            .map(|e| Edge {
                source: e.source.clone(),
                target: e.target.clone(),
            })
            .collect();
        parts.cycles = self
            .cycles
            .iter()
            .map(|c| Cycle {
                id: c.id.clone(),
                vertices: c.vertices.clone(),
            })
            .collect();
        parts.holes = self
            .holes
            .iter()
            .map(|h| Hole {
                id: h.id.clone(),
                boundary: h.boundary.clone(),
            })
            .collect();
        let mut kinds = Vec::with_capacity(self.skeletons.len());
        for s in &self.skeletons {
            parts
                .skeletons
                .push(Skeleton::from_declared(&s.id, s.kind, &s.payload, &s.holes)?);
            kinds.push(Some(s.kind));
        }
        parts.vortex_cycles = self
            .vortex_cycles
            .iter()
            .map(|v| VortexCycle {
                id: v.id.clone(),
                cycles: v.cycles.clone(),
                holes: v.holes.clone(),
            })
            .collect();
        parts.vortex_nerves = self
            .vortex_nerves
            .iter()
            .map(|n| VortexNerve {
                id: n.id.clone(),
                vortex: n.vortex.clone(),
            })
            .collect();
        parts.probes = self
            .probes
            .iter()
            .map(|p| SuppliedProbe {
                entity: p.entity.clone(),
                probe: p.probe.clone(),
                value: p.value,
            })
            .collect();
        Ok((CellComplex::with_tolerance(parts, tol)?, kinds))
    }

    /// Document for a complex. Skeleton kinds follow the payload shape.
    pub fn from_complex(cx: &CellComplex<f64>) -> Self {
        ComplexDocument {
            version: VERSION.to_string(),
            id: cx.id.clone(),
            vertices: cx
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    x: v.position.x,
                    y: v.position.y,
                })
                .collect(),
            edges: cx
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    source: e.source.clone(),
                    target: e.target.clone(),
                })
                .collect(),
            cycles: cx
                .cycles()
                .iter()
                .map(|c| CycleEntry {
                    id: c.id.clone(),
                    vertices: c.vertices.clone(),
                })
                .collect(),
            holes: cx
                .holes()
                .iter()
                .map(|h| HoleEntry {
                    id: h.id.clone(),
                    boundary: h.boundary.clone(),
                })
                .collect(),
            skeletons: cx
                .skeletons()
                .iter()
                .map(|s| SkeletonEntry {
                    id: s.id.clone(),
                    kind: payload_kind(s),
                    payload: s.payload_ids(),
                    holes: s.holes.clone(),
                })
                .collect(),
            vortex_cycles: cx
                .vortex_cycles()
                .iter()
                .map(|v| VortexEntry {
                    id: v.id.clone(),
                    cycles: v.cycles.clone(),
                    holes: v.holes.clone(),
                })
                .collect(),
            vortex_nerves: cx
                .vortex_nerves()
                .iter()
                .map(|n| NerveEntry {
                    id: n.id.clone(),
                    vortex: n.vortex.clone(),
                })
                .collect(),
            probes: cx
                .supplied_probes()
                .iter()
                .map(|p| ProbeEntry {
                    entity: p.entity.clone(),
                    probe: p.probe.clone(),
                    value: p.value,
                })
                .collect(),
        }
    }
}

fn payload_kind(s: &Skeleton) -> SkeletonKind {
    match &s.payload {
        Payload::Vertex(_) => SkeletonKind::K0,
        Payload::Edge(..) => SkeletonKind::K1,
        Payload::Triangle(_) if s.holes.is_empty() => SkeletonKind::K2,
        Payload::Triangle(_) => SkeletonKind::K1_5,
        Payload::Path(_) => SkeletonKind::Path,
        Payload::Cycle(_) => SkeletonKind::Cycle,
        Payload::Vortex(_) => SkeletonKind::Vortex,
        Payload::Nerve(_) => SkeletonKind::Nerve,
    }
}
