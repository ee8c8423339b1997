use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon};
use crate::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<T> {
    pub id: String,
    pub position: Point<T>,
}

/// Oriented 1-cell `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: String,
    pub target: String,
}

/// Closed 1-cycle given by its vertex ids; the closing edge is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub id: String,
    pub vertices: Vec<String>,
}

impl Cycle {
    pub fn new(id: impl Into<String>, vertices: &[&str]) -> Self {
        Cycle {
            id: id.into(),
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// 2-hole: a bounded region with empty interior, given by its boundary cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole {
    pub id: String,
    pub boundary: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SkeletonKind {
    K0,
    K1,
    #[serde(rename = "K1_5")]
    K1_5,
    K2,
    /// Open simple polygonal chain of 1-cells.
    #[serde(rename = "PATH")]
    Path,
    #[serde(rename = "CYCLE")]
    Cycle,
    #[serde(rename = "VORTEX")]
    Vortex,
    #[serde(rename = "NERVE")]
    Nerve,
}

impl SkeletonKind {
    pub fn name(self) -> &'static str {
        match self {
            SkeletonKind::K0 => "K0",
            SkeletonKind::K1 => "K1",
            SkeletonKind::K1_5 => "K1_5",
            SkeletonKind::K2 => "K2",
            SkeletonKind::Path => "PATH",
            SkeletonKind::Cycle => "CYCLE",
            SkeletonKind::Vortex => "VORTEX",
            SkeletonKind::Nerve => "NERVE",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "K0" => SkeletonKind::K0,
            "K1" => SkeletonKind::K1,
            "K1_5" => SkeletonKind::K1_5,
            "K2" => SkeletonKind::K2,
            "PATH" => SkeletonKind::Path,
            "CYCLE" => SkeletonKind::Cycle,
            "VORTEX" => SkeletonKind::Vortex,
            "NERVE" => SkeletonKind::Nerve,
            _ => return None,
        })
    }
}

/// The cells a skeleton is built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Vertex(String),
    Edge(String, String),
    Triangle([String; 3]),
    Path(Vec<String>),
    Cycle(String),
    Vortex(String),
    Nerve(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub id: String,
    pub payload: Payload,
    pub holes: Vec<String>,
}

impl Skeleton {
    pub fn new(id: impl Into<String>, payload: Payload) -> Self {
        Skeleton {
            id: id.into(),
            payload,
            holes: Vec::new(),
        }
    }

    pub fn with_holes(mut self, holes: &[&str]) -> Self {
        self.holes = holes.iter().map(|h| h.to_string()).collect();
        self
    }

    /// Builds a payload from a declared kind and its payload ids.
    pub fn from_declared(id: &str, kind: SkeletonKind, ids: &[String], holes: &[String]) -> Result<Self> {
        let bad = |want: &str| Error::Malformed(format!("skeleton `{id}` of kind {} needs {want}", kind.name()));
        let payload = match kind {
            SkeletonKind::K0 => match ids {
                [v] => Payload::Vertex(v.clone()),
                _ => return Err(bad("1 vertex id")),
            },
            SkeletonKind::K1 => match ids {
                [a, b] => Payload::Edge(a.clone(), b.clone()),
                _ => return Err(bad("2 vertex ids")),
            },
            SkeletonKind::K2 | SkeletonKind::K1_5 => match ids {
                [a, b, c] => Payload::Triangle([a.clone(), b.clone(), c.clone()]),
                _ => return Err(bad("3 vertex ids")),
            },
            SkeletonKind::Path => Payload::Path(ids.to_vec()),
            SkeletonKind::Cycle | SkeletonKind::Vortex | SkeletonKind::Nerve => match ids {
                [x] => match kind {
                    SkeletonKind::Cycle => Payload::Cycle(x.clone()),
                    SkeletonKind::Vortex => Payload::Vortex(x.clone()),
                    _ => Payload::Nerve(x.clone()),
                },
                _ => return Err(bad("exactly 1 payload id")),
            },
        };
        Ok(Skeleton {
            id: id.to_string(),
            payload,
            holes: holes.to_vec(),
        })
    }

    pub fn payload_ids(&self) -> Vec<String> {
        match &self.payload {
            Payload::Vertex(v) | Payload::Cycle(v) | Payload::Vortex(v) | Payload::Nerve(v) => vec![v.clone()],
            Payload::Edge(a, b) => vec![a.clone(), b.clone()],
            Payload::Triangle(t) => t.to_vec(),
            Payload::Path(p) => p.clone(),
        }
    }
}

/// Collection of at least two non-concentric, nesting or overlapping cycles
/// sharing interior. Construct through
/// [`build_vortex_cycle`](super::build_vortex_cycle) to have the invariants
/// checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VortexCycle {
    pub id: String,
    pub cycles: Vec<String>,
    pub holes: Vec<String>,
}

/// Vortex cycle whose member cycles pairwise intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VortexNerve {
    pub id: String,
    pub vortex: String,
}

/// User-supplied probe value attached to an entity.
#[derive(Clone, Debug, PartialEq)]
pub struct SuppliedProbe {
    pub entity: String,
    pub probe: String,
    pub value: f64,
}

/// Finite planar cell complex. All ids resolve (checked by [`CellComplex::new`]);
/// geometric validity is checked separately by the validators.
#[derive(Clone, Debug, PartialEq)]
pub struct CellComplex<T> {
    pub id: String,
    vertices: Vec<Vertex<T>>,
    edges: Vec<Edge>,
    cycles: Vec<Cycle>,
    holes: Vec<Hole>,
    skeletons: Vec<Skeleton>,
    vortex_cycles: Vec<VortexCycle>,
    vortex_nerves: Vec<VortexNerve>,
    probes: Vec<SuppliedProbe>,
    tol: Tolerance<T>,
    index: Index,
}

#[derive(Clone, Debug, Default, PartialEq)]
struct Index {
    vertices: HashMap<String, usize>,
    cycles: HashMap<String, usize>,
    holes: HashMap<String, usize>,
    skeletons: HashMap<String, usize>,
    vortex_cycles: HashMap<String, usize>,
    vortex_nerves: HashMap<String, usize>,
}

fn index_of<'a>(kind: &'static str, ids: impl Iterator<Item = &'a String>) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (k, id) in ids.enumerate() {
        if map.insert(id.clone(), k).is_some() {
            return Err(Error::DuplicateId { kind, id: id.clone() });
        }
    }
    Ok(map)
}

/// Loose parts of a complex, assembled by [`CellComplex::new`].
#[derive(Clone, Debug, Default)]
pub struct ComplexParts<T> {
    pub id: String,
    pub vertices: Vec<Vertex<T>>,
    pub edges: Vec<Edge>,
    pub cycles: Vec<Cycle>,
    pub holes: Vec<Hole>,
    pub skeletons: Vec<Skeleton>,
    pub vortex_cycles: Vec<VortexCycle>,
    pub vortex_nerves: Vec<VortexNerve>,
    pub probes: Vec<SuppliedProbe>,
}

impl<T: Scalar> ComplexParts<T> {
    pub fn vertex(&mut self, id: &str, x: f64, y: f64) -> &mut Self {
        self.vertices.push(Vertex {
            id: id.to_string(),
            position: Point::new(T::lit(x), T::lit(y)),
        });
        self
    }

    pub fn cycle(&mut self, id: &str, vertices: &[&str]) -> &mut Self {
        self.cycles.push(Cycle::new(id, vertices));
        self
    }

    /// Adds vertices `{id}.{k}` at `xy` and a cycle `id` through them.
    pub fn polygon(&mut self, id: &str, xy: &[(f64, f64)]) -> &mut Self {
        let ids: Vec<String> = (0..xy.len()).map(|k| format!("{id}.{k}")).collect();
        for (vid, &(x, y)) in ids.iter().zip(xy) {
            self.vertex(vid, x, y);
        }
        self.cycles.push(Cycle {
            id: id.to_string(),
            vertices: ids,
        });
        self
    }

    pub fn hole(&mut self, id: &str, boundary: &str) -> &mut Self {
        self.holes.push(Hole {
            id: id.to_string(),
            boundary: boundary.to_string(),
        });
        self
    }

    pub fn skeleton(&mut self, s: Skeleton) -> &mut Self {
        self.skeletons.push(s);
        self
    }

    pub fn vortex(&mut self, id: &str, cycles: &[&str], holes: &[&str]) -> &mut Self {
        self.vortex_cycles.push(VortexCycle {
            id: id.to_string(),
            cycles: cycles.iter().map(|c| c.to_string()).collect(),
            holes: holes.iter().map(|h| h.to_string()).collect(),
        });
        self
    }

    pub fn nerve(&mut self, id: &str, vortex: &str) -> &mut Self {
        self.vortex_nerves.push(VortexNerve {
            id: id.to_string(),
            vortex: vortex.to_string(),
        });
        self
    }

    pub fn build(&self) -> Result<CellComplex<T>> {
        CellComplex::new(self.clone())
    }
}

impl<T: Scalar> CellComplex<T> {
    pub fn new(parts: ComplexParts<T>) -> Result<Self> {
        Self::with_tolerance(parts, Tolerance::default())
    }

    pub fn with_tolerance(parts: ComplexParts<T>, tol: Tolerance<T>) -> Result<Self> {
        let index = Index {
            vertices: index_of("vertex", parts.vertices.iter().map(|v| &v.id))?,
            cycles: index_of("cycle", parts.cycles.iter().map(|c| &c.id))?,
            holes: index_of("hole", parts.holes.iter().map(|h| &h.id))?,
            skeletons: index_of("skeleton", parts.skeletons.iter().map(|s| &s.id))?,
            vortex_cycles: index_of("vortex cycle", parts.vortex_cycles.iter().map(|v| &v.id))?,
            vortex_nerves: index_of("vortex nerve", parts.vortex_nerves.iter().map(|n| &n.id))?,
        };
        let cx = CellComplex {
            id: parts.id,
            vertices: parts.vertices,
            edges: parts.edges,
            cycles: parts.cycles,
            holes: parts.holes,
            skeletons: parts.skeletons,
            vortex_cycles: parts.vortex_cycles,
            vortex_nerves: parts.vortex_nerves,
            probes: parts.probes,
            tol,
            index,
        };
        cx.check_references()?;
        Ok(cx)
    }

    fn check_references(&self) -> Result<()> {
        let unresolved = |kind: &'static str, id: &String| Error::UnresolvedId { kind, id: id.clone() };
        for v in &self.vertices {
            if !v.position.is_finite() {
                return Err(Error::Malformed(format!(
                    "vertex `{}` has a non-finite coordinate",
                    v.id
                )));
            }
        }
        for e in &self.edges {
            self.vertex(&e.source)?;
            self.vertex(&e.target)?;
        }
        for c in &self.cycles {
            for v in &c.vertices {
                self.vertex(v)?;
            }
        }
        for h in &self.holes {
            self.cycle(&h.boundary)?;
        }
        for s in &self.skeletons {
            match &s.payload {
                Payload::Vertex(v) => {
                    self.vertex(v)?;
                }
                Payload::Edge(a, b) => {
                    self.vertex(a)?;
                    self.vertex(b)?;
                }
                Payload::Triangle(t) => {
                    for v in t {
                        self.vertex(v)?;
                    }
                }
                Payload::Path(p) => {
                    for v in p {
                        self.vertex(v)?;
                    }
                }
                Payload::Cycle(c) => {
                    self.cycle(c)?;
                }
                Payload::Vortex(v) => {
                    self.vortex_cycle(v)?;
                }
                Payload::Nerve(n) => {
                    self.vortex_nerve(n)?;
                }
            }
            for h in &s.holes {
                self.hole(h)?;
            }
        }
        for v in &self.vortex_cycles {
            for c in &v.cycles {
                self.cycle(c)?;
            }
            for h in &v.holes {
                self.hole(h)?;
            }
        }
        for n in &self.vortex_nerves {
            if !self.index.vortex_cycles.contains_key(&n.vortex) {
                return Err(unresolved("vortex cycle", &n.vortex));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tol
    }

    pub fn set_tolerance(&mut self, tol: Tolerance<T>) {
        self.tol = tol;
    }

    pub fn vertices(&self) -> &[Vertex<T>] {
        &self.vertices
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }
    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }
    pub fn skeletons(&self) -> &[Skeleton] {
        &self.skeletons
    }
    pub fn vortex_cycles(&self) -> &[VortexCycle] {
        &self.vortex_cycles
    }
    pub fn vortex_nerves(&self) -> &[VortexNerve] {
        &self.vortex_nerves
    }
    pub fn supplied_probes(&self) -> &[SuppliedProbe] {
        &self.probes
    }

    pub fn vertex(&self, id: &str) -> Result<&Vertex<T>> {
        self.index
            .vertices
            .get(id)
            .map(|&k| &self.vertices[k])
            .ok_or_else(|| Error::UnresolvedVertex(id.to_string()))
    }

    pub fn position(&self, id: &str) -> Result<Point<T>> {
        self.vertex(id).map(|v| v.position)
    }

    pub fn cycle(&self, id: &str) -> Result<&Cycle> {
        self.index
            .cycles
            .get(id)
            .map(|&k| &self.cycles[k])
            .ok_or_else(|| Error::UnresolvedId {
                kind: "cycle",
                id: id.to_string(),
            })
    }

    pub fn hole(&self, id: &str) -> Result<&Hole> {
        self.index
            .holes
            .get(id)
            .map(|&k| &self.holes[k])
            .ok_or_else(|| Error::UnresolvedId {
                kind: "hole",
                id: id.to_string(),
            })
    }

    pub fn skeleton(&self, id: &str) -> Result<&Skeleton> {
        self.index
            .skeletons
            .get(id)
            .map(|&k| &self.skeletons[k])
            .ok_or_else(|| Error::UnresolvedId {
                kind: "skeleton",
                id: id.to_string(),
            })
    }

    pub fn vortex_cycle(&self, id: &str) -> Result<&VortexCycle> {
        self.index
            .vortex_cycles
            .get(id)
            .map(|&k| &self.vortex_cycles[k])
            .ok_or_else(|| Error::UnresolvedId {
                kind: "vortex cycle",
                id: id.to_string(),
            })
    }

    pub fn vortex_nerve(&self, id: &str) -> Result<&VortexNerve> {
        self.index
            .vortex_nerves
            .get(id)
            .map(|&k| &self.vortex_nerves[k])
            .ok_or_else(|| Error::UnresolvedId {
                kind: "vortex nerve",
                id: id.to_string(),
            })
    }

    /// Embedded polygon of a cycle.
    pub fn polygon_of(&self, c: &Cycle) -> Result<Polygon<T>> {
        c.vertices
            .iter()
            .map(|v| self.position(v))
            .collect::<Result<Vec<_>>>()
            .map(Polygon::new)
    }

    pub fn cycle_polygon(&self, id: &str) -> Result<Polygon<T>> {
        self.polygon_of(self.cycle(id)?)
    }

    pub fn hole_polygon(&self, id: &str) -> Result<Polygon<T>> {
        self.cycle_polygon(&self.hole(id)?.boundary)
    }

    /// Ids of cycles serving as hole boundaries.
    pub fn hole_boundaries(&self) -> impl Iterator<Item = &str> {
        self.holes.iter().map(|h| h.boundary.as_str())
    }

    pub fn into_parts(self) -> ComplexParts<T> {
        ComplexParts {
            id: self.id,
            vertices: self.vertices,
            edges: self.edges,
            cycles: self.cycles,
            holes: self.holes,
            skeletons: self.skeletons,
            vortex_cycles: self.vortex_cycles,
            vortex_nerves: self.vortex_nerves,
            probes: self.probes,
        }
    }
}
