use std::collections::HashSet;

use serde::Serialize;

use super::model::{CellComplex, Cycle, Payload, Skeleton, SkeletonKind};
use super::vortex::{build_vortex_cycle, nerve_failure};
use crate::error::{Error, Result};
use crate::geometry::predicates::segment_closest;
use crate::geometry::{curve_defects, hole_strictly_inside, polygons_disjoint, CurveDefect, Polygon, Segment};
use crate::Scalar;

/// A single broken invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    RepeatedVertex {
        vertex: String,
    },
    TooFewVertices {
        count: usize,
    },
    NonFiniteCoordinate {
        index: usize,
    },
    CoincidentVertices {
        first: usize,
        second: usize,
    },
    SelfIntersection {
        first_edge: usize,
        second_edge: usize,
    },
    NonPositiveArea,
    DegenerateEdge {
        vertex: String,
    },
    KindMismatch {
        declared: String,
        actual: String,
    },
    /// Pair of member cycles with empty intersection in a declared nerve.
    NotANerve {
        first: String,
        second: String,
    },
    /// Structural error raised while checking the entity.
    Error {
        code: String,
        message: String,
    },
}

impl From<CurveDefect> for Violation {
    fn from(d: CurveDefect) -> Self {
        match d {
            CurveDefect::TooFewVertices { count } => Violation::TooFewVertices { count },
            CurveDefect::NonFiniteCoordinate { index } => Violation::NonFiniteCoordinate { index },
            CurveDefect::CoincidentVertices { first, second } => Violation::CoincidentVertices { first, second },
            CurveDefect::SelfIntersection {
                first_edge,
                second_edge,
            } => Violation::SelfIntersection {
                first_edge,
                second_edge,
            },
            CurveDefect::NonPositiveArea => Violation::NonPositiveArea,
        }
    }
}

impl From<Error> for Violation {
    fn from(e: Error) -> Self {
        Violation::Error {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

/// Validation outcome for one entity; empty `violations` means OK.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entity: String,
    #[serde(rename = "type")]
    pub entity_type: &'static str,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn new(entity: &str, entity_type: &'static str, violations: Vec<Violation>) -> Self {
        ValidationReport {
            entity: entity.to_string(),
            entity_type,
            ok: violations.is_empty(),
            violations,
        }
    }
}

fn cycle_violations<T: Scalar>(c: &Cycle, cx: &CellComplex<T>) -> Result<Vec<Violation>> {
    let poly = cx.polygon_of(c)?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for v in &c.vertices {
        if !seen.insert(v) {
            out.push(Violation::RepeatedVertex { vertex: v.clone() });
        }
    }
    out.extend(
        curve_defects(&poly, cx.tolerance().geo)
            .into_iter()
            .map(Violation::from),
    );
    Ok(out)
}

/// Checks that `c` is a simple closed curve with positive area.
pub fn validate_cycle<T: Scalar>(c: &Cycle, cx: &CellComplex<T>) -> Result<ValidationReport> {
    Ok(ValidationReport::new(&c.id, "cycle", cycle_violations(c, cx)?))
}

pub(crate) fn ensure_valid_cycle<T: Scalar>(id: &str, cx: &CellComplex<T>) -> Result<Polygon<T>> {
    let c = cx.cycle(id)?;
    if !cycle_violations(c, cx)?.is_empty() {
        return Err(Error::Malformed(format!("cycle `{id}` is not a simple closed curve")));
    }
    cx.polygon_of(c)
}

/// Boundaries of `holes`, each a valid curve strictly inside `outer`, with
/// pairwise disjoint closed regions (so no hole nests in another).
fn holes_inside<T: Scalar>(outer: &Polygon<T>, holes: &[String], cx: &CellComplex<T>) -> Result<Vec<Polygon<T>>> {
    let eps = cx.tolerance().geo;
    let polys = holes
        .iter()
        .map(|h| ensure_valid_cycle(&cx.hole(h)?.boundary, cx))
        .collect::<Result<Vec<_>>>()?;
    for (k, p) in polys.iter().enumerate() {
        if !hole_strictly_inside(outer, p, eps) {
            return Err(Error::HoleOutside(holes[k].clone()));
        }
        for (l, q) in polys.iter().enumerate().skip(k + 1) {
            if !polygons_disjoint(p, q, eps) {
                return Err(Error::Malformed(format!(
                    "holes `{}` and `{}` overlap or nest",
                    holes[k], holes[l]
                )));
            }
        }
    }
    Ok(polys)
}

fn no_holes(s: &Skeleton) -> Result<()> {
    if s.holes.is_empty() {
        Ok(())
    } else {
        Err(Error::Malformed(format!("skeleton `{}` cannot carry holes", s.id)))
    }
}

fn distinct(ids: &[String], what: &str) -> Result<()> {
    let set: HashSet<_> = ids.iter().collect();
    if set.len() == ids.len() {
        Ok(())
    } else {
        Err(Error::Malformed(format!("{what} repeats a vertex")))
    }
}

/// Open polyline without self-contact other than consecutive edges meeting
/// at their shared vertex.
fn simple_path<T: Scalar>(pts: &[crate::geometry::Point<T>], eps: T) -> bool {
    let segs: Vec<Segment<T>> = pts.windows(2).map(|w| Segment::new(w[0], w[1])).collect();
    if segs.iter().any(|s| s.length() <= eps) {
        return false;
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if j == i + 1 {
                let (s, r) = (segs[i], segs[j]);
                // consecutive: reject folding back onto the previous edge
                let (u, v) = (s.a - s.b, r.b - r.a);
                if u.cross(v).abs() <= eps * u.norm() * v.norm() && u.dot(v) > T::zero() {
                    return false;
                }
            } else if segment_closest(segs[i], segs[j]).2 <= eps {
                return false;
            }
        }
    }
    true
}

/// Kind of a skeleton from its payload; a filled triangle punctured by holes
/// is `K1_5`.
pub fn classify_skeleton<T: Scalar>(s: &Skeleton, cx: &CellComplex<T>) -> Result<SkeletonKind> {
    let eps = cx.tolerance().geo;
    match &s.payload {
        Payload::Vertex(v) => {
            no_holes(s)?;
            cx.vertex(v)?;
            Ok(SkeletonKind::K0)
        }
        Payload::Edge(a, b) => {
            no_holes(s)?;
            if a == b || cx.position(a)?.distance(cx.position(b)?) <= eps {
                return Err(Error::Malformed(format!("edge of `{}` is degenerate", s.id)));
            }
            Ok(SkeletonKind::K1)
        }
        Payload::Path(ids) => {
            no_holes(s)?;
            if ids.len() < 3 {
                return Err(Error::Malformed(format!("path `{}` needs at least 3 vertices", s.id)));
            }
            distinct(ids, &format!("path `{}`", s.id))?;
            let pts = ids.iter().map(|v| cx.position(v)).collect::<Result<Vec<_>>>()?;
            if !simple_path(&pts, eps) {
                return Err(Error::Malformed(format!("path `{}` is not simple", s.id)));
            }
            Ok(SkeletonKind::Path)
        }
        Payload::Triangle(t) => {
            distinct(t, &format!("triangle `{}`", s.id))?;
            let tri = Polygon::new(t.iter().map(|v| cx.position(v)).collect::<Result<Vec<_>>>()?);
            if !curve_defects(&tri, eps).is_empty() {
                return Err(Error::Malformed(format!("triangle `{}` is degenerate", s.id)));
            }
            if s.holes.is_empty() {
                Ok(SkeletonKind::K2)
            } else {
                holes_inside(&tri, &s.holes, cx)?;
                Ok(SkeletonKind::K1_5)
            }
        }
        Payload::Cycle(c) => {
            let outer = ensure_valid_cycle(c, cx)?;
            holes_inside(&outer, &s.holes, cx)?;
            Ok(SkeletonKind::Cycle)
        }
        Payload::Vortex(v) => {
            no_holes(s)?;
            cx.vortex_cycle(v)?;
            Ok(SkeletonKind::Vortex)
        }
        Payload::Nerve(n) => {
            no_holes(s)?;
            cx.vortex_nerve(n)?;
            Ok(SkeletonKind::Nerve)
        }
    }
}

/// Checks a skeleton and, when `declared` is given, that it matches the
/// classified kind.
pub fn validate_skeleton<T: Scalar>(
    s: &Skeleton,
    declared: Option<SkeletonKind>,
    cx: &CellComplex<T>,
) -> ValidationReport {
    let violations = match classify_skeleton(s, cx) {
        Ok(actual) => match declared {
            Some(d) if d != actual => vec![Violation::KindMismatch {
                declared: d.name().to_string(),
                actual: actual.name().to_string(),
            }],
            _ => Vec::new(),
        },
        Err(e) => vec![e.into()],
    };
    ValidationReport::new(&s.id, "skeleton", violations)
}

/// Runs every structural validation of the complex: cycles, holes,
/// skeletons, vortex cycles and vortex nerves, in that order.
///
/// `declared` gives the declared kind of each skeleton, by position.
pub fn validate_complex<T: Scalar>(cx: &CellComplex<T>, declared: &[Option<SkeletonKind>]) -> Vec<ValidationReport> {
    let mut out = Vec::new();
    for c in cx.cycles() {
        out.push(match validate_cycle(c, cx) {
            Ok(r) => r,
            Err(e) => ValidationReport::new(&c.id, "cycle", vec![e.into()]),
        });
    }
    for h in cx.holes() {
        let v = match ensure_valid_cycle(&h.boundary, cx) {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.into()],
        };
        out.push(ValidationReport::new(&h.id, "hole", v));
    }
    for (k, s) in cx.skeletons().iter().enumerate() {
        out.push(validate_skeleton(s, declared.get(k).copied().flatten(), cx));
    }
    for v in cx.vortex_cycles() {
        let cycles: Vec<&str> = v.cycles.iter().map(String::as_str).collect();
        let holes: Vec<&str> = v.holes.iter().map(String::as_str).collect();
        let violations = match build_vortex_cycle(&v.id, &cycles, &holes, cx) {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.into()],
        };
        out.push(ValidationReport::new(&v.id, "vortex", violations));
    }
    for n in cx.vortex_nerves() {
        let violations = match cx.vortex_cycle(&n.vortex).and_then(|v| nerve_failure(v, cx)) {
            Ok(None) => Vec::new(),
            Ok(Some((first, second))) => vec![Violation::NotANerve { first, second }],
            Err(e) => vec![e.into()],
        };
        out.push(ValidationReport::new(&n.id, "nerve", violations));
    }
    out
}
