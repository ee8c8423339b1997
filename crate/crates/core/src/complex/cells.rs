//! Point-set and filled-region views of the entities of a complex.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::model::{CellComplex, Payload};
use crate::error::Result;
use crate::geometry::predicates::{point_segment_distance, project_param, segment_closest};
use crate::geometry::{ClosedRegion, Point, Polygon, Segment, Shape};
use crate::{Scalar, Tolerance};

/// Reference to anything in a complex that occupies space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", content = "id", rename_all = "lowercase")]
pub enum CellRef {
    Skeleton(String),
    Cycle(String),
    Vortex(String),
    Nerve(String),
}

impl CellRef {
    pub fn id(&self) -> &str {
        match self {
            CellRef::Skeleton(s) | CellRef::Cycle(s) | CellRef::Vortex(s) | CellRef::Nerve(s) => s,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            CellRef::Skeleton(_) => "skeleton",
            CellRef::Cycle(_) => "cycle",
            CellRef::Vortex(_) => "vortex",
            CellRef::Nerve(_) => "nerve",
        }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.type_name(), self.id())
    }
}

/// Where two point-sets meet.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", content = "at", rename_all = "lowercase")]
pub enum Witness<T> {
    /// A vertex both cells are built on.
    Vertex(String),
    /// A point where their cells cross or touch.
    Point(Point<T>),
}

/// The embedded point-set of a cell (its vertices and 1-cells) together with
/// the filled region it bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct CellGeometry<T> {
    /// Vertex ids and positions, sorted by id.
    pub vertices: Vec<(String, Point<T>)>,
    pub segments: Vec<Segment<T>>,
    /// Filled region; empty for vertices, edges and paths.
    pub shape: Shape<T>,
    pub lo: Point<T>,
    pub hi: Point<T>,
}

impl<T: Scalar> CellGeometry<T> {
    fn assemble(vertices: BTreeMap<String, Point<T>>, segments: Vec<Segment<T>>, shape: Shape<T>) -> Self {
        let inf = T::infinity();
        let mut lo = Point::new(inf, inf);
        let mut hi = Point::new(-inf, -inf);
        for p in vertices.values() {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        CellGeometry {
            vertices: vertices.into_iter().collect(),
            segments,
            shape,
            lo,
            hi,
        }
    }

    fn boxes_apart(&self, other: &Self, eps: T) -> bool {
        self.hi.x < other.lo.x - eps
            || other.hi.x < self.lo.x - eps
            || self.hi.y < other.lo.y - eps
            || other.hi.y < self.lo.y - eps
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|(id, _)| id.as_str())
    }
}

struct Collector<'a, T> {
    cx: &'a CellComplex<T>,
    vertices: BTreeMap<String, Point<T>>,
    segments: Vec<Segment<T>>,
}

impl<'a, T: Scalar> Collector<'a, T> {
    fn new(cx: &'a CellComplex<T>) -> Self {
        Collector {
            cx,
            vertices: BTreeMap::new(),
            segments: Vec::new(),
        }
    }

    fn vertex(&mut self, id: &str) -> Result<Point<T>> {
        let p = self.cx.position(id)?;
        self.vertices.insert(id.to_string(), p);
        Ok(p)
    }

    fn chain(&mut self, ids: &[String], closed: bool) -> Result<Polygon<T>> {
        let pts = ids.iter().map(|v| self.vertex(v)).collect::<Result<Vec<_>>>()?;
        let n = pts.len();
        let last = if closed { n } else { n.saturating_sub(1) };
        for k in 0..last {
            self.segments.push(Segment::new(pts[k], pts[(k + 1) % n]));
        }
        Ok(Polygon::new(pts))
    }

    fn cycle(&mut self, id: &str) -> Result<Polygon<T>> {
        let ids = self.cx.cycle(id)?.vertices.clone();
        self.chain(&ids, true)
    }

    fn holes(&mut self, ids: &[String]) -> Result<Vec<Polygon<T>>> {
        ids.iter()
            .map(|h| {
                let b = self.cx.hole(h)?.boundary.clone();
                self.cycle(&b)
            })
            .collect()
    }

    fn finish(self, shape: Shape<T>) -> CellGeometry<T> {
        CellGeometry::assemble(self.vertices, self.segments, shape)
    }
}

fn vortex_geometry<T: Scalar>(cx: &CellComplex<T>, id: &str) -> Result<CellGeometry<T>> {
    let v = cx.vortex_cycle(id)?;
    let mut col = Collector::new(cx);
    let outers = v.cycles.iter().map(|c| col.cycle(c)).collect::<Result<Vec<_>>>()?;
    let holes = col.holes(&v.holes)?;
    let parts = outers
        .into_iter()
        .map(|o| ClosedRegion::new(o, holes.clone()))
        .collect();
    Ok(col.finish(Shape::new(parts)))
}

/// Point-set and filled region of `cell`.
pub fn geometry_of<T: Scalar>(cx: &CellComplex<T>, cell: &CellRef) -> Result<CellGeometry<T>> {
    match cell {
        CellRef::Cycle(id) => {
            let mut col = Collector::new(cx);
            let outer = col.cycle(id)?;
            Ok(col.finish(Shape::new(vec![ClosedRegion::solid(outer)])))
        }
        CellRef::Vortex(id) => vortex_geometry(cx, id),
        CellRef::Nerve(id) => vortex_geometry(cx, &cx.vortex_nerve(id)?.vortex),
        CellRef::Skeleton(id) => {
            let s = cx.skeleton(id)?;
            let mut col = Collector::new(cx);
            let filled = |outer, holes| Shape::new(vec![ClosedRegion::new(outer, holes)]);
            match &s.payload {
                Payload::Vertex(v) => {
                    col.vertex(v)?;
                    Ok(col.finish(Shape::default()))
                }
                Payload::Edge(a, b) => {
                    col.chain(&[a.clone(), b.clone()], false)?;
                    Ok(col.finish(Shape::default()))
                }
                Payload::Path(p) => {
                    col.chain(p, false)?;
                    Ok(col.finish(Shape::default()))
                }
                Payload::Triangle(t) => {
                    let outer = col.chain(t, true)?;
                    let holes = col.holes(&s.holes)?;
                    Ok(col.finish(filled(outer, holes)))
                }
                Payload::Cycle(c) => {
                    let outer = col.cycle(c)?;
                    let holes = col.holes(&s.holes)?;
                    Ok(col.finish(filled(outer, holes)))
                }
                Payload::Vortex(v) => vortex_geometry(cx, v),
                Payload::Nerve(n) => vortex_geometry(cx, &cx.vortex_nerve(n)?.vortex),
            }
        }
    }
}

/// Whether two cells' point-sets (vertices and 1-cells, not filled interiors)
/// share a point. Returns the smallest shared vertex id if there is one,
/// otherwise a contact point.
pub fn point_sets_meet<T: Scalar>(a: &CellGeometry<T>, b: &CellGeometry<T>, tol: &Tolerance<T>) -> Option<Witness<T>> {
    // both vertex lists are sorted by id
    let (mut i, mut j) = (0, 0);
    while i < a.vertices.len() && j < b.vertices.len() {
        match a.vertices[i].0.cmp(&b.vertices[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(Witness::Vertex(a.vertices[i].0.clone())),
        }
    }
    let eps = tol.geo;
    if a.boxes_apart(b, eps) {
        return None;
    }
    for s in &a.segments {
        for r in &b.segments {
            let (p, _, d) = segment_closest(*s, *r);
            if d <= eps {
                return Some(Witness::Point(p));
            }
        }
    }
    // isolated vertices (K0) and vertices lying on the other's 1-cells
    for (_, p) in &a.vertices {
        if b.vertices.iter().any(|(_, q)| p.distance(*q) <= eps)
            || b.segments.iter().any(|r| point_segment_distance(*p, *r) <= eps)
        {
            return Some(Witness::Point(*p));
        }
    }
    for (_, q) in &b.vertices {
        if let Some(r) = a.segments.iter().find(|r| point_segment_distance(*q, **r) <= eps) {
            return Some(Witness::Point(r.at(project_param(*q, *r))));
        }
    }
    None
}

/// Point-set intersection test for two cells of one complex.
pub fn set_intersection_nonempty<T: Scalar>(cx: &CellComplex<T>, a: &CellRef, b: &CellRef) -> Result<bool> {
    let ga = geometry_of(cx, a)?;
    let gb = geometry_of(cx, b)?;
    Ok(point_sets_meet(&ga, &gb, cx.tolerance()).is_some())
}
