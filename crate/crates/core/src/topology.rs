//! Leader uniform topology clusters and closure-finite weak (CW) topology
//! checks.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{CellComplex, CellGeometry, CellRef};
use crate::error::{Error, Result};
use crate::geometry::predicates::{point_segment_distance, project_param, segment_closest};
use crate::geometry::{shapes_intersection_area, Point, Segment};
use crate::proximity::{oracle, Relation, Space};
use crate::Scalar;

/// All elements near `anchor`, plus the anchor itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub anchor: CellRef,
    pub relation: Relation,
    /// Sorted.
    pub members: Vec<CellRef>,
}

/// Intersection and union of two anchored clusters as member sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterPair {
    pub first: CellRef,
    pub second: CellRef,
    pub intersection: Vec<CellRef>,
    pub union: Vec<CellRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeaderTopology {
    pub universe: String,
    pub relation: Relation,
    /// One per anchor, ordered by anchor.
    pub clusters: Vec<Cluster>,
    pub pairs: Vec<ClusterPair>,
}

impl LeaderTopology {
    pub fn cluster(&self, anchor: &str) -> Result<&Cluster> {
        self.clusters
            .iter()
            .find(|c| c.anchor.id() == anchor || c.anchor.to_string() == anchor)
            .ok_or_else(|| Error::UnknownCluster(anchor.to_string()))
    }
}

/// Anchored clusters `cluster(A) = {B : A R B} ∪ {A}` over the space's
/// elements, with all pairwise intersections and unions.
pub fn build_leader_topology<T: Scalar>(space: &Space<'_, T>, relation: Relation) -> Result<LeaderTopology> {
    let n = space.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| space.elements()[i].cmp(&space.elements()[j]));
    let mut clusters = Vec::with_capacity(n);
    for &i in &order {
        let mut members = BTreeSet::new();
        members.insert(space.elements()[i].clone());
        for j in 0..n {
            if j != i && space.pair(relation, i, j)? {
                members.insert(space.elements()[j].clone());
            }
        }
        clusters.push(Cluster {
            anchor: space.elements()[i].clone(),
            relation,
            members: members.into_iter().collect(),
        });
    }
    let mut pairs = Vec::new();
    for (k, a) in clusters.iter().enumerate() {
        for b in &clusters[k + 1..] {
            let sa: BTreeSet<&CellRef> = a.members.iter().collect();
            let sb: BTreeSet<&CellRef> = b.members.iter().collect();
            pairs.push(ClusterPair {
                first: a.anchor.clone(),
                second: b.anchor.clone(),
                intersection: sa.intersection(&sb).map(|c| (*c).clone()).collect(),
                union: sa.union(&sb).map(|c| (*c).clone()).collect(),
            });
        }
    }
    Ok(LeaderTopology {
        universe: space.complex().id.clone(),
        relation,
        clusters,
        pairs,
    })
}

/// Violations of the Leader invariants: anchor membership, nearness of
/// every member to its anchor, symmetric incidence, and correct pairwise
/// intersections/unions.
pub fn leader_violations<T: Scalar>(t: &LeaderTopology, space: &Space<'_, T>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let idx = |c: &CellRef| space.index_of(c).ok_or_else(|| Error::UnknownCluster(c.to_string()));
    for c in &t.clusters {
        if !c.members.contains(&c.anchor) {
            out.push(format!("{}: anchor not a member", c.anchor));
        }
        let i = idx(&c.anchor)?;
        for m in &c.members {
            if m != &c.anchor && !space.pair(t.relation, i, idx(m)?)? {
                out.push(format!("{}: member {m} not near the anchor", c.anchor));
            }
        }
    }
    for a in &t.clusters {
        for b in &t.clusters {
            if a.members.contains(&b.anchor) != b.members.contains(&a.anchor) {
                out.push(format!("asymmetric incidence between {} and {}", a.anchor, b.anchor));
            }
        }
    }
    for p in &t.pairs {
        let a = t.cluster(&p.first.to_string())?;
        let b = t.cluster(&p.second.to_string())?;
        let ok_meet = p
            .intersection
            .iter()
            .all(|m| a.members.contains(m) && b.members.contains(m))
            && a.members.iter().filter(|m| b.members.contains(m)).count() == p.intersection.len();
        let ok_join = a.members.iter().chain(&b.members).all(|m| p.union.contains(m))
            && p.union.iter().all(|m| a.members.contains(m) || b.members.contains(m));
        if !ok_meet || !ok_join {
            out.push(format!(
                "cluster pair {} / {} has wrong intersection or union",
                p.first, p.second
            ));
        }
    }
    Ok(out)
}

/// Number of other cells the closure of `cell` meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCount {
    pub cell: CellRef,
    pub meets: usize,
}

/// How the closures of two cells meet.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Contact {
    pub a: CellRef,
    pub b: CellRef,
    /// Isolated contact points of the 1-skeletons.
    pub points: usize,
    /// Shared pieces of 1-cells and their total length.
    pub segments: usize,
    pub length: f64,
    /// Area of the common filled part.
    pub area: f64,
    /// Every piece contains its own boundary and the filled part has the
    /// same area closed and open.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CwReport {
    pub closure_finite: bool,
    pub counts: Vec<ClosureCount>,
    pub weak_topology: bool,
    pub contacts: Vec<Contact>,
    pub passed: bool,
}

fn near_set<T: Scalar>(g: &CellGeometry<T>, p: Point<T>, eps: T) -> bool {
    g.segments.iter().any(|s| point_segment_distance(p, *s) <= eps)
        || g.vertices.iter().any(|(_, q)| p.distance(*q) <= eps)
}

/// Collinear overlap of `s` and `r` as a sub-segment of `s`.
fn collinear_piece<T: Scalar>(s: Segment<T>, r: Segment<T>, eps: T) -> Option<Segment<T>> {
    let line = |p: Point<T>| {
        let d = s.b - s.a;
        (p - s.a).cross(d).abs() / d.norm()
    };
    if s.length() <= eps || line(r.a) > eps || line(r.b) > eps {
        return None;
    }
    let (t0, t1) = (project_param(r.a, s), project_param(r.b, s));
    let (lo, hi) = (t0.min(t1), t0.max(t1));
    let piece = Segment::new(s.at(lo), s.at(hi));
    (piece.length() > eps).then_some(piece)
}

fn contact<T: Scalar>(space: &Space<'_, T>, i: usize, j: usize) -> Option<Contact> {
    let (ga, gb) = (space.geometry(i), space.geometry(j));
    let tol = space.complex().tolerance();
    let eps = tol.geo;
    let mut pieces: Vec<Segment<T>> = Vec::new();
    let mut points: Vec<Point<T>> = Vec::new();
    let add_point = |p: Point<T>, pts: &mut Vec<Point<T>>| {
        if !pts.iter().any(|q| q.distance(p) <= eps) {
            pts.push(p);
        }
    };
    for s in &ga.segments {
        for r in &gb.segments {
            if let Some(piece) = collinear_piece(*s, *r, eps) {
                pieces.push(piece);
            } else {
                let (p, _, d) = segment_closest(*s, *r);
                if d <= eps {
                    add_point(p, &mut points);
                }
            }
        }
    }
    for (_, p) in &ga.vertices {
        if near_set(gb, *p, eps) {
            add_point(*p, &mut points);
        }
    }
    for (_, p) in &gb.vertices {
        if near_set(ga, *p, eps) {
            add_point(*p, &mut points);
        }
    }
    // points on a shared piece belong to that piece
    points.retain(|p| !pieces.iter().any(|s| point_segment_distance(*p, *s) <= eps));
    let (sa, sb) = (&ga.shape, &gb.shape);
    let closed_area = if sa.is_empty() || sb.is_empty() {
        T::zero()
    } else {
        shapes_intersection_area(&[sa, sb], tol)
    };
    let filled_meet = oracle::filled_meet(sa, sb, eps.as_f64());
    if pieces.is_empty() && points.is_empty() && closed_area <= tol.area && !filled_meet {
        return None;
    }
    // each piece and point must lie in both cells, endpoints included
    let mut closed = pieces.iter().all(|s| {
        [s.a, s.b, s.at(T::lit(0.5))]
            .iter()
            .all(|p| near_set(ga, *p, eps) && near_set(gb, *p, eps))
    }) && points.iter().all(|p| near_set(ga, *p, eps) && near_set(gb, *p, eps));
    // the filled part: closed and open areas agree (the boundary has no area)
    let open_area = oracle::overlap_area(sa, sb);
    let slack = tol.area.as_f64().max(1e-9 * open_area.max(closed_area.as_f64()));
    closed &= (open_area - closed_area.as_f64()).abs() <= slack;
    Some(Contact {
        a: space.elements()[i].clone(),
        b: space.elements()[j].clone(),
        points: points.len(),
        segments: pieces.len(),
        length: pieces.iter().map(|s| s.length().as_f64()).sum(),
        area: closed_area.as_f64(),
        closed,
    })
}

/// Closure finiteness and weak topology over the elements of `space`.
pub fn check_cw_space<T: Scalar>(space: &Space<'_, T>) -> CwReport {
    let n = space.len();
    let mut meets = vec![0usize; n];
    let mut contacts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(c) = contact(space, i, j) {
                meets[i] += 1;
                meets[j] += 1;
                contacts.push(c);
            }
        }
    }
    let counts: Vec<ClosureCount> = (0..n)
        .map(|i| ClosureCount {
            cell: space.elements()[i].clone(),
            meets: meets[i],
        })
        .collect();
    let closure_finite = counts.iter().all(|c| c.meets < n.max(1));
    let weak_topology = contacts.iter().all(|c| c.closed);
    CwReport {
        closure_finite,
        counts,
        weak_topology,
        contacts,
        passed: closure_finite && weak_topology,
    }
}

/// CW checks over every skeleton of the complex.
pub fn check_cw<T: Scalar>(cx: &CellComplex<T>) -> Result<CwReport> {
    let cells = cx.skeletons().iter().map(|s| CellRef::Skeleton(s.id.clone())).collect();
    Ok(check_cw_space(&Space::new(cx, cells, None)?))
}

/// CW checks restricted to the members of the cluster anchored at `anchor`.
pub fn cluster_cw<T: Scalar>(t: &LeaderTopology, anchor: &str, cx: &CellComplex<T>) -> Result<CwReport> {
    let cluster = t.cluster(anchor)?;
    Ok(check_cw_space(&Space::new(cx, cluster.members.clone(), None)?))
}
