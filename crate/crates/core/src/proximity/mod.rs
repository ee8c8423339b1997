//! Proximity relations: Čech nearness, connectedness (`conn`), overlap
//! connectedness (`sconn`) and descriptive connectedness (`dsconn`), the
//! descriptive set operations, relators and the axiom fuzzer.
//!
//! Every set-level relation is existential over member pairs: `A R B` iff
//! some `a ∈ A`, `b ∈ B` have `a R b`. The union and monotonicity axioms
//! then hold by construction.

mod axioms;
mod descriptive;
pub mod oracle;

use std::fmt;

use serde::Serialize;

pub use axioms::{check_axioms, check_axioms_with, AxiomOptions, AxiomReport, AxiomTally, Counterexample};
pub use descriptive::{descriptive_closure, descriptive_intersection, descriptive_union};

use crate::complex::{geometry_of, point_sets_meet, CellComplex, CellGeometry, CellRef, Witness as Contact};
use crate::descriptors::{describe, features_match, FeatureVector, MatchPolicy, ProbeId, Target};
use crate::error::{Error, Result};
use crate::geometry::shapes_intersection_area;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Relation {
    Cech,
    Conn,
    Sconn,
    Dsconn,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Cech => "CECH",
            Relation::Conn => "CONN",
            Relation::Sconn => "SCONN",
            Relation::Dsconn => "DSCONN",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cech" => Some(Relation::Cech),
            "conn" => Some(Relation::Conn),
            "sconn" => Some(Relation::Sconn),
            "dsconn" => Some(Relation::Dsconn),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why two elements are near.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Evidence {
    /// Vertex shared by both point-sets.
    Vertex { id: String },
    /// Point where the point-sets cross or touch.
    Point { x: f64, y: f64 },
    /// Area of the common interior.
    Overlap { area: f64 },
    /// Probes whose values match.
    Probes { probes: Vec<ProbeId> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub a: CellRef,
    pub b: CellRef,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProximityVerdict {
    pub relation: Relation,
    pub near: bool,
    /// Smirnov metric: 0 when near, 1 when far.
    pub smirnov: u8,
    pub witness: Option<Witness>,
}

impl ProximityVerdict {
    fn new(relation: Relation, witness: Option<Witness>) -> Self {
        let near = witness.is_some();
        ProximityVerdict {
            relation,
            near,
            smirnov: u8::from(!near),
            witness,
        }
    }
}

fn contact_evidence<T: Scalar>(c: Contact<T>) -> Evidence {
    match c {
        Contact::Vertex(id) => Evidence::Vertex { id },
        Contact::Point(p) => Evidence::Point {
            x: p.x.as_f64(),
            y: p.y.as_f64(),
        },
    }
}

/// A finite universe of elements of one complex with cached geometry,
/// descriptions and pairwise verdicts.
pub struct Space<'a, T> {
    cx: &'a CellComplex<T>,
    elements: Vec<CellRef>,
    geoms: Vec<CellGeometry<T>>,
    policy: Option<MatchPolicy>,
    features: Vec<FeatureVector>,
    conn: Vec<Option<Evidence>>,
    overlap: Vec<T>,
    dsconn: Vec<Option<Vec<ProbeId>>>,
}

impl<'a, T: Scalar> Space<'a, T> {
    /// Builds the universe and evaluates every pair once. Without a policy
    /// `dsconn` is unavailable.
    pub fn new(cx: &'a CellComplex<T>, elements: Vec<CellRef>, policy: Option<MatchPolicy>) -> Result<Self> {
        let n = elements.len();
        let geoms = elements
            .iter()
            .map(|e| geometry_of(cx, e))
            .collect::<Result<Vec<_>>>()?;
        let features = match &policy {
            Some(p) => {
                let probes = p.probe_ids();
                elements
                    .iter()
                    .map(|e| describe(cx, &Target::Cell(e.clone()), &probes))
                    .collect::<Result<Vec<_>>>()?
            }
            None => Vec::new(),
        };
        let tol = cx.tolerance();
        let mut conn = vec![None; n * n];
        let mut overlap = vec![T::zero(); n * n];
        let mut dsconn = vec![None; n * n];
        for i in 0..n {
            for j in i..n {
                let c = point_sets_meet(&geoms[i], &geoms[j], tol).map(contact_evidence);
                let (gi, gj) = (&geoms[i].shape, &geoms[j].shape);
                let o = if gi.is_empty() || gj.is_empty() {
                    T::zero()
                } else {
                    shapes_intersection_area(&[gi, gj], tol)
                };
                let d = match &policy {
                    Some(p) => {
                        let r = features_match(&features[i], &features[j], p)?;
                        r.matched.then(|| r.matching_probes().collect())
                    }
                    None => None,
                };
                for (x, y) in [(i, j), (j, i)] {
                    conn[x * n + y] = c.clone();
                    overlap[x * n + y] = o;
                    dsconn[x * n + y] = d.clone();
                }
            }
        }
        Ok(Space {
            cx,
            elements,
            geoms,
            policy,
            features,
            conn,
            overlap,
            dsconn,
        })
    }

    pub fn complex(&self) -> &'a CellComplex<T> {
        self.cx
    }

    pub fn elements(&self) -> &[CellRef] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &CellRef) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn geometry(&self, i: usize) -> &CellGeometry<T> {
        &self.geoms[i]
    }

    pub fn policy(&self) -> Option<&MatchPolicy> {
        self.policy.as_ref()
    }

    /// Feature vector of element `i`; `None` without a policy.
    pub fn features(&self, i: usize) -> Option<&FeatureVector> {
        self.features.get(i)
    }

    /// Area of the common interior of elements `i` and `j`.
    pub fn overlap_area(&self, i: usize, j: usize) -> T {
        self.overlap[i * self.len() + j]
    }

    fn evidence(&self, rel: Relation, i: usize, j: usize) -> Result<Option<Evidence>> {
        let k = i * self.len() + j;
        Ok(match rel {
            Relation::Cech | Relation::Conn => self.conn[k].clone(),
            Relation::Sconn => {
                let a = self.overlap[k];
                (a > self.cx.tolerance().area).then(|| Evidence::Overlap { area: a.as_f64() })
            }
            Relation::Dsconn => {
                if self.policy.is_none() {
                    return Err(Error::MissingProbe("dsconn needs a match policy".to_string()));
                }
                self.dsconn[k].clone().map(|probes| Evidence::Probes { probes })
            }
        })
    }

    /// Element-level verdict.
    pub fn pair(&self, rel: Relation, i: usize, j: usize) -> Result<bool> {
        Ok(self.evidence(rel, i, j)?.is_some())
    }

    /// Set-level verdict for index sets `a` and `b`.
    pub fn near(&self, rel: Relation, a: &[usize], b: &[usize]) -> Result<ProximityVerdict> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyArgument);
        }
        for &i in a {
            for &j in b {
                if let Some(evidence) = self.evidence(rel, i, j)? {
                    let witness = Witness {
                        a: self.elements[i].clone(),
                        b: self.elements[j].clone(),
                        evidence,
                    };
                    return Ok(ProximityVerdict::new(rel, Some(witness)));
                }
            }
        }
        Ok(ProximityVerdict::new(rel, None))
    }
}

fn pair_space<'a, T: Scalar>(
    cx: &'a CellComplex<T>,
    a: &CellRef,
    b: &CellRef,
    policy: Option<MatchPolicy>,
) -> Result<Space<'a, T>> {
    Space::new(cx, vec![a.clone(), b.clone()], policy)
}

/// Connectedness: near iff the point-sets (vertices and 1-cells) meet.
pub fn conn<T: Scalar>(cx: &CellComplex<T>, a: &CellRef, b: &CellRef) -> Result<ProximityVerdict> {
    let ga = geometry_of(cx, a)?;
    let gb = geometry_of(cx, b)?;
    let witness = point_sets_meet(&ga, &gb, cx.tolerance()).map(|c| Witness {
        a: a.clone(),
        b: b.clone(),
        evidence: contact_evidence(c),
    });
    Ok(ProximityVerdict::new(Relation::Conn, witness))
}

/// Overlap connectedness: near iff the filled regions share positive area.
pub fn sconn<T: Scalar>(cx: &CellComplex<T>, a: &CellRef, b: &CellRef) -> Result<ProximityVerdict> {
    pair_space(cx, a, b, None)?.near(Relation::Sconn, &[0], &[1])
}

/// Descriptive connectedness: near iff the feature vectors match under
/// `policy`.
pub fn dsconn<T: Scalar>(
    cx: &CellComplex<T>,
    a: &CellRef,
    b: &CellRef,
    policy: &MatchPolicy,
) -> Result<ProximityVerdict> {
    pair_space(cx, a, b, Some(policy.clone()))?.near(Relation::Dsconn, &[0], &[1])
}

/// Čech nearness of two sets of cells: near iff their point-sets meet.
pub fn cech_near<T: Scalar>(cx: &CellComplex<T>, a: &[CellRef], b: &[CellRef]) -> Result<ProximityVerdict> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyArgument);
    }
    let mut elements = a.to_vec();
    elements.extend_from_slice(b);
    let space = Space::new(cx, elements, None)?;
    let ia: Vec<usize> = (0..a.len()).collect();
    let ib: Vec<usize> = (a.len()..a.len() + b.len()).collect();
    space.near(Relation::Cech, &ia, &ib)
}

/// A nonempty collection of connectedness relations evaluated together.
#[derive(Clone, Debug, PartialEq)]
pub struct Relator {
    relations: Vec<Relation>,
    policy: Option<MatchPolicy>,
}

impl Relator {
    pub fn new(relations: &[Relation], policy: Option<MatchPolicy>) -> Result<Self> {
        if relations.is_empty() {
            return Err(Error::EmptyArgument);
        }
        if relations.contains(&Relation::Dsconn) && policy.is_none() {
            return Err(Error::MissingProbe("dsconn needs a match policy".to_string()));
        }
        Ok(Relator {
            relations: relations.to_vec(),
            policy,
        })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
}

/// One verdict per relation of `r`, each evaluated independently.
pub fn evaluate_relator<T: Scalar>(
    cx: &CellComplex<T>,
    a: &CellRef,
    b: &CellRef,
    r: &Relator,
) -> Result<Vec<ProximityVerdict>> {
    let space = pair_space(cx, a, b, r.policy.clone())?;
    r.relations.iter().map(|rel| space.near(*rel, &[0], &[1])).collect()
}
