//! Randomized verification of the proximity axioms on a complex.
//!
//! Each sample draws three nonempty subsets `A, B, C` of the registered
//! skeletons (at most `max_subset` members each) and checks every axiom
//! instance against brute-force oracles that share no code with the
//! relations under test.

use std::collections::BTreeMap;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::descriptive::descriptive_intersection;
use super::oracle;
use super::{Relation, Space};
use crate::complex::{CellComplex, CellRef};
use crate::descriptors::{describe, FeatureVector, MatchMode, MatchPolicy, ProbeId, Target};
use crate::error::{Error, Result};
use crate::Scalar;

/// Checked properties, in report order.
pub const AXIOMS: [&str; 27] = [
    "cech.empty-far",
    "cech.symmetry",
    "cech.union",
    "cech.intersection-implies-near",
    "conn.disjoint-iff-far",
    "conn.symmetry",
    "conn.union",
    "conn.intersection-iff-near",
    "conn.near-implies-intersection",
    "sconn.interior-disjoint-iff-far",
    "sconn.symmetry",
    "sconn.union",
    "sconn.interior-overlap-implies-near",
    "sconn.near-implies-filled-intersection",
    "sconn.near-implies-filled-conn",
    "dsconn.descriptive-disjoint-iff-far",
    "dsconn.symmetry",
    "dsconn.union",
    "dsconn.descriptive-intersection-implies-near",
    "dsconn.near-implies-descriptive-intersection",
    "smirnov.monotone",
    "smirnov.intersecting-near",
    "smirnov.empty-far",
    "shared-member.near",
    "shared-member.sconn-implies-dsconn",
    "shared-member.in-descriptive-intersection",
    "nerve.shared-cycle-descriptive",
];

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomOptions {
    /// Description map for `dsconn`.
    pub policy: MatchPolicy,
    pub max_subset: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions {
            policy: MatchPolicy::new(&[ProbeId::VertexCount], MatchMode::Any).expect("nonempty"),
            max_subset: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomTally {
    pub axiom: &'static str,
    pub checked: usize,
    pub violated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom: &'static str,
    pub sample: usize,
    /// Seed that replays this sample alone.
    pub seed: u64,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub universe: String,
    pub elements: usize,
    pub samples: usize,
    pub seed: u64,
    pub axioms: Vec<AxiomTally>,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Ground truth for every element pair, from the oracles.
struct Truth {
    n: usize,
    meet: Vec<bool>,
    interior: Vec<bool>,
    filled: Vec<bool>,
}

impl Truth {
    fn new<T: Scalar>(space: &Space<'_, T>) -> Self {
        let n = space.len();
        let tol = space.complex().tolerance();
        let (geo, area) = (tol.geo.as_f64(), tol.area.as_f64());
        let mut t = Truth {
            n,
            meet: vec![false; n * n],
            interior: vec![false; n * n],
            filled: vec![false; n * n],
        };
        for i in 0..n {
            for j in i..n {
                let (gi, gj) = (space.geometry(i), space.geometry(j));
                let m = oracle::point_set_distance(gi, gj) <= geo;
                let o = oracle::overlap_area(&gi.shape, &gj.shape) > area;
                let f = oracle::filled_meet(&gi.shape, &gj.shape, geo);
                for k in [i * n + j, j * n + i] {
                    t.meet[k] = m;
                    t.interior[k] = o;
                    t.filled[k] = f;
                }
            }
        }
        t
    }

    fn any(&self, m: &[bool], a: &[usize], b: &[usize]) -> bool {
        a.iter().any(|&i| b.iter().any(|&j| m[i * self.n + j]))
    }
}

struct Checker<'s, 'a, T> {
    space: &'s Space<'a, T>,
    truth: &'s Truth,
    tallies: BTreeMap<&'static str, (usize, usize)>,
    found: Vec<Counterexample>,
    sample: usize,
    seed: u64,
    sets: [Vec<usize>; 3],
}

impl<T: Scalar> Checker<'_, '_, T> {
    fn names(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&i| self.space.elements()[i].to_string()).collect()
    }

    fn record(&mut self, axiom: &'static str, holds: bool, detail: impl FnOnce() -> String) {
        let e = self.tallies.entry(axiom).or_default();
        e.0 += 1;
        if !holds {
            e.1 += 1;
            let [a, b, c] = &self.sets;
            self.found.push(Counterexample {
                axiom,
                sample: self.sample,
                seed: self.seed,
                a: self.names(a),
                b: self.names(b),
                c: self.names(c),
                detail: detail(),
            });
        }
    }

    fn near(&self, rel: Relation, a: &[usize], b: &[usize]) -> Result<bool> {
        Ok(self.space.near(rel, a, b)?.near)
    }

    fn descriptive(&self, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
        let fa: Vec<FeatureVector> = a
            .iter()
            .map(|&i| self.space.features(i).cloned().expect("policy"))
            .collect();
        let fb: Vec<FeatureVector> = b
            .iter()
            .map(|&i| self.space.features(i).cloned().expect("policy"))
            .collect();
        let policy = self.space.policy().expect("policy");
        let hits = descriptive_intersection(&fa, &fb, policy)?;
        Ok(hits
            .into_iter()
            .map(|k| if k < a.len() { a[k] } else { b[k - a.len()] })
            .collect())
    }

    fn run(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        let [a, b, c] = self.sets.clone();
        let bc = union(&b, &c);
        let sub_a = subset_of(&a, rng);
        let truth = self.truth;
        let rels = [Relation::Cech, Relation::Conn, Relation::Sconn, Relation::Dsconn];
        let prefix = |r: Relation| match r {
            Relation::Cech => "cech",
            Relation::Conn => "conn",
            Relation::Sconn => "sconn",
            Relation::Dsconn => "dsconn",
        };

        for rel in rels {
            let ab = self.near(rel, &a, &b)?;
            let ba = self.near(rel, &b, &a)?;
            let a_bc = self.near(rel, &a, &bc)?;
            let ac = self.near(rel, &a, &c)?;
            let empty = matches!(self.space.near(rel, &a, &[]), Err(Error::EmptyArgument))
                && matches!(self.space.near(rel, &[], &a), Err(Error::EmptyArgument));
            let sym = match rel {
                Relation::Cech => "cech.symmetry",
                Relation::Conn => "conn.symmetry",
                Relation::Sconn => "sconn.symmetry",
                Relation::Dsconn => "dsconn.symmetry",
            };
            self.record(sym, ab == ba, || format!("{rel}: near(A,B)={ab}, near(B,A)={ba}"));
            // Čech states the union axiom as an equivalence; the connectedness
            // forms state only the forward implication.
            let (un, union_holds) = match rel {
                Relation::Cech => ("cech.union", a_bc == (ab || ac)),
                Relation::Conn => ("conn.union", !a_bc || ab || ac),
                Relation::Sconn => ("sconn.union", !a_bc || ab || ac),
                Relation::Dsconn => ("dsconn.union", !a_bc || ab || ac),
            };
            self.record(un, union_holds, || {
                format!("{rel}: near(A,B∪C)={a_bc}, near(A,B)={ab}, near(A,C)={ac}")
            });
            if rel == Relation::Cech {
                self.record("cech.empty-far", empty, || {
                    "relation defined against the empty set".into()
                });
            }
            self.record("smirnov.empty-far", empty, || {
                format!("{}: relation defined against ∅", prefix(rel))
            });
            let sub_c = self.near(rel, &sub_a, &c)?;
            // δ(A',C) ≥ δ(A,C) for A' ⊆ A, i.e. A' near C ⇒ A near C
            let sub_names = self.names(&sub_a);
            self.record("smirnov.monotone", !sub_c || ac, || {
                format!("{rel}: A'={sub_names:?} near C but A not near C")
            });
        }

        // Čech and connectedness against the point-set oracle
        let meet = truth.any(&truth.meet, &a, &b);
        let cech = self.near(Relation::Cech, &a, &b)?;
        let conn = self.near(Relation::Conn, &a, &b)?;
        self.record("cech.intersection-implies-near", !meet || cech, || {
            "A∩B≠∅ but far".into()
        });
        self.record("conn.intersection-iff-near", meet == conn, || {
            format!("A∩B≠∅: {meet}, conn: {conn}")
        });
        self.record("conn.disjoint-iff-far", !meet == !conn, || {
            format!("A∩B=∅: {}, far: {}", !meet, !conn)
        });
        self.record("conn.near-implies-intersection", !conn || meet, || {
            "conn near but A∩B=∅".into()
        });
        self.record("smirnov.intersecting-near", !meet || (cech && conn), || {
            "intersecting sets not near".into()
        });

        // overlap connectedness against the slab-area and filled-contact oracles
        let interior = truth.any(&truth.interior, &a, &b);
        let filled = truth.any(&truth.filled, &a, &b);
        let sconn = self.near(Relation::Sconn, &a, &b)?;
        self.record("sconn.interior-disjoint-iff-far", interior == sconn, || {
            format!("Int A∩Int B≠∅: {interior}, sconn: {sconn}")
        });
        self.record("sconn.interior-overlap-implies-near", !interior || sconn, || {
            "Int A∩Int B≠∅ but far".into()
        });
        self.record("sconn.near-implies-filled-intersection", !sconn || filled, || {
            "sconn near but filled regions disjoint".into()
        });
        self.record("sconn.near-implies-filled-conn", !sconn || interior, || {
            "sconn near but no common interior".into()
        });

        // descriptive connectedness against the element-wise ⋒
        let dcap = self.descriptive(&a, &b)?;
        let ds = self.near(Relation::Dsconn, &a, &b)?;
        self.record("dsconn.descriptive-disjoint-iff-far", dcap.is_empty() == !ds, || {
            format!("|A⋒B|={}, dsconn: {ds}", dcap.len())
        });
        self.record(
            "dsconn.descriptive-intersection-implies-near",
            dcap.is_empty() || ds,
            || "A⋒B≠∅ but far".into(),
        );
        self.record(
            "dsconn.near-implies-descriptive-intersection",
            !ds || !dcap.is_empty(),
            || "dsconn near but A⋒B=∅".into(),
        );

        // a member common to A and B
        let shared: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        for &x in &shared {
            let positive = self.space.overlap_area(x, x) > self.space.complex().tolerance().area;
            let name = self.space.elements()[x].to_string();
            let all_near = conn && cech && ds && (!positive || sconn);
            self.record("shared-member.near", all_near, || {
                format!("shared {name}: cech={cech} conn={conn} sconn={sconn} dsconn={ds}")
            });
            if positive {
                self.record("shared-member.sconn-implies-dsconn", !sconn || ds, || {
                    format!("shared {name}: sconn near, dsconn far")
                });
            }
            self.record("shared-member.in-descriptive-intersection", dcap.contains(&x), || {
                format!("shared {name} missing from A⋒B")
            });
        }
        Ok(())
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u = a.to_vec();
    for &x in b {
        if !u.contains(&x) {
            u.push(x);
        }
    }
    u
}

fn subset_of(a: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let k = rng.gen_range(1..=a.len());
    let mut idx = sample_indices(rng, a.len(), k).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| a[i]).collect()
}

fn random_subset(n: usize, max: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let k = rng.gen_range(1..=max.min(n));
    let mut idx = sample_indices(rng, n, k).into_vec();
    idx.sort_unstable();
    idx
}

/// Nerves sharing a member cycle: the cycle lies in the descriptive
/// intersection of their member cycles and the member sets are
/// descriptively near.
fn check_shared_cycles<T: Scalar>(
    cx: &CellComplex<T>,
    policy: &MatchPolicy,
    tallies: &mut BTreeMap<&'static str, (usize, usize)>,
    found: &mut Vec<Counterexample>,
) -> Result<()> {
    const AXIOM: &str = "nerve.shared-cycle-descriptive";
    let probes = policy.probe_ids();
    let nerves = cx.vortex_nerves();
    for (i, ni) in nerves.iter().enumerate() {
        for nj in &nerves[i + 1..] {
            let ci = &cx.vortex_cycle(&ni.vortex)?.cycles;
            let cj = &cx.vortex_cycle(&nj.vortex)?.cycles;
            let fi = ci
                .iter()
                .map(|c| describe(cx, &Target::Cell(CellRef::Cycle(c.clone())), &probes))
                .collect::<Result<Vec<_>>>()?;
            let fj = cj
                .iter()
                .map(|c| describe(cx, &Target::Cell(CellRef::Cycle(c.clone())), &probes))
                .collect::<Result<Vec<_>>>()?;
            let hits = descriptive_intersection(&fi, &fj, policy)?;
            for (k, e) in ci.iter().enumerate() {
                if !cj.contains(e) {
                    continue;
                }
                let tally = tallies.entry(AXIOM).or_default();
                tally.0 += 1;
                if !hits.contains(&k) {
                    tally.1 += 1;
                    found.push(Counterexample {
                        axiom: AXIOM,
                        sample: 0,
                        seed: 0,
                        a: vec![ni.id.clone()],
                        b: vec![nj.id.clone()],
                        c: Vec::new(),
                        detail: format!("shared cycle {e} missing from the descriptive intersection"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// [`check_axioms_with`] under the default options (`vertexCount`, mode ANY,
/// subsets of at most 8 skeletons).
pub fn check_axioms<T: Scalar>(cx: &CellComplex<T>, samples: usize, seed: u64) -> Result<AxiomReport> {
    check_axioms_with(cx, samples, seed, &AxiomOptions::default())
}

/// Fuzzes every axiom family over `samples` random subset triples of the
/// registered skeletons. Counterexamples are data, not errors; errors only
/// arise from an invalid complex or an inapplicable policy.
pub fn check_axioms_with<T: Scalar>(
    cx: &CellComplex<T>,
    samples: usize,
    seed: u64,
    opts: &AxiomOptions,
) -> Result<AxiomReport> {
    if samples == 0 {
        return Err(Error::Malformed("samples must be at least 1".to_string()));
    }
    let elements: Vec<CellRef> = cx.skeletons().iter().map(|s| CellRef::Skeleton(s.id.clone())).collect();
    let mut tallies: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut found = Vec::new();
    check_shared_cycles(cx, &opts.policy, &mut tallies, &mut found)?;
    if !elements.is_empty() {
        let space = Space::new(cx, elements, Some(opts.policy.clone()))?;
        let truth = Truth::new(&space);
        let mut master = ChaCha8Rng::seed_from_u64(seed);
        for sample in 0..samples {
            let sample_seed: u64 = master.gen();
            let (t, f) = check_sample(&space, &truth, sample, sample_seed, opts.max_subset)?;
            for (k, (c, v)) in t {
                let e = tallies.entry(k).or_default();
                e.0 += c;
                e.1 += v;
            }
            found.extend(f);
        }
    }
    let axioms = AXIOMS
        .iter()
        .map(|&axiom| {
            let (checked, violated) = tallies.get(axiom).copied().unwrap_or_default();
            AxiomTally {
                axiom,
                checked,
                violated,
            }
        })
        .collect();
    Ok(AxiomReport {
        universe: cx.id.clone(),
        elements: cx.skeletons().len(),
        samples,
        seed,
        axioms,
        counterexamples: found,
    })
}

type SampleOutcome = (BTreeMap<&'static str, (usize, usize)>, Vec<Counterexample>);

fn check_sample<T: Scalar>(
    space: &Space<'_, T>,
    truth: &Truth,
    sample: usize,
    seed: u64,
    max: usize,
) -> Result<SampleOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.len();
    let sets = [
        random_subset(n, max, &mut rng),
        random_subset(n, max, &mut rng),
        random_subset(n, max, &mut rng),
    ];
    let mut checker = Checker {
        space,
        truth,
        tallies: BTreeMap::new(),
        found: Vec::new(),
        sample,
        seed,
        sets,
    };
    checker.run(&mut rng)?;
    Ok((checker.tallies, checker.found))
}
