//! Descriptive intersection, union and closure over feature vectors.
//!
//! "`Φ(x) ∈ Φ(A)`" is read under the match policy: `x` matches the
//! description of some member of `A`.

use crate::descriptors::{features_match, FeatureVector, MatchPolicy};
use crate::error::Result;

fn occurs_in(x: &FeatureVector, set: &[FeatureVector], policy: &MatchPolicy) -> Result<bool> {
    for y in set {
        if features_match(x, y, policy)?.matched {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `A ⋒ B = {x ∈ A ∪ B : Φ(x) ∈ Φ(A), Φ(x) ∈ Φ(B)}`.
///
/// Returns indices into the concatenation `a ++ b`.
pub fn descriptive_intersection(a: &[FeatureVector], b: &[FeatureVector], policy: &MatchPolicy) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, x) in a.iter().chain(b).enumerate() {
        if occurs_in(x, a, policy)? && occurs_in(x, b, policy)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// `A ⋓ B = {E ∈ K : Φ(E) ∈ Φ(A ∪ B)}` with `K = universe`; returns
/// universe indices.
pub fn descriptive_union(
    universe: &[FeatureVector],
    a: &[FeatureVector],
    b: &[FeatureVector],
    policy: &MatchPolicy,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, x) in universe.iter().enumerate() {
        if occurs_in(x, a, policy)? || occurs_in(x, b, policy)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// `dcl A = {x ∈ K : x dsconn A}`; returns universe indices.
pub fn descriptive_closure(
    universe: &[FeatureVector],
    a: &[FeatureVector],
    policy: &MatchPolicy,
) -> Result<Vec<usize>> {
    descriptive_union(universe, a, &[], policy)
}
