//! Deterministic-alternative comparisons: Pareto dominance, Pareto
//! optimality, Pareto indifference, and the strictly-dominated set `D(a)`.
//!
//! Everything here is an exhaustive scan over agents and alternative pairs;
//! the alternative sets in this domain are explicitly enumerable, so
//! auditability beats indexing structures.

use crate::error::Error;
use crate::model::{AlternativeId, PreferenceProfile};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParetoRelation {
    FirstDominates,
    SecondDominates,
    /// Every agent is indifferent between the two.
    ParetoIndifferent,
    /// Some agent strictly prefers the first, another the second.
    Incomparable,
}

/// Compares two distinct alternatives under the Pareto relation.
pub fn pareto_compare(
    a: AlternativeId,
    b: AlternativeId,
    profile: &PreferenceProfile,
) -> Result<ParetoRelation, Error> {
    if a == b {
        return Err(Error::SameAlternative);
    }
    let mut some_prefer_a = false;
    let mut some_prefer_b = false;
    for order in profile.orders() {
        if order.strictly_prefers(a, b) {
            some_prefer_a = true;
        } else if order.strictly_prefers(b, a) {
            some_prefer_b = true;
        }
    }
    Ok(match (some_prefer_a, some_prefer_b) {
        (true, false) => ParetoRelation::FirstDominates,
        (false, true) => ParetoRelation::SecondDominates,
        (false, false) => ParetoRelation::ParetoIndifferent,
        (true, true) => ParetoRelation::Incomparable,
    })
}

/// Alternatives not Pareto-dominated by any other alternative. Nonempty for
/// every profile: dominance is a strict partial order on a finite set.
pub fn pareto_optimal_set(profile: &PreferenceProfile) -> Vec<AlternativeId> {
    profile
        .alternatives()
        .filter(|&a| {
            profile.alternatives().all(|b| {
                b == a
                    || pareto_compare(b, a, profile)
                        .expect("distinct pair")
                        != ParetoRelation::FirstDominates
            })
        })
        .collect()
}

pub fn is_pareto_optimal(a: AlternativeId, profile: &PreferenceProfile) -> bool {
    pareto_optimal_set(profile).contains(&a)
}

/// `D(a)`: alternatives some agent strictly ranks below `a`.
///
/// This is not the set of Pareto-dominated alternatives — one strict vote
/// suffices — but it contains every alternative that `a` Pareto-dominates.
pub fn dominated_set(a: AlternativeId, profile: &PreferenceProfile) -> Vec<AlternativeId> {
    profile
        .alternatives()
        .filter(|&b| {
            b != a
                && profile
                    .orders()
                    .iter()
                    .any(|order| order.strictly_prefers(a, b))
        })
        .collect()
}

/// Whether some unordered pair of distinct alternatives is Pareto
/// indifferent.
pub fn has_pareto_indifferent_pair(profile: &PreferenceProfile) -> bool {
    let m = profile.m();
    for i in 0..m {
        for j in (i + 1)..m {
            let rel = pareto_compare(AlternativeId(i), AlternativeId(j), profile)
                .expect("distinct pair");
            if rel == ParetoRelation::ParetoIndifferent {
                return true;
            }
        }
    }
    false
}
