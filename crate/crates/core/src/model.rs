//! Core data model: alternatives, weak orders, preference profiles,
//! lotteries, and utility profiles.
//!
//! Every numeric quantity is an exact rational ([`Rational`]); there is no
//! floating point anywhere in a decision path. Weak orders are stored as
//! ranked indifference tiers, so completeness and transitivity hold by
//! construction rather than by validation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Renders a rational as `p` or `p/q`, matching the input grammar.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Index of an alternative within one instance; dense in `[0, m)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlternativeId(pub usize);

impl AlternativeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for AlternativeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alt#{}", self.0)
    }
}

/// A complete and transitive preference relation, stored as indifference
/// tiers from best to worst.
///
/// `rank` counts tiers from the bottom (0 = worst tier), so `x ≿ y` iff
/// `rank(x) >= rank(y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeakOrder {
    tiers: Vec<Vec<AlternativeId>>,
    rank: Vec<usize>,
}

impl WeakOrder {
    /// Builds an order from tiers listed best first. The tiers must form a
    /// partition of `{0, …, m-1}` with no tier empty.
    pub fn from_tiers(tiers: Vec<Vec<AlternativeId>>, m: usize) -> Result<Self, Error> {
        let mut seen = vec![false; m];
        let mut count = 0usize;
        for tier in &tiers {
            if tier.is_empty() {
                return Err(Error::DimensionMismatch("empty indifference tier".into()));
            }
            for &a in tier {
                if a.0 >= m {
                    return Err(Error::IndexOutOfRange { index: a.0, m });
                }
                if seen[a.0] {
                    return Err(Error::DimensionMismatch(format!(
                        "alternative {} appears in two tiers",
                        a.0
                    )));
                }
                seen[a.0] = true;
                count += 1;
            }
        }
        if count != m {
            return Err(Error::DimensionMismatch(format!(
                "tiers cover {count} of {m} alternatives"
            )));
        }
        let mut tiers: Vec<Vec<AlternativeId>> = tiers;
        for tier in &mut tiers {
            tier.sort();
        }
        let depth = tiers.len();
        let mut rank = vec![0usize; m];
        for (level, tier) in tiers.iter().enumerate() {
            for &a in tier {
                rank[a.0] = depth - 1 - level;
            }
        }
        Ok(WeakOrder { tiers, rank })
    }

    /// Number of alternatives covered by this order.
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Tiers from best to worst.
    pub fn tiers(&self) -> &[Vec<AlternativeId>] {
        &self.tiers
    }

    pub fn tier_count(&self) -> usize {
        self.tiers.len()
    }

    /// Tiers-from-bottom index: 0 is the worst tier.
    pub fn rank(&self, a: AlternativeId) -> usize {
        self.rank[a.0]
    }

    /// `a ≿ b`
    pub fn weakly_prefers(&self, a: AlternativeId, b: AlternativeId) -> bool {
        self.rank[a.0] >= self.rank[b.0]
    }

    /// `a ≻ b`
    pub fn strictly_prefers(&self, a: AlternativeId, b: AlternativeId) -> bool {
        self.rank[a.0] > self.rank[b.0]
    }

    /// `a ∼ b`
    pub fn indifferent(&self, a: AlternativeId, b: AlternativeId) -> bool {
        self.rank[a.0] == self.rank[b.0]
    }

    pub fn is_strict(&self) -> bool {
        self.tiers.iter().all(|t| t.len() == 1)
    }
}

/// A preference profile: one weak order per agent over a shared alternative
/// set, plus display names for the alternatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreferenceProfile {
    orders: Vec<WeakOrder>,
    names: Vec<String>,
}

impl PreferenceProfile {
    pub fn new(orders: Vec<WeakOrder>, names: Vec<String>) -> Result<Self, Error> {
        if orders.is_empty() {
            return Err(Error::DimensionMismatch("profile needs at least one agent".into()));
        }
        let m = names.len();
        if m == 0 {
            return Err(Error::DimensionMismatch(
                "profile needs at least one alternative".into(),
            ));
        }
        if let Some(order) = orders.iter().find(|o| o.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "order covers {} alternatives, profile has {m}",
                order.len()
            )));
        }
        Ok(PreferenceProfile { orders, names })
    }

    /// Builds a profile with synthetic names `a`, `b`, `c`, …, `x26`, ….
    pub fn with_default_names(orders: Vec<WeakOrder>) -> Result<Self, Error> {
        let m = orders.first().map_or(0, WeakOrder::len);
        Self::new(orders, default_names(m))
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self, agent: usize) -> &WeakOrder {
        &self.orders[agent]
    }

    pub fn orders(&self) -> &[WeakOrder] {
        &self.orders
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, a: AlternativeId) -> &str {
        &self.names[a.0]
    }

    pub fn index_of(&self, name: &str) -> Option<AlternativeId> {
        self.names.iter().position(|n| n == name).map(AlternativeId)
    }

    pub fn alternatives(&self) -> impl Iterator<Item = AlternativeId> {
        (0..self.m()).map(AlternativeId)
    }

    /// Serializes to the profile grammar (`1: a > b ~ c`, one agent per line).
    /// Reparsing the output yields an identical profile.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, order) in self.orders.iter().enumerate() {
            out.push_str(&format!("{}: ", i + 1));
            let tiers: Vec<String> = order
                .tiers()
                .iter()
                .map(|tier| {
                    tier.iter()
                        .map(|&a| self.names[a.0].clone())
                        .collect::<Vec<_>>()
                        .join(" ~ ")
                })
                .collect();
            out.push_str(&tiers.join(" > "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn default_names(m: usize) -> Vec<String> {
    (0..m)
        .map(|i| {
            if m <= 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// An exact probability distribution over the alternative set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lottery {
    probs: Vec<Rational>,
}

impl Lottery {
    /// Validates nonnegativity and that the probabilities sum to exactly 1.
    pub fn new(probs: Vec<Rational>) -> Result<Self, Error> {
        if probs.is_empty() {
            return Err(Error::DimensionMismatch("lottery over empty set".into()));
        }
        if let Some(i) = probs.iter().position(|p| p.is_negative()) {
            return Err(Error::DimensionMismatch(format!(
                "negative probability at alternative {i}"
            )));
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::DimensionMismatch(format!(
                "probabilities sum to {}, expected 1",
                rational_str(&sum)
            )));
        }
        Ok(Lottery { probs })
    }

    /// Point mass on a single alternative.
    pub fn degenerate(a: AlternativeId, m: usize) -> Self {
        let mut probs = vec![Rational::zero(); m];
        probs[a.0] = Rational::one();
        Lottery { probs }
    }

    /// Uniform lottery over a nonempty support.
    pub fn uniform(support: &[AlternativeId], m: usize) -> Result<Self, Error> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let share = Rational::new(BigInt::one(), BigInt::from(support.len()));
        let mut probs = vec![Rational::zero(); m];
        for &a in support {
            if a.0 >= m {
                return Err(Error::IndexOutOfRange { index: a.0, m });
            }
            probs[a.0] = &probs[a.0] + &share;
        }
        Lottery::new(probs)
    }

    pub fn m(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, a: AlternativeId) -> &Rational {
        &self.probs[a.0]
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// `supp(p)`: alternatives with positive probability, ascending.
    pub fn support(&self) -> Vec<AlternativeId> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(i, _)| AlternativeId(i))
            .collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    pub fn is_degenerate(&self) -> bool {
        self.support().len() == 1
    }

    /// Serializes to the lottery grammar, listing only the support.
    pub fn to_text(&self, profile: &PreferenceProfile) -> String {
        self.support()
            .iter()
            .map(|&a| format!("{}:{}", profile.name_of(a), rational_str(self.prob(a))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Cardinal utilities: `n × m` exact rationals, `u[i][a]` = agent `i`'s
/// utility for alternative `a`. Consistency with a profile is a checkable
/// predicate, not a structural invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UtilityProfile {
    values: Vec<Vec<Rational>>,
}

impl UtilityProfile {
    pub fn new(values: Vec<Vec<Rational>>) -> Result<Self, Error> {
        if values.is_empty() || values[0].is_empty() {
            return Err(Error::DimensionMismatch("empty utility matrix".into()));
        }
        let m = values[0].len();
        if values.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch("ragged utility matrix".into()));
        }
        Ok(UtilityProfile { values })
    }

    pub fn from_ints(values: &[Vec<i64>]) -> Result<Self, Error> {
        Self::new(
            values
                .iter()
                .map(|row| row.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn m(&self) -> usize {
        self.values[0].len()
    }

    pub fn utility(&self, agent: usize, a: AlternativeId) -> &Rational {
        &self.values[agent][a.0]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Utilitarian welfare of a single alternative: `Σ_i u[i][a]`.
    pub fn column_sum(&self, a: AlternativeId) -> Rational {
        self.values.iter().map(|row| &row[a.0]).sum()
    }
}

/// Weak consistency, exactly as defined: `a ≿_i b` implies `u_i(a) ≥ u_i(b)`.
///
/// Ties force equal utilities (both weak inequalities apply); strict
/// preferences only require the weak inequality, so constant utility
/// profiles are consistent with every preference profile.
pub fn is_consistent(u: &UtilityProfile, profile: &PreferenceProfile) -> Result<bool, Error> {
    check_dims(u, profile)?;
    for i in 0..profile.n() {
        let order = profile.order(i);
        for a in profile.alternatives() {
            for b in profile.alternatives() {
                if a != b && order.weakly_prefers(a, b) && u.utility(i, a) < u.utility(i, b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Strict-mode consistency: weak consistency plus `u_i(a) > u_i(b)` whenever
/// `a ≻_i b`. Offered for sensitivity analysis; no decision procedure here
/// depends on it.
pub fn is_consistent_strict(
    u: &UtilityProfile,
    profile: &PreferenceProfile,
) -> Result<bool, Error> {
    if !is_consistent(u, profile)? {
        return Ok(false);
    }
    for i in 0..profile.n() {
        let order = profile.order(i);
        for a in profile.alternatives() {
            for b in profile.alternatives() {
                if a != b && order.strictly_prefers(a, b) && u.utility(i, a) <= u.utility(i, b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_dims(u: &UtilityProfile, profile: &PreferenceProfile) -> Result<(), Error> {
    if u.n() != profile.n() || u.m() != profile.m() {
        return Err(Error::DimensionMismatch(format!(
            "utility matrix is {}×{}, profile is {}×{}",
            u.n(),
            u.m(),
            profile.n(),
            profile.m()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_profile;

    fn p1() -> PreferenceProfile {
        parse_profile("1: a > b\n2: b > a").unwrap()
    }

    fn p3() -> PreferenceProfile {
        parse_profile("1: a ~ b > c\n2: a ~ b > c").unwrap()
    }

    #[test]
    fn rank_counts_tiers_from_bottom() {
        let p = p3();
        let (a, b, c) = (AlternativeId(0), AlternativeId(1), AlternativeId(2));
        assert_eq!(p.order(0).rank(a), 1);
        assert_eq!(p.order(0).rank(b), 1);
        assert_eq!(p.order(0).rank(c), 0);
        assert!(p.order(0).indifferent(a, b));
        assert!(p.order(0).strictly_prefers(a, c));
    }

    #[test]
    fn consistency_examples() {
        let p = p1();
        let u = UtilityProfile::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(is_consistent(&u, &p).unwrap());

        let u = UtilityProfile::from_ints(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!is_consistent(&u, &p).unwrap());

        let p = p3();
        let u = UtilityProfile::from_ints(&[vec![1, 1, 0], vec![2, 2, 2]]).unwrap();
        assert!(is_consistent(&u, &p).unwrap());
    }

    #[test]
    fn strict_consistency_rejects_flat_utilities_on_strict_preferences() {
        let p = p1();
        let flat = UtilityProfile::from_ints(&[vec![7, 7], vec![7, 7]]).unwrap();
        assert!(is_consistent(&flat, &p).unwrap());
        assert!(!is_consistent_strict(&flat, &p).unwrap());

        let u = UtilityProfile::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(is_consistent_strict(&u, &p).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let p = p1();
        let u = UtilityProfile::from_ints(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(matches!(
            is_consistent(&u, &p),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn lottery_validation() {
        assert!(Lottery::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(Lottery::new(vec![rat(1, 3), rat(1, 3)]).is_err());
        assert!(Lottery::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
    }

    #[test]
    fn lottery_support_and_degeneracy() {
        let l = Lottery::degenerate(AlternativeId(1), 3);
        assert!(l.is_degenerate());
        assert_eq!(l.support(), vec![AlternativeId(1)]);
        assert_eq!(l.support_mask(), 0b010);

        let u = Lottery::uniform(&[AlternativeId(0), AlternativeId(2)], 3).unwrap();
        assert_eq!(u.prob(AlternativeId(0)), &rat(1, 2));
        assert_eq!(u.prob(AlternativeId(1)), &rat(0, 1));
        assert!(!u.is_degenerate());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(rational_str(&rat(3, 6)), "1/2");
        assert_eq!(rational_str(&rat(4, 2)), "2");
        assert_eq!(rational_str(&rat(-1, 2)), "-1/2");
    }
}
