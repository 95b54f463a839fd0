//! Exact-arithmetic efficiency analysis for lotteries over social-choice
//! alternatives.
//!
//! Given a preference profile (one complete weak order per agent) and a
//! lottery over the alternatives, this crate decides the full ladder of
//! efficiency notions — ex post efficiency, SD (stochastic dominance)
//! efficiency, and SW (social welfare) efficiency — and produces verifiable
//! witnesses for every negative verdict:
//!
//! * a dominating lottery when the SD test fails, found by an exact LP;
//! * a dominating support when the SW test fails, found by enumerating
//!   welfare cones;
//! * a separating utility profile exhibiting the welfare gap.
//!
//! SW-efficiency is decided two independent ways: a closed-form
//! characterization (ex post efficient and "uninteresting", degenerating to
//! "ex post efficient and degenerate" when no two alternatives are Pareto
//! indifferent) and a support-enumeration procedure over welfare cones
//! backed by exact rational linear programming. The two routes cross-check
//! each other; a disagreement is reported as an internal error, never
//! papered over.
//!
//! All probabilities and utilities are arbitrary-precision rationals. There
//! are no tolerances anywhere: "the optimum equals zero" is decided by exact
//! arithmetic.
//!
//! The `assignment` module adapts the machinery to random assignment by
//! treating discrete assignments as voting alternatives.

pub mod assignment;
pub mod enumerate;
pub mod error;
pub mod lp;
pub mod model;
pub mod parse;
pub mod pareto;
pub mod report;
pub mod sd;
pub mod sw;
pub mod verify;

pub use error::Error;
pub use model::{
    is_consistent, is_consistent_strict, rat, rational_str, AlternativeId, Lottery,
    PreferenceProfile, Rational, UtilityProfile, WeakOrder,
};
pub use parse::{parse_lottery, parse_profile, parse_rational, ParseError};
