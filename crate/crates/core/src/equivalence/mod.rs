//! Deciding bi-Lipschitz non-equivalence of two germs.

mod decide;
mod matching;
mod refined;
mod scale;

pub use decide::{
    decide, decide_cards, decide_with, matching_constraints, verify_certificate, Certificate,
    DecideOptions, LinePairCheck, MatchingCheck, MatchingOutcome, Route, Verdict, VerdictKind,
};
pub use matching::{canyon_matchings, permutations, GroupData};
pub use refined::{refined_check, RefinedOutcome, Refutation};
pub use scale::{solve_scale_constraints, violates_any, ConstraintSource, ScaleConstraint, ScaleSolution};
