//! The identity card and its invariant ladder.

mod card;
mod develop;
mod levels;

pub use card::{identity_card, identity_card_with, CardOptions, IdentityCard, LineGroup};
pub use develop::{compose, develop_phi2, Development};
pub use levels::{normalize, second_level, third_level, SecondLevel, ThirdLevel};
