mod common;

use canyonlab::invariants::identity_card;
use canyonlab::numerics::Rat;
use common::props::{scaling, structural};
use common::{germ, rat, shear, CORPUS};
use proptest::prelude::*;

fn shear_amount() -> impl Strategy<Value = Rat> {
    (-3i64..=3, 1i64..=2).prop_map(|(p, q)| rat(p, q))
}

fn scale_factor() -> impl Strategy<Value = Rat> {
    prop::sample::select(vec![rat(2, 1), rat(3, 1), rat(1, 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sheared_cards_are_well_formed(k in 0..CORPUS.len(), lambda in shear_amount()) {
        let f = shear(&germ(CORPUS[k].1), &lambda, false);
        let card = identity_card(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        structural(&card).map_err(|e| TestCaseError::fail(format!("{}: {e}", CORPUS[k].0)))?;
    }

    #[test]
    fn invariants_rescale(k in 0..CORPUS.len(), c in scale_factor()) {
        scaling(&germ(CORPUS[k].1), &c).map_err(|e| TestCaseError::fail(format!("{}: {e}", CORPUS[k].0)))?;
    }
}

#[test]
fn corpus_cards_are_well_formed() {
    for (name, text) in CORPUS {
        let card = identity_card(&germ(text)).unwrap();
        structural(&card).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
