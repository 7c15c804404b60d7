//! Refined check of one scale candidate.
//!
//! For matched canyons `i → i′`, `j → j′` on one line, put `Y = P_i(y) + φ`
//! with `P_i` the development of canyon `i`. Then
//!
//! `f_i − f_j = (g_{i′} − g_{j′})(P_i) + p·h_j·b_j·y^{h_j+δ−1} + …`
//!
//! and every coefficient below the trusted bound `L` must agree.

use num_traits::One;

use crate::error::{Error, Result};
use crate::invariants::{compose, develop_phi2, Development, IdentityCard};
use crate::numerics::{Coeff, ExtRat, Rat};

/// A certified mismatch for one candidate `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Refutation {
    /// The `f` canyons involved: `(i, i)` for a failed development.
    pub pair: (usize, usize),
    pub exponent: Rat,
    pub lhs: Coeff,
    pub rhs: Coeff,
    /// Exponent `h_j + δ − 1` at which the unknown `p` first enters.
    pub p_exponent: Option<Rat>,
    pub development: Option<Development>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RefinedOutcome {
    Consistent,
    Refuted(Refutation),
}

fn first_mismatch(
    r: &crate::puiseux::PuiseuxSeries,
    limit: &Rat,
) -> Result<Option<(Rat, Coeff)>> {
    for (e, v) in r.terms() {
        if e >= limit {
            break;
        }
        match v.zero_test() {
            Ok(true) => continue,
            Ok(false) => return Ok(Some((e.clone(), v.clone()))),
            Err(_) => {
                return Err(Error::PrecisionExhausted(format!(
                    "undecided coefficient {v} at y^{e}"
                )))
            }
        }
    }
    Ok(None)
}

/// Checks `c` against a canyon matching of one line group.
pub fn refined_check(
    f: &IdentityCard,
    g: &IdentityCard,
    matching: &[(usize, usize)],
    c: &Coeff,
) -> Result<RefinedOutcome> {
    let one = Rat::one();
    let mut devs = Vec::with_capacity(matching.len());
    for &(i, ip) in matching {
        let d = &f.canyons[i].d;
        match develop_phi2(f.f_series(i), g.f_series(ip), c, d) {
            Ok(dev) => devs.push(dev),
            Err(Error::InconsistentDevelopment { exponent }) => {
                let lhs = f.f_series(i).coeff(&exponent);
                let rhs = g
                    .f_series(ip)
                    .coeff(&exponent)
                    .mul(&c.pow_rat(&exponent)?);
                return Ok(RefinedOutcome::Refuted(Refutation {
                    pair: (i, i),
                    exponent,
                    lhs,
                    rhs,
                    p_exponent: None,
                    development: None,
                }));
            }
            Err(e) => return Err(e),
        }
    }
    for (a, &(i, ip)) in matching.iter().enumerate() {
        let p = devs[a].series();
        for &(j, jp) in matching {
            if j == i {
                continue;
            }
            let delta = f.contact(i, j)?;
            let (hi, di) = (&f.canyons[i].h, &f.canyons[i].d);
            let (hj, dj) = (&f.canyons[j].h, &f.canyons[j].d);
            let p_exp = hj + &delta - &one;
            let g_diff = g.f_series(ip).sub(g.f_series(jp));
            let mut limit = p_exp
                .clone()
                .min(hi + di - &one)
                .min(hj + dj - &one);
            if let ExtRat::Fin(o) = g_diff.ord_lb() {
                limit = limit.min(o + di - &one - &one);
            }
            let lhs_series = f.f_series(i).sub(f.f_series(j));
            let rhs_series = compose(&g_diff, &p, &limit)?;
            let r = lhs_series.sub(&rhs_series);
            if let ExtRat::Fin(t) = r.trunc() {
                limit = limit.min(t.clone());
            }
            if let Some((e, _)) = first_mismatch(&r, &limit)? {
                return Ok(RefinedOutcome::Refuted(Refutation {
                    pair: (i, j),
                    lhs: lhs_series.coeff(&e),
                    rhs: rhs_series.coeff(&e),
                    exponent: e,
                    p_exponent: Some(p_exp),
                    development: Some(devs[a].clone()),
                }));
            }
        }
    }
    Ok(RefinedOutcome::Consistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::identity_card;
    use crate::numerics::{int, rat};
    use crate::puiseux::BivarPoly;

    fn g_t(t: i64) -> BivarPoly {
        BivarPoly::from_terms(
            [((3, 0), 1), ((0, 12), 1), ((1, 9), 1), ((0, 13), t)]
                .into_iter()
                .map(|(k, c)| (k, Coeff::from_int(c))),
        )
    }

    #[test]
    fn g1_against_g2_identity_matching() {
        let (a, b) = (identity_card(&g_t(1)).unwrap(), identity_card(&g_t(2)).unwrap());
        let m: Vec<(usize, usize)> = a.lines[0]
            .canyons
            .iter()
            .copied()
            .zip(b.lines[0].canyons.iter().copied())
            .collect();
        // pair canyons with the same arc coefficient
        let same = a.polars[a.canyons[m[0].0].representative()]
            .tangent
            .approx_eq(&Coeff::zero())
            .unwrap();
        assert!(same);
        let lead = |card: &IdentityCard, k: usize| card.polars[card.canyons[k].representative()].arc.lead().unwrap().1.clone();
        let aligned = lead(&a, m[0].0).approx_eq(&lead(&b, m[0].1)).unwrap();
        let m = if aligned { m } else { vec![(m[0].0, m[1].1), (m[1].0, m[0].1)] };
        match refined_check(&a, &b, &m, &Coeff::one()).unwrap() {
            RefinedOutcome::Refuted(r) => {
                assert_eq!(r.exponent, rat(29, 2));
                assert_eq!(r.p_exponent, Some(rat(31, 2)));
                let dev = r.development.unwrap();
                assert_eq!(dev.terms[1].0, int(2));
                assert!(dev.terms[1].1.approx_eq(&Coeff::from_rat(rat(-1, 12))).unwrap());
            }
            RefinedOutcome::Consistent => panic!("expected a refutation"),
        }
    }

    #[test]
    fn self_check_is_consistent() {
        let a = identity_card(&g_t(1)).unwrap();
        let m: Vec<(usize, usize)> = a.lines[0].canyons.iter().map(|&k| (k, k)).collect();
        assert_eq!(refined_check(&a, &a, &m, &Coeff::one()).unwrap(), RefinedOutcome::Consistent);
    }
}
