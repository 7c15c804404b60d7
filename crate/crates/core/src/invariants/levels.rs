//! Second- and third-level invariants of canyon pairs and triples.

use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{Coeff, ExtRat, Rat};
use crate::puiseux::PuiseuxSeries;

/// `(H, ã_i − ã_j)` for two canyons on one line with equal `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondLevel {
    pub pair: (usize, usize),
    pub h: Rat,
    pub delta: Rat,
    /// Order of `f_i/a_i − f_j/a_j`; `Inf` when it vanishes below
    /// `h + δ − 1`.
    pub big_h: ExtRat,
    pub a_i: Coeff,
    pub a_j: Coeff,
    pub diff: Coeff,
    pub applicable: bool,
}

/// `(H′, A₁₂ − A₃₁)` for an ordered triple.
#[derive(Clone, Debug, PartialEq)]
pub struct ThirdLevel {
    pub triple: (usize, usize, usize),
    pub h: Rat,
    pub big_h: Rat,
    pub delta: Rat,
    pub delta_prime: Rat,
    pub big_h_prime: ExtRat,
    pub a12: Coeff,
    pub a31: Coeff,
    pub diff: Coeff,
    pub applicable: bool,
}

/// `f(γ)/a` for the leading coefficient `a`.
pub fn normalize(f_along: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let (_, a) = f_along
        .lead()
        .ok_or_else(|| Error::Precondition("normalizing a vanishing series".into()))?;
    Ok(f_along.scale(&a.recip()?))
}

/// The order of `s`, or `Inf` when it is known to vanish below `limit`.
fn order_below(s: &PuiseuxSeries, limit: &Rat) -> Result<ExtRat> {
    match s.exact_ord() {
        Err(Error::TruncationAmbiguous(t)) if t >= *limit => Ok(ExtRat::Inf),
        Err(Error::TruncationAmbiguous(t)) => Err(Error::TruncationTooSmall {
            needed: limit.clone(),
            available: t,
        }),
        other => other,
    }
}

/// The normalized difference `S_i − S_j` up to `h + δ − 1` and its record.
/// `s_i`, `s_j` are already divided by their leading coefficients.
pub fn second_level(
    pair: (usize, usize),
    s_i: &PuiseuxSeries,
    s_j: &PuiseuxSeries,
    h: &Rat,
    delta: &Rat,
) -> Result<(SecondLevel, PuiseuxSeries)> {
    let limit = h + delta - Rat::one();
    let diff_series = s_i.sub(s_j).cap(&limit);
    let big_h = order_below(&diff_series, &limit)?;
    let (a_i, a_j, diff) = match &big_h {
        ExtRat::Fin(e) => (s_i.coeff(e), s_j.coeff(e), diff_series.coeff(e)),
        ExtRat::Inf => (Coeff::zero(), Coeff::zero(), Coeff::zero()),
    };
    let applicable = big_h < ExtRat::Fin(limit);
    Ok((
        SecondLevel {
            pair,
            h: h.clone(),
            delta: delta.clone(),
            big_h,
            a_i,
            a_j,
            diff,
            applicable,
        },
        diff_series,
    ))
}

/// Third level from the two second-level differences `d12 = S₁ − S₂` and
/// `d31 = S₃ − S₁`; `None` unless both are applicable with equal `H`.
pub fn third_level(
    triple: (usize, usize, usize),
    l12: &SecondLevel,
    d12: &PuiseuxSeries,
    l31: &SecondLevel,
    d31: &PuiseuxSeries,
) -> Result<Option<ThirdLevel>> {
    if !l12.applicable || !l31.applicable || l12.big_h != l31.big_h || l12.h != l31.h {
        return Ok(None);
    }
    let ExtRat::Fin(big_h) = l12.big_h.clone() else {
        return Ok(None);
    };
    let (delta, delta_prime) = (l12.delta.clone(), l31.delta.clone());
    let limit = (&l12.h + &delta - Rat::one()).min(&l12.h + &delta_prime - Rat::one());
    let n12 = d12.scale(&l12.diff.recip()?);
    let n31 = d31.scale(&l31.diff.recip()?);
    let e = n12.sub(&n31).cap(&limit);
    let big_h_prime = order_below(&e, &limit)?;
    let (a12, a31, diff) = match &big_h_prime {
        ExtRat::Fin(x) => (n12.coeff(x), n31.coeff(x), e.coeff(x)),
        ExtRat::Inf => (Coeff::zero(), Coeff::zero(), Coeff::zero()),
    };
    let applicable = big_h_prime < ExtRat::Fin(limit);
    Ok(Some(ThirdLevel {
        triple,
        h: l12.h.clone(),
        big_h,
        delta,
        delta_prime,
        big_h_prime,
        a12,
        a31,
        diff,
        applicable,
    }))
}
