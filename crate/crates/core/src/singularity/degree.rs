//! Gradient degree of a polar arc.
//!
//! Along `γ(y) + u·y^q` each gradient component expands as
//! `Σ_k C_k(y) u^k y^{kq}` with `C_k = ∂_x^k F(γ) / k!`. Distinct `k` carry
//! distinct powers of `u`, so for generic `u` the order of a component is
//! the least `ord C_k + kq`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{Coeff, ExtRat, Rat, UPoly};
use crate::puiseux::{BivarPoly, PuiseuxSeries};

/// One gradient component `F ∈ {f_x, f_y}` expanded around the arc.
#[derive(Clone, Debug)]
struct Component {
    /// `C_k` for `k = 0..=deg_x F`
    taylor: Vec<PuiseuxSeries>,
}

/// The piecewise-linear function `q ↦ λ(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientProfile {
    /// `min(ord f_x(γ), ord f_y(γ))`
    pub lambda_inf: Rat,
    /// `(component, k, ord C_k)` for every `k ≥ 1` with `C_k ≢ 0`; component
    /// 0 is `f_x`, 1 is `f_y`.
    pub slopes: Vec<(usize, u32, Rat)>,
    /// The gradient degree.
    pub d: Rat,
}

impl GradientProfile {
    /// `λ(q) = min(λ(∞), min_k ord C_k + kq)`.
    pub fn lambda(&self, q: &Rat) -> Rat {
        self.slopes
            .iter()
            .map(|(_, k, o)| o + q * Rat::from_integer((*k).into()))
            .fold(self.lambda_inf.clone(), |a, b| a.min(b))
    }

    /// Breakpoints `(λ(∞) − ord C_k) / k`.
    pub fn candidates(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self
            .slopes
            .iter()
            .map(|(_, k, o)| (&self.lambda_inf - o) / Rat::from_integer((*k).into()))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

fn taylor_along(f: &BivarPoly, gamma: &PuiseuxSeries) -> Component {
    let mut taylor = Vec::new();
    let mut deriv = f.clone();
    let mut fact = Rat::one();
    let mut k = 0u32;
    loop {
        let ck = deriv
            .substitute_x(gamma)
            .scale(&Coeff::from_rat(fact.recip()));
        taylor.push(ck);
        if deriv.deg_x() == 0 || deriv.is_zero() {
            break;
        }
        k += 1;
        fact *= Rat::from_integer(k.into());
        deriv = deriv.deriv_x();
    }
    Component { taylor }
}

/// The exponent of the generic-`u` leading term of one component at `q`,
/// together with its coefficient as a polynomial in `u`.
fn leading_in_u(comp: &Component, q: &Rat) -> Result<Option<(Rat, UPoly)>> {
    let mut best: Option<Rat> = None;
    for (k, ck) in comp.taylor.iter().enumerate() {
        if let ExtRat::Fin(o) = ck.ord() {
            let e = o + q * Rat::from_integer(k.into());
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
    }
    let Some(e) = best else { return Ok(None) };
    let mut coeffs = vec![Coeff::zero(); comp.taylor.len()];
    for (k, ck) in comp.taylor.iter().enumerate() {
        let ek = &e - q * Rat::from_integer(k.into());
        coeffs[k] = ck.coeff(&ek);
    }
    let poly = UPoly::new(coeffs);
    if poly.degree().is_none() {
        return Err(Error::PrecisionExhausted(
            "leading u-polynomial vanishes".into(),
        ));
    }
    Ok(Some((e, poly)))
}

/// `λ(q)` computed with `u` kept symbolic.
pub fn lambda_symbolic(f: &BivarPoly, gamma: &PuiseuxSeries, q: &Rat) -> Result<ExtRat> {
    let comps = [taylor_along(&f.deriv_x(), gamma), taylor_along(&f.deriv_y(), gamma)];
    let mut best = ExtRat::Inf;
    for c in &comps {
        if let Some((e, _)) = leading_in_u(c, q)? {
            best = best.min(ExtRat::Fin(e));
        }
    }
    Ok(best)
}

pub fn gradient_profile(f: &BivarPoly, gamma: &PuiseuxSeries) -> Result<GradientProfile> {
    let comps = [taylor_along(&f.deriv_x(), gamma), taylor_along(&f.deriv_y(), gamma)];
    let fx_on = &comps[0].taylor[0];
    if fx_on.terms().any(|(_, c)| c.is_certainly_nonzero()) {
        return Err(Error::Precondition(format!(
            "f_x does not vanish along {gamma}"
        )));
    }
    let lambda_inf = match comps[1].taylor[0].exact_ord() {
        Ok(ExtRat::Fin(o)) => o,
        Ok(ExtRat::Inf) => {
            return Err(Error::Precondition(format!(
                "the gradient vanishes identically along {gamma}"
            )))
        }
        Err(Error::TruncationAmbiguous(t)) => {
            return Err(Error::TruncationTooSmall {
                needed: t.clone() + Rat::one(),
                available: t,
            })
        }
        Err(e) => return Err(e),
    };
    let mut slopes = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        for (k, ck) in comp.taylor.iter().enumerate().skip(1) {
            match ck.ord() {
                ExtRat::Fin(o) => slopes.push((ci, k as u32, o)),
                ExtRat::Inf => {
                    if let ExtRat::Fin(t) = ck.trunc() {
                        // C_k is only known to vanish below t
                        if (&lambda_inf - t) / Rat::from_integer(k.into()) >= Rat::one() {
                            return Err(Error::TruncationTooSmall {
                                needed: lambda_inf.clone(),
                                available: t.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    let mut profile = GradientProfile {
        lambda_inf,
        slopes,
        d: Rat::one(),
    };
    let mut d = None;
    for q in profile.candidates() {
        if profile.lambda(&q) == profile.lambda_inf {
            d = Some(q);
            break;
        }
    }
    let d = d.unwrap_or_else(Rat::one);
    profile.d = if d < Rat::one() { Rat::one() } else { d };
    Ok(profile)
}

/// The least `q` with `λ(q) = λ(∞)`, never below 1.
pub fn gradient_degree(f: &BivarPoly, gamma: &PuiseuxSeries) -> Result<Rat> {
    Ok(gradient_profile(f, gamma)?.d)
}
