//! Mini-regularity in `x` and the tangent cone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{Coeff, Rat, UPoly};
use crate::puiseux::BivarPoly;

/// A germ made mini-regular by the shear `(x, y) ↦ (x, y + shear·x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Regularized {
    pub poly: BivarPoly,
    pub shear: Rat,
}

fn check_germ(f: &BivarPoly) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::Precondition("the zero germ".into()));
    }
    if !f.coeff(0, 0).is_exact() || !f.coeff(0, 0).mid().is_zero() {
        return Err(Error::Precondition("germ does not vanish at the origin".into()));
    }
    Ok(f.order().expect("non-zero"))
}

/// `f_m(1, λ)` for the initial form `f_m`.
fn initial_at(f: &BivarPoly, lambda: &Rat) -> Coeff {
    let fm = f.initial_form();
    fm.terms().fold(Coeff::zero(), |acc, ((_, j), c)| {
        acc.add(&c.mul(&Coeff::from_rat(pow(lambda, *j))))
    })
}

fn pow(r: &Rat, e: u32) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * r)
}

pub fn is_mini_regular(f: &BivarPoly) -> Result<bool> {
    check_germ(f)?;
    Ok(!initial_at(f, &Rat::zero()).zero_test()?)
}

/// Shear candidates by height: `0, 1, -1, 2, -2, 1/2, -1/2, 3, …`.
fn shear_candidates() -> impl Iterator<Item = Rat> {
    std::iter::once(Rat::zero()).chain((1i64..).flat_map(|h| {
        let mut v: Vec<Rat> = Vec::new();
        for q in 1..=h {
            for p in 1..=h {
                if p.max(q) == h && p.gcd(&q) == 1 {
                    let r = Rat::new(BigInt::from(p), BigInt::from(q));
                    v.push(r.clone());
                    v.push(-r);
                }
            }
        }
        v.sort_by(|a, b| {
            a.denom()
                .cmp(b.denom())
                .then(a.abs().cmp(&b.abs()))
                .then(b.cmp(a))
        });
        v
    }))
}

/// Returns `f(x, y + λx)` for the lowest-height rational `λ` making the
/// initial form non-vanishing at `(1, 0)`.
pub fn mini_regularize(f: &BivarPoly) -> Result<Regularized> {
    check_germ(f)?;
    for lambda in shear_candidates() {
        if initial_at(f, &lambda).is_certainly_nonzero() {
            let poly = if lambda.is_zero() {
                f.clone()
            } else {
                f.linear_change(
                    &Coeff::one(),
                    &Coeff::zero(),
                    &Coeff::from_rat(lambda.clone()),
                    &Coeff::one(),
                )
            };
            return Ok(Regularized {
                poly,
                shear: lambda,
            });
        }
    }
    unreachable!("a non-zero form has a non-root among the rationals")
}

/// Lines `x = s·y` of the tangent cone of a mini-regular germ, as distinct
/// slopes `s` with their multiplicity in the initial form.
pub fn tangent_cone(f: &BivarPoly) -> Result<Vec<(Coeff, usize)>> {
    if !is_mini_regular(f)? {
        return Err(Error::Precondition("tangent cone of a germ that is not mini-regular".into()));
    }
    let fm = f.initial_form();
    let m = f.order().expect("non-zero") as usize;
    let mut coeffs = vec![Coeff::zero(); m + 1];
    for ((i, _), c) in fm.terms() {
        coeffs[*i as usize] = c.clone();
    }
    UPoly::new(coeffs).roots()
}
