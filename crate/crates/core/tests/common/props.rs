//! Structural properties of identity cards, checked against f64 oracles.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use canyonlab::invariants::{identity_card, IdentityCard};
use canyonlab::numerics::{rat_to_f64, Coeff, ExtRat, Rat};
use canyonlab::puiseux::{BivarPoly, PuiseuxSeries};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// Coefficients closer than this are treated as equal by the oracles.
pub const ORACLE_TOL: f64 = 1e-9;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= ORACLE_TOL * a.norm().max(b.norm()).max(1.0)
}

fn trunc_of(s: &PuiseuxSeries) -> Option<Rat> {
    s.trunc().fin().cloned()
}

/// First exponent where two series differ, or `None` when they agree
/// below both truncations.
pub fn oracle_contact(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Option<Rat> {
    let limit = match (trunc_of(a), trunc_of(b)) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let exps: BTreeSet<Rat> = a.terms().chain(b.terms()).map(|(e, _)| e.clone()).collect();
    exps.into_iter()
        .take_while(|e| limit.as_ref().is_none_or(|t| e < t))
        .find(|e| !close(a.coeff(e).to_c64(), b.coeff(e).to_c64()))
}

/// `Σ c_e ω^{eN} y^e` for `ω = exp(2πik/N)`, in f64.
fn conjugate_f64(s: &PuiseuxSeries, k: u64) -> Vec<(Rat, Complex64)> {
    s.terms()
        .map(|(e, c)| {
            let turn = rat_to_f64(e) * k as f64;
            (e.clone(), c.to_c64() * Complex64::from_polar(1.0, TAU * turn))
        })
        .collect()
}

fn same_terms(a: &[(Rat, Complex64)], b: &PuiseuxSeries) -> bool {
    a.len() == b.len() && a.iter().zip(b.terms()).all(|((ea, ca), (eb, cb))| ea == eb && close(*ca, cb.to_c64()))
}

fn denominator(s: &PuiseuxSeries) -> u64 {
    s.terms()
        .map(|(e, _)| e.denom().to_u64().expect("small denominator"))
        .fold(1, num_integer::lcm)
}

/// Every root of `f` substitutes to zero below the truncation, and no root
/// is known to less than the card's truncation.
pub fn residuals(card: &IdentityCard) -> Check {
    for (root, _) in &card.tree.roots {
        if let Some(t) = trunc_of(root) {
            ensure(t >= card.trunc, || format!("root {root} known only to {t}"))?;
        }
        let res = card.regular.poly.substitute_x(root);
        let below = trunc_of(root);
        for (e, c) in res.terms() {
            ensure(below.as_ref().is_some_and(|t| e >= t) || !c.is_certainly_nonzero(), || {
                format!("f({root}) has the nonzero term {c}·y^{e}")
            })?;
        }
    }
    Ok(())
}

/// Roots and polars are closed under `y^{1/N} ↦ ω·y^{1/N}`.
pub fn conjugate_closure(card: &IdentityCard) -> Check {
    let roots: Vec<&PuiseuxSeries> = card.tree.roots.iter().map(|(r, _)| r).collect();
    let polars: Vec<&PuiseuxSeries> = card.polars.iter().map(|p| &p.arc).collect();
    for set in [&roots, &polars] {
        for s in set.iter() {
            let n = denominator(s);
            for k in 1..n {
                let conj = conjugate_f64(s, k);
                ensure(set.iter().any(|t| same_terms(&conj, t)), || {
                    format!("conjugate {k}/{n} of {s} is missing")
                })?;
            }
        }
    }
    Ok(())
}

/// `h = Σ m·ord(γ - ζ)` over the roots `ζ` of `f`, exactly, whenever every
/// contact is visible below the truncations.
pub fn order_along_polars(card: &IdentityCard) -> Check {
    // f = unit · y^m · ∏ (x - ζ)
    let y_factor = card.regular.poly.terms().map(|((_, j), _)| *j).min().unwrap_or(0);
    for p in &card.polars {
        let mut sum = Rat::from_integer(y_factor.into());
        for (root, m) in &card.tree.roots {
            match oracle_contact(&p.arc, root) {
                Some(k) => sum += k * Rat::from_integer((*m).into()),
                None => return Err(format!("polar {} meets a root beyond the truncation", p.arc)),
            }
        }
        ensure(sum == p.h, || format!("polar {}: h = {}, contact sum {sum}", p.arc, p.h))?;
    }
    Ok(())
}

/// Members of a canyon share `d`, `h` and `a`; canyons themselves meet
/// below both of their degrees.
pub fn canyon_structure(card: &IdentityCard) -> Check {
    for (i, c) in card.canyons.iter().enumerate() {
        for &m in &c.members {
            let p = &card.polars[m];
            ensure(p.d == c.d && p.h == c.h, || format!("canyon {i}: member {m} has (d, h) = ({}, {})", p.d, p.h))?;
            ensure(close(p.a.to_c64(), c.a.to_c64()), || format!("canyon {i}: member {m} has a = {}", p.a))?;
        }
    }
    for i in 0..card.canyons.len() {
        for j in i + 1..card.canyons.len() {
            let (ci, cj) = (&card.canyons[i], &card.canyons[j]);
            let k = oracle_contact(&card.polars[ci.representative()].arc, &card.polars[cj.representative()].arc)
                .ok_or_else(|| format!("canyons {i} and {j} agree below the truncation"))?;
            ensure(k < ci.d.clone().min(cj.d.clone()), || {
                format!("canyons {i}, {j}: contact {k} against degrees {}, {}", ci.d, cj.d)
            })?;
        }
    }
    Ok(())
}

/// Swapping a second-level pair keeps `H` and negates `diff`.
pub fn second_level_antisymmetry(card: &IdentityCard) -> Check {
    for rec in &card.second {
        let (i, j) = rec.pair;
        let (back, _) = card
            .second_level(j, i)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("pair ({j}, {i}) has no second level"))?;
        ensure(back.big_h == rec.big_h && back.applicable == rec.applicable, || {
            format!("pair ({i}, {j}): H = {} but reversed {}", rec.big_h, back.big_h)
        })?;
        if rec.applicable {
            ensure(close(back.diff.to_c64(), -rec.diff.to_c64()), || {
                format!("pair ({i}, {j}): diff {} reversed to {}", rec.diff, back.diff)
            })?;
        }
    }
    Ok(())
}

pub fn structural(card: &IdentityCard) -> Check {
    residuals(card)?;
    conjugate_closure(card)?;
    order_along_polars(card)?;
    canyon_structure(card)?;
    second_level_antisymmetry(card)
}

/// `γ(c·y)` in f64.
fn rescaled(s: &PuiseuxSeries, c: f64) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(
        s.terms().map(|(e, k)| {
            let z = k.to_c64() * c.powf(rat_to_f64(e));
            let g = canyonlab::numerics::GaussRat::from_c64(z).expect("finite");
            (e.clone(), Coeff::new(g, 0.0))
        }),
        s.trunc().clone(),
    )
}

/// `f(x, c·y)` rescales `(h, a)` to `(h, a·c^h)` and `(H, diff)` to
/// `(H, diff·c^{H-h})`; canyons are matched through the rescaled arcs.
pub fn scaling(f: &BivarPoly, c: &Rat) -> Check {
    let g = f.linear_change(&Coeff::one(), &Coeff::zero(), &Coeff::zero(), &Coeff::from_rat(c.clone()));
    let fc = identity_card(f).map_err(|e| e.to_string())?;
    let gc = identity_card(&g).map_err(|e| e.to_string())?;
    if !fc.regular.shear.is_zero() || !gc.regular.shear.is_zero() {
        return Ok(());
    }
    let cf = rat_to_f64(c);
    let find = |i: usize| -> Result<usize, String> {
        // γ_g(y) = γ_f(c·y)
        let arc = rescaled(&fc.polars[fc.canyons[i].representative()].arc, cf);
        gc.card_canyons()
            .find(|&j| {
                let d = &gc.canyons[j].d;
                oracle_contact(&arc, &gc.polars[gc.canyons[j].representative()].arc).is_none_or(|k| &k >= d)
            })
            .ok_or_else(|| format!("canyon {i} has no image under y -> {c}y"))
    };
    let image: Vec<(usize, usize)> = fc.card_canyons().map(|i| find(i).map(|j| (i, j))).collect::<Result<_, _>>()?;
    ensure(image.len() == gc.card_canyons().count(), || "canyon counts differ".into())?;
    for &(i, j) in &image {
        let (a, b) = (&fc.canyons[i], &gc.canyons[j]);
        ensure(a.h == b.h && a.d == b.d, || format!("canyon {i}: (d, h) changed under scaling"))?;
        let want = a.a.to_c64() * cf.powf(rat_to_f64(&a.h));
        ensure(close(b.a.to_c64(), want), || format!("canyon {i}: a = {}, expected {want}", b.a))?;
    }
    for rec in &fc.second {
        let (i, i2) = rec.pair;
        let (Some(&(_, j)), Some(&(_, j2))) = (image.iter().find(|p| p.0 == i), image.iter().find(|p| p.0 == i2)) else {
            continue;
        };
        let (img, _) = gc
            .second_level(j, j2)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("pair ({i}, {i2}) loses its second level"))?;
        ensure(img.big_h == rec.big_h, || format!("pair ({i}, {i2}): H {} became {}", rec.big_h, img.big_h))?;
        if let (true, ExtRat::Fin(big_h)) = (rec.applicable, &rec.big_h) {
            let want = rec.diff.to_c64() * cf.powf(rat_to_f64(&(big_h - &rec.h)));
            ensure(close(img.diff.to_c64(), want), || {
                format!("pair ({i}, {i2}): diff {} expected {want}", img.diff)
            })?;
        }
    }
    Ok(())
}
