//! Shared corpus and exact-arithmetic oracles for the integration tests.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeMap;

use canyonlab::germ::parse_poly;
use canyonlab::numerics::{Coeff, ExtRat, Rat};
use canyonlab::puiseux::{BivarPoly, PuiseuxSeries};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const F1: &str = "1/3*x^3 - x*y^10 + y^12";
pub const F2: &str = "1/3*x^3 - 4*x*y^10 + y^12";
pub const G1: &str = "x^3 + y^12 + x*y^9 + y^13";
pub const G2: &str = "x^3 + y^12 + x*y^9 + 2*y^13";

/// The soundness and property corpus: both example families at two
/// parameter values, a rescaled member of the first family, two simple
/// singularities, and a germ with three polars on one line.
pub const CORPUS: [(&str, &str); 8] = [
    ("F1", F1),
    ("F2", F2),
    ("G1", G1),
    ("G2", G2),
    ("F-sqrt3", "x^3 - 3*x*y^10 + 3*y^12"),
    ("A2", "x^2 - y^3"),
    ("E6", "x^3 + y^4"),
    ("three-polar", "1/4*x^4 - x*y^15 + y^18 + x^2*y^11"),
];

pub fn germ(text: &str) -> BivarPoly {
    parse_poly(text).expect("corpus germs parse")
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// A random rational with small numerator and denominator, nonzero.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let p: i64 = rng.gen_range(-4..=4);
        let q: i64 = rng.gen_range(1..=3);
        if p != 0 {
            return rat(p, q);
        }
    }
}

/// Exact series `Σ c_e y^e` over the rationals, independent of the library.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExactSeries(pub BTreeMap<Rat, Rat>);

impl ExactSeries {
    pub fn monomial(c: Rat, e: Rat) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Self(m)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.get(e).cloned().unwrap_or_else(Rat::zero) + c;
            if v.is_zero() {
                m.remove(e);
            } else {
                m.insert(e.clone(), v);
            }
        }
        Self(m)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self(self.0.iter().map(|(e, c)| (e.clone(), c * k)).filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn mul(&self, o: &Self, limit: &Rat) -> Self {
        let mut out = Self::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = e1 + e2;
                if &e < limit {
                    out = out.add(&Self::monomial(c1 * c2, e));
                }
            }
        }
        out
    }

    pub fn cap(&self, limit: &Rat) -> Self {
        Self(self.0.iter().filter(|(e, _)| *e < limit).map(|(e, c)| (e.clone(), c.clone())).collect())
    }

    /// `(1 + w)^a` for `ord w > 0`, by the binomial series.
    pub fn one_plus_pow(w: &Self, a: &Rat, limit: &Rat) -> Self {
        let mut out = Self::monomial(Rat::one(), Rat::zero());
        let mut wn = Self::monomial(Rat::one(), Rat::zero());
        let mut binom = Rat::one();
        let Some(ord) = w.0.keys().next().cloned() else {
            return out;
        };
        let mut n = 0i64;
        while ord.clone() * int(n + 1) < *limit {
            binom = binom * (a - int(n)) / int(n + 1);
            wn = wn.mul(w, limit);
            n += 1;
            out = out.add(&wn.scale(&binom));
        }
        out
    }

    pub fn to_series(&self, trunc: ExtRat) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.0.iter().map(|(e, c)| (e.clone(), Coeff::from_rat(c.clone()))), trunc)
    }

    pub fn second_gap(&self) -> Option<Rat> {
        let mut it = self.0.keys();
        let h = it.next()?;
        it.next().map(|e| e - h)
    }
}

/// `g(P)` where `P = c·y·(1 + w)`; `c^e` must be rational for every
/// exponent of `g`, so `c = 1` whenever `g` has fractional exponents.
pub fn compose_exact(g: &ExactSeries, c: &Rat, w: &ExactSeries, limit: &Rat) -> ExactSeries {
    let mut out = ExactSeries::default();
    for (e, ge) in &g.0 {
        if e >= limit {
            continue;
        }
        let ce = if e.is_integer() {
            let n: i32 = e.to_integer().try_into().unwrap();
            c.pow(n)
        } else {
            assert!(c.is_one(), "fractional exponent needs c = 1");
            Rat::one()
        };
        let body = ExactSeries::one_plus_pow(w, e, &(limit - e));
        let shifted: BTreeMap<Rat, Rat> = body.0.into_iter().map(|(k, v)| (k + e, v * &ce * ge)).collect();
        out = out.add(&ExactSeries(shifted));
    }
    out.cap(limit)
}

/// A planted development problem with known answer.
#[derive(Clone, Debug)]
pub struct Planted {
    pub case: u8,
    pub h: Rat,
    pub d: Rat,
    pub c: Rat,
    /// `(β, r)` terms of `P` after `c·y`.
    pub terms: Vec<(Rat, Rat)>,
    pub f: ExactSeries,
    pub g: ExactSeries,
}

/// Builds a pair whose first development step falls in `case` (1, 2 or 3),
/// comparing the second exponents of `f(γ)` and `g(γ′)`.
pub fn planted(rng: &mut ChaCha8Rng, case: u8) -> Planted {
    let half = rng.gen_bool(0.5);
    let (den, c) = if half {
        (2, Rat::one())
    } else {
        (1, [int(1), int(2), int(-1), rat(1, 2), int(3)][rng.gen_range(0..5)].clone())
    };
    let h = int(rng.gen_range(6..=12));
    let d = int(rng.gen_range(6..=8)) + rat(rng.gen_range(0..den), den);
    let limit = &h + &d - int(1);
    let b = int(rng.gen_range(1..=3));
    let step = rat(1, den);
    // first β − 1 and second exponent gap of g
    let beta1 = int(1) + step.clone() * int(rng.gen_range(2..=3));
    let qg = match case {
        1 => &beta1 - int(1) + &step,
        2 => &beta1 - int(1) - &step,
        _ => &beta1 - int(1),
    };
    let mut g = ExactSeries::monomial(b.clone(), h.clone());
    let g2 = small_nonzero(rng);
    g = g.add(&ExactSeries::monomial(g2.clone(), &h + &qg));
    let mut e = &h + &qg + &step;
    while e < limit {
        if rng.gen_bool(0.5) {
            g = g.add(&ExactSeries::monomial(small_nonzero(rng), e.clone()));
        }
        e += &step;
    }
    let mut terms = Vec::new();
    let r1 = if case == 3 {
        // cancels the second term of g: g2·c^{h+q′} + h·b·c^{h−1}·r = 0
        let n: i32 = (&h + &qg).to_integer().try_into().unwrap_or(0);
        let hn: i32 = h.to_integer().try_into().unwrap();
        let cpow = if c.is_one() { Rat::one() } else { c.pow(n) };
        -(g2.clone() * cpow) / (&h * &b * c.pow(hn - 1))
    } else {
        small_nonzero(rng)
    };
    terms.push((beta1.clone(), r1));
    let mut beta = &beta1 + &step;
    while beta < &d - int(1) {
        if rng.gen_bool(0.5) {
            terms.push((beta.clone(), small_nonzero(rng)));
        }
        beta += &step;
    }
    let w = terms.iter().fold(ExactSeries::default(), |acc, (bk, rk)| {
        acc.add(&ExactSeries::monomial(rk / &c, bk - int(1)))
    });
    let f = compose_exact(&g, &c, &w, &limit);
    Planted { case, h, d, c, terms, f, g }
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rat {
    small_rat(rng)
}

/// Runs the library development on a planted pair and compares it with the
/// planted `P` and with the case read off the exact series.
pub fn check_planted(p: &Planted) -> Result<(), String> {
    use canyonlab::invariants::develop_phi2;
    let limit = &p.h + &p.d - int(1);
    let trunc = ExtRat::Fin(limit.clone());
    let fs = p.f.to_series(trunc.clone());
    let gs = p.g.to_series(trunc);
    let dev = develop_phi2(&fs, &gs, &Coeff::from_rat(p.c.clone()), &p.d).map_err(|e| e.to_string())?;
    let want: Vec<(Rat, Rat)> = std::iter::once((int(1), p.c.clone())).chain(p.terms.iter().cloned()).collect();
    if dev.terms.len() != want.len() {
        return Err(format!("{} terms recovered, {} planted", dev.terms.len(), want.len()));
    }
    for ((b, r), (wb, wr)) in dev.terms.iter().zip(&want) {
        if b != wb {
            return Err(format!("exponent {b} recovered, {wb} planted"));
        }
        if !r.approx_eq(&Coeff::from_rat(wr.clone())).map_err(|e| e.to_string())? {
            return Err(format!("coefficient {r} at {b}, planted {wr}"));
        }
    }
    let gap = |s: &ExactSeries| s.cap(&limit).second_gap();
    let case = match (gap(&p.f), gap(&p.g)) {
        (Some(q), Some(qg)) if q < qg => 1,
        (Some(q), Some(qg)) if q == qg => 2,
        (Some(_), Some(_)) | (None, Some(_)) => 3,
        (Some(_), None) => 1,
        (None, None) => 0,
    };
    if case != p.case || dev.first_case != Some(p.case) {
        return Err(format!(
            "case {:?} reported, {} from the series, {} planted",
            dev.first_case, case, p.case
        ));
    }
    Ok(())
}

/// The 20 seeded planted pairs, cycling through the three cases.
pub fn planted_battery(seed: u64) -> Vec<Planted> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20).map(|k| planted(&mut rng, (k % 3) as u8 + 1)).collect()
}

/// `f(x + λy, y)` or, with `vertical`, `f(x, y + λx)`.
pub fn shear(f: &BivarPoly, lambda: &Rat, vertical: bool) -> BivarPoly {
    let (one, zero, l) = (Coeff::one(), Coeff::zero(), Coeff::from_rat(lambda.clone()));
    if vertical {
        f.linear_change(&one, &zero, &l, &one)
    } else {
        f.linear_change(&one, &l, &zero, &one)
    }
}

/// Three seeded shears per corpus germ, the last of them vertical.
pub fn shear_battery(seed: u64) -> Vec<(&'static str, Rat, bool)> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CORPUS
        .iter()
        .flat_map(|(name, _)| (0..3).map(move |k| (*name, k == 2)))
        .map(|(name, vertical)| (name, small_rat(&mut rng), vertical))
        .collect()
}
