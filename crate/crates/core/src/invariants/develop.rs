//! The finite development `P(y) = c·y + r₁y^{β₁} + …` of `Y = φ₂(γ(y), y)`.
//!
//! Given `f(γ(y), y)` and `g(γ′(Y), Y)`, the relation `f(γ) = g(γ′(Y))`
//! modulo `y^{h+d−1}` fixes `Y` term by term: after `P` is known up to some
//! exponent, the lowest surviving term `R_e y^e` of `f(γ) − g(γ′(P))` is
//! cancelled by `r y^{e−h+1}` with `r = R_e / (h·b·c^{h−1})`, `b` being the
//! leading coefficient of `g(γ′)`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{Coeff, ExtRat, Rat};
use crate::puiseux::PuiseuxSeries;

const MAX_STEPS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct Development {
    pub c: Coeff,
    /// `(β_k, r_k)`, starting with `(1, c)`.
    pub terms: Vec<(Rat, Coeff)>,
    /// `d − 1`: every `β_k` lies strictly below it.
    pub cutoff: Rat,
    /// Which comparison of second exponents decided the first step: 1 for
    /// `q < q′`, 2 for `q = q′`, 3 for `q > q′`.
    pub first_case: Option<u8>,
}

impl Development {
    pub fn series(&self) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.terms.iter().cloned(), ExtRat::Inf)
    }
}

/// `Σ_e g_e · P^e`, each power on the principal branch of `c^e`.
pub fn compose(g: &PuiseuxSeries, p: &PuiseuxSeries, limit: &Rat) -> Result<PuiseuxSeries> {
    let mut acc = PuiseuxSeries::zero();
    for (e, ge) in g.terms() {
        if e >= limit {
            break;
        }
        acc = acc.add(&p.compose_rational_power(e, limit)?.scale(ge));
    }
    let tail = g.trunc().fin().cloned();
    if let Some(t) = tail {
        // the unknown part of g starts at t, and P^t has order t
        acc = acc.truncate(&ExtRat::Fin(t));
    }
    Ok(acc.cap(limit))
}

/// Second exponent of a series below `limit`, minus `h`.
fn second_gap(s: &PuiseuxSeries, h: &Rat, limit: &Rat) -> Option<Rat> {
    s.terms().nth(1).map(|(e, _)| e - h).filter(|q| &(h + q) < limit)
}

/// Develops `P` for the scale constant `c` and canyon degree `d`.
pub fn develop_phi2(
    f_series: &PuiseuxSeries,
    g_series: &PuiseuxSeries,
    c: &Coeff,
    d: &Rat,
) -> Result<Development> {
    let (h, _) = f_series
        .lead()
        .map(|(e, a)| (e.clone(), a.clone()))
        .ok_or_else(|| Error::Precondition("development of a vanishing series".into()))?;
    let (hg, b) = g_series
        .lead()
        .map(|(e, b)| (e.clone(), b.clone()))
        .ok_or_else(|| Error::Precondition("development of a vanishing series".into()))?;
    if h != hg {
        return Err(Error::InconsistentDevelopment { exponent: h.min(hg) });
    }
    let one = Rat::one();
    let cutoff = d - &one;
    let limit = &h + &cutoff;
    let first_case = match (second_gap(f_series, &h, &limit), second_gap(g_series, &h, &limit)) {
        (None, None) => None,
        (Some(_), None) => Some(1),
        (None, Some(_)) => Some(3),
        (Some(q), Some(qp)) => Some(match q.cmp(&qp) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => 2,
            std::cmp::Ordering::Greater => 3,
        }),
    };
    let slope = b.mul(&c.pow_rat(&(&h - &one))?).scale(&h);
    let f_capped = f_series.cap(&limit);
    let mut terms = vec![(one.clone(), c.clone())];
    for step in 0..=MAX_STEPS {
        if step == MAX_STEPS {
            return Err(Error::Precondition("development does not terminate".into()));
        }
        let p = PuiseuxSeries::from_terms(terms.iter().cloned(), ExtRat::Inf);
        let residual = f_capped.sub(&compose(g_series, &p, &limit)?).cap(&limit);
        let Some((e, re)) = residual.lead().map(|(e, c)| (e.clone(), c.clone())) else {
            if let ExtRat::Fin(t) = residual.trunc() {
                if *t < limit {
                    return Err(Error::TruncationTooSmall {
                        needed: limit,
                        available: t.clone(),
                    });
                }
            }
            break;
        };
        if !re.is_certainly_nonzero() {
            return Err(Error::PrecisionExhausted(format!(
                "residual coefficient {re} at y^{e}"
            )));
        }
        let beta = &e - &h + &one;
        if beta >= cutoff {
            break;
        }
        if beta <= one {
            return Err(Error::InconsistentDevelopment { exponent: e });
        }
        terms.push((beta, re.div(&slope)?));
    }
    Ok(Development {
        c: c.clone(),
        terms,
        cutoff,
        first_case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn series(terms: &[(Rat, Coeff)], trunc: ExtRat) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(terms.iter().cloned(), trunc)
    }

    fn g_along(t: i64) -> PuiseuxSeries {
        // G_t(γ_a) = y^12 + t y^13 + (2a/3) y^{27/2}
        let a = Coeff::from_rat(rat(-1, 3)).principal_root(2).unwrap();
        series(
            &[
                (int(12), Coeff::one()),
                (int(13), Coeff::from_int(t)),
                (rat(27, 2), a.scale(&rat(2, 3))),
            ],
            ExtRat::Inf,
        )
    }

    #[test]
    fn identity_development() {
        let s = g_along(1);
        let dev = develop_phi2(&s, &s, &Coeff::one(), &rat(13, 2)).unwrap();
        assert_eq!(dev.terms, vec![(int(1), Coeff::one())]);
        assert_eq!(dev.first_case, Some(2));
    }

    #[test]
    fn g1_against_g2() {
        let dev = develop_phi2(&g_along(1), &g_along(2), &Coeff::one(), &rat(13, 2)).unwrap();
        assert_eq!(dev.terms[1].0, int(2));
        assert!(dev.terms[1].1.approx_eq(&Coeff::from_rat(rat(-1, 12))).unwrap());
        assert_eq!(dev.first_case, Some(2));
        assert!(dev.terms.iter().all(|(b, _)| *b < rat(11, 2)));
    }

    #[test]
    fn mismatched_scale_is_inconsistent() {
        let s = g_along(1);
        assert_eq!(
            develop_phi2(&s, &s, &Coeff::from_int(2), &rat(13, 2)),
            Err(Error::InconsistentDevelopment { exponent: int(12) })
        );
    }
}
