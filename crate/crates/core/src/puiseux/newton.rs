//! Newton–Puiseux expansion of the roots `x = ζ(y)` of `F(x, y) = 0`.

use num_traits::{One, Zero};

use super::bivar::BivarPoly;
use super::series::PuiseuxSeries;
use super::sqfree::square_free_x;
use crate::error::{Error, Result};
use crate::numerics::{Coeff, ExtRat, Rat, UPoly};

/// All Puiseux roots of positive order with multiplicities, every conjugate
/// listed separately, sorted term by term.
///
/// A root whose expansion terminates is returned exactly (infinite
/// truncation); every other root is known to `O(y^trunc)`.
pub fn newton_puiseux(f: &BivarPoly, trunc: &Rat) -> Result<Vec<(PuiseuxSeries, usize)>> {
    if f.is_zero() {
        return Err(Error::Precondition("Newton-Puiseux of the zero polynomial".into()));
    }
    if *trunc <= Rat::zero() {
        return Err(Error::Precondition("truncation must be positive".into()));
    }
    let parts = square_free_x(f).unwrap_or_else(|| vec![(f.clone(), 1)]);
    let mut out = Vec::new();
    for (part, k) in parts {
        for (root, m) in branches(&part, trunc)? {
            out.push((root, m * k));
        }
    }
    out.sort_by(|a, b| a.0.cmp_terms(&b.0));
    Ok(out)
}

fn branches(f: &BivarPoly, trunc: &Rat) -> Result<Vec<(PuiseuxSeries, usize)>> {
    let coeffs = f.x_coeffs();
    let mut best: Option<(usize, Rat)> = None;
    for (i, p) in coeffs.iter().enumerate() {
        if let ExtRat::Fin(o) = p.exact_ord()? {
            if best.as_ref().is_none_or(|(_, b)| o < *b) {
                best = Some((i, o));
            }
        }
    }
    let Some((count, o_count)) = best else {
        return Ok(Vec::new());
    };
    let cap = branch_cap(&o_count, count, trunc);
    let coeffs: Vec<PuiseuxSeries> = coeffs.iter().map(|p| p.cap(&cap)).collect();
    let mut out = Vec::new();
    let ctx = Ctx { trunc };
    ctx.branch(coeffs, PuiseuxSeries::zero(), Rat::zero(), count, &mut out)?;
    Ok(out)
}

fn branch_cap(o_m: &Rat, m: usize, trunc: &Rat) -> Rat {
    o_m + trunc * Rat::from_integer(m.into()) + Rat::one()
}

/// Caps the coefficients of a shifted polynomial with `m` roots left.
///
/// Every later shift has exponent above `beta`, so `p_i` with `i > m` only
/// reaches `z^k`, `k <= m`, at orders `>= ord p_i + (i - m)·beta`; below
/// `cap` it needs `cap - (i - m)·beta` of its terms. Caps only shrink down
/// the recursion, so coefficients with nothing left are dropped.
fn reach_cap(p: &[PuiseuxSeries], cap: &Rat, m: usize, beta: &Rat) -> Vec<PuiseuxSeries> {
    let mut out: Vec<PuiseuxSeries> = p
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if i <= m {
                return s.cap(cap);
            }
            s.cap(&(cap - beta * Rat::from_integer((i - m).into())))
        })
        .collect();
    while out.len() > m + 1 && out.last().is_some_and(PuiseuxSeries::is_empty) {
        out.pop();
    }
    out
}

struct Ctx<'a> {
    trunc: &'a Rat,
}

impl Ctx<'_> {
    /// `p` holds the `z`-coefficients of `F(prefix + z, y)`; `count` roots
    /// of it have order above `last`.
    fn branch(
        &self,
        mut p: Vec<PuiseuxSeries>,
        prefix: PuiseuxSeries,
        last: Rat,
        mut count: usize,
        out: &mut Vec<(PuiseuxSeries, usize)>,
    ) -> Result<()> {
        let v = p.iter().take_while(|c| c.is_exact_zero()).count().min(count);
        if v > 0 {
            out.push((prefix.clone(), v));
            p.drain(..v);
            count -= v;
        }
        if count == 0 {
            return Ok(());
        }
        if p[0].is_empty() {
            return self.settle(&prefix, count, out);
        }
        let mut points: Vec<(usize, Rat)> = Vec::new();
        for (i, c) in p.iter().enumerate().take(count + 1) {
            if let ExtRat::Fin(o) = c.ord() {
                c.exact_ord()?;
                points.push((i, o));
            }
        }
        if points.last().map(|q| q.0) != Some(count) {
            return Err(Error::TruncationTooSmall {
                needed: self.trunc + Rat::one(),
                available: self.trunc.clone(),
            });
        }
        for (i0, i1) in lower_hull(&points) {
            let (o0, o1) = (&points[i0].1, &points[i1].1);
            let (k0, k1) = (points[i0].0, points[i1].0);
            let beta = (o0 - o1) / Rat::from_integer((k1 - k0).into());
            if beta <= last {
                return Err(Error::PrecisionExhausted(format!(
                    "Newton polygon slope {beta} does not exceed {last}"
                )));
            }
            if &beta >= self.trunc {
                self.settle(&prefix, k1 - k0, out)?;
                continue;
            }
            let level = o0 + &beta * Rat::from_integer(k0.into());
            let chars: Vec<Coeff> = (k0..=k1)
                .map(|k| {
                    let e = &level - &beta * Rat::from_integer(k.into());
                    p[k].coeff(&e)
                })
                .collect();
            for (c, m) in UPoly::new(chars).roots()? {
                let next_prefix = prefix.add(&PuiseuxSeries::monomial(c.clone(), beta.clone()));
                let shifted = taylor_shift(&p, &c, &beta);
                let o_m = shifted
                    .get(m)
                    .and_then(|s| s.ord().fin().cloned())
                    .unwrap_or_else(|| o1.clone());
                let cap = branch_cap(&o_m, m, self.trunc);
                let shifted = reach_cap(&shifted, &cap, m, &beta);
                self.branch(shifted, next_prefix, beta.clone(), m, out)?;
            }
        }
        Ok(())
    }

    /// Roots that agree with `prefix` beyond the truncation.
    fn settle(
        &self,
        prefix: &PuiseuxSeries,
        count: usize,
        out: &mut Vec<(PuiseuxSeries, usize)>,
    ) -> Result<()> {
        if count > 1 {
            return Err(Error::TruncationTooSmall {
                needed: self.trunc + Rat::one(),
                available: self.trunc.clone(),
            });
        }
        out.push((prefix.truncate(&ExtRat::Fin(self.trunc.clone())), count));
        Ok(())
    }
}

/// Lower convex hull of `(index, height)` points sorted by index, as pairs
/// of positions into `points`.
fn lower_hull(points: &[(usize, Rat)]) -> Vec<(usize, usize)> {
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..points.len() {
        while hull.len() >= 2 {
            let a = &points[hull[hull.len() - 2]];
            let b = &points[hull[hull.len() - 1]];
            let c = &points[k];
            // drop b unless it lies strictly below the segment a–c
            let lhs = (&b.1 - &a.1) * Rat::from_integer((c.0 - a.0).into());
            let rhs = (&c.1 - &a.1) * Rat::from_integer((b.0 - a.0).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    hull.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Coefficients of `P(z + c·y^β)`.
fn taylor_shift(p: &[PuiseuxSeries], c: &Coeff, beta: &Rat) -> Vec<PuiseuxSeries> {
    let n = p.len();
    let mut c_pows = vec![Coeff::one()];
    for _ in 1..n {
        let next = c_pows.last().expect("non-empty").mul(c);
        c_pows.push(next);
    }
    (0..n)
        .map(|k| {
            let mut acc = PuiseuxSeries::zero();
            let mut binom = Rat::one();
            for i in k..n {
                let j = i - k;
                if j > 0 {
                    binom = binom * Rat::from_integer(i.into()) / Rat::from_integer(j.into());
                }
                if p[i].is_exact_zero() {
                    continue;
                }
                let e = beta * Rat::from_integer(j.into());
                let coef = c_pows[j].scale(&binom);
                acc = acc.add(&p[i].mul_monomial(&coef, &e));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, GaussRat};

    fn poly(terms: &[((u32, u32), Rat)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().map(|(k, c)| (*k, Coeff::from_rat(c.clone()))))
    }

    #[test]
    fn cusp() {
        let f = poly(&[((2, 0), int(1)), ((0, 3), int(-1))]);
        let roots = newton_puiseux(&f, &int(5)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].0, PuiseuxSeries::monomial(Coeff::one(), rat(3, 2)));
        assert_eq!(roots[1].0, PuiseuxSeries::monomial(Coeff::from_int(-1), rat(3, 2)));
    }

    #[test]
    fn unit_factor_adds_no_roots() {
        // (x^2 - y^2 - y^3)(1 + x·y + x^7): the unit only lengthens the
        // shifted polynomials
        let f = poly(&[((2, 0), int(1)), ((0, 2), int(-1)), ((0, 3), int(-1))]);
        let u = poly(&[((0, 0), int(1)), ((1, 1), int(1)), ((7, 0), int(1))]);
        let plain = newton_puiseux(&f, &int(12)).unwrap();
        let padded = newton_puiseux(&f.mul(&u), &int(12)).unwrap();
        assert_eq!(plain.len(), padded.len());
        for ((a, m), (b, n)) in plain.iter().zip(&padded) {
            assert_eq!(m, n);
            for (e, c) in a.terms() {
                assert_eq!(b.coeff(e).approx_eq(c), Ok(true), "y^{e}");
            }
        }
    }

    #[test]
    fn polars_of_f1() {
        let fx = poly(&[((2, 0), int(1)), ((0, 10), int(-1))]);
        let roots = newton_puiseux(&fx, &int(20)).unwrap();
        let lead: Vec<_> = roots.iter().map(|(r, m)| (r.to_string(), *m)).collect();
        assert_eq!(lead, vec![("y^5".to_string(), 1), ("-y^5".to_string(), 1)]);
    }

    #[test]
    fn polars_of_g1() {
        let gx = poly(&[((2, 0), int(3)), ((0, 9), int(1))]);
        let roots = newton_puiseux(&gx, &int(20)).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, _) in &roots {
            assert_eq!(r.trunc(), &ExtRat::Inf);
            let (e, c) = r.lead().unwrap();
            assert_eq!(*e, rat(9, 2));
            assert!((c.to_c64().norm() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
            assert_eq!(gx.substitute_x(r).exact_ord(), Ok(ExtRat::Inf));
        }
    }

    #[test]
    fn infinite_expansion_has_small_residual() {
        // x^2 - y^2 - y^3: roots ±y·sqrt(1 + y)
        let f = poly(&[((2, 0), int(1)), ((0, 2), int(-1)), ((0, 3), int(-1))]);
        let roots = newton_puiseux(&f, &int(8)).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, _) in &roots {
            assert_eq!(r.coeff(&int(2)).to_c64().norm(), 0.5);
            let res = f.substitute_x(r);
            assert!(res.ord_lb() >= ExtRat::Fin(int(9)));
        }
    }

    #[test]
    fn multiplicities_from_square_free_parts() {
        // (x - y^2)^2 (x + y)
        let a = poly(&[((1, 0), int(1)), ((0, 2), int(-1))]);
        let b = poly(&[((1, 0), int(1)), ((0, 1), int(1))]);
        let roots = newton_puiseux(&a.mul(&a).mul(&b), &int(6)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].1, 1);
        assert_eq!(roots[1].1, 2);
        assert_eq!(
            roots[1].0.coeff(&int(2)).as_exact(),
            Some(&GaussRat::one())
        );
    }

    #[test]
    fn root_through_origin() {
        // x·(x - y)
        let f = poly(&[((2, 0), int(1)), ((1, 1), int(-1))]);
        let roots = newton_puiseux(&f, &int(4)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, _)| r.is_exact_zero()));
    }
}
