//! Univariate polynomials over complex balls and certified root isolation.

use num_complex::Complex64;
use num_traits::Zero;

use super::coeff::{config, ensure_disjoint, rationalize_c64, round_mid, Coeff};
use super::gauss::GaussRat;
use super::qpoly::QPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct UPoly {
    coeffs: Vec<Coeff>,
}

impl UPoly {
    /// Drops trailing coefficients that are exactly zero.
    pub fn new(mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(|c| c.as_exact().is_some_and(|m| m.is_zero())) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_qpoly(p: &QPoly) -> Self {
        Self::new(p.coeffs().iter().cloned().map(Coeff::exact).collect())
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_exact)
    }

    pub fn to_qpoly(&self) -> Option<QPoly> {
        self.coeffs
            .iter()
            .map(|c| c.as_exact().cloned())
            .collect::<Option<Vec<_>>>()
            .map(QPoly::new)
    }

    pub fn eval(&self, z: &Coeff) -> Coeff {
        self.coeffs
            .iter()
            .rev()
            .fold(Coeff::zero(), |acc, c| acc.mul(z).add(c))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
                .collect(),
        )
    }

    fn approx(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Coeff::to_c64).collect()
    }

    /// Newton refinement of an approximate simple root at the working
    /// precision, followed by a certified enclosure `n·|p(z)| / |p'(z)|`.
    pub fn refine_simple_root(&self, approx: Complex64) -> Result<Coeff> {
        let n = self
            .degree()
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::Precondition("root of a constant".into()))?;
        let prec = config().precision_bits;
        let mids: Vec<GaussRat> = self.coeffs.iter().map(Coeff::mid).collect();
        let dmids: Vec<GaussRat> = mids
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
            .collect();
        let horner = |cs: &[GaussRat], z: &GaussRat| {
            cs.iter().rev().fold(GaussRat::zero(), |acc, c| {
                round_mid(&(&acc * z) + c, prec + 64).0
            })
        };
        let mut z = GaussRat::from_c64(approx)
            .ok_or_else(|| Error::PrecisionExhausted("non-finite root estimate".into()))?;
        let tiny = Rat::new(1.into(), num_bigint::BigInt::from(1) << (prec + 8));
        for _ in 0..64 {
            let pz = horner(&mids, &z);
            let dz = horner(&dmids, &z);
            let Some(step) = pz.div(&dz) else { break };
            z = round_mid(&z - &step, prec + 16).0;
            let scale = z.norm_sqr().max(Rat::from_integer(1.into()));
            if step.norm_sqr() <= &tiny * &tiny * scale {
                break;
            }
        }
        let zc = Coeff::exact(z.clone());
        let r = zc.mid_abs_hi();
        let err_p: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.rad() * r.powi(k as i32))
            .sum();
        let err_dp: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.rad() * k as f64 * r.powi(k as i32 - 1))
            .sum();
        let pz = Coeff::exact(horner_exact(&mids, &z));
        let dz = Coeff::exact(horner_exact(&dmids, &z));
        let hi = (pz.mid_abs_hi() + err_p * 1.01) * (1.0 + 1e-12);
        let lo = (dz.mid_abs_lo() - err_dp * 1.01) * (1.0 - 1e-12);
        if !(lo > 0.0) {
            return Err(Error::PrecisionExhausted(
                "derivative vanishes near a root".into(),
            ));
        }
        let rad = n as f64 * hi / lo;
        if !rad.is_finite() {
            return Err(Error::PrecisionExhausted("root enclosure overflow".into()));
        }
        Ok(Coeff::new(z, rad))
    }

    /// All complex roots with multiplicities.
    ///
    /// Exact polynomials are split by their square-free decomposition first.
    /// For ball coefficients, clusters of roots that cannot be separated are
    /// reported as one multiple root when the lower derivatives vanish there
    /// to within the zero tolerance.
    pub fn roots(&self) -> Result<Vec<(Coeff, usize)>> {
        match self.degree() {
            None | Some(0) => {
                return Err(Error::Precondition(
                    "roots of a constant polynomial".into(),
                ))
            }
            _ => {}
        }
        let mut out = Vec::new();
        if let Some(q) = self.to_qpoly() {
            for (part, k) in q.square_free() {
                for r in simple_roots_exact(&part)? {
                    out.push((r, k));
                }
            }
        } else {
            out = self.roots_inexact()?;
        }
        let all: Vec<Coeff> = out.iter().map(|(r, _)| r.clone()).collect();
        ensure_disjoint(&all)?;
        out.sort_by(|(a, _), (b, _)| root_order(a, b));
        Ok(out)
    }

    fn roots_inexact(&self) -> Result<Vec<(Coeff, usize)>> {
        let n = self.degree().unwrap_or(0);
        let approx = aberth(&self.approx());
        let sep = 1e-6 * approx.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut clusters: Vec<Vec<Complex64>> = Vec::new();
        for z in approx {
            match clusters
                .iter_mut()
                .find(|c| c.iter().any(|w| (w - z).norm() < sep))
            {
                Some(c) => c.push(z),
                None => clusters.push(vec![z]),
            }
        }
        let mut out = Vec::new();
        for c in clusters {
            let m = c.len();
            let center = c.iter().sum::<Complex64>() / m as f64;
            if m == 1 {
                out.push((self.refine_simple_root(center)?, 1));
                continue;
            }
            let mut d = self.clone();
            let mut derivs = vec![d.clone()];
            for _ in 1..m {
                d = d.derivative();
                derivs.push(d.clone());
            }
            let z = d.refine_simple_root(center)?;
            for p in &derivs[..m - 1] {
                if !p.eval(&Coeff::exact(z.mid())).zero_test()? {
                    return Err(Error::PrecisionExhausted(
                        "cluster of roots that is not a multiple root".into(),
                    ));
                }
            }
            let pz = self.eval(&z).abs_hi();
            let dm = d.derivative().eval(&z).abs_lo();
            let fact: f64 = (1..=m).map(|k| k as f64).product();
            let extra = if dm > 0.0 {
                2.0 * (n as f64 * pz * fact / dm).powf(1.0 / m as f64)
            } else {
                f64::INFINITY
            };
            if !extra.is_finite() {
                return Err(Error::PrecisionExhausted("multiple root enclosure".into()));
            }
            out.push((Coeff::new(z.mid(), z.rad() + extra), m));
        }
        Ok(out)
    }
}

fn horner_exact(cs: &[GaussRat], z: &GaussRat) -> GaussRat {
    cs.iter()
        .rev()
        .fold(GaussRat::zero(), |acc, c| &(&acc * z) + c)
}

/// Roots of a square-free exact polynomial.
fn simple_roots_exact(p: &QPoly) -> Result<Vec<Coeff>> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        let r = (-&p.coeff(0))
            .div(&p.coeff(1))
            .expect("non-zero leading coefficient");
        return Ok(vec![Coeff::exact(r)]);
    }
    let up = UPoly::from_qpoly(p);
    let mut roots = Vec::with_capacity(deg);
    for z in aberth(&up.approx()) {
        if let Some(r) = rationalize_c64(z) {
            if p.eval(&r).is_zero() {
                roots.push(Coeff::exact(r));
                continue;
            }
        }
        roots.push(up.refine_simple_root(z)?);
    }
    ensure_disjoint(&roots)?;
    Ok(roots)
}

/// Deterministic order: argument in `[0, 2π)`, then modulus.
pub fn root_order(a: &Coeff, b: &Coeff) -> std::cmp::Ordering {
    let key = |c: &Coeff| {
        let z = c.to_c64();
        if z.norm() < 1e-300 {
            return (0.0, 0.0);
        }
        let mut t = z.arg();
        if t < 0.0 {
            t += std::f64::consts::TAU;
        }
        if t > std::f64::consts::TAU - 1e-12 {
            t = 0.0;
        }
        (t, z.norm())
    };
    let (ta, ma) = key(a);
    let (tb, mb) = key(b);
    if (ta - tb).abs() > 1e-12 {
        ta.total_cmp(&tb)
    } else {
        ma.total_cmp(&mb)
    }
}

/// Aberth–Ehrlich simultaneous iteration in double precision.
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|a| a / lc).collect();
    if n == 1 {
        return vec![-c[0]];
    }
    let radius = (0..n)
        .filter(|&k| !c[k].is_zero())
        .map(|k| c[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                std::f64::consts::TAU * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.is_zero() {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat::{int, rat};

    fn ex(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&c| Coeff::from_int(c)).collect())
    }

    #[test]
    fn exact_rational_roots() {
        // (t-2)^2 (t+1)
        let roots = ex(&[4, 0, -3, 1]).roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].0.as_exact(), Some(&GaussRat::real(int(2))));
        assert_eq!(roots[0].1, 2);
        assert_eq!(roots[1].0.as_exact(), Some(&GaussRat::real(int(-1))));
    }

    #[test]
    fn irrational_roots_are_certified() {
        // 3t^2 + 1
        let p = ex(&[1, 0, 3]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 2);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert!(r.rad() < 1e-60);
            assert_eq!(p.eval(r).zero_test(), Ok(true));
        }
        assert!(roots[0].0.to_c64().im > 0.0);
    }

    #[test]
    fn gaussian_roots() {
        // t^2 + 1 has the exact roots ±i
        let roots = ex(&[1, 0, 1]).roots().unwrap();
        assert_eq!(roots[0].0.as_exact(), Some(&GaussRat::i()));
    }

    #[test]
    fn inexact_double_root() {
        let a = Coeff::from_rat(rat(1, 3)).principal_root(2).unwrap();
        // (t - a)^2 with ball coefficients
        let p = UPoly::new(vec![a.mul(&a), a.scale(&int(-2)), Coeff::one()]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].1, 2);
        assert!((roots[0].0.to_c64().re - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn aberth_finds_cyclotomic_roots() {
        let mut c = vec![Complex64::zero(); 8];
        c[0] = Complex64::new(-1.0, 0.0);
        c[7] = Complex64::new(1.0, 0.0);
        let z = aberth(&c);
        for r in z {
            assert!((r.powu(7) - 1.0).norm() < 1e-12);
        }
    }
}
