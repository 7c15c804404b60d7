//! Dense univariate polynomials with exact Gaussian-rational coefficients.

use super::gauss::GaussRat;
use super::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<GaussRat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    /// `c · t^k`
    pub fn monomial(c: GaussRat, k: usize) -> Self {
        let mut v = vec![GaussRat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &GaussRat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
                .collect(),
        )
    }

    pub fn eval(&self, z: &GaussRat) -> GaussRat {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussRat::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn monic(&self) -> QPoly {
        match self.lc().and_then(|c| c.inv()) {
            Some(inv) => self.scale(&inv),
            None => QPoly::zero(),
        }
    }

    /// Euclidean division; `None` if `d` is zero.
    pub fn div_rem(&self, d: &QPoly) -> Option<(QPoly, QPoly)> {
        let dd = d.degree()?;
        let inv = d.lc()?.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![GaussRat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = &rem[k] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = &rem[idx] - &(&c * dc);
                }
                quo[k - dd] = c;
            }
            rem.pop();
        }
        Some((QPoly::new(quo), QPoly::new(rem)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("non-zero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = lc · ∏ p_k^k` with pairwise
    /// coprime square-free monic `p_k`. Constant factors are omitted.
    pub fn square_free(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a = self.gcd(&d);
        let mut b = self.exact_div(&a).expect("gcd divides");
        let mut c = d.exact_div(&a).expect("gcd divides derivative");
        let mut dpoly = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let g = b.gcd(&dpoly);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), k));
            }
            b = b.exact_div(&g).expect("gcd divides");
            c = dpoly.exact_div(&g).expect("gcd divides");
            dpoly = c.sub(&b.derivative());
            k += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat::int;

    fn p(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&c| GaussRat::real(int(c))).collect())
    }

    #[test]
    fn division() {
        // (t^2 - 1) / (t - 1) = t + 1
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (t-2)^2 (t+1) = t^3 - 3t^2 + 4
        let f = p(&[4, 0, -3, 1]);
        let sf = f.square_free();
        assert_eq!(sf, vec![(p(&[1, 1]), 1), (p(&[-2, 1]), 2)]);
    }

    #[test]
    fn gcd_is_monic() {
        let g = p(&[-2, 2]).gcd(&p(&[-3, 0, 3]));
        assert_eq!(g, p(&[-1, 1]));
    }
}
