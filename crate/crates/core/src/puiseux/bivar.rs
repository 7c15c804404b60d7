//! Polynomials in `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::series::PuiseuxSeries;
use crate::numerics::{Coeff, ExtRat, GaussRat, Rat};

/// A finite sum `Σ c_{ij} x^i y^j` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Coeff>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Coeff)>) -> Self {
        let mut map: BTreeMap<(u32, u32), Coeff> = BTreeMap::new();
        for (k, c) in terms {
            match map.get_mut(&k) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        map.retain(|_, c| c.zero_test() != Ok(true));
        Self { terms: map }
    }

    pub fn monomial(c: Coeff, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Coeff::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Coeff::one(), 0, 1)
    }

    /// Monomials `((i, j), c)` in lexicographic order of `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Coeff {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Least total degree of a monomial (`None` for the zero polynomial).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).min()
    }

    /// The homogeneous part of least total degree.
    pub fn initial_form(&self) -> BivarPoly {
        let Some(m) = self.order() else {
            return Self::zero();
        };
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 + k.1 == m)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                out.push(((i + k, j + l), a.mul(b)));
            }
        }
        Self::from_terms(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a.mul(c))))
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::constant(Coeff::one());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn deriv_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|((i, j), c)| ((i - 1, *j), c.scale(&Rat::from_integer((*i).into())))),
        )
    }

    pub fn deriv_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|((i, j), c)| ((*i, j - 1), c.scale(&Rat::from_integer((*j).into())))),
        )
    }

    /// `f(a·x + b·y, c·x + d·y)`.
    pub fn linear_change(&self, a: &Coeff, b: &Coeff, c: &Coeff, d: &Coeff) -> Self {
        let u = Self::from_terms([((1, 0), a.clone()), ((0, 1), b.clone())]);
        let v = Self::from_terms([((1, 0), c.clone()), ((0, 1), d.clone())]);
        let mut u_pows = vec![Self::constant(Coeff::one())];
        let mut v_pows = vec![Self::constant(Coeff::one())];
        for _ in 0..self.deg_x() {
            let next = u_pows.last().expect("non-empty").mul(&u);
            u_pows.push(next);
        }
        for _ in 0..self.deg_y() {
            let next = v_pows.last().expect("non-empty").mul(&v);
            v_pows.push(next);
        }
        let mut out = Self::zero();
        for ((i, j), coef) in &self.terms {
            let t = u_pows[*i as usize].mul(&v_pows[*j as usize]).scale(coef);
            out = out.add(&t);
        }
        out
    }

    /// The coefficient of `x^i`, as a polynomial in `y`, for every `i`.
    pub fn x_coeffs(&self) -> Vec<PuiseuxSeries> {
        let n = self.deg_x() as usize;
        let mut out: Vec<Vec<(Rat, Coeff)>> = vec![Vec::new(); n + 1];
        for ((i, j), c) in &self.terms {
            out[*i as usize].push((Rat::from_integer((*j).into()), c.clone()));
        }
        out.into_iter()
            .map(|t| PuiseuxSeries::from_terms(t, ExtRat::Inf))
            .collect()
    }

    /// `f(s(y), y)`.
    pub fn substitute_x(&self, s: &PuiseuxSeries) -> PuiseuxSeries {
        self.horner(s, None)
    }

    /// `f(s(y), y)` with every term at or above `limit` dropped.
    pub fn substitute_x_to(&self, s: &PuiseuxSeries, limit: &Rat) -> PuiseuxSeries {
        self.horner(s, Some(limit))
    }

    fn horner(&self, s: &PuiseuxSeries, limit: Option<&Rat>) -> PuiseuxSeries {
        let coeffs = self.x_coeffs();
        let mut acc = PuiseuxSeries::zero();
        for p in coeffs.iter().rev() {
            acc = match limit {
                Some(l) => acc.mul_to(s, l).add(&p.cap(l)),
                None => acc.mul(s).add(p),
            };
        }
        acc
    }

    /// Text form accepted by the germ parser.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*i)));
        let mut out = String::new();
        for (n, key) in keys.into_iter().enumerate() {
            let c = self.terms[key].mid();
            let negative = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
            let shown = if negative { -&c } else { c.clone() };
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors = Vec::new();
            if !shown.is_one() || *key == (0, 0) {
                factors.push(shown.to_string());
            }
            for (var, e) in [("x", key.0), ("y", key.1)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl From<GaussRat> for BivarPoly {
    fn from(c: GaussRat) -> Self {
        Self::constant(Coeff::exact(c))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn c(r: Rat) -> Coeff {
        Coeff::from_rat(r)
    }

    fn f1() -> BivarPoly {
        BivarPoly::from_terms([
            ((3, 0), c(rat(1, 3))),
            ((1, 10), c(int(-1))),
            ((0, 12), c(int(1))),
        ])
    }

    #[test]
    fn derivatives() {
        let fx = f1().deriv_x();
        assert_eq!(
            fx,
            BivarPoly::from_terms([((2, 0), c(int(1))), ((0, 10), c(int(-1)))])
        );
        assert_eq!(f1().deriv_y().coeff(0, 11), c(int(12)));
    }

    #[test]
    fn substitution_along_polar() {
        let s = PuiseuxSeries::monomial(Coeff::one(), int(5));
        let v = f1().substitute_x(&s);
        assert_eq!(v.coeff(&int(12)), c(int(1)));
        assert_eq!(v.coeff(&int(15)), c(rat(-2, 3)));
        assert_eq!(v.len(), 2);
        assert_eq!(BivarPoly::x().substitute_x(&s), s);
    }

    #[test]
    fn shear() {
        // (x + y)^2 at x -> x, y -> y + x ... f = y^2 becomes (x + y)^2
        let f = BivarPoly::monomial(Coeff::one(), 0, 2);
        let g = f.linear_change(&Coeff::one(), &Coeff::zero(), &Coeff::one(), &Coeff::one());
        assert_eq!(g.coeff(1, 1), c(int(2)));
        assert_eq!(g.coeff(2, 0), c(int(1)));
    }

    #[test]
    fn render_form() {
        assert_eq!(f1().render(), "1/3*x^3 - x*y^10 + y^12");
        let g = BivarPoly::from_terms([((0, 0), Coeff::exact(GaussRat::new(int(0), int(-2))))]);
        assert_eq!(g.render(), "-2*i");
    }
}
