//! Truncated fractional power series in `y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{lcm_denominators, Coeff, ExtRat, Rat};

/// `Σ c_e y^e + O(y^trunc)`. Every stored exponent is below `trunc`, and no
/// stored coefficient tests as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    terms: BTreeMap<Rat, Coeff>,
    trunc: ExtRat,
}

impl PuiseuxSeries {
    /// The exact zero series.
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            trunc: ExtRat::Inf,
        }
    }

    /// `O(y^trunc)`.
    pub fn zero_mod(trunc: Rat) -> Self {
        Self {
            terms: BTreeMap::new(),
            trunc: ExtRat::Fin(trunc),
        }
    }

    pub fn monomial(c: Coeff, e: Rat) -> Self {
        Self::from_terms([(e, c)], ExtRat::Inf)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, Rat::zero())
    }

    /// Builds a series, summing repeated exponents and dropping zero
    /// coefficients and terms at or above `trunc`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Coeff)>, trunc: ExtRat) -> Self {
        let mut map: BTreeMap<Rat, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            if let ExtRat::Fin(t) = &trunc {
                if &e >= t {
                    continue;
                }
            }
            match map.get_mut(&e) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| c.zero_test() != Ok(true));
        Self { terms: map, trunc }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Rat, &Coeff)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No known non-zero terms (the series may still be non-zero beyond
    /// its truncation).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_inf()
    }

    pub fn trunc(&self) -> &ExtRat {
        &self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    pub fn coeff(&self, e: &Rat) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn lead(&self) -> Option<(&Rat, &Coeff)> {
        self.terms.iter().next()
    }

    /// Least stored exponent, `+∞` without terms.
    pub fn ord(&self) -> ExtRat {
        self.lead()
            .map_or(ExtRat::Inf, |(e, _)| ExtRat::Fin(e.clone()))
    }

    /// A lower bound for the true order: the least stored exponent or the
    /// truncation.
    pub fn ord_lb(&self) -> ExtRat {
        self.lead()
            .map_or_else(|| self.trunc.clone(), |(e, _)| ExtRat::Fin(e.clone()))
    }

    /// The order, refusing to answer when it is hidden by the truncation or
    /// the leading coefficient cannot be told apart from zero.
    pub fn exact_ord(&self) -> Result<ExtRat> {
        match self.lead() {
            Some((e, c)) => {
                c.zero_test()?;
                Ok(ExtRat::Fin(e.clone()))
            }
            None => match &self.trunc {
                ExtRat::Inf => Ok(ExtRat::Inf),
                ExtRat::Fin(t) => Err(Error::TruncationAmbiguous(t.clone())),
            },
        }
    }

    /// Lowers the truncation to `min(trunc, at)`.
    pub fn truncate(&self, at: &ExtRat) -> Self {
        let trunc = self.trunc.clone().min(at.clone());
        Self::from_terms(
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
            trunc,
        )
    }

    /// Drops terms at or above `at`; the truncation only moves if something
    /// was actually dropped.
    pub fn cap(&self, at: &Rat) -> Self {
        if self.terms.keys().next_back().is_some_and(|e| e >= at) {
            self.truncate(&ExtRat::Fin(at.clone()))
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.clone().min(rhs.trunc.clone());
        Self::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            trunc,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(e, a)| (e.clone(), a.mul(c))),
            self.trunc.clone(),
        )
    }

    /// Multiplies by `c · y^e`.
    pub fn mul_monomial(&self, c: &Coeff, e: &Rat) -> Self {
        let trunc = self.trunc.add_rat(e);
        if c.as_exact().is_some_and(|m| m.is_zero()) {
            return Self {
                terms: BTreeMap::new(),
                trunc,
            };
        }
        Self::from_terms(
            self.terms.iter().map(|(k, a)| (k + e, a.mul(c))),
            trunc,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs, None)
    }

    /// Product with terms at or above `limit` dropped.
    pub fn mul_to(&self, rhs: &Self, limit: &Rat) -> Self {
        self.mul_impl(rhs, Some(limit))
    }

    fn mul_impl(&self, rhs: &Self, limit: Option<&Rat>) -> Self {
        let mut trunc = (&self.trunc + &rhs.ord_lb()).min(&rhs.trunc + &self.ord_lb());
        let mut dropped = false;
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if let ExtRat::Fin(t) = &trunc {
                    if &e >= t {
                        break;
                    }
                }
                if limit.is_some_and(|l| &e >= l) {
                    dropped = true;
                    break;
                }
                terms.push((e, ca.mul(cb)));
            }
        }
        if let (true, Some(l)) = (dropped, limit) {
            trunc = trunc.min(ExtRat::Fin(l.clone()));
        }
        Self::from_terms(terms, trunc)
    }

    /// `self^n`, optionally capped at `limit`.
    pub fn pow(&self, n: u32, limit: Option<&Rat>) -> Self {
        let mut acc = Self::constant(Coeff::one());
        let mut base = self.clone();
        let mut n = n;
        let step = |a: &Self, b: &Self| a.mul_impl(b, limit);
        while n > 0 {
            if n & 1 == 1 {
                acc = step(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = step(&base, &base);
            }
        }
        acc
    }

    /// `self(y)^h` on the principal branch of the leading coefficient,
    /// expanded binomially around the leading term and known to
    /// `O(y^limit)` at best.
    pub fn compose_rational_power(&self, h: &Rat, limit: &Rat) -> Result<Self> {
        let (e0, c0) = self
            .lead()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::Precondition("power of a series without terms".into()))?;
        if !c0.is_certainly_nonzero() {
            return Err(Error::PrecisionExhausted(format!(
                "leading coefficient {c0} of a powered series"
            )));
        }
        let base_exp = &e0 * h;
        let inv = c0.recip()?;
        // u = self / (c0 y^e0) - 1
        let u = Self::from_terms(
            self.terms
                .iter()
                .skip(1)
                .map(|(e, c)| (e - &e0, c.mul(&inv))),
            self.trunc.add_rat(&-&e0),
        );
        let lead = c0.pow_rat(h)?;
        let mut trunc = self.trunc.add_rat(&(&base_exp - &e0));
        let integral = h.is_integer() && !h.is_negative();
        if !integral {
            trunc = trunc.min(ExtRat::Fin(limit.clone()));
        }
        let rel_limit = limit - &base_exp;
        let mut sum = Self::constant(Coeff::one()).truncate(&u.trunc);
        let mut u_pow = Self::constant(Coeff::one());
        let mut binom = Rat::one();
        let mut n = 0u64;
        loop {
            if integral && Rat::from_integer(n.into()) >= *h {
                break;
            }
            let ExtRat::Fin(u_ord) = u.ord_lb() else { break };
            if u_ord * Rat::from_integer((n + 1).into()) >= rel_limit {
                break;
            }
            binom = binom * (h - Rat::from_integer(n.into())) / Rat::from_integer((n + 1).into());
            u_pow = u_pow.mul_to(&u, &rel_limit);
            sum = sum.add(&u_pow.scale(&Coeff::from_rat(binom.clone())));
            n += 1;
        }
        let out = sum.mul_monomial(&lead, &base_exp).cap(limit);
        Ok(out.truncate(&trunc))
    }

    /// Common denominator `N` of the exponents.
    pub fn puiseux_denominator(&self) -> u64 {
        lcm_denominators(self.terms.keys())
            .to_u64()
            .unwrap_or(u64::MAX)
    }

    /// All `N` conjugates `Σ c_e ε^{eN} y^e`, starting with `self`.
    pub fn conjugates(&self) -> Result<Vec<Self>> {
        let n = self.puiseux_denominator();
        if n == 1 {
            return Ok(vec![self.clone()]);
        }
        let n32 = u32::try_from(n)
            .map_err(|_| Error::Precondition("conjugate count out of range".into()))?;
        let roots = Coeff::one().nth_roots(n32)?;
        Ok((0..n)
            .map(|k| {
                Self::from_terms(
                    self.terms.iter().map(|(e, c)| {
                        let num = (e * Rat::from_integer(n.into())).to_integer();
                        let idx = (num * k).mod_floor(&n.into()).to_usize().unwrap_or(0);
                        (e.clone(), c.mul(&roots[idx]))
                    }),
                    self.trunc.clone(),
                )
            })
            .collect())
    }

    /// Term-by-term order: exponent, then argument of the coefficient in
    /// `[0, 2π)`, then modulus; a shorter prefix sorts first.
    pub fn cmp_terms(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            let o = ea
                .cmp(eb)
                .then_with(|| crate::numerics::root_order(ca, cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.len().cmp(&other.len())
    }
}

/// `ord(α − β)` without conjugation; `+∞` for identical finite series.
pub fn direct_contact(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<ExtRat> {
    a.sub(b).exact_ord()
}

/// Contact order: the maximum of `ord(α′ − β′)` over all conjugates of both
/// arcs, ignoring pairs that coincide.
pub fn contact_order(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<Rat> {
    let mut best: Option<Rat> = None;
    let ca = a.conjugates()?;
    let cb = b.conjugates()?;
    for x in &ca {
        for y in &cb {
            match direct_contact(x, y)? {
                ExtRat::Inf => continue,
                ExtRat::Fin(k) => {
                    if best.as_ref().is_none_or(|b| &k > b) {
                        best = Some(k);
                    }
                }
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("contact order of an arc with itself".into()))
}

pub(crate) fn fmt_exp(e: &Rat) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let negative = c.as_exact().is_some_and(|m| {
                m.re.is_negative() || (m.re.is_zero() && m.im.is_negative())
            });
            let c = if negative { c.neg() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let monomial = if e.is_one() {
                "y".to_string()
            } else {
                format!("y^{}", fmt_exp(e))
            };
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if c.as_exact().is_some_and(|m| m.is_one()) {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{c}*{monomial}")?;
            }
        }
        match &self.trunc {
            ExtRat::Fin(t) if first => write!(f, "O(y^{})", fmt_exp(t)),
            ExtRat::Fin(t) => write!(f, " + O(y^{})", fmt_exp(t)),
            ExtRat::Inf if first => write!(f, "0"),
            ExtRat::Inf => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, GaussRat};

    fn mono(c: Rat, e: Rat) -> PuiseuxSeries {
        PuiseuxSeries::monomial(Coeff::from_rat(c), e)
    }

    #[test]
    fn order_of_simple_series() {
        assert_eq!(mono(int(1), int(5)).ord(), ExtRat::Fin(int(5)));
        assert_eq!(PuiseuxSeries::zero().exact_ord(), Ok(ExtRat::Inf));
        let s = mono(int(1), int(12)).add(&mono(rat(-2, 3), int(15)));
        assert_eq!(s.ord(), ExtRat::Fin(int(12)));
        assert_eq!(
            PuiseuxSeries::zero_mod(int(7)).exact_ord(),
            Err(Error::TruncationAmbiguous(int(7)))
        );
    }

    #[test]
    fn arithmetic() {
        let d = mono(int(1), int(5)).sub(&mono(int(-1), int(5)));
        assert_eq!(d, mono(int(2), int(5)));
        let p = mono(int(1), rat(9, 2)).mul(&mono(int(1), rat(9, 2)));
        assert_eq!(p, mono(int(1), int(9)));
        let cancel = mono(int(1), int(3)).sub(&mono(int(1), int(3)));
        assert!(cancel.is_exact_zero());
    }

    #[test]
    fn product_truncation() {
        let a = mono(int(1), int(2)).truncate(&ExtRat::Fin(int(5)));
        let b = mono(int(1), int(3)).truncate(&ExtRat::Fin(int(10)));
        assert_eq!(a.mul(&b).trunc(), &ExtRat::Fin(int(8)));
    }

    #[test]
    fn binomial_power() {
        // (y + p y^5)^12 = y^12 + 12 p y^16 + O(y^20), here p = 3
        let s = mono(int(1), int(1)).add(&mono(int(3), int(5)));
        let r = s.compose_rational_power(&int(12), &int(20)).unwrap();
        assert_eq!(r.coeff(&int(12)).as_exact(), Some(&GaussRat::real(int(1))));
        assert_eq!(r.coeff(&int(16)).as_exact(), Some(&GaussRat::real(int(36))));
        assert_eq!(r.ord(), ExtRat::Fin(int(12)));
        assert!(r.terms().all(|(e, _)| *e < int(20)));

        // (y + y^2)^{27/2} = y^{27/2} + (27/2) y^{29/2} + O(y^{31/2}) at limit 31/2
        let s = mono(int(1), int(1)).add(&mono(int(1), int(2)));
        let r = s.compose_rational_power(&rat(27, 2), &rat(31, 2)).unwrap();
        assert_eq!(r.coeff(&rat(29, 2)).as_exact(), Some(&GaussRat::real(rat(27, 2))));
        assert_eq!(r.trunc(), &ExtRat::Fin(rat(31, 2)));
    }

    #[test]
    fn principal_branch_power() {
        // (-y)^{1/2} = i y^{1/2}
        let r = mono(int(-1), int(1))
            .compose_rational_power(&rat(1, 2), &int(3))
            .unwrap();
        assert_eq!(r.coeff(&rat(1, 2)).as_exact(), Some(&GaussRat::i()));
    }

    #[test]
    fn conjugates_of_half_integer_series() {
        let s = mono(int(1), rat(3, 2)).add(&mono(int(1), int(2)));
        let c = s.conjugates().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1], mono(int(-1), rat(3, 2)).add(&mono(int(1), int(2))));
        assert_eq!(mono(int(1), int(5)).conjugates().unwrap().len(), 1);
    }

    #[test]
    fn contact_orders() {
        assert_eq!(
            contact_order(&mono(int(1), int(5)), &mono(int(-1), int(5))),
            Ok(int(5))
        );
        let a = Coeff::from_rat(rat(-1, 3)).principal_root(2).unwrap();
        let g = PuiseuxSeries::monomial(a.clone(), rat(9, 2));
        let gm = PuiseuxSeries::monomial(a.neg(), rat(9, 2));
        assert_eq!(contact_order(&g, &gm), Ok(rat(9, 2)));
        assert_eq!(
            contact_order(&mono(int(1), int(2)), &mono(int(1), int(3))),
            Ok(int(2))
        );
    }

    #[test]
    fn display() {
        let s = mono(int(1), int(12))
            .add(&mono(rat(-2, 3), int(15)))
            .truncate(&ExtRat::Fin(int(20)));
        assert_eq!(s.to_string(), "y^12 - 2/3*y^15 + O(y^20)");
    }
}
