use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number; always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// A rational number or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    Fin(Rat),
    Inf,
}

impl ExtRat {
    pub fn fin(&self) -> Option<&Rat> {
        match self {
            ExtRat::Fin(r) => Some(r),
            ExtRat::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }

    pub fn add_rat(&self, r: &Rat) -> ExtRat {
        match self {
            ExtRat::Fin(a) => ExtRat::Fin(a + r),
            ExtRat::Inf => ExtRat::Inf,
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Fin(r)
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Fin(r) => write!(f, "{r}"),
            ExtRat::Inf => write!(f, "inf"),
        }
    }
}

/// Extended gcd on machine integers: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
