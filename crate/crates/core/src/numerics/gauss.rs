use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rat::{rat_to_f64, Rat};

/// Exact Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rat) -> Self {
        Self { re, im: Rat::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rat::zero())
    }

    pub fn one() -> Self {
        Self::real(Rat::one())
    }

    pub fn i() -> Self {
        Self::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn from_c64(z: Complex64) -> Option<Self> {
        Some(Self::new(Rat::from_float(z.re)?, Rat::from_float(z.im)?))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}*i)", self.re, sign, self.im.abs())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat::{int, rat};

    #[test]
    fn i_squared() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::real(int(-1)));
    }

    #[test]
    fn inverse() {
        let z = GaussRat::new(rat(1, 2), int(3));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(GaussRat::new(int(1), rat(-2, 3)).to_string(), "(1-2/3*i)");
        assert_eq!(GaussRat::real(rat(-4, 3)).to_string(), "-4/3");
    }
}
