//! Complex ball arithmetic over exact Gaussian-rational midpoints.
//!
//! A [`Coeff`] is a disk `{ z : |z - mid| <= rad }`. Points stay exact
//! Gaussian rationals as long as their denominators stay small, and so do
//! the midpoints of balls while they fit in a machine word. Everything else
//! carries a dyadic midpoint of bounded mantissa, so ball arithmetic is
//! integer arithmetic with the rounding error added to the radius.
//! Radii are `f64` upper bounds, rounded outward.

use std::cell::Cell;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gauss::GaussRat;
use super::rat::Rat;
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumConfig {
    pub precision_bits: u32,
    pub zero_tol: f64,
}

impl Default for NumConfig {
    fn default() -> Self {
        Self {
            precision_bits: 256,
            zero_tol: 2f64.powi(-128),
        }
    }
}

thread_local! {
    static CONFIG: Cell<NumConfig> = Cell::new(NumConfig::default());
}

pub fn config() -> NumConfig {
    CONFIG.with(|c| c.get())
}

/// Runs `f` with `cfg` as the numeric configuration of the current thread.
pub fn with_config<R>(cfg: NumConfig, f: impl FnOnce() -> R) -> R {
    struct Restore(NumConfig);
    impl Drop for Restore {
        fn drop(&mut self) {
            CONFIG.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(CONFIG.with(|c| c.replace(cfg)));
    f()
}

const EPS: f64 = 4.0 * f64::EPSILON;

fn up(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (x * (1.0 + EPS)).max(f64::MIN_POSITIVE)
    }
}

fn down(x: f64) -> f64 {
    (x * (1.0 - EPS)).max(0.0)
}

fn pow2(e: i64) -> f64 {
    if e < -1070 {
        f64::MIN_POSITIVE
    } else if e > 1020 {
        f64::INFINITY
    } else {
        2f64.powi(e as i32)
    }
}

fn approx_log2(r: &Rat) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// `x · 2^e` without intermediate overflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

fn big_to_f64(m: &BigInt, exp: i64) -> f64 {
    let shift = (m.bits() as i64 - 62).max(0);
    let top = (m >> shift as usize).to_f64().expect("62-bit integer fits");
    ldexp(top, exp + shift)
}

fn shift_left(m: &BigInt, k: i64) -> BigInt {
    if k >= 0 {
        m << k as usize
    } else {
        m >> (-k) as usize
    }
}

fn pow2_log(n: &BigInt) -> Option<u64> {
    (n.is_positive() && n.trailing_zeros() == Some(n.bits() - 1)).then(|| n.bits() - 1)
}

/// `(re + i·im) · 2^exp`.
#[derive(Clone, Debug, PartialEq)]
struct Dyadic {
    re: BigInt,
    im: BigInt,
    exp: i64,
}

impl Dyadic {
    /// Nearest dyadic below `prec + 8` significant bits, with an error bound.
    fn from_exact(z: &GaussRat, prec: u32) -> (Dyadic, f64) {
        if let (Some(a), Some(b)) = (pow2_log(z.re.denom()), pow2_log(z.im.denom())) {
            let k = a.max(b) as i64;
            let d = Dyadic {
                re: shift_left(z.re.numer(), k - a as i64),
                im: shift_left(z.im.numer(), k - b as i64),
                exp: -k,
            };
            return d.round(prec);
        }
        let mag = [&z.re, &z.im]
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| approx_log2(r))
            .max()
            .unwrap_or(0);
        let k = prec as i64 + 8 - mag;
        let comp = |r: &Rat| {
            if k >= 0 {
                (r.numer() << k as usize) / r.denom()
            } else {
                r.numer() / (r.denom() << (-k) as usize)
            }
        };
        let d = Dyadic {
            re: comp(&z.re),
            im: comp(&z.im),
            exp: -k,
        };
        (d, pow2(1 - k))
    }

    /// Drops mantissa bits beyond `prec + 8`; the error bound covers the
    /// floor in both components.
    fn round(self, prec: u32) -> (Dyadic, f64) {
        let bits = self.re.bits().max(self.im.bits()) as i64;
        let k = bits - (prec as i64 + 8);
        if k <= 0 {
            return (self, 0.0);
        }
        let d = Dyadic {
            re: self.re >> k as usize,
            im: self.im >> k as usize,
            exp: self.exp + k,
        };
        let err = pow2(d.exp + 1);
        (d, err)
    }

    fn canonical(self) -> Dyadic {
        let tz = [&self.re, &self.im].iter().filter_map(|m| m.trailing_zeros()).min();
        match tz {
            None => Dyadic {
                re: BigInt::zero(),
                im: BigInt::zero(),
                exp: 0,
            },
            Some(0) => self,
            Some(t) => Dyadic {
                re: self.re >> t as usize,
                im: self.im >> t as usize,
                exp: self.exp + t as i64,
            },
        }
    }

    fn add(&self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp.min(rhs.exp);
        let (a, b) = (self.exp - exp, rhs.exp - exp);
        Dyadic {
            re: shift_left(&self.re, a) + shift_left(&rhs.re, b),
            im: shift_left(&self.im, a) + shift_left(&rhs.im, b),
            exp,
        }
    }

    fn mul(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
            exp: self.exp + rhs.exp,
        }
    }

    fn neg(&self) -> Dyadic {
        Dyadic {
            re: -&self.re,
            im: -&self.im,
            exp: self.exp,
        }
    }

    fn to_gauss(&self) -> GaussRat {
        let comp = |m: &BigInt| {
            if self.exp >= 0 {
                Rat::from_integer(m << self.exp as usize)
            } else {
                Rat::new(m.clone(), BigInt::one() << (-self.exp) as usize)
            }
        };
        GaussRat::new(comp(&self.re), comp(&self.im))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(big_to_f64(&self.re, self.exp), big_to_f64(&self.im, self.exp))
    }
}

/// Rounds a midpoint whose denominators outgrew the working precision.
/// Returns the rounded value and an upper bound on the rounding error.
pub(crate) fn round_mid(mid: GaussRat, prec: u32) -> (GaussRat, f64) {
    let limit = prec as u64 + 32;
    if mid.re.denom().bits() <= limit && mid.im.denom().bits() <= limit {
        return (mid, 0.0);
    }
    let (d, err) = Dyadic::from_exact(&mid, prec);
    (d.to_gauss(), err)
}

/// Rational while small, dyadic once the mantissas grow.
#[derive(Clone, Debug, PartialEq)]
enum Mid {
    Rat(GaussRat),
    Dyadic(Dyadic),
}

const SMALL_BITS: u64 = 64;

fn is_small(z: &GaussRat) -> bool {
    [&z.re, &z.im]
        .iter()
        .all(|r| r.numer().bits() <= SMALL_BITS && r.denom().bits() <= SMALL_BITS)
}

/// Complex ball with an outward-rounded radius; exact when the radius is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeff {
    mid: Mid,
    rad: f64,
}

impl Coeff {
    pub fn new(mid: GaussRat, rad: f64) -> Self {
        assert!(rad >= 0.0 && !rad.is_nan(), "radius must be non-negative");
        let prec = config().precision_bits;
        let limit = prec as u64 + 32;
        let fits = mid.re.denom().bits() <= limit && mid.im.denom().bits() <= limit;
        if (rad == 0.0 && fits) || (rad > 0.0 && is_small(&mid)) {
            return Self {
                mid: Mid::Rat(mid),
                rad: up(rad),
            };
        }
        let (d, err) = Dyadic::from_exact(&mid, prec);
        Self::from_dyadic(d, up(rad + err))
    }

    fn from_dyadic(d: Dyadic, rad: f64) -> Self {
        let (d, err) = d.round(config().precision_bits);
        let rad = up(rad + err);
        let d = d.canonical();
        let small = d.exp.unsigned_abs() < SMALL_BITS
            && d.re.bits().max(d.im.bits()) + d.exp.max(0) as u64 <= SMALL_BITS;
        if rad == 0.0 || small {
            return Self {
                mid: Mid::Rat(d.to_gauss()),
                rad,
            };
        }
        Self {
            mid: Mid::Dyadic(d),
            rad,
        }
    }

    /// Dyadic midpoint and radius, widened by the conversion error of an
    /// exact midpoint.
    fn ball(&self) -> (std::borrow::Cow<'_, Dyadic>, f64) {
        match &self.mid {
            Mid::Dyadic(d) => (std::borrow::Cow::Borrowed(d), self.rad),
            Mid::Rat(z) => {
                let (d, err) = Dyadic::from_exact(z, config().precision_bits);
                (std::borrow::Cow::Owned(d), up(self.rad + err))
            }
        }
    }

    pub fn exact(mid: GaussRat) -> Self {
        Self::new(mid, 0.0)
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::exact(GaussRat::real(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::exact(GaussRat::zero())
    }

    pub fn one() -> Self {
        Self::exact(GaussRat::one())
    }

    pub fn i() -> Self {
        Self::exact(GaussRat::i())
    }

    /// The midpoint as an exact Gaussian rational.
    pub fn mid(&self) -> GaussRat {
        match &self.mid {
            Mid::Rat(z) => z.clone(),
            Mid::Dyadic(d) => d.to_gauss(),
        }
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad == 0.0
    }

    pub fn as_exact(&self) -> Option<&GaussRat> {
        match &self.mid {
            Mid::Rat(z) if self.rad == 0.0 => Some(z),
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match &self.mid {
            Mid::Rat(z) => z.to_c64(),
            Mid::Dyadic(d) => d.to_c64(),
        }
    }

    /// Argument of the midpoint in `(-π, π]`.
    pub fn arg(&self) -> f64 {
        self.to_c64().arg()
    }

    pub fn mid_abs_hi(&self) -> f64 {
        let n = up(self.to_c64().norm());
        if n == 0.0 && !self.mid_is_zero() {
            f64::MIN_POSITIVE
        } else {
            n
        }
    }

    pub fn mid_abs_lo(&self) -> f64 {
        down(self.to_c64().norm())
    }

    fn mid_is_zero(&self) -> bool {
        match &self.mid {
            Mid::Rat(z) => z.is_zero(),
            Mid::Dyadic(d) => d.re.is_zero() && d.im.is_zero(),
        }
    }

    pub fn abs_hi(&self) -> f64 {
        up(self.mid_abs_hi() + self.rad)
    }

    pub fn abs_lo(&self) -> f64 {
        down(self.mid_abs_lo() - self.rad)
    }

    /// Whether the exact value `z` lies in this ball.
    pub fn contains(&self, z: &GaussRat) -> bool {
        let d = &self.mid() - z;
        if self.rad == 0.0 {
            return d.is_zero();
        }
        down(d.to_c64().norm()) <= self.rad
    }

    /// Zero test: `Ok(true)` when the ball contains 0 and is narrower than the
    /// zero tolerance, `Ok(false)` when it excludes 0, otherwise
    /// `PrecisionExhausted`.
    pub fn zero_test(&self) -> Result<bool> {
        if self.rad == 0.0 {
            return Ok(self.mid_is_zero());
        }
        if self.mid_abs_lo() > up(self.rad) {
            return Ok(false);
        }
        if self.rad < config().zero_tol {
            Ok(true)
        } else {
            Err(Error::PrecisionExhausted(format!(
                "cannot decide whether {self} is zero"
            )))
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.zero_test()
    }

    /// `true` only when the ball certainly excludes zero.
    pub fn is_certainly_nonzero(&self) -> bool {
        matches!(self.zero_test(), Ok(false))
    }

    pub fn approx_eq(&self, other: &Coeff) -> Result<bool> {
        self.sub(other).zero_test()
    }

    pub fn add(&self, rhs: &Coeff) -> Coeff {
        if let (Mid::Rat(a), Mid::Rat(b)) = (&self.mid, &rhs.mid) {
            return Coeff::new(a + b, up(self.rad + rhs.rad));
        }
        let ((a, ra), (b, rb)) = (self.ball(), rhs.ball());
        Coeff::from_dyadic(a.add(&b), up(ra + rb))
    }

    pub fn sub(&self, rhs: &Coeff) -> Coeff {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Coeff {
        let mid = match &self.mid {
            Mid::Rat(z) => Mid::Rat(-z),
            Mid::Dyadic(d) => Mid::Dyadic(d.neg()),
        };
        Coeff { mid, rad: self.rad }
    }

    pub fn mul(&self, rhs: &Coeff) -> Coeff {
        if let (Mid::Rat(a), Mid::Rat(b)) = (&self.mid, &rhs.mid) {
            let rad = if self.rad == 0.0 && rhs.rad == 0.0 {
                0.0
            } else {
                up(up(self.mid_abs_hi() * rhs.rad)
                    + up(rhs.mid_abs_hi() * self.rad)
                    + up(self.rad * rhs.rad))
            };
            return Coeff::new(a * b, rad);
        }
        let ((a, ra), (b, rb)) = (self.ball(), rhs.ball());
        let (ha, hb) = (
            up(a.to_c64().norm()).max(f64::MIN_POSITIVE),
            up(b.to_c64().norm()).max(f64::MIN_POSITIVE),
        );
        let rad = up(up(ha * rb) + up(hb * ra) + up(ra * rb));
        Coeff::from_dyadic(a.mul(&b), rad)
    }

    pub fn scale(&self, r: &Rat) -> Coeff {
        match &self.mid {
            Mid::Rat(z) => {
                let f = up(super::rat::rat_to_f64(&r.abs()));
                Coeff::new(z.scale(r), up(self.rad * f))
            }
            Mid::Dyadic(_) => self.mul(&Coeff::from_rat(r.clone())),
        }
    }

    pub fn recip(&self) -> Result<Coeff> {
        if let Some(z) = self.as_exact() {
            return z.inv().map(Coeff::exact).ok_or(Error::DivisionByUncertainZero);
        }
        let lo = self.mid_abs_lo();
        if lo <= self.rad {
            return Err(Error::DivisionByUncertainZero);
        }
        let inv = self.mid().inv().ok_or(Error::DivisionByUncertainZero)?;
        let rad = up(self.rad / down(lo * down(lo - self.rad)));
        Ok(Coeff::new(inv, rad))
    }

    /// Quotient of the midpoints, widened by
    /// `(ra·|mb| + |ma|·rb) / (|mb|·(|mb| - rb))`.
    pub fn div(&self, rhs: &Coeff) -> Result<Coeff> {
        if let (Some(a), Some(b)) = (self.as_exact(), rhs.as_exact()) {
            return a.div(b).map(Coeff::exact).ok_or(Error::DivisionByUncertainZero);
        }
        let lo = rhs.mid_abs_lo();
        if lo <= rhs.rad {
            return Err(Error::DivisionByUncertainZero);
        }
        let q = self.mid().div(&rhs.mid()).ok_or(Error::DivisionByUncertainZero)?;
        let num = up(up(self.rad * rhs.mid_abs_hi()) + up(self.mid_abs_hi() * rhs.rad));
        Ok(Coeff::new(q, up(num / down(lo * down(lo - rhs.rad)))))
    }

    pub fn powi(&self, e: i64) -> Result<Coeff> {
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        let mut e = e as u64;
        let mut base = self.clone();
        let mut acc = Coeff::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Principal branch `exp(e · Log self)`.
    pub fn pow_rat(&self, e: &Rat) -> Result<Coeff> {
        if e.is_integer() {
            let n: i64 = e
                .to_integer()
                .try_into()
                .map_err(|_| Error::Precondition("exponent out of range".into()))?;
            return self.powi(n);
        }
        let q: u32 = e
            .denom()
            .try_into()
            .map_err(|_| Error::Precondition("exponent denominator out of range".into()))?;
        let p: i64 = e
            .numer()
            .try_into()
            .map_err(|_| Error::Precondition("exponent out of range".into()))?;
        self.principal_root(q)?.powi(p)
    }

    /// The principal `q`-th root `exp(Log(self) / q)`.
    pub fn principal_root(&self, q: u32) -> Result<Coeff> {
        if q == 0 {
            return Err(Error::Precondition("zeroth root".into()));
        }
        if q == 1 {
            return Ok(self.clone());
        }
        if !self.is_certainly_nonzero() {
            return Err(Error::PrecisionExhausted(format!("root of {self}")));
        }
        let approx = self.to_c64().powf(1.0 / q as f64);
        root_of_power(self, q, approx)
    }

    /// All `n` complex `n`-th roots, starting with the principal one and
    /// proceeding counter-clockwise.
    pub fn nth_roots(&self, n: u32) -> Result<Vec<Coeff>> {
        if n == 0 {
            return Err(Error::Precondition("zeroth root".into()));
        }
        if !self.is_certainly_nonzero() {
            return Err(Error::PrecisionExhausted(format!("roots of {self}")));
        }
        let principal = self.to_c64().powf(1.0 / n as f64);
        let roots = (0..n)
            .map(|k| {
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
                root_of_power(self, n, principal * w)
            })
            .collect::<Result<Vec<_>>>()?;
        ensure_disjoint(&roots)?;
        Ok(roots)
    }
}

/// Refines `approx` to the root of `z^n = a` it approximates.
fn root_of_power(a: &Coeff, n: u32, approx: Complex64) -> Result<Coeff> {
    if a.is_exact() {
        if let Some(z) = rationalize_c64(approx) {
            if Some(&z.pow(n as u64)) == a.as_exact() {
                return Ok(Coeff::exact(z));
            }
        }
    }
    let mut coeffs = vec![Coeff::zero(); n as usize + 1];
    coeffs[0] = a.neg();
    coeffs[n as usize] = Coeff::one();
    let p = UPoly::new(coeffs);
    p.refine_simple_root(approx)
}

pub(crate) fn ensure_disjoint(roots: &[Coeff]) -> Result<()> {
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let d = a.sub(b);
            if d.mid_abs_lo() <= up(d.rad) {
                return Err(Error::PrecisionExhausted(format!(
                    "roots {a} and {b} cannot be separated"
                )));
            }
        }
    }
    Ok(())
}

/// Continued-fraction recognition of a small-denominator rational.
pub(crate) fn rationalize(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-12 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i128;
        (h0, h1) = (h1, a * h1 + h0);
        (k0, k1) = (k1, a * k1 + k0);
        if k1 > 1 << 24 {
            return None;
        }
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(Rat::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
    }
    let _ = (h0, k0);
    None
}

pub(crate) fn rationalize_c64(z: Complex64) -> Option<GaussRat> {
    let scale = z.norm().max(1.0);
    let snap = |x: f64| {
        if x.abs() < 1e-13 * scale {
            Some(Rat::zero())
        } else {
            rationalize(x)
        }
    };
    Some(GaussRat::new(snap(z.re)?, snap(z.im)?))
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(z) = self.as_exact() {
            return write!(f, "{z}");
        }
        let z = self.to_c64();
        write!(f, "[{:.6e} {:+}i ± {:.1e}]", z.re, z.im, self.rad)
    }
}
