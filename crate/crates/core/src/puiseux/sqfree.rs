//! Exact gcd and square-free decomposition in `Q(i)[y][x]`.

use super::bivar::BivarPoly;
use crate::numerics::{Coeff, GaussRat, QPoly, Rat};

/// Polynomial in `x` whose coefficients are polynomials in `y`.
#[derive(Clone, Debug, PartialEq)]
struct XYPoly(Vec<QPoly>);

impl XYPoly {
    fn new(mut c: Vec<QPoly>) -> Self {
        while c.last().is_some_and(QPoly::is_zero) {
            c.pop();
        }
        Self(c)
    }

    fn from_bivar(f: &BivarPoly) -> Option<Self> {
        let mut rows: Vec<Vec<GaussRat>> = vec![Vec::new(); f.deg_x() as usize + 1];
        for ((i, j), c) in f.terms() {
            let row = &mut rows[*i as usize];
            let j = *j as usize;
            if row.len() <= j {
                row.resize(j + 1, GaussRat::zero());
            }
            row[j] = c.as_exact()?.clone();
        }
        Some(Self::new(rows.into_iter().map(QPoly::new).collect()))
    }

    fn to_bivar(&self) -> BivarPoly {
        BivarPoly::from_terms(self.0.iter().enumerate().flat_map(|(i, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(j, c)| ((i as u32, j as u32), Coeff::exact(c.clone())))
        }))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> &QPoly {
        self.0.last().expect("non-zero polynomial")
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, p)| p.scale(&GaussRat::real(Rat::from_integer(k.into()))))
                .collect(),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let z = QPoly::zero();
        Self::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z).sub(rhs.0.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    fn scale(&self, c: &QPoly) -> Self {
        Self::new(self.0.iter().map(|p| p.mul(c)).collect())
    }

    fn content(&self) -> QPoly {
        self.0.iter().fold(QPoly::zero(), |g, p| g.gcd(p))
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mut p = Self::new(
            self.0
                .iter()
                .map(|q| q.exact_div(&c).expect("content divides"))
                .collect(),
        );
        // normalize the unit: leading coefficient of lc(x) monic
        if let Some(inv) = p.lc().lc().and_then(GaussRat::inv) {
            p = Self::new(p.0.iter().map(|q| q.scale(&inv)).collect());
        }
        p
    }

    /// Pseudo-remainder `lc(b)^{deg a - deg b + 1} · a mod b`.
    fn prem(&self, b: &Self) -> Self {
        let db = b.deg().expect("non-zero divisor");
        let lb = b.lc().clone();
        let mut r = self.clone();
        while let Some(dr) = r.deg() {
            if dr < db {
                break;
            }
            let lr = r.lc().clone();
            let shift = dr - db;
            let mut next = r.scale(&lb).0;
            for (k, bk) in b.0.iter().enumerate() {
                next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
            }
            r = Self::new(next);
        }
        r
    }

    /// Exact quotient in `Q(i)[y][x]`, if it exists.
    fn exact_div(&self, b: &Self) -> Option<Self> {
        let db = b.deg()?;
        let mut r = self.clone();
        let mut q = vec![QPoly::zero(); self.0.len().saturating_sub(db)];
        while let Some(dr) = r.deg() {
            if dr < db {
                return None;
            }
            let t = r.lc().exact_div(b.lc())?;
            let shift = dr - db;
            let mut next = r.0.clone();
            for (k, bk) in b.0.iter().enumerate() {
                next[k + shift] = next[k + shift].sub(&bk.mul(&t));
            }
            q[shift] = t;
            r = Self::new(next);
            if r.deg() == Some(dr) {
                return None;
            }
        }
        Some(Self::new(q))
    }

    fn at(&self, y: &GaussRat) -> QPoly {
        QPoly::new(self.0.iter().map(|p| p.eval(y)).collect())
    }

    /// Sufficient test for a trivial gcd: a common factor of positive
    /// degree survives any specialization that keeps both leading
    /// coefficients, so a constant univariate gcd settles it. Avoids the
    /// coefficient growth of the pseudo-remainder sequence.
    fn coprime_at_a_point(&self, rhs: &Self) -> bool {
        if self.is_zero() || rhs.is_zero() {
            return false;
        }
        (1..=8i64)
            .map(|k| GaussRat::real(Rat::from_integer((k * 7 - 3).into())))
            .find(|y| !self.lc().eval(y).is_zero() && !rhs.lc().eval(y).is_zero())
            .is_some_and(|y| self.at(&y).gcd(&rhs.at(&y)).degree() == Some(0))
    }

    /// Primitive gcd over `Q(i)(y)[x]`, normalized up to units; content in
    /// `y` is discarded.
    fn gcd(&self, rhs: &Self) -> Self {
        if self.coprime_at_a_point(rhs) {
            return Self::new(vec![QPoly::one()]);
        }
        let (mut a, mut b) = (self.primitive(), rhs.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == Some(0) {
                return Self::new(vec![QPoly::one()]);
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Yun's algorithm for the primitive part; returns `(s_k, k)` with
    /// `pp(self) = unit · ∏ s_k^k`.
    fn square_free(&self) -> Vec<(Self, usize)> {
        let f = self.primitive();
        let mut out = Vec::new();
        if f.deg().unwrap_or(0) == 0 {
            return out;
        }
        let fx = f.derivative();
        let a = f.gcd(&fx);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = fx.exact_div(&a).expect("gcd divides the derivative");
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.deg().unwrap_or(0) > 0 {
            let g = b.gcd(&d);
            if g.deg().unwrap_or(0) > 0 {
                out.push((g.clone(), k));
            }
            b = b.exact_div(&g).expect("gcd divides");
            c = d.exact_div(&g).expect("gcd divides");
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }
}

/// Square-free decomposition of `f` in `x`: pairs `(s_k, k)` with
/// `f = u(y) · ∏ s_k^k`. `None` for inexact coefficients.
pub fn square_free_x(f: &BivarPoly) -> Option<Vec<(BivarPoly, usize)>> {
    let p = XYPoly::from_bivar(f)?;
    Some(
        p.square_free()
            .into_iter()
            .map(|(s, k)| (s.to_bivar(), k))
            .collect(),
    )
}

/// `f_x / gcd(f, f_x)`: the factor of `f_x` whose roots are not roots of
/// `f`. `None` for inexact coefficients.
pub fn polar_factor(f: &BivarPoly) -> Option<BivarPoly> {
    let p = XYPoly::from_bivar(f)?;
    let px = p.derivative();
    let g = p.gcd(&px);
    let q = px.primitive().exact_div(&g)?;
    Some(q.to_bivar())
}
