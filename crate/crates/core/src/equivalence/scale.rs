//! Constraints `c^k = v` on the scale constant of one tangent line.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numerics::{ext_gcd, Coeff, Rat};

/// Where a constraint comes from, in canyon indices of `f` and `g`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstraintSource {
    FirstLevel { f: usize, g: usize },
    SecondLevel { f: (usize, usize), g: (usize, usize) },
    ThirdLevel { f: (usize, usize, usize), g: (usize, usize, usize) },
}

/// `c^exponent = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleConstraint {
    pub exponent: Rat,
    pub value: Coeff,
    pub source: ConstraintSource,
}

impl ScaleConstraint {
    /// The weakened integer form `c^p = v^q` for `exponent = p/q`.
    pub fn integer_form(&self) -> Result<(i64, Coeff)> {
        let p = self
            .exponent
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Precondition("constraint exponent out of range".into()))?;
        let q = self
            .exponent
            .denom()
            .to_i64()
            .ok_or_else(|| Error::Precondition("constraint exponent out of range".into()))?;
        if p == 0 {
            return Err(Error::Precondition("constraint with exponent 0".into()));
        }
        Ok((p, self.value.powi(q)?))
    }

    /// `Ok(false)` when `c` certainly violates the integer form.
    pub fn admits(&self, c: &Coeff) -> Result<bool> {
        let (p, w) = self.integer_form()?;
        c.powi(p)?.sub(&w).zero_test()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScaleSolution {
    /// Constraint `failing` contradicts the value `z` forced on `c^g`.
    Unsatisfiable { g: i64, z: Coeff, failing: usize },
    /// The `g`-th roots of `z`.
    Candidates { g: i64, z: Coeff, roots: Vec<Coeff> },
}

/// Solves `c^{p_i} = w_i` through `g = gcd(p_i) = Σ α_i p_i` and
/// `z = Π w_i^{α_i}`; an ambiguous consistency check is an error.
pub fn solve_scale_constraints(cs: &[ScaleConstraint]) -> Result<ScaleSolution> {
    if cs.is_empty() {
        return Err(Error::Precondition("no scale constraints".into()));
    }
    let forms = cs.iter().map(ScaleConstraint::integer_form).collect::<Result<Vec<_>>>()?;
    let (mut g, mut z) = {
        let (p, w) = &forms[0];
        if *p > 0 {
            (*p, w.clone())
        } else {
            (-p, w.recip()?)
        }
    };
    for (p, w) in &forms[1..] {
        let (d, x, y) = ext_gcd(g, *p);
        // d = x·g + y·p, so c^d = z^x · w^y
        let (d, x, y) = if d < 0 { (-d, -x, -y) } else { (d, x, y) };
        z = z.powi(x)?.mul(&w.powi(y)?);
        g = d;
    }
    for (i, (p, w)) in forms.iter().enumerate() {
        let (k, r) = p.div_rem(&g);
        debug_assert_eq!(r, 0);
        let lhs = z.powi(k)?;
        if !lhs.sub(w).zero_test()? {
            return Ok(ScaleSolution::Unsatisfiable { g, z, failing: i });
        }
    }
    let roots = z.nth_roots(g.unsigned_abs() as u32)?;
    Ok(ScaleSolution::Candidates { g, z, roots })
}

/// `true` if `c` certainly violates one of the constraints.
pub fn violates_any(cs: &[ScaleConstraint], c: &Coeff) -> bool {
    cs.iter().any(|k| k.admits(c) == Ok(false))
}
