//! Polar arcs: Puiseux roots of `f_x` along which `f` does not vanish.

use num_traits::One;

use super::degree::{gradient_profile, GradientProfile};
use crate::error::{Error, Result};
use crate::numerics::{Coeff, ExtRat, Rat};
use crate::puiseux::{newton_puiseux, polar_factor, BivarPoly, PuiseuxSeries};

#[derive(Clone, Debug)]
pub struct PolarArc {
    pub arc: PuiseuxSeries,
    pub multiplicity: usize,
    /// `f(γ(y), y)`
    pub f_along: PuiseuxSeries,
    pub h: Rat,
    pub a: Coeff,
    pub profile: GradientProfile,
    pub d: Rat,
    /// Slope `s` of the tangent line `x = s·y`.
    pub tangent: Coeff,
    /// Index of the tangent-cone line containing the tangent, if any.
    pub line: Option<usize>,
    /// Kuo–Lu bar the arc grows from, once assigned.
    pub bar: Option<usize>,
}

impl PolarArc {
    pub fn is_tangential(&self) -> bool {
        self.line.is_some()
    }
}

fn ambiguous_to_small(e: Error) -> Error {
    match e {
        Error::TruncationAmbiguous(t) => Error::TruncationTooSmall {
            needed: &t + Rat::one(),
            available: t,
        },
        other => other,
    }
}

/// Puiseux roots of `f_x` that are not roots of `f`, known to `O(y^trunc)`,
/// each completed with `h`, `a`, `d` and its tangent. `cone` lists the
/// slopes of the tangent cone of `f`.
pub fn polar_arcs(f: &BivarPoly, cone: &[Coeff], trunc: &Rat) -> Result<Vec<PolarArc>> {
    let fx = f.deriv_x();
    if fx.is_zero() {
        return Ok(Vec::new());
    }
    let (source, filter) = match polar_factor(f) {
        Some(q) => (q, false),
        None => (fx, true),
    };
    if source.deg_x() == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (arc, multiplicity) in newton_puiseux(&source, trunc)? {
        let f_along = f.substitute_x(&arc);
        let h = match f_along.exact_ord() {
            Ok(ExtRat::Fin(h)) => h,
            Ok(ExtRat::Inf) if filter => continue,
            Ok(ExtRat::Inf) => {
                return Err(Error::Precondition(format!("polar {arc} is a root of f")))
            }
            Err(Error::TruncationAmbiguous(_)) if filter => continue,
            Err(e) => return Err(ambiguous_to_small(e)),
        };
        let a = f_along.coeff(&h);
        let profile = gradient_profile(f, &arc).map_err(ambiguous_to_small)?;
        let tangent = arc.coeff(&Rat::one());
        let mut line = None;
        for (k, s) in cone.iter().enumerate() {
            if tangent.approx_eq(s)? {
                line = Some(k);
                break;
            }
        }
        out.push(PolarArc {
            arc,
            multiplicity,
            f_along,
            h,
            a,
            d: profile.d.clone(),
            profile,
            tangent,
            line,
            bar: None,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, GaussRat};
    use crate::singularity::tangent_cone;
    use num_traits::Signed;

    fn poly(terms: &[((u32, u32), Rat)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().map(|(k, c)| (*k, Coeff::from_rat(c.clone()))))
    }

    fn arcs(f: &BivarPoly) -> Vec<PolarArc> {
        let cone: Vec<Coeff> = tangent_cone(f).unwrap().into_iter().map(|c| c.0).collect();
        polar_arcs(f, &cone, &int(24)).unwrap()
    }

    #[test]
    fn f1_polars() {
        let f = poly(&[((3, 0), rat(1, 3)), ((1, 10), int(-1)), ((0, 12), int(1))]);
        let p = arcs(&f);
        assert_eq!(p.len(), 2);
        for arc in &p {
            assert_eq!(arc.h, int(12));
            assert_eq!(arc.a.as_exact(), Some(&GaussRat::one()));
            assert_eq!(arc.d, int(6));
            assert_eq!(arc.line, Some(0));
            assert_eq!(arc.f_along.coeff(&int(15)).mid().re.abs(), rat(2, 3));
        }
    }

    #[test]
    fn g1_polars() {
        let f = poly(&[((3, 0), int(1)), ((0, 12), int(1)), ((1, 9), int(1)), ((0, 13), int(1))]);
        let p = arcs(&f);
        assert_eq!(p.len(), 2);
        for arc in &p {
            assert_eq!(arc.h, int(12));
            assert!(arc.a.approx_eq(&Coeff::one()).unwrap());
            assert_eq!(arc.d, rat(13, 2));
            let c = arc.f_along.coeff(&rat(27, 2)).to_c64();
            let lead = arc.arc.lead().unwrap().1.to_c64();
            assert!((c - lead * (2.0 / 3.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn square_has_no_polars() {
        let f = poly(&[((2, 0), int(1))]);
        assert!(polar_arcs(&f, &[Coeff::zero()], &int(8)).unwrap().is_empty());
    }

    #[test]
    fn transversal_polar_is_not_tangential() {
        // x^3 + y^3: the polar x = 0 is not in the cone t^3 + 1 = 0
        let f = poly(&[((3, 0), int(1)), ((0, 3), int(1))]);
        let p = arcs(&f);
        assert!(!p.is_empty());
        assert!(p.iter().all(|a| !a.is_tangential()));
    }
}
