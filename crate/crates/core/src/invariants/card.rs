//! Assembly of the identity card.

use super::levels::{normalize, second_level, third_level, SecondLevel, ThirdLevel};
use crate::error::{Error, Result};
use crate::numerics::{config, int, rat, Coeff, ExtRat, NumConfig, Rat};
use crate::puiseux::{BivarPoly, PuiseuxSeries};
use crate::singularity::{
    cluster, group_canyons, kuo_lu_tree, mini_regularize, polar_arcs, polar_contact,
    tangent_cone, Canyon, Cluster, KuoLuTree, PolarArc, Regularized,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CardOptions {
    /// Fixed truncation; when `None` it is raised until the card is complete.
    pub trunc: Option<Rat>,
    pub max_trunc: Rat,
}

impl Default for CardOptions {
    fn default() -> Self {
        Self {
            trunc: None,
            max_trunc: int(128),
        }
    }
}

/// Card canyons tangent to one line of the cone.
#[derive(Clone, Debug)]
pub struct LineGroup {
    pub line: usize,
    pub slope: Coeff,
    pub canyons: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct IdentityCard {
    pub germ: BivarPoly,
    pub regular: Regularized,
    pub trunc: Rat,
    pub config: NumConfig,
    pub cone: Vec<(Coeff, usize)>,
    pub polars: Vec<PolarArc>,
    pub tree: KuoLuTree,
    pub canyons: Vec<Canyon>,
    pub clusters: Vec<Cluster>,
    pub lines: Vec<LineGroup>,
    /// Records for same-line pairs `i < j` with equal `h`.
    pub second: Vec<SecondLevel>,
    /// Records for triples `(i, j, k)` with `j < k` meeting the equal-order
    /// conditions.
    pub third: Vec<ThirdLevel>,
    normalized: Vec<Option<PuiseuxSeries>>,
}

impl IdentityCard {
    pub fn card_canyons(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.canyons.len()).filter(|&i| self.canyons[i].in_card())
    }

    /// `f(γ(y), y)` along the representative polar of a canyon.
    pub fn f_series(&self, canyon: usize) -> &PuiseuxSeries {
        &self.polars[self.canyons[canyon].representative()].f_along
    }

    /// `f(γ(y), y) / a` for a card canyon.
    pub fn normalized(&self, canyon: usize) -> Result<&PuiseuxSeries> {
        self.normalized[canyon]
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("canyon {canyon} is not in the card")))
    }

    /// `(h, a)`.
    pub fn first_level(&self, canyon: usize) -> (Rat, Coeff) {
        let c = &self.canyons[canyon];
        (c.h.clone(), c.a.clone())
    }

    /// Contact between the representatives of two distinct canyons.
    pub fn contact(&self, i: usize, j: usize) -> Result<Rat> {
        let a = &self.polars[self.canyons[i].representative()];
        let b = &self.polars[self.canyons[j].representative()];
        polar_contact(a, b)?
            .fin()
            .cloned()
            .ok_or_else(|| Error::Precondition("contact of a canyon with itself".into()))
    }

    /// The second level of an ordered pair of card canyons, or `None` when
    /// they lie on different lines or have different `h`.
    pub fn second_level(&self, i: usize, j: usize) -> Result<Option<(SecondLevel, PuiseuxSeries)>> {
        let (ci, cj) = (&self.canyons[i], &self.canyons[j]);
        if i == j {
            return Err(Error::Precondition("second level of a canyon with itself".into()));
        }
        if ci.line != cj.line || ci.h != cj.h || !ci.in_card() || !cj.in_card() {
            return Ok(None);
        }
        let delta = self.contact(i, j)?;
        second_level(
            (i, j),
            self.normalized(i)?,
            self.normalized(j)?,
            &ci.h,
            &delta,
        )
        .map(Some)
    }

    /// The third level of an ordered triple, or `None` when the
    /// equal-order conditions fail.
    pub fn third_level(&self, i: usize, j: usize, k: usize) -> Result<Option<ThirdLevel>> {
        if i == j || j == k || k == i {
            return Err(Error::Precondition("third level needs three distinct canyons".into()));
        }
        let (Some((l12, d12)), Some((l31, d31))) = (self.second_level(i, j)?, self.second_level(k, i)?)
        else {
            return Ok(None);
        };
        third_level((i, j, k), &l12, &d12, &l31, &d31)
    }

    pub fn line_of(&self, canyon: usize) -> Option<usize> {
        self.canyons[canyon].line
    }
}

pub fn identity_card(f: &BivarPoly) -> Result<IdentityCard> {
    identity_card_with(f, &CardOptions::default())
}

pub fn identity_card_with(f: &BivarPoly, opts: &CardOptions) -> Result<IdentityCard> {
    let regular = mini_regularize(f)?;
    let mut tau = match &opts.trunc {
        Some(t) => t.clone(),
        None => Rat::from_integer((regular.poly.deg_y() + 2).into()),
    };
    loop {
        match build(f, &regular, &tau) {
            Err(Error::TruncationTooSmall { .. } | Error::TruncationAmbiguous(_))
                if opts.trunc.is_none() && tau < opts.max_trunc =>
            {
                tau = (&tau * rat(3, 2)).ceil().min(opts.max_trunc.clone());
            }
            other => return other,
        }
    }
}

fn build(f: &BivarPoly, regular: &Regularized, tau: &Rat) -> Result<IdentityCard> {
    let poly = &regular.poly;
    let cone = tangent_cone(poly)?;
    let slopes: Vec<Coeff> = cone.iter().map(|(s, _)| s.clone()).collect();
    let mut polars = polar_arcs(poly, &slopes, tau)?;
    let tree = kuo_lu_tree(poly, tau)?;
    for p in polars.iter_mut().filter(|p| p.is_tangential()) {
        p.bar = Some(tree.bar_of(&p.arc, &p.h)?);
    }
    let canyons = group_canyons(&polars)?;
    let mut normalized = vec![None; canyons.len()];
    for (i, c) in canyons.iter().enumerate() {
        if !c.in_card() {
            continue;
        }
        let needed = &c.h + &c.d;
        for &m in &c.members {
            if let ExtRat::Fin(t) = polars[m].f_along.trunc() {
                if *t < needed {
                    return Err(Error::TruncationTooSmall {
                        needed,
                        available: t.clone(),
                    });
                }
            }
        }
        normalized[i] = Some(normalize(&polars[c.representative()].f_along)?);
    }
    let clusters = cluster(&canyons, &polars)?;
    let lines: Vec<LineGroup> = slopes
        .iter()
        .enumerate()
        .map(|(line, slope)| LineGroup {
            line,
            slope: slope.clone(),
            canyons: (0..canyons.len())
                .filter(|&i| canyons[i].in_card() && canyons[i].line == Some(line))
                .collect(),
        })
        .filter(|g| !g.canyons.is_empty())
        .collect();
    let mut card = IdentityCard {
        germ: f.clone(),
        regular: regular.clone(),
        trunc: tau.clone(),
        config: config(),
        cone,
        polars,
        tree,
        canyons,
        clusters,
        lines,
        second: Vec::new(),
        third: Vec::new(),
        normalized,
    };
    let mut second = Vec::new();
    let mut third = Vec::new();
    for g in &card.lines {
        for (p, &i) in g.canyons.iter().enumerate() {
            for &j in &g.canyons[p + 1..] {
                if let Some((l, _)) = card.second_level(i, j)? {
                    second.push(l);
                }
            }
        }
        for &i in &g.canyons {
            for (p, &j) in g.canyons.iter().enumerate() {
                for &k in &g.canyons[p + 1..] {
                    if i == j || i == k {
                        continue;
                    }
                    if let Some(t) = card.third_level(i, j, k)? {
                        third.push(t);
                    }
                }
            }
        }
    }
    card.second = second;
    card.third = third;
    Ok(card)
}
