//! Gradient canyons and their clusters.

use std::collections::BTreeMap;

use num_traits::One;
use petgraph::unionfind::UnionFind;

use super::polar::PolarArc;
use crate::error::{Error, Result};
use crate::numerics::{Coeff, ExtRat, Rat};
use crate::puiseux::direct_contact;

#[derive(Clone, Debug)]
pub struct Canyon {
    /// Indices of the member polars; the first is the representative.
    pub members: Vec<usize>,
    pub d: Rat,
    pub h: Rat,
    pub a: Coeff,
    pub tangent: Coeff,
    pub line: Option<usize>,
    pub bar: Option<usize>,
}

impl Canyon {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    /// Tangential with `d > 1`: the canyons that enter the identity card.
    pub fn in_card(&self) -> bool {
        self.line.is_some() && self.d > Rat::one()
    }
}

/// Contact between two polars; `+∞` only for a polar with itself.
pub fn polar_contact(a: &PolarArc, b: &PolarArc) -> Result<ExtRat> {
    direct_contact(&a.arc, &b.arc)
}

/// Polars share a canyon iff they have equal degree `d` and contact at
/// least `d`.
pub fn group_canyons(polars: &[PolarArc]) -> Result<Vec<Canyon>> {
    let n = polars.len();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if polars[i].d != polars[j].d {
                continue;
            }
            if polar_contact(&polars[i], &polars[j])? >= ExtRat::Fin(polars[i].d.clone()) {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.into_iter().enumerate() {
        groups.entry(l).or_default().push(i);
    }
    let mut out: Vec<Canyon> = Vec::new();
    for members in groups.into_values() {
        let rep = &polars[members[0]];
        for &m in &members[1..] {
            let p = &polars[m];
            if p.h != rep.h || !p.a.approx_eq(&rep.a)? {
                return Err(Error::InconsistentCanyon(format!(
                    "polars {} and {} share a canyon but have (h, a) = ({}, {}) and ({}, {})",
                    rep.arc, p.arc, rep.h, rep.a, p.h, p.a
                )));
            }
        }
        out.push(Canyon {
            d: rep.d.clone(),
            h: rep.h.clone(),
            a: rep.a.clone(),
            tangent: rep.tangent.clone(),
            line: rep.line,
            bar: rep.bar,
            members,
        });
    }
    out.sort_by_key(|c| c.representative());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClusterKey {
    pub line: usize,
    pub d: Rat,
    pub bar: usize,
    pub h: Rat,
}

#[derive(Clone, Debug)]
pub struct Cluster {
    pub key: ClusterKey,
    /// Indices into the canyon list.
    pub canyons: Vec<usize>,
    /// `k(i, j)` between canyons of the cluster, by position; `None` on the
    /// diagonal.
    pub contacts: Vec<Vec<Option<Rat>>>,
    /// Sorted multiset `K_i` for each position.
    pub k_sets: Vec<Vec<Rat>>,
    /// Positions grouped by equal `K_i`, ordered by `K_i`.
    pub omega: Vec<(Vec<Rat>, Vec<usize>)>,
}

/// Groups card canyons by `(ℓ, d, B(h))` and computes the contact data.
pub fn cluster(canyons: &[Canyon], polars: &[PolarArc]) -> Result<Vec<Cluster>> {
    let mut by_key: BTreeMap<ClusterKey, Vec<usize>> = BTreeMap::new();
    for (i, c) in canyons.iter().enumerate() {
        if !c.in_card() {
            continue;
        }
        let (Some(line), Some(bar)) = (c.line, c.bar) else {
            return Err(Error::Precondition("card canyon without a bar".into()));
        };
        let key = ClusterKey {
            line,
            d: c.d.clone(),
            bar,
            h: c.h.clone(),
        };
        by_key.entry(key).or_default().push(i);
    }
    let mut out = Vec::new();
    for (key, members) in by_key {
        let n = members.len();
        let mut contacts = vec![vec![None; n]; n];
        for p in 0..n {
            for q in p + 1..n {
                let a = &polars[canyons[members[p]].representative()];
                let b = &polars[canyons[members[q]].representative()];
                let k = polar_contact(a, b)?.fin().cloned().ok_or_else(|| {
                    Error::InconsistentCanyon("distinct canyons with infinite contact".into())
                })?;
                contacts[p][q] = Some(k.clone());
                contacts[q][p] = Some(k);
            }
        }
        let k_sets: Vec<Vec<Rat>> = contacts
            .iter()
            .map(|row| {
                let mut v: Vec<Rat> = row.iter().flatten().cloned().collect();
                v.sort();
                v
            })
            .collect();
        let mut classes: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
        for (p, k) in k_sets.iter().enumerate() {
            classes.entry(k.clone()).or_default().push(p);
        }
        out.push(Cluster {
            key,
            canyons: members,
            contacts,
            k_sets,
            omega: classes.into_iter().collect(),
        });
    }
    Ok(out)
}
