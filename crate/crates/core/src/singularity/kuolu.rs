//! The Kuo–Lu tree of the roots of `f`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::{ExtRat, Rat};
use crate::puiseux::{direct_contact, BivarPoly, PuiseuxSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct Bar {
    pub id: usize,
    pub height: Rat,
    /// Indices into [`KuoLuTree::roots`] of the roots through this bar.
    pub roots: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct KuoLuTree {
    /// Distinct roots of `f`, conjugates listed separately, with multiplicity.
    pub roots: Vec<(PuiseuxSeries, usize)>,
    /// Bars in depth-first order; bar 0 is the trunk.
    pub bars: Vec<Bar>,
}

fn contact(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<Rat> {
    match direct_contact(a, b)? {
        ExtRat::Fin(k) => Ok(k),
        ExtRat::Inf => Err(Error::Precondition("repeated root in the Kuo-Lu tree".into())),
    }
}

impl KuoLuTree {
    /// Builds the tree from the roots returned by Newton–Puiseux.
    pub fn from_roots(roots: Vec<(PuiseuxSeries, usize)>) -> Result<Self> {
        let n = roots.len();
        let mut k = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = contact(&roots[i].0, &roots[j].0)?;
                k[i][j] = c.clone();
                k[j][i] = c;
            }
        }
        let mut tree = Self {
            roots,
            bars: Vec::new(),
        };
        match n {
            0 => {}
            1 => {
                let height = match tree.roots[0].0.ord() {
                    ExtRat::Fin(o) => o,
                    ExtRat::Inf => Rat::from_integer(1.into()),
                };
                tree.bars.push(Bar {
                    id: 0,
                    height,
                    roots: vec![0],
                    parent: None,
                    children: Vec::new(),
                });
            }
            _ => tree.split((0..n).collect(), None, &k),
        }
        Ok(tree)
    }

    fn split(&mut self, set: Vec<usize>, parent: Option<usize>, k: &[Vec<Rat>]) {
        let height = set
            .iter()
            .flat_map(|&i| set.iter().filter(move |&&j| j != i).map(move |&j| &k[i][j]))
            .min()
            .expect("at least two roots")
            .clone();
        let id = self.bars.len();
        self.bars.push(Bar {
            id,
            height: height.clone(),
            roots: set.clone(),
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.bars[p].children.push(id);
        }
        // contact above the bar height is an equivalence relation
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for &i in &set {
            match parts.iter_mut().find(|p| k[p[0]][i] > height) {
                Some(p) => p.push(i),
                None => parts.push(vec![i]),
            }
        }
        for part in parts {
            if part.len() > 1 {
                self.split(part, Some(id), k);
            }
        }
    }

    /// Total root count with multiplicity.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.1).sum()
    }

    /// The bar an arc grows from; checks `h = Σ mult·ord(γ − ζ)`.
    pub fn bar_of(&self, gamma: &PuiseuxSeries, h: &Rat) -> Result<usize> {
        let mut contacts = Vec::with_capacity(self.roots.len());
        for (root, _) in &self.roots {
            let c = match direct_contact(gamma, root)? {
                ExtRat::Fin(c) => c,
                ExtRat::Inf => {
                    return Err(Error::BarMismatch(format!("{gamma} is a root of f")))
                }
            };
            contacts.push(c);
        }
        let total: Rat = contacts
            .iter()
            .zip(&self.roots)
            .map(|(c, r)| c * Rat::from_integer(r.1.into()))
            .sum();
        if total != *h {
            return Err(Error::BarMismatch(format!(
                "contacts of {gamma} with the roots sum to {total}, not {h}"
            )));
        }
        let q = contacts.iter().max().ok_or_else(|| {
            Error::BarMismatch("no roots to attach a polar to".into())
        })?;
        let set: Vec<usize> = (0..contacts.len()).filter(|&i| contacts[i] == *q).collect();
        self.bars
            .iter()
            .find(|b| b.height == *q && b.roots == set)
            .map(|b| b.id)
            .ok_or_else(|| {
                Error::BarMismatch(format!("{gamma} leaves the tree at {q} away from a bar"))
            })
    }
}

pub fn kuo_lu_tree(f: &BivarPoly, trunc: &Rat) -> Result<KuoLuTree> {
    KuoLuTree::from_roots(crate::puiseux::newton_puiseux(f, trunc)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, Coeff};

    fn poly(terms: &[((u32, u32), Rat)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().map(|(k, c)| (*k, Coeff::from_rat(c.clone()))))
    }

    #[test]
    fn two_roots_one_bar() {
        // (x - y^2)(x - y^3)
        let a = poly(&[((1, 0), int(1)), ((0, 2), int(-1))]);
        let b = poly(&[((1, 0), int(1)), ((0, 3), int(-1))]);
        let t = kuo_lu_tree(&a.mul(&b), &int(6)).unwrap();
        assert_eq!(t.bars.len(), 1);
        assert_eq!(t.bars[0].height, int(2));
        assert_eq!(t.bars[0].roots.len(), 2);
    }

    #[test]
    fn nested_bars() {
        // x (x - y^2)(x - y^2 - y^3)
        let a = poly(&[((1, 0), int(1))]);
        let b = poly(&[((1, 0), int(1)), ((0, 2), int(-1))]);
        let c = poly(&[((1, 0), int(1)), ((0, 2), int(-1)), ((0, 3), int(-1))]);
        let t = kuo_lu_tree(&a.mul(&b).mul(&c), &int(6)).unwrap();
        let heights: Vec<Rat> = t.bars.iter().map(|b| b.height.clone()).collect();
        assert_eq!(heights, vec![int(2), int(3)]);
        assert_eq!(t.bars[1].parent, Some(0));
        assert_eq!(t.bars[0].children, vec![1]);
    }

    #[test]
    fn f1_polar_on_trunk() {
        let f = poly(&[((3, 0), rat(1, 3)), ((1, 10), int(-1)), ((0, 12), int(1))]);
        let t = kuo_lu_tree(&f, &int(16)).unwrap();
        assert_eq!(t.degree(), 3);
        assert_eq!(t.bars.len(), 1);
        assert_eq!(t.bars[0].height, int(4));
        let gamma = PuiseuxSeries::monomial(Coeff::one(), int(5));
        assert_eq!(t.bar_of(&gamma, &int(12)), Ok(0));
        assert!(matches!(t.bar_of(&gamma, &int(13)), Err(Error::BarMismatch(_))));
    }

    #[test]
    fn g1_polar_on_trunk() {
        let f = poly(&[((3, 0), int(1)), ((0, 12), int(1)), ((1, 9), int(1)), ((0, 13), int(1))]);
        let t = kuo_lu_tree(&f, &int(16)).unwrap();
        assert_eq!(t.bars.len(), 1);
        assert_eq!(t.bars[0].height, int(4));
        let a = Coeff::from_rat(rat(-1, 3)).principal_root(2).unwrap();
        let gamma = PuiseuxSeries::monomial(a, rat(9, 2));
        assert_eq!(t.bar_of(&gamma, &int(12)), Ok(0));
    }
}
