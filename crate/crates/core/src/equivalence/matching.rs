//! Canyon bijections that respect every discrete invariant of a line group.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::invariants::{IdentityCard, SecondLevel, ThirdLevel};
use crate::numerics::{ExtRat, Rat};

/// Per-line data used by matching and by the constraints.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub canyons: Vec<usize>,
    pub contact: HashMap<(usize, usize), Rat>,
    pub second: HashMap<(usize, usize), SecondLevel>,
    pub third: HashMap<(usize, usize, usize), ThirdLevel>,
}

impl GroupData {
    pub fn new(card: &IdentityCard, line_group: usize) -> Result<Self> {
        let canyons = card.lines[line_group].canyons.clone();
        let mut contact = HashMap::new();
        let mut second = HashMap::new();
        let mut third = HashMap::new();
        for &i in &canyons {
            for &j in &canyons {
                if i == j {
                    continue;
                }
                contact.insert((i, j), card.contact(i, j)?);
                if let Some((l, _)) = card.second_level(i, j)? {
                    second.insert((i, j), l);
                }
                for &k in &canyons {
                    if k == i || k == j {
                        continue;
                    }
                    if let Some(t) = card.third_level(i, j, k)? {
                        third.insert((i, j, k), t);
                    }
                }
            }
        }
        Ok(Self {
            canyons,
            contact,
            second,
            third,
        })
    }
}

fn second_key(l: Option<&SecondLevel>) -> Option<(bool, ExtRat)> {
    l.map(|l| (l.applicable, l.big_h.clone()))
}

fn third_key(t: Option<&ThirdLevel>) -> Option<(bool, Rat, Rat, Rat, ExtRat)> {
    t.map(|t| {
        (
            t.applicable,
            t.big_h.clone(),
            t.delta.clone(),
            t.delta_prime.clone(),
            t.big_h_prime.clone(),
        )
    })
}

struct Search<'a> {
    f: &'a IdentityCard,
    g: &'a IdentityCard,
    fd: &'a GroupData,
    gd: &'a GroupData,
    cap: usize,
    current: Vec<(usize, usize)>,
    used: Vec<bool>,
    out: Vec<Vec<(usize, usize)>>,
}

impl Search<'_> {
    fn compatible(&self, i: usize, ip: usize) -> bool {
        let (ci, cg) = (&self.f.canyons[i], &self.g.canyons[ip]);
        if ci.d != cg.d || ci.h != cg.h {
            return false;
        }
        for &(j, jp) in &self.current {
            let (cj, cjg) = (&self.f.canyons[j], &self.g.canyons[jp]);
            if (ci.bar == cj.bar) != (cg.bar == cjg.bar) {
                return false;
            }
            if self.fd.contact.get(&(i, j)) != self.gd.contact.get(&(ip, jp)) {
                return false;
            }
            for (a, b, ap, bp) in [(i, j, ip, jp), (j, i, jp, ip)] {
                if second_key(self.fd.second.get(&(a, b))) != second_key(self.gd.second.get(&(ap, bp))) {
                    return false;
                }
            }
            for &(k, kp) in &self.current {
                if k == j {
                    continue;
                }
                let ts = [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)];
                let tg = [(ip, jp, kp), (ip, kp, jp), (jp, ip, kp), (jp, kp, ip), (kp, ip, jp), (kp, jp, ip)];
                for (a, b) in ts.iter().zip(&tg) {
                    if third_key(self.fd.third.get(a)) != third_key(self.gd.third.get(b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        if pos == self.fd.canyons.len() {
            if self.out.len() >= self.cap {
                return Err(Error::CombinatorialBlowup {
                    count: self.out.len() + 1,
                    cap: self.cap,
                });
            }
            self.out.push(self.current.clone());
            return Ok(());
        }
        let i = self.fd.canyons[pos];
        for q in 0..self.gd.canyons.len() {
            let ip = self.gd.canyons[q];
            if self.used[q] || !self.compatible(i, ip) {
                continue;
            }
            self.used[q] = true;
            self.current.push((i, ip));
            self.run(pos + 1)?;
            self.current.pop();
            self.used[q] = false;
        }
        Ok(())
    }
}

/// All invariant-preserving bijections between two line groups, as lists of
/// `(f canyon, g canyon)` in the order of the `f` group.
pub fn canyon_matchings(
    f: &IdentityCard,
    fd: &GroupData,
    g: &IdentityCard,
    gd: &GroupData,
    cap: usize,
) -> Result<Vec<Vec<(usize, usize)>>> {
    if fd.canyons.len() != gd.canyons.len() {
        return Ok(Vec::new());
    }
    let mut s = Search {
        f,
        g,
        fd,
        gd,
        cap,
        current: Vec::new(),
        used: vec![false; gd.canyons.len()],
        out: Vec::new(),
    };
    s.run(0)?;
    Ok(s.out)
}

/// All bijections `{0..n} → {0..n}` as image lists.
pub fn permutations(n: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
        if cur.len() == n {
            if out.len() >= cap {
                return Err(Error::CombinatorialBlowup { count: out.len() + 1, cap });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(n, cur, used, out, cap)?;
                cur.pop();
                used[k] = false;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out, cap)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::identity_card;
    use crate::numerics::{int, rat, Coeff};
    use crate::puiseux::BivarPoly;

    fn poly(terms: &[((u32, u32), Rat)]) -> BivarPoly {
        BivarPoly::from_terms(terms.iter().map(|(k, c)| (*k, Coeff::from_rat(c.clone()))))
    }

    fn f_t(t: i64) -> BivarPoly {
        poly(&[((3, 0), rat(1, 3)), ((1, 10), int(-t * t)), ((0, 12), int(1))])
    }

    #[test]
    fn f_family_has_two_matchings() {
        let (a, b) = (identity_card(&f_t(1)).unwrap(), identity_card(&f_t(2)).unwrap());
        let (ad, bd) = (GroupData::new(&a, 0).unwrap(), GroupData::new(&b, 0).unwrap());
        let m = canyon_matchings(&a, &ad, &b, &bd, 100).unwrap();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn different_heights_do_not_match() {
        let a = identity_card(&f_t(1)).unwrap();
        // x^3/3 - x y^8 + y^10: h = 10
        let b = identity_card(&poly(&[((3, 0), rat(1, 3)), ((1, 8), int(-1)), ((0, 10), int(1))])).unwrap();
        let (ad, bd) = (GroupData::new(&a, 0).unwrap(), GroupData::new(&b, 0).unwrap());
        assert!(canyon_matchings(&a, &ad, &b, &bd, 100).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let a = identity_card(&f_t(1)).unwrap();
        let ad = GroupData::new(&a, 0).unwrap();
        assert!(matches!(
            canyon_matchings(&a, &ad, &a, &ad, 1),
            Err(Error::CombinatorialBlowup { cap: 1, .. })
        ));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3, 10).unwrap().len(), 6);
        assert_eq!(permutations(0, 10).unwrap(), vec![Vec::<usize>::new()]);
        assert!(permutations(4, 10).is_err());
    }
}
