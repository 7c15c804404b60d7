//! Pairwise comparison of a germ family over a list of parameter values.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use petgraph::unionfind::UnionFind;

use crate::equivalence::{decide_cards, DecideOptions, Route, VerdictKind};
use crate::error::Result;
use crate::germ::parse_germ;
use crate::invariants::{identity_card_with, IdentityCard};
use crate::numerics::{config, with_config, Rat};
use crate::puiseux::BivarPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPair {
    pub i: usize,
    pub j: usize,
    pub kind: VerdictKind,
    pub route: Option<Route>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub parameter: String,
    pub values: Vec<Rat>,
    pub germs: Vec<BivarPoly>,
    pub pairs: Vec<SweepPair>,
    /// Indices joined whenever a pair is not refuted.
    pub classes: Vec<Vec<usize>>,
}

fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    let cfg = config();
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                with_config(cfg, || loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= items.len() {
                        break;
                    }
                    let r = f(&items[k]);
                    out.lock().expect("no panics while holding the lock")[k] = Some(r);
                })
            });
        }
    });
    out.into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every item processed"))
        .collect()
}

pub fn sweep(
    template: &str,
    parameter: &str,
    values: &[Rat],
    bindings: &BTreeMap<String, Rat>,
    opts: &DecideOptions,
) -> Result<SweepReport> {
    let germs = values
        .iter()
        .map(|v| {
            let mut b = bindings.clone();
            b.insert(parameter.to_string(), v.clone());
            parse_germ(template, &b).map(|g| g.poly)
        })
        .collect::<Result<Vec<_>>>()?;
    let cards: Vec<IdentityCard> = parallel_map(&germs, |g| identity_card_with(g, &opts.card))
        .into_iter()
        .collect::<Result<_>>()?;
    let index: Vec<(usize, usize)> = (0..germs.len())
        .flat_map(|i| (i + 1..germs.len()).map(move |j| (i, j)))
        .collect();
    let verdicts = parallel_map(&index, |&(i, j)| decide_cards(&cards[i], &cards[j], opts));
    let mut uf = UnionFind::<usize>::new(germs.len());
    let mut pairs = Vec::with_capacity(index.len());
    for (&(i, j), v) in index.iter().zip(verdicts) {
        let v = v?;
        if v.kind != VerdictKind::NotEquivalent {
            uf.union(i, j);
        }
        pairs.push(SweepPair {
            i,
            j,
            kind: v.kind,
            route: v.route,
        });
    }
    let labels = uf.into_labeling();
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, r) in labels.iter().enumerate() {
        by_root.entry(*r).or_default().push(k);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    classes.sort();
    Ok(SweepReport {
        parameter: parameter.to_string(),
        values: values.to_vec(),
        germs,
        pairs,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::int;

    const F: &str = "1/3*x^3 - t^2*x*y^10 + y^12";

    #[test]
    fn f_family_separates() {
        let r = sweep(F, "t", &[int(1), int(2), int(3)], &BTreeMap::new(), &DecideOptions::default()).unwrap();
        assert_eq!(r.pairs.len(), 3);
        assert!(r.pairs.iter().all(|p| p.kind == VerdictKind::NotEquivalent));
        assert_eq!(r.classes, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn single_value() {
        let r = sweep(F, "t", &[int(5)], &BTreeMap::new(), &DecideOptions::default()).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.classes, vec![vec![0]]);
    }

    #[test]
    fn repeated_value_is_one_class() {
        let r = sweep(F, "t", &[int(2), int(2)], &BTreeMap::new(), &DecideOptions::default()).unwrap();
        assert_eq!(r.classes, vec![vec![0, 1]]);
    }
}
