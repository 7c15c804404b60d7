//! Verdicts: `NotEquivalent` once every admissible matching is refuted.

use num_traits::ToPrimitive;

use super::matching::{canyon_matchings, permutations, GroupData};
use super::refined::{refined_check, RefinedOutcome, Refutation};
use super::scale::{solve_scale_constraints, ConstraintSource, ScaleConstraint, ScaleSolution};
use crate::error::{Error, Result};
use crate::invariants::{identity_card_with, CardOptions, IdentityCard};
use crate::numerics::{Coeff, ExtRat};
use crate::puiseux::BivarPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct DecideOptions {
    pub card: CardOptions,
    pub max_matchings: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            card: CardOptions::default(),
            max_matchings: 10_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    DiscreteInvariants,
    ScaleConstraints,
    RefinedCheck,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::DiscreteInvariants => "discrete_invariants",
            Route::ScaleConstraints => "scale_constraints",
            Route::RefinedCheck => "refined_check",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    NotEquivalent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatchingOutcome {
    /// Constraint `failing` contradicts the others.
    Unsatisfiable { failing: usize },
    /// Every candidate scale fails the refined check.
    Refuted { candidates: Vec<(Coeff, Refutation)> },
    /// Candidates that pass every available check.
    Survives { candidates: Vec<Coeff> },
    Undecided { reason: String },
}

impl MatchingOutcome {
    pub fn route(&self) -> Option<Route> {
        match self {
            MatchingOutcome::Unsatisfiable { .. } => Some(Route::ScaleConstraints),
            MatchingOutcome::Refuted { .. } => Some(Route::RefinedCheck),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchingCheck {
    /// `(f canyon, g canyon)`.
    pub canyons: Vec<(usize, usize)>,
    pub constraints: Vec<ScaleConstraint>,
    pub outcome: MatchingOutcome,
}

/// All canyon matchings between line group `line_f` of `f` and `line_g`
/// of `g` (indices into `IdentityCard::lines`).
#[derive(Clone, Debug, PartialEq)]
pub struct LinePairCheck {
    pub line_f: usize,
    pub line_g: usize,
    pub matchings: Vec<MatchingCheck>,
}

impl LinePairCheck {
    pub fn refuted(&self) -> bool {
        self.matchings.iter().all(|m| m.outcome.route().is_some())
    }

    pub fn route(&self) -> Option<Route> {
        if !self.refuted() {
            return None;
        }
        Some(
            self.matchings
                .iter()
                .filter_map(|m| m.outcome.route())
                .max()
                .unwrap_or(Route::DiscreteInvariants),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Set when no line bijection exists.
    pub discrete_reason: Option<String>,
    /// Each bijection as `(f line group, g line group)` pairs.
    pub line_bijections: Vec<Vec<(usize, usize)>>,
    /// The line pair refuting each bijection, if any.
    pub killers: Vec<Option<(usize, usize)>>,
    pub pairs: Vec<LinePairCheck>,
}

impl Certificate {
    pub fn pair(&self, line_f: usize, line_g: usize) -> Option<&LinePairCheck> {
        self.pairs.iter().find(|p| p.line_f == line_f && p.line_g == line_g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub route: Option<Route>,
    /// Number of global matchings considered.
    pub matchings: usize,
    pub certificate: Certificate,
}

/// Scale constraints of one canyon matching.
pub fn matching_constraints(
    f: &IdentityCard,
    fd: &GroupData,
    g: &IdentityCard,
    gd: &GroupData,
    m: &[(usize, usize)],
) -> Result<Vec<ScaleConstraint>> {
    let image = |i: usize| m.iter().find(|p| p.0 == i).map(|p| p.1);
    let mut out = Vec::new();
    for &(i, ip) in m {
        let (h, a) = f.first_level(i);
        let (_, b) = g.first_level(ip);
        out.push(ScaleConstraint {
            exponent: h,
            value: a.div(&b)?,
            source: ConstraintSource::FirstLevel { f: i, g: ip },
        });
    }
    for (x, &(i, ip)) in m.iter().enumerate() {
        for &(j, jp) in &m[x + 1..] {
            let (Some(lf), Some(lg)) = (fd.second.get(&(i, j)), gd.second.get(&(ip, jp))) else {
                continue;
            };
            if !lf.applicable || !lg.applicable {
                continue;
            }
            let ExtRat::Fin(big_h) = &lf.big_h else { continue };
            out.push(ScaleConstraint {
                exponent: big_h - &lf.h,
                value: lf.diff.div(&lg.diff)?,
                source: ConstraintSource::SecondLevel {
                    f: (i, j),
                    g: (ip, jp),
                },
            });
        }
    }
    let mut triples: Vec<_> = fd.third.keys().copied().collect();
    triples.sort_unstable();
    for t in triples {
        let tf = &fd.third[&t];
        let (Some(a), Some(b), Some(c)) = (image(t.0), image(t.1), image(t.2)) else {
            continue;
        };
        let Some(tg) = gd.third.get(&(a, b, c)) else { continue };
        if !tf.applicable || !tg.applicable {
            continue;
        }
        let ExtRat::Fin(hp) = &tf.big_h_prime else { continue };
        out.push(ScaleConstraint {
            exponent: hp - &tf.big_h,
            value: tf.diff.div(&tg.diff)?,
            source: ConstraintSource::ThirdLevel { f: t, g: (a, b, c) },
        });
    }
    Ok(out)
}

fn check_matching(
    f: &IdentityCard,
    fd: &GroupData,
    g: &IdentityCard,
    gd: &GroupData,
    m: Vec<(usize, usize)>,
) -> MatchingCheck {
    let constraints = match matching_constraints(f, fd, g, gd, &m) {
        Ok(c) => c,
        Err(e) => {
            return MatchingCheck {
                canyons: m,
                constraints: Vec::new(),
                outcome: MatchingOutcome::Undecided { reason: e.to_string() },
            }
        }
    };
    let outcome = match solve_scale_constraints(&constraints) {
        Err(e) => MatchingOutcome::Undecided { reason: e.to_string() },
        Ok(ScaleSolution::Unsatisfiable { failing, .. }) => MatchingOutcome::Unsatisfiable { failing },
        Ok(ScaleSolution::Candidates { roots, .. }) => {
            let mut refuted = Vec::new();
            let mut surviving = Vec::new();
            let mut undecided = None;
            for c in roots {
                match refined_check(f, g, &m, &c) {
                    Ok(RefinedOutcome::Refuted(r)) => refuted.push((c, r)),
                    Ok(RefinedOutcome::Consistent) => surviving.push(c),
                    Err(e) => {
                        undecided.get_or_insert_with(|| e.to_string());
                        surviving.push(c);
                    }
                }
            }
            if surviving.is_empty() {
                MatchingOutcome::Refuted { candidates: refuted }
            } else if let Some(reason) = undecided {
                MatchingOutcome::Undecided { reason }
            } else {
                MatchingOutcome::Survives { candidates: surviving }
            }
        }
    };
    MatchingCheck {
        canyons: m,
        constraints,
        outcome,
    }
}

pub fn decide(f: &BivarPoly, g: &BivarPoly) -> Result<Verdict> {
    decide_with(f, g, &DecideOptions::default())
}

pub fn decide_with(f: &BivarPoly, g: &BivarPoly, opts: &DecideOptions) -> Result<Verdict> {
    let fc = identity_card_with(f, &opts.card)?;
    let gc = identity_card_with(g, &opts.card)?;
    decide_cards(&fc, &gc, opts)
}

pub fn decide_cards(f: &IdentityCard, g: &IdentityCard, opts: &DecideOptions) -> Result<Verdict> {
    let n = f.lines.len();
    if n != g.lines.len() {
        let reason = format!("{} card lines against {}", n, g.lines.len());
        return Ok(Verdict {
            kind: VerdictKind::NotEquivalent,
            route: Some(Route::DiscreteInvariants),
            matchings: 0,
            certificate: Certificate {
                discrete_reason: Some(reason),
                line_bijections: Vec::new(),
                killers: Vec::new(),
                pairs: Vec::new(),
            },
        });
    }
    let fds = (0..n).map(|l| GroupData::new(f, l)).collect::<Result<Vec<_>>>()?;
    let gds = (0..n).map(|l| GroupData::new(g, l)).collect::<Result<Vec<_>>>()?;
    let perms = permutations(n, opts.max_matchings)?;
    let mut pairs: Vec<LinePairCheck> = Vec::new();
    for lf in 0..n {
        for lg in 0..n {
            let ms = canyon_matchings(f, &fds[lf], g, &gds[lg], opts.max_matchings)?;
            let matchings = ms
                .into_iter()
                .map(|m| check_matching(f, &fds[lf], g, &gds[lg], m))
                .collect();
            pairs.push(LinePairCheck {
                line_f: lf,
                line_g: lg,
                matchings,
            });
        }
    }
    let pair = |lf: usize, lg: usize| &pairs[lf * n + lg];
    let mut total: usize = 0;
    let mut killers = Vec::new();
    let mut bijections = Vec::new();
    let mut route = Some(Route::DiscreteInvariants);
    for p in &perms {
        let count = (0..n).try_fold(1usize, |acc, l| acc.checked_mul(pair(l, p[l]).matchings.len()));
        total = count.and_then(|c| total.checked_add(c)).ok_or(Error::CombinatorialBlowup {
            count: usize::MAX,
            cap: opts.max_matchings,
        })?;
        if total > opts.max_matchings {
            return Err(Error::CombinatorialBlowup {
                count: total,
                cap: opts.max_matchings,
            });
        }
        let killer = (0..n)
            .filter_map(|l| pair(l, p[l]).route().map(|r| (r, l)))
            .min();
        match killer {
            Some((r, l)) => {
                killers.push(Some((l, p[l])));
                route = route.max(Some(r));
            }
            None => {
                killers.push(None);
                route = None;
            }
        }
        bijections.push((0..n).map(|l| (l, p[l])).collect());
    }
    let refuted = killers.iter().all(Option::is_some);
    Ok(Verdict {
        kind: if refuted {
            VerdictKind::NotEquivalent
        } else {
            VerdictKind::Inconclusive
        },
        route: if refuted { route } else { None },
        matchings: total,
        certificate: Certificate {
            discrete_reason: None,
            line_bijections: bijections,
            killers,
            pairs,
        },
    })
}

/// Replays a `NotEquivalent` certificate: every line bijection must be
/// killed by a line pair all of whose matchings fail for every root of
/// their first constraint.
pub fn verify_certificate(f: &IdentityCard, g: &IdentityCard, cert: &Certificate) -> Result<bool> {
    let n = f.lines.len();
    if cert.discrete_reason.is_some() {
        return Ok(n != g.lines.len());
    }
    if n != g.lines.len() {
        return Ok(true);
    }
    let perms = permutations(n, usize::MAX)?;
    if perms.len() != cert.line_bijections.len() {
        return Ok(false);
    }
    for p in perms {
        let bij: Vec<(usize, usize)> = (0..n).map(|l| (l, p[l])).collect();
        let Some(k) = cert.line_bijections.iter().position(|b| *b == bij) else {
            return Ok(false);
        };
        let Some((lf, lg)) = cert.killers[k] else {
            return Ok(false);
        };
        if p[lf] != lg || !verify_pair(f, g, lf, lg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_pair(f: &IdentityCard, g: &IdentityCard, lf: usize, lg: usize) -> Result<bool> {
    let (fd, gd) = (GroupData::new(f, lf)?, GroupData::new(g, lg)?);
    for m in canyon_matchings(f, &fd, g, &gd, usize::MAX)? {
        let cs = matching_constraints(f, &fd, g, &gd, &m)?;
        let Some(first) = cs.first() else {
            return Ok(false);
        };
        let (p, w) = first.integer_form()?;
        let w = if p < 0 { w.recip()? } else { w };
        let p = p
            .unsigned_abs()
            .to_u32()
            .ok_or_else(|| Error::Precondition("exponent too large".into()))?;
        for c in w.nth_roots(p)? {
            let violated = cs.iter().any(|k| k.admits(&c) == Ok(false));
            if violated {
                continue;
            }
            match refined_check(f, g, &m, &c) {
                Ok(RefinedOutcome::Refuted(_)) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
