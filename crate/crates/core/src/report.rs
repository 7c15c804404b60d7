//! Canonical JSON documents for cards, verdicts, profiles and sweeps.
//!
//! Rationals are exact `"p/q"` strings, `"inf"` stands for an infinite
//! order, and coefficients are `{"re", "im", "rad"}` with the radius printed
//! in scientific notation. Field order is fixed by the structs below.

use serde::Serialize;

use crate::equivalence::{
    Certificate, ConstraintSource, LinePairCheck, MatchingCheck, MatchingOutcome, Refutation,
    ScaleConstraint, Verdict, VerdictKind,
};
use crate::invariants::{Development, IdentityCard, SecondLevel, ThirdLevel};
use crate::numerics::{Coeff, ExtRat, Rat};
use crate::puiseux::PuiseuxSeries;
use crate::singularity::GradientProfile;
use crate::sweep::SweepReport;

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn ext_str(r: &ExtRat) -> String {
    match r {
        ExtRat::Fin(r) => r.to_string(),
        ExtRat::Inf => "inf".into(),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CoeffJson {
    pub re: String,
    pub im: String,
    pub rad: String,
}

impl From<&Coeff> for CoeffJson {
    fn from(c: &Coeff) -> Self {
        let rad = if c.rad() == 0.0 {
            "0".to_string()
        } else {
            format!("{:e}", c.rad())
        };
        Self {
            re: c.mid().re.to_string(),
            im: c.mid().im.to_string(),
            rad,
        }
    }
}

#[derive(Serialize)]
pub struct TermJson {
    pub e: String,
    pub c: CoeffJson,
}

#[derive(Serialize)]
pub struct SeriesJson {
    pub text: String,
    pub terms: Vec<TermJson>,
    pub trunc: String,
}

impl From<&PuiseuxSeries> for SeriesJson {
    fn from(s: &PuiseuxSeries) -> Self {
        Self {
            text: s.to_string(),
            terms: s
                .terms()
                .map(|(e, c)| TermJson {
                    e: rat_str(e),
                    c: c.into(),
                })
                .collect(),
            trunc: ext_str(s.trunc()),
        }
    }
}

#[derive(Serialize)]
pub struct LineJson {
    pub slope: CoeffJson,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct SlopeJson {
    pub component: &'static str,
    pub k: u32,
    pub ord: String,
}

#[derive(Serialize)]
pub struct ProfileJson {
    pub lambda_inf: String,
    pub d: String,
    pub slopes: Vec<SlopeJson>,
    /// `(q, λ(q))` at every breakpoint and at both ends of the plot range.
    pub samples: Vec<(String, String)>,
}

impl From<&GradientProfile> for ProfileJson {
    fn from(p: &GradientProfile) -> Self {
        let one = Rat::from_integer(1.into());
        let end = &p.d + Rat::from_integer(2.into());
        let mut qs = vec![one.clone()];
        qs.extend(p.candidates().into_iter().filter(|q| *q > one && *q < end));
        qs.push(end);
        qs.sort();
        qs.dedup();
        Self {
            lambda_inf: rat_str(&p.lambda_inf),
            d: rat_str(&p.d),
            slopes: p
                .slopes
                .iter()
                .map(|(c, k, o)| SlopeJson {
                    component: if *c == 0 { "f_x" } else { "f_y" },
                    k: *k,
                    ord: rat_str(o),
                })
                .collect(),
            samples: qs.iter().map(|q| (rat_str(q), rat_str(&p.lambda(q)))).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct PolarJson {
    pub arc: SeriesJson,
    pub multiplicity: usize,
    pub h: String,
    pub a: CoeffJson,
    pub d: String,
    pub tangent: CoeffJson,
    pub line: Option<usize>,
    pub bar: Option<usize>,
    pub f_along: SeriesJson,
    pub profile: ProfileJson,
}

#[derive(Serialize)]
pub struct BarJson {
    pub id: usize,
    pub height: String,
    pub roots: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Serialize)]
pub struct TreeJson {
    pub roots: Vec<(SeriesJson, usize)>,
    pub bars: Vec<BarJson>,
}

#[derive(Serialize)]
pub struct CanyonJson {
    pub members: Vec<usize>,
    pub d: String,
    pub h: String,
    pub a: CoeffJson,
    pub line: Option<usize>,
    pub bar: Option<usize>,
    pub in_card: bool,
}

#[derive(Serialize)]
pub struct OmegaJson {
    pub k: Vec<String>,
    pub canyons: Vec<usize>,
}

#[derive(Serialize)]
pub struct ClusterJson {
    pub line: usize,
    pub d: String,
    pub bar: usize,
    pub h: String,
    pub canyons: Vec<usize>,
    pub contacts: Vec<Vec<Option<String>>>,
    pub k_sets: Vec<Vec<String>>,
    pub omega: Vec<OmegaJson>,
}

#[derive(Serialize)]
pub struct SecondJson {
    pub pair: (usize, usize),
    pub h: String,
    pub delta: String,
    #[serde(rename = "H")]
    pub big_h: String,
    pub a_i: CoeffJson,
    pub a_j: CoeffJson,
    pub diff: CoeffJson,
    pub applicable: bool,
}

impl From<&SecondLevel> for SecondJson {
    fn from(l: &SecondLevel) -> Self {
        Self {
            pair: l.pair,
            h: rat_str(&l.h),
            delta: rat_str(&l.delta),
            big_h: ext_str(&l.big_h),
            a_i: (&l.a_i).into(),
            a_j: (&l.a_j).into(),
            diff: (&l.diff).into(),
            applicable: l.applicable,
        }
    }
}

#[derive(Serialize)]
pub struct ThirdJson {
    pub triple: (usize, usize, usize),
    pub h: String,
    #[serde(rename = "H")]
    pub big_h: String,
    pub delta: String,
    pub delta_prime: String,
    #[serde(rename = "H_prime")]
    pub big_h_prime: String,
    pub a12: CoeffJson,
    pub a31: CoeffJson,
    pub diff: CoeffJson,
    pub applicable: bool,
}

impl From<&ThirdLevel> for ThirdJson {
    fn from(t: &ThirdLevel) -> Self {
        Self {
            triple: t.triple,
            h: rat_str(&t.h),
            big_h: rat_str(&t.big_h),
            delta: rat_str(&t.delta),
            delta_prime: rat_str(&t.delta_prime),
            big_h_prime: ext_str(&t.big_h_prime),
            a12: (&t.a12).into(),
            a31: (&t.a31).into(),
            diff: (&t.diff).into(),
            applicable: t.applicable,
        }
    }
}

#[derive(Serialize)]
pub struct LineGroupJson {
    pub line: usize,
    pub slope: CoeffJson,
    pub canyons: Vec<usize>,
}

#[derive(Serialize)]
pub struct CardJson {
    pub germ: String,
    pub regularized: String,
    pub shear: String,
    pub trunc: String,
    pub precision_bits: u32,
    pub zero_tol: String,
    pub tangent_cone: Vec<LineJson>,
    pub polars: Vec<PolarJson>,
    pub kuo_lu: TreeJson,
    pub canyons: Vec<CanyonJson>,
    pub clusters: Vec<ClusterJson>,
    pub lines: Vec<LineGroupJson>,
    pub second_level: Vec<SecondJson>,
    pub third_level: Vec<ThirdJson>,
}

impl From<&IdentityCard> for CardJson {
    fn from(c: &IdentityCard) -> Self {
        let strs = |v: &[Rat]| v.iter().map(rat_str).collect::<Vec<_>>();
        Self {
            germ: c.germ.render(),
            regularized: c.regular.poly.render(),
            shear: rat_str(&c.regular.shear),
            trunc: rat_str(&c.trunc),
            precision_bits: c.config.precision_bits,
            zero_tol: format!("{:e}", c.config.zero_tol),
            tangent_cone: c
                .cone
                .iter()
                .map(|(s, m)| LineJson {
                    slope: s.into(),
                    multiplicity: *m,
                })
                .collect(),
            polars: c
                .polars
                .iter()
                .map(|p| PolarJson {
                    arc: (&p.arc).into(),
                    multiplicity: p.multiplicity,
                    h: rat_str(&p.h),
                    a: (&p.a).into(),
                    d: rat_str(&p.d),
                    tangent: (&p.tangent).into(),
                    line: p.line,
                    bar: p.bar,
                    f_along: (&p.f_along).into(),
                    profile: (&p.profile).into(),
                })
                .collect(),
            kuo_lu: TreeJson {
                roots: c.tree.roots.iter().map(|(s, m)| (s.into(), *m)).collect(),
                bars: c
                    .tree
                    .bars
                    .iter()
                    .map(|b| BarJson {
                        id: b.id,
                        height: rat_str(&b.height),
                        roots: b.roots.clone(),
                        parent: b.parent,
                        children: b.children.clone(),
                    })
                    .collect(),
            },
            canyons: c
                .canyons
                .iter()
                .map(|k| CanyonJson {
                    members: k.members.clone(),
                    d: rat_str(&k.d),
                    h: rat_str(&k.h),
                    a: (&k.a).into(),
                    line: k.line,
                    bar: k.bar,
                    in_card: k.in_card(),
                })
                .collect(),
            clusters: c
                .clusters
                .iter()
                .map(|k| ClusterJson {
                    line: k.key.line,
                    d: rat_str(&k.key.d),
                    bar: k.key.bar,
                    h: rat_str(&k.key.h),
                    canyons: k.canyons.clone(),
                    contacts: k
                        .contacts
                        .iter()
                        .map(|row| row.iter().map(|x| x.as_ref().map(rat_str)).collect())
                        .collect(),
                    k_sets: k.k_sets.iter().map(|s| strs(s)).collect(),
                    omega: k
                        .omega
                        .iter()
                        .map(|(k, v)| OmegaJson {
                            k: strs(k),
                            canyons: v.clone(),
                        })
                        .collect(),
                })
                .collect(),
            lines: c
                .lines
                .iter()
                .map(|g| LineGroupJson {
                    line: g.line,
                    slope: (&g.slope).into(),
                    canyons: g.canyons.clone(),
                })
                .collect(),
            second_level: c.second.iter().map(Into::into).collect(),
            third_level: c.third.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct DevelopmentJson {
    pub c: CoeffJson,
    pub terms: Vec<(String, CoeffJson)>,
    pub cutoff: String,
    pub first_case: Option<u8>,
}

impl From<&Development> for DevelopmentJson {
    fn from(d: &Development) -> Self {
        Self {
            c: (&d.c).into(),
            terms: d.terms.iter().map(|(b, r)| (rat_str(b), r.into())).collect(),
            cutoff: rat_str(&d.cutoff),
            first_case: d.first_case,
        }
    }
}

#[derive(Serialize)]
pub struct RefutationJson {
    pub pair: (usize, usize),
    pub exponent: String,
    pub lhs: CoeffJson,
    pub rhs: CoeffJson,
    pub p_exponent: Option<String>,
    pub development: Option<DevelopmentJson>,
}

impl From<&Refutation> for RefutationJson {
    fn from(r: &Refutation) -> Self {
        Self {
            pair: r.pair,
            exponent: rat_str(&r.exponent),
            lhs: (&r.lhs).into(),
            rhs: (&r.rhs).into(),
            p_exponent: r.p_exponent.as_ref().map(rat_str),
            development: r.development.as_ref().map(Into::into),
        }
    }
}

#[derive(Serialize)]
pub struct ConstraintJson {
    pub level: u8,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub exponent: String,
    pub value: CoeffJson,
}

impl From<&ScaleConstraint> for ConstraintJson {
    fn from(k: &ScaleConstraint) -> Self {
        let (level, f, g) = match &k.source {
            ConstraintSource::FirstLevel { f, g } => (1, vec![*f], vec![*g]),
            ConstraintSource::SecondLevel { f, g } => (2, vec![f.0, f.1], vec![g.0, g.1]),
            ConstraintSource::ThirdLevel { f, g } => (3, vec![f.0, f.1, f.2], vec![g.0, g.1, g.2]),
        };
        Self {
            level,
            f,
            g,
            exponent: rat_str(&k.exponent),
            value: (&k.value).into(),
        }
    }
}

#[derive(Serialize)]
pub struct CandidateJson {
    pub c: CoeffJson,
    pub refutation: RefutationJson,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutcomeJson {
    Unsatisfiable { failing: usize },
    Refuted { candidates: Vec<CandidateJson> },
    Survives { candidates: Vec<CoeffJson> },
    Undecided { reason: String },
}

impl From<&MatchingOutcome> for OutcomeJson {
    fn from(o: &MatchingOutcome) -> Self {
        match o {
            MatchingOutcome::Unsatisfiable { failing } => OutcomeJson::Unsatisfiable { failing: *failing },
            MatchingOutcome::Refuted { candidates } => OutcomeJson::Refuted {
                candidates: candidates
                    .iter()
                    .map(|(c, r)| CandidateJson {
                        c: c.into(),
                        refutation: r.into(),
                    })
                    .collect(),
            },
            MatchingOutcome::Survives { candidates } => OutcomeJson::Survives {
                candidates: candidates.iter().map(Into::into).collect(),
            },
            MatchingOutcome::Undecided { reason } => OutcomeJson::Undecided { reason: reason.clone() },
        }
    }
}

#[derive(Serialize)]
pub struct MatchingJson {
    pub canyons: Vec<(usize, usize)>,
    pub constraints: Vec<ConstraintJson>,
    pub outcome: OutcomeJson,
}

impl From<&MatchingCheck> for MatchingJson {
    fn from(m: &MatchingCheck) -> Self {
        Self {
            canyons: m.canyons.clone(),
            constraints: m.constraints.iter().map(Into::into).collect(),
            outcome: (&m.outcome).into(),
        }
    }
}

#[derive(Serialize)]
pub struct LinePairJson {
    pub line_f: usize,
    pub line_g: usize,
    pub refuted: bool,
    pub matchings: Vec<MatchingJson>,
}

impl From<&LinePairCheck> for LinePairJson {
    fn from(p: &LinePairCheck) -> Self {
        Self {
            line_f: p.line_f,
            line_g: p.line_g,
            refuted: p.refuted(),
            matchings: p.matchings.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub discrete_reason: Option<String>,
    pub line_bijections: Vec<Vec<(usize, usize)>>,
    pub killers: Vec<Option<(usize, usize)>>,
    pub pairs: Vec<LinePairJson>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        Self {
            discrete_reason: c.discrete_reason.clone(),
            line_bijections: c.line_bijections.clone(),
            killers: c.killers.clone(),
            pairs: c.pairs.iter().map(Into::into).collect(),
        }
    }
}

pub fn verdict_str(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::NotEquivalent => "not_equivalent",
        VerdictKind::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub verdict: &'static str,
    pub route: Option<&'static str>,
    pub matchings: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl VerdictJson {
    pub fn new(v: &Verdict, with_certificate: bool) -> Self {
        Self {
            verdict: verdict_str(v.kind),
            route: v.route.map(|r| r.as_str()),
            matchings: v.matchings,
            certificate: with_certificate.then(|| (&v.certificate).into()),
        }
    }
}

#[derive(Serialize)]
pub struct SweepPairJson {
    pub i: usize,
    pub j: usize,
    pub verdict: &'static str,
    pub route: Option<&'static str>,
}

#[derive(Serialize)]
pub struct SweepJson {
    pub parameter: String,
    pub values: Vec<String>,
    pub germs: Vec<String>,
    pub pairs: Vec<SweepPairJson>,
    /// Values not separated from each other, as index classes.
    pub classes: Vec<Vec<usize>>,
}

impl From<&SweepReport> for SweepJson {
    fn from(s: &SweepReport) -> Self {
        Self {
            parameter: s.parameter.clone(),
            values: s.values.iter().map(rat_str).collect(),
            germs: s.germs.iter().map(|g| g.render()).collect(),
            pairs: s
                .pairs
                .iter()
                .map(|p| SweepPairJson {
                    i: p.i,
                    j: p.j,
                    verdict: verdict_str(p.kind),
                    route: p.route.map(|r| r.as_str()),
                })
                .collect(),
            classes: s.classes.clone(),
        }
    }
}

/// Serializes any report document, compact or indented.
pub fn to_json<T: Serialize>(doc: &T, pretty: bool) -> String {
    let out = if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    };
    out.expect("report documents serialize")
}

pub fn card_json(card: &IdentityCard, pretty: bool) -> String {
    to_json(&CardJson::from(card), pretty)
}

pub fn verdict_json(v: &Verdict, certificate: bool, pretty: bool) -> String {
    to_json(&VerdictJson::new(v, certificate), pretty)
}

/// λ(q) data for every polar of a card.
pub fn profiles_json(card: &IdentityCard, pretty: bool) -> String {
    #[derive(Serialize)]
    struct Entry {
        arc: String,
        in_card: bool,
        profile: ProfileJson,
    }
    let entries: Vec<Entry> = card
        .polars
        .iter()
        .map(|p| Entry {
            arc: p.arc.to_string(),
            in_card: p.is_tangential() && p.d > Rat::from_integer(1.into()),
            profile: (&p.profile).into(),
        })
        .collect();
    to_json(&entries, pretty)
}

/// `{"error": kind, "message": text}` for failures.
pub fn error_json(e: &crate::Error) -> String {
    let kind = match e {
        crate::Error::Parse { .. } => "parse",
        crate::Error::UnboundParameter(_) => "unbound_parameter",
        _ => "computation",
    };
    let mut doc = serde_json::Map::new();
    doc.insert("error".into(), kind.into());
    doc.insert("message".into(), e.to_string().into());
    if let crate::Error::Parse { offset, .. } = e {
        doc.insert("offset".into(), (*offset).into());
    }
    serde_json::Value::Object(doc).to_string()
}
