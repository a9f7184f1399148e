//! Group-diagram validation, rank-based verdicts, and the full analysis
//! report.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graded::{surjectivity_check, GradedError, Polynomial, RingMap};
use crate::groups::{is_poincare_pair, restriction_map, GroupError, GroupExpr, InclusionSpec};
use crate::mvkernel::{
    find_regular_sequence, kernel_slices, Freeness, HsopSearch, KernelError, KernelModule, ModuleSetup,
    RegularSequenceCertificate, RegularSequenceOutcome, SliceSummary, DEFAULT_SEED,
};
use crate::oracle::{self, OracleComparison};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_DEGREE: u32 = 40;

/// How a subgroup inclusion is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Factor-wise standard inclusion inferred from the catalog.
    Standard,
    /// The subgroup equals the group.
    Identity,
    /// User-supplied restriction map `H*(B sup) -> H*(B sub)`.
    Explicit(RingMap),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quotient {
    Sphere(u32),
    PoincareSphere,
}

impl Quotient {
    pub fn dim(self) -> u32 {
        match self {
            Quotient::Sphere(k) => k,
            Quotient::PoincareSphere => 3,
        }
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quotient::Sphere(k) => write!(f, "S^{k}"),
            Quotient::PoincareSphere => write!(f, "P3"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embeddings {
    pub h_in_k_minus: Embedding,
    pub h_in_k_plus: Embedding,
    pub k_minus_in_g: Embedding,
    pub k_plus_in_g: Embedding,
}

impl Default for Embeddings {
    fn default() -> Self {
        Embeddings {
            h_in_k_minus: Embedding::Standard,
            h_in_k_plus: Embedding::Standard,
            k_minus_in_g: Embedding::Standard,
            k_plus_in_g: Embedding::Standard,
        }
    }
}

/// `(G, H, K-, K+)` with the inclusions and the types of `K±/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDiagram {
    pub g: GroupExpr,
    pub h: GroupExpr,
    pub k_minus: GroupExpr,
    pub k_plus: GroupExpr,
    pub embeddings: Embeddings,
    pub quotient_minus: Quotient,
    pub quotient_plus: Quotient,
}

impl GroupDiagram {
    /// `(S3 x SO(n+1), I* x SO(n), I* x SO(n+1), S3 x SO(n))`, the join of the
    /// Poincaré sphere with `S^n`.
    pub fn poincare_join(n: u32) -> Self {
        let p = |s: String| s.parse::<GroupExpr>().expect("catalog expression");
        GroupDiagram {
            g: p(format!("S3 x SO({})", n + 1)),
            h: p(format!("I* x SO({n})")),
            k_minus: p(format!("I* x SO({})", n + 1)),
            k_plus: p(format!("S3 x SO({n})")),
            embeddings: Embeddings::default(),
            quotient_minus: Quotient::Sphere(n),
            quotient_plus: Quotient::PoincareSphere,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("embedding {which}: {source}")]
    Embedding { which: &'static str, source: GroupError },
    #[error("embedding {which}: explicit map has the wrong {side} ring")]
    ExplicitRing { which: &'static str, side: &'static str },
    #[error("embedding {which}: `id` requires equal groups, got {sub} and {sup}")]
    IdentityMismatch {
        which: &'static str,
        sub: String,
        sup: String,
    },
    #[error("rank {sub_name} = {sub} exceeds rank {sup_name} = {sup}")]
    RankOrder {
        sub_name: &'static str,
        sub: u32,
        sup_name: &'static str,
        sup: u32,
    },
    #[error("{which}: dim {k} - dim H = {actual}, but {quotient} has dimension {expected}")]
    QuotientDimension {
        which: &'static str,
        k: &'static str,
        quotient: Quotient,
        actual: i64,
        expected: u32,
    },
    #[error("{which} = P3 requires rank H = rank {k} - 1, got rank H = {h} and rank {k} = {kr}")]
    PoincareRank {
        which: &'static str,
        k: &'static str,
        h: u32,
        kr: u32,
    },
    #[error("{which} = P3 requires exactly one differing factor pair from the catalog {{(SU(2), I*), (SO(3), I)}}, got {detail}")]
    PoincarePair { which: &'static str, detail: String },
    #[error("{which} = {quotient} is incompatible with rank H = {h}, rank {k} = {kr}")]
    SphereRank {
        which: &'static str,
        quotient: Quotient,
        k: &'static str,
        h: u32,
        kr: u32,
    },
    #[error("the composites H ⊂ K- ⊂ G and H ⊂ K+ ⊂ G differ on `{generator}`: {via_minus} vs {via_plus}")]
    CompositesDiffer {
        generator: String,
        via_minus: String,
        via_plus: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "invalid group diagram:\n  {}", lines.join("\n  "))
    }
}

impl std::error::Error for ValidationErrors {}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Validation(#[from] ValidationErrors),
    #[error("rank H = {h} exceeds rank K+ = {k_plus} after normalization")]
    RankMonotonicity { h: u32, k_plus: u32 },
    #[error("rank K+ = {k_plus} is more than one below b = rank K- = {b}")]
    RankGap { k_plus: u32, b: u32 },
    #[error("kernel not available for equal-rank diagrams")]
    EqualRank,
    #[error("hsop element {index}: {source}")]
    Hsop { index: usize, source: GradedError },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub g: u32,
    pub h: u32,
    pub k_minus: u32,
    pub k_plus: u32,
}

/// A diagram whose invariants hold, with its resolved restriction maps.
#[derive(Clone, Debug)]
pub struct ValidatedDiagram {
    pub diagram: GroupDiagram,
    pub ranks: Ranks,
    /// Whether `K-` and `K+` trade places so that `rank K+ ≤ rank K-`.
    pub swapped: bool,
    pub h_in_k_minus: RingMap,
    pub h_in_k_plus: RingMap,
    pub k_minus_in_g: RingMap,
    pub k_plus_in_g: RingMap,
}

impl ValidatedDiagram {
    /// `rank K-` after normalization.
    pub fn b(&self) -> u32 {
        self.ranks.k_minus.max(self.ranks.k_plus)
    }

    /// `rank K+` after normalization.
    pub fn normalized_k_plus_rank(&self) -> u32 {
        self.ranks.k_minus.min(self.ranks.k_plus)
    }

    /// Rings and maps of the kernel description, in input orientation.
    pub fn module_setup(&self) -> Result<ModuleSetup, KernelError> {
        ModuleSetup::new(
            self.h_in_k_minus.clone(),
            self.h_in_k_plus.clone(),
            self.k_minus_in_g.clone(),
            self.k_plus_in_g.clone(),
        )
    }
}

fn resolve(
    which: &'static str,
    emb: &Embedding,
    sub: &GroupExpr,
    sup: &GroupExpr,
) -> Result<RingMap, ValidationError> {
    match emb {
        Embedding::Standard => InclusionSpec::standard(sub, sup)
            .and_then(|inc| restriction_map(sub, sup, &inc))
            .map_err(|source| ValidationError::Embedding { which, source }),
        Embedding::Identity => {
            if sub != sup {
                return Err(ValidationError::IdentityMismatch {
                    which,
                    sub: sub.to_string(),
                    sup: sup.to_string(),
                });
            }
            Ok(RingMap::identity(&sup.invariant_ring()))
        }
        Embedding::Explicit(map) => {
            if *map.source() != sup.invariant_ring() {
                return Err(ValidationError::ExplicitRing { which, side: "source" });
            }
            if *map.target() != sub.invariant_ring() {
                return Err(ValidationError::ExplicitRing { which, side: "target" });
            }
            Ok(map.clone())
        }
    }
}

fn check_quotient(
    which: &'static str,
    k_name: &'static str,
    quotient: Quotient,
    k: &GroupExpr,
    h: &GroupExpr,
    errors: &mut Vec<ValidationError>,
) {
    let actual = i64::from(k.dim()) - i64::from(h.dim());
    if actual != i64::from(quotient.dim()) {
        errors.push(ValidationError::QuotientDimension {
            which,
            k: k_name,
            quotient,
            actual,
            expected: quotient.dim(),
        });
    }
    let (hr, kr) = (h.rank(), k.rank());
    match quotient {
        Quotient::PoincareSphere => {
            if hr + 1 != kr {
                errors.push(ValidationError::PoincareRank {
                    which,
                    k: k_name,
                    h: hr,
                    kr,
                });
            }
            let differing: Vec<(usize, String, String)> = k
                .factors
                .iter()
                .zip(&h.factors)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(i, (a, b))| (i, a.to_string(), b.to_string()))
                .collect();
            let ok = k.factors.len() == h.factors.len()
                && differing.len() == 1
                && is_poincare_pair(&k.factors[differing[0].0], &h.factors[differing[0].0]);
            if !ok {
                let detail = if k.factors.len() != h.factors.len() {
                    "different factor counts".to_string()
                } else if differing.is_empty() {
                    "no differing factor".to_string()
                } else {
                    differing
                        .iter()
                        .map(|(_, a, b)| format!("({a}, {b})"))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                errors.push(ValidationError::PoincarePair { which, detail });
            }
        }
        Quotient::Sphere(s) => {
            // Even spheres have nonzero Euler characteristic, forcing equal
            // ranks; any sphere allows a drop of at most one.
            let ok = hr <= kr && kr - hr <= 1 && (s % 2 == 1 || kr == hr);
            if !ok {
                errors.push(ValidationError::SphereRank {
                    which,
                    quotient,
                    k: k_name,
                    h: hr,
                    kr,
                });
            }
        }
    }
}

pub fn validate(d: &GroupDiagram) -> Result<ValidatedDiagram, ValidationErrors> {
    let mut errors = Vec::new();
    let mut take = |r: Result<RingMap, ValidationError>| match r {
        Ok(m) => Some(m),
        Err(e) => {
            errors.push(e);
            None
        }
    };
    let hm = take(resolve("H_in_K-", &d.embeddings.h_in_k_minus, &d.h, &d.k_minus));
    let hp = take(resolve("H_in_K+", &d.embeddings.h_in_k_plus, &d.h, &d.k_plus));
    let mg = take(resolve("K-_in_G", &d.embeddings.k_minus_in_g, &d.k_minus, &d.g));
    let pg = take(resolve("K+_in_G", &d.embeddings.k_plus_in_g, &d.k_plus, &d.g));

    let ranks = Ranks {
        g: d.g.rank(),
        h: d.h.rank(),
        k_minus: d.k_minus.rank(),
        k_plus: d.k_plus.rank(),
    };
    for (sub_name, sub, sup_name, sup) in [
        ("H", ranks.h, "K-", ranks.k_minus),
        ("H", ranks.h, "K+", ranks.k_plus),
        ("K-", ranks.k_minus, "G", ranks.g),
        ("K+", ranks.k_plus, "G", ranks.g),
    ] {
        if sub > sup {
            errors.push(ValidationError::RankOrder {
                sub_name,
                sub,
                sup_name,
                sup,
            });
        }
    }
    check_quotient("K-/H", "K-", d.quotient_minus, &d.k_minus, &d.h, &mut errors);
    check_quotient("K+/H", "K+", d.quotient_plus, &d.k_plus, &d.h, &mut errors);

    if let (Some(hm), Some(hp), Some(mg), Some(pg)) = (&hm, &hp, &mg, &pg) {
        let via_minus = mg.then(hm);
        let via_plus = pg.then(hp);
        let ring = via_minus.target();
        for ((g, a), b) in via_minus
            .source()
            .generators()
            .iter()
            .zip(via_minus.images())
            .zip(via_plus.images())
        {
            if a != b {
                errors.push(ValidationError::CompositesDiffer {
                    generator: g.name.clone(),
                    via_minus: ring.format(a),
                    via_plus: ring.format(b),
                });
                break;
            }
        }
    }
    if !errors.is_empty() {
        return Err(ValidationErrors(errors));
    }
    Ok(ValidatedDiagram {
        diagram: d.clone(),
        ranks,
        swapped: ranks.k_plus > ranks.k_minus,
        h_in_k_minus: hm.expect("resolved"),
        h_in_k_plus: hp.expect("resolved"),
        k_minus_in_g: mg.expect("resolved"),
        k_plus_in_g: pg.expect("resolved"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// `rank H = rank K- = rank K+`.
    EqualRank,
    /// Rank drop with `rank K+ = rank K- = b`.
    RankDropEqualSingular,
    /// Rank drop with `rank K+ = b - 1 = rank H`.
    RankDropUnequalSingular,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::EqualRank => "equal-rank",
            Case::RankDropEqualSingular => "rank-drop, rank K+ = rank K-",
            Case::RankDropUnequalSingular => "rank-drop, rank K+ = rank K- - 1",
        }
    }
}

pub fn classify(v: &ValidatedDiagram) -> Result<Case, AnalysisError> {
    let h = v.ranks.h;
    let b = v.b();
    let k_plus = v.normalized_k_plus_rank();
    if h > k_plus {
        return Err(AnalysisError::RankMonotonicity { h, k_plus });
    }
    if h == b {
        Ok(Case::EqualRank)
    } else if k_plus == b {
        Ok(Case::RankDropEqualSingular)
    } else if k_plus + 1 == b {
        Ok(Case::RankDropUnequalSingular)
    } else {
        Err(AnalysisError::RankGap { k_plus, b })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Formality {
    pub formal: bool,
    pub krull_dimension: u32,
    pub max_isotropy_rank: u32,
    pub rank_g: u32,
}

impl fmt::Display for Formality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.formal {
            write!(
                f,
                "equivariantly formal: yes (max isotropy rank {} = rank G {})",
                self.max_isotropy_rank, self.rank_g
            )
        } else {
            write!(
                f,
                "equivariantly formal: no (max isotropy rank {} < rank G {})",
                self.max_isotropy_rank, self.rank_g
            )
        }
    }
}

/// Formal iff some isotropy group has full rank; the Krull dimension is the
/// maximal isotropy rank.
pub fn formality_and_dimension(v: &ValidatedDiagram) -> Formality {
    let max = v.ranks.h.max(v.ranks.k_minus).max(v.ranks.k_plus);
    Formality {
        formal: max == v.ranks.g,
        krull_dimension: max,
        max_isotropy_rank: max,
        rank_g: v.ranks.g,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub max_degree: u32,
    pub seed: u64,
    /// Overrides the regular-sequence search, as polynomials in `H*(BG)`.
    pub hsop: Option<Vec<String>>,
    /// Recompute slices with the brute-force oracle.
    pub oracle: bool,
    /// Stop after the rank-based verdicts.
    pub skip_kernel: bool,
}

impl AnalysisOptions {
    pub fn new(max_degree: u32) -> Self {
        AnalysisOptions {
            max_degree,
            seed: DEFAULT_SEED,
            hsop: None,
            oracle: false,
            skip_kernel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSummary {
    pub g: String,
    pub h: String,
    pub k_minus: String,
    pub k_plus: String,
    pub quotient_minus: String,
    pub quotient_plus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub swapped: bool,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareCheck {
    pub quotient: String,
    pub pair: String,
    pub rank_drop: bool,
    pub surjective: bool,
    pub first_failure: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub degree: u32,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub degree: u32,
    pub element: String,
    pub annihilator: String,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyReport {
    pub degree: u32,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub verdict: String,
    pub up_to_degree: u32,
    pub basis_degrees: Vec<u32>,
    pub basis: Vec<String>,
    pub witness: Option<WitnessReport>,
    pub syzygy: Option<SyzygyReport>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub truncated: Vec<u64>,
    pub closed_form: Option<String>,
    pub numerator: Option<Vec<(u32, i64)>>,
    pub denominator: Option<Vec<u32>>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub splitting: Vec<SliceSummary>,
    pub all_surjective: bool,
    pub split_dimensions_hold: bool,
    pub slice_dimensions: Vec<usize>,
    pub generators: Vec<ElementReport>,
    pub freeness: FreenessReport,
    pub hilbert: HilbertReport,
    /// `agree`, `disagree`, or `unconfirmed` (freeness inconclusive).
    pub freeness_vs_formality: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceAttempt {
    pub sequence: Vec<String>,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    /// `verified`, `failed`, `asserted`, or `not-computed`.
    pub status: String,
    pub krull_dimension: u32,
    pub length: usize,
    pub sequence: Vec<String>,
    pub degrees: Vec<u32>,
    pub verified_up_to: Option<i64>,
    pub seed: Option<u64>,
    pub attempts: Vec<SequenceAttempt>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub max_degree: u32,
    pub seed: u64,
    pub diagram: DiagramSummary,
    pub ranks: Ranks,
    pub normalization: Normalization,
    pub case: Case,
    pub formality: Formality,
    pub krull_dimension: u32,
    pub poincare_checks: Vec<PoincareCheck>,
    pub kernel: Option<KernelReport>,
    pub kernel_note: Option<String>,
    pub cohen_macaulay: CmReport,
    pub oracle: Option<OracleComparison>,
    pub inconsistencies: Vec<String>,
}

impl AnalysisReport {
    pub fn consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

fn summary(d: &GroupDiagram) -> DiagramSummary {
    DiagramSummary {
        g: d.g.to_string(),
        h: d.h.to_string(),
        k_minus: d.k_minus.to_string(),
        k_plus: d.k_plus.to_string(),
        quotient_minus: d.quotient_minus.to_string(),
        quotient_plus: d.quotient_plus.to_string(),
    }
}

fn poincare_checks(v: &ValidatedDiagram, max_degree: u32) -> Vec<PoincareCheck> {
    let d = &v.diagram;
    [
        ("K-/H", d.quotient_minus, &d.k_minus, &v.h_in_k_minus),
        ("K+/H", d.quotient_plus, &d.k_plus, &v.h_in_k_plus),
    ]
    .into_iter()
    .filter(|(_, q, _, _)| *q == Quotient::PoincareSphere)
    .map(|(name, _, k, map)| {
        let (ka, ha) = k
            .factors
            .iter()
            .zip(&d.h.factors)
            .find(|(a, b)| a != b)
            .expect("validated P3 quotient has a differing factor");
        let surj = surjectivity_check(map, max_degree);
        PoincareCheck {
            quotient: name.to_string(),
            pair: format!("({ka}, {ha})"),
            rank_drop: d.h.rank() + 1 == k.rank(),
            surjective: surj.surjective,
            first_failure: surj.first_failure(),
        }
    })
    .collect()
}

fn freeness_report(km: &KernelModule, f: &Freeness) -> FreenessReport {
    let s = km.setup();
    let mut r = FreenessReport {
        verdict: f.label().to_string(),
        up_to_degree: km.max_degree(),
        basis_degrees: Vec::new(),
        basis: Vec::new(),
        witness: None,
        syzygy: None,
        reason: None,
    };
    match f {
        Freeness::Free { basis, .. } => {
            r.basis_degrees = basis.iter().map(|g| g.degree).collect();
            r.basis = basis.iter().map(|g| s.format_element(&g.element)).collect();
        }
        Freeness::NotFree { witness, syzygy } => {
            r.witness = witness.as_ref().map(|w| WitnessReport {
                degree: w.degree,
                element: s.format_element(&w.element),
                annihilator: s.base.format(&w.annihilator),
                verified: w.verify(s),
            });
            let terms: Vec<String> = syzygy
                .coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("({})*g{}", s.base.format(c), i + 1))
                .collect();
            r.syzygy = Some(SyzygyReport {
                degree: syzygy.degree,
                relation: format!("{} = 0", terms.join(" + ")),
            });
        }
        Freeness::Inconclusive { reason } => r.reason = Some(reason.clone()),
    }
    r
}

fn outcome_text(cert: &RegularSequenceCertificate, km: &KernelModule) -> String {
    match &cert.outcome {
        RegularSequenceOutcome::Verified { length, horizon } => {
            format!("regular sequence of length {length} verified up to degree {horizon}")
        }
        RegularSequenceOutcome::Failed { index, degree, element } => format!(
            "element {} kills {} in degree {degree} modulo the previous elements",
            index + 1,
            km.setup().format_element(element)
        ),
    }
}

fn cm_from_attempts(
    km: &KernelModule,
    krull: u32,
    attempts: &[(Vec<Polynomial>, RegularSequenceCertificate)],
    seed: Option<u64>,
) -> CmReport {
    let base = &km.setup().base;
    let fmt_seq = |s: &[Polynomial]| s.iter().map(|p| base.format(p)).collect::<Vec<_>>();
    let accepted = attempts.iter().find(|(_, c)| c.verified());
    let (status, chosen) = match accepted {
        Some(a) => ("verified", Some(a)),
        None => ("failed", attempts.last()),
    };
    let verified_up_to = accepted.and_then(|(_, c)| match c.outcome {
        RegularSequenceOutcome::Verified { horizon, .. } => Some(horizon),
        RegularSequenceOutcome::Failed { .. } => None,
    });
    CmReport {
        status: status.to_string(),
        krull_dimension: krull,
        length: chosen.map_or(0, |(s, _)| s.len()),
        sequence: chosen.map(|(s, _)| fmt_seq(s)).unwrap_or_default(),
        degrees: chosen.map(|(_, c)| c.degrees.clone()).unwrap_or_default(),
        verified_up_to,
        seed,
        attempts: attempts
            .iter()
            .map(|(s, c)| SequenceAttempt {
                sequence: fmt_seq(s),
                outcome: outcome_text(c, km),
            })
            .collect(),
        note: None,
    }
}

pub fn hsop_polynomials(km: &KernelModule, hsop: &[String]) -> Result<Vec<Polynomial>, AnalysisError> {
    hsop.iter()
        .enumerate()
        .map(|(index, s)| {
            km.setup()
                .base
                .parse(s)
                .map_err(|source| AnalysisError::Hsop { index, source })
        })
        .collect()
}

/// Validated diagram plus the kernel module, for callers that only need the
/// slices.
pub fn kernel_module(v: &ValidatedDiagram, max_degree: u32) -> Result<KernelModule, AnalysisError> {
    if classify(v)? == Case::EqualRank {
        return Err(AnalysisError::EqualRank);
    }
    Ok(kernel_slices(v.module_setup()?, max_degree)?)
}

pub fn analyze(d: &GroupDiagram, opts: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    if opts.max_degree % 2 == 1 {
        return Err(KernelError::OddTruncation(opts.max_degree).into());
    }
    let v = validate(d)?;
    let case = classify(&v)?;
    let formality = formality_and_dimension(&v);
    let krull = formality.krull_dimension;
    let mut inconsistencies = Vec::new();

    let poincare = poincare_checks(&v, opts.max_degree);
    for p in &poincare {
        if !p.rank_drop || !p.surjective {
            inconsistencies.push(format!(
                "{}: restriction for the pair {} is not a surjective rank-one drop (first failing degree {:?})",
                p.quotient, p.pair, p.first_failure
            ));
        }
    }

    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        max_degree: opts.max_degree,
        seed: opts.seed,
        diagram: summary(d),
        ranks: v.ranks,
        normalization: Normalization {
            swapped: v.swapped,
            b: v.b(),
        },
        case,
        formality,
        krull_dimension: krull,
        poincare_checks: poincare,
        kernel: None,
        kernel_note: None,
        cohen_macaulay: CmReport {
            status: "asserted".to_string(),
            krull_dimension: krull,
            length: 0,
            sequence: Vec::new(),
            degrees: Vec::new(),
            verified_up_to: None,
            seed: None,
            attempts: Vec::new(),
            note: Some("Cohen-Macaulay for equal-rank actions is asserted, not independently checked".to_string()),
        },
        oracle: None,
        inconsistencies: Vec::new(),
    };

    if case == Case::EqualRank {
        report.kernel_note = Some(
            "not applicable: all isotropy ranks agree, so the equivariant cohomology is not computed as a kernel"
                .to_string(),
        );
        report.inconsistencies = inconsistencies;
        return Ok(report);
    }

    if opts.skip_kernel {
        report.kernel_note = Some("not computed".to_string());
        report.cohen_macaulay.status = "not-computed".to_string();
        report.cohen_macaulay.note = None;
        report.inconsistencies = inconsistencies;
        return Ok(report);
    }

    let km = kernel_slices(v.module_setup()?, opts.max_degree)?;
    let splitting: Vec<SliceSummary> = km.slices().iter().map(SliceSummary::from).collect();
    let all_surjective = splitting.iter().all(|s| s.surjective);
    let split_dimensions_hold = splitting
        .iter()
        .all(|s| s.kernel + s.bottom == s.left + s.right);
    if !all_surjective {
        let first = splitting.iter().find(|s| !s.surjective).map(|s| s.degree);
        inconsistencies.push(format!(
            "difference map is not surjective in degree {first:?}; the sequence does not split (check the embeddings)"
        ));
    }

    let freeness = km.free_basis_search();
    let hs = km.hilbert_series(&freeness);
    let verdict = match (&freeness, formality.formal) {
        (Freeness::Free { .. }, true) | (Freeness::NotFree { .. }, false) => "agree",
        (Freeness::Inconclusive { .. }, _) => "unconfirmed",
        _ => "disagree",
    };
    if verdict == "disagree" {
        inconsistencies.push(format!(
            "freeness verdict `{}` contradicts the rank criterion (formal = {})",
            freeness.label(),
            formality.formal
        ));
    }
    if let Freeness::NotFree { witness: Some(w), .. } = &freeness {
        if !w.verify(km.setup()) {
            inconsistencies.push("torsion witness fails re-verification".to_string());
        }
    }
    if !hs.is_consistent() {
        inconsistencies.push("closed-form Hilbert series disagrees with slice dimensions".to_string());
    }
    let s = km.setup();
    report.kernel = Some(KernelReport {
        splitting,
        all_surjective,
        split_dimensions_hold,
        slice_dimensions: km.slices().iter().map(|s| s.dim()).collect(),
        generators: km
            .generators()
            .iter()
            .map(|g| ElementReport {
                degree: g.degree,
                element: s.format_element(&g.element),
            })
            .collect(),
        freeness: freeness_report(&km, &freeness),
        hilbert: HilbertReport {
            truncated: hs.truncated.clone(),
            closed_form: hs.closed_form.as_ref().map(ToString::to_string),
            numerator: hs.closed_form.as_ref().map(|c| c.numerator.clone()),
            denominator: hs.closed_form.as_ref().map(|c| c.denominator.clone()),
            consistent: hs.is_consistent(),
        },
        freeness_vs_formality: verdict.to_string(),
    });

    report.cohen_macaulay = match &opts.hsop {
        Some(hsop) => {
            let seq = hsop_polynomials(&km, hsop)?;
            let cert = km.regular_sequence_check(&seq)?;
            let mut cm = cm_from_attempts(&km, krull, &[(seq, cert)], None);
            if cm.length != krull as usize {
                cm.note = Some(format!(
                    "user sequence has length {}, Krull dimension is {krull}",
                    cm.length
                ));
            }
            cm
        }
        None => {
            let HsopSearch { attempts, seed } = find_regular_sequence(&km, krull as usize, opts.seed)?;
            let cm = cm_from_attempts(&km, krull, &attempts, Some(seed));
            if cm.status != "verified" {
                inconsistencies.push(format!(
                    "no regular sequence of length {krull} found up to degree {}",
                    opts.max_degree
                ));
            }
            cm
        }
    };

    if opts.oracle {
        let cmp = oracle::compare(&km, opts.max_degree);
        if !cmp.agree {
            inconsistencies.push("brute-force oracle disagrees with the kernel slices".to_string());
        }
        report.oracle = Some(cmp);
    }
    report.inconsistencies = inconsistencies;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(s: &str) -> GroupExpr {
        s.parse().unwrap()
    }

    #[test]
    fn validates_join_examples() {
        for n in 1..=4 {
            let v = validate(&GroupDiagram::poincare_join(n)).unwrap();
            assert_eq!(v.ranks.g, 1 + n.div_ceil(2));
        }
    }

    #[test]
    fn classify_join_examples() {
        let cases: Vec<Case> = (1..=4)
            .map(|n| classify(&validate(&GroupDiagram::poincare_join(n)).unwrap()).unwrap())
            .collect();
        assert_eq!(
            cases,
            vec![
                Case::RankDropEqualSingular,
                Case::RankDropUnequalSingular,
                Case::RankDropEqualSingular,
                Case::RankDropUnequalSingular
            ]
        );
        let v = validate(&GroupDiagram::poincare_join(2)).unwrap();
        assert!(v.swapped);
        assert_eq!((v.ranks.h, v.b(), v.normalized_k_plus_rank()), (1, 2, 1));
    }

    #[test]
    fn formality_examples() {
        let f2 = formality_and_dimension(&validate(&GroupDiagram::poincare_join(2)).unwrap());
        assert!(f2.formal);
        assert_eq!(f2.krull_dimension, 2);
        let f1 = formality_and_dimension(&validate(&GroupDiagram::poincare_join(1)).unwrap());
        assert!(!f1.formal);
        assert_eq!(f1.krull_dimension, 1);
        let f3 = formality_and_dimension(&validate(&GroupDiagram::poincare_join(3)).unwrap());
        assert_eq!(f3.to_string(), "equivariantly formal: no (max isotropy rank 2 < rank G 3)");
    }

    #[test]
    fn degenerate_all_equal() {
        let g = expr("SO(3)");
        let d = GroupDiagram {
            g: g.clone(),
            h: g.clone(),
            k_minus: g.clone(),
            k_plus: g.clone(),
            embeddings: Embeddings {
                h_in_k_minus: Embedding::Identity,
                h_in_k_plus: Embedding::Identity,
                k_minus_in_g: Embedding::Identity,
                k_plus_in_g: Embedding::Identity,
            },
            quotient_minus: Quotient::Sphere(0),
            quotient_plus: Quotient::Sphere(0),
        };
        let v = validate(&d).unwrap();
        assert_eq!(classify(&v).unwrap(), Case::EqualRank);
        let f = formality_and_dimension(&v);
        assert!(f.formal);
        assert_eq!(f.krull_dimension, 1);
        let rep = analyze(&d, &AnalysisOptions::new(8)).unwrap();
        assert!(rep.kernel.is_none());
        assert!(rep.kernel_note.is_some());
        assert_eq!(rep.cohen_macaulay.status, "asserted");
    }

    #[test]
    fn rejects_poincare_without_rank_drop() {
        let mut d = GroupDiagram::poincare_join(2);
        // K+/H = SU(2) x SO(2) / I* x SO(2) is P3; claiming it for K-/H fails.
        d.quotient_minus = Quotient::PoincareSphere;
        let errs = validate(&d).unwrap_err().0;
        assert!(errs.iter().any(|e| matches!(e, ValidationError::PoincareRank { .. })));
        assert!(errs.iter().any(|e| matches!(e, ValidationError::QuotientDimension { .. })));
    }

    #[test]
    fn rejects_poincare_dimension_mismatch() {
        let d = GroupDiagram {
            g: expr("SO(3) x SO(3)"),
            h: expr("SO(2) x SO(3)"),
            k_minus: expr("SO(3) x SO(3)"),
            k_plus: expr("SO(3) x SO(3)"),
            embeddings: Embeddings::default(),
            quotient_minus: Quotient::PoincareSphere,
            quotient_plus: Quotient::Sphere(2),
        };
        let errs = validate(&d).unwrap_err().0;
        assert!(errs.iter().any(|e| matches!(
            e,
            ValidationError::QuotientDimension { actual: 2, expected: 3, .. }
        )));
    }

    #[test]
    fn rejects_pair_outside_catalog() {
        let d = GroupDiagram {
            g: expr("SO(3) x SO(3)"),
            h: expr("I* x SO(2)"),
            k_minus: expr("SO(3) x SO(2)"),
            k_plus: expr("I* x SO(3)"),
            embeddings: Embeddings::default(),
            quotient_minus: Quotient::PoincareSphere,
            quotient_plus: Quotient::Sphere(2),
        };
        let errs = validate(&d).unwrap_err().0;
        assert!(errs.iter().any(|e| matches!(e, ValidationError::PoincarePair { .. })));
    }

    #[test]
    fn rejects_identity_between_different_groups() {
        let mut d = GroupDiagram::poincare_join(2);
        d.embeddings.h_in_k_plus = Embedding::Identity;
        let errs = validate(&d).unwrap_err().0;
        assert!(matches!(errs[0], ValidationError::IdentityMismatch { .. }));
    }

    #[test]
    fn rejects_noncommuting_explicit_embedding() {
        let mut d = GroupDiagram::poincare_join(2);
        let sup = d.k_plus.invariant_ring();
        let sub = d.h.invariant_ring();
        // u -> 0, e -> 2e is a valid ring map but breaks the square.
        let m = RingMap::new(sup, sub.clone(), vec![sub.zero(), sub.parse("2*e").unwrap()]).unwrap();
        d.embeddings.h_in_k_plus = Embedding::Explicit(m);
        let errs = validate(&d).unwrap_err().0;
        assert!(errs.iter().any(|e| matches!(e, ValidationError::CompositesDiffer { .. })));
    }

    #[test]
    fn analyze_even_example() {
        let rep = analyze(&GroupDiagram::poincare_join(2), &AnalysisOptions::new(40)).unwrap();
        let k = rep.kernel.as_ref().unwrap();
        assert_eq!(k.freeness.verdict, "free");
        assert_eq!(k.freeness.basis_degrees, vec![0, 6]);
        assert_eq!(k.freeness.basis, vec!["(1, 1)", "(0, u*e)"]);
        assert_eq!(k.hilbert.closed_form.as_deref(), Some("(1 + t^6) / (1-t^4)^2"));
        assert_eq!(rep.cohen_macaulay.status, "verified");
        assert_eq!(rep.cohen_macaulay.length, 2);
        assert!(rep.consistent(), "{:?}", rep.inconsistencies);
    }

    #[test]
    fn analyze_odd_example() {
        let rep = analyze(&GroupDiagram::poincare_join(1), &AnalysisOptions::new(40)).unwrap();
        let k = rep.kernel.as_ref().unwrap();
        assert_eq!(k.freeness.verdict, "not-free");
        let w = k.freeness.witness.as_ref().unwrap();
        assert_eq!((w.element.as_str(), w.annihilator.as_str()), ("(e, 0)", "u"));
        assert!(w.verified);
        assert_eq!(rep.krull_dimension, 1);
        assert_eq!(rep.cohen_macaulay.status, "verified");
        assert_eq!(rep.cohen_macaulay.seed, Some(DEFAULT_SEED));
        assert!(rep.consistent(), "{:?}", rep.inconsistencies);
    }

    #[test]
    fn hsop_override() {
        let mut opts = AnalysisOptions::new(24);
        opts.hsop = Some(vec!["p1".into(), "u".into()]);
        let rep = analyze(&GroupDiagram::poincare_join(2), &opts).unwrap();
        assert_eq!(rep.cohen_macaulay.status, "verified");
        assert_eq!(rep.cohen_macaulay.verified_up_to, Some(16));
        opts.hsop = Some(vec!["q".into()]);
        assert!(matches!(
            analyze(&GroupDiagram::poincare_join(2), &opts),
            Err(AnalysisError::Hsop { index: 0, .. })
        ));
    }
}
