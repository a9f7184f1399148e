//! Catalog of compact Lie group atoms, products of atoms, and the
//! restriction maps between their classifying-space cohomology rings.
//!
//! `H*(BG; Q)` of each atom is the polynomial ring on the classical
//! characteristic-class generators (Chern, Pontryagin, Euler, symplectic
//! Pontryagin classes). Finite atoms have only scalars.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graded::{GradedError, GradedRing, Generator, Polynomial, RingMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown group atom `{0}`")]
    UnknownAtom(String),
    #[error("invalid size {size} for {family}")]
    InvalidSize { family: &'static str, size: u32 },
    #[error("invalid finite group name `{0}`")]
    InvalidFiniteName(String),
    #[error("empty group expression")]
    Empty,
    #[error("inclusion has {sub} source factors but {sup} target factors")]
    FactorCount { sub: usize, sup: usize },
    #[error("factor {index}: {kind} inclusion of {sub} into {sup} is not available")]
    Inapplicable {
        index: usize,
        kind: InclusionKind,
        sub: String,
        sup: String,
    },
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AtomKind {
    SU(u32),
    SO(u32),
    Sp(u32),
    U(u32),
    Torus(u32),
    Finite(String),
}

impl AtomKind {
    fn family(&self) -> &'static str {
        match self {
            AtomKind::SU(_) => "SU",
            AtomKind::SO(_) => "SO",
            AtomKind::Sp(_) => "Sp",
            AtomKind::U(_) => "U",
            AtomKind::Torus(_) => "T",
            AtomKind::Finite(_) => "Finite",
        }
    }

    fn size(&self) -> Option<u32> {
        match *self {
            AtomKind::SU(n) | AtomKind::SO(n) | AtomKind::Sp(n) | AtomKind::U(n) | AtomKind::Torus(n) => {
                Some(n)
            }
            AtomKind::Finite(_) => None,
        }
    }
}

/// A single compact Lie group with its catalog data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupAtom {
    pub kind: AtomKind,
    pub rank: u32,
    pub dim: u32,
    pub generator_degrees: Vec<u32>,
}

impl GroupAtom {
    pub fn new(kind: AtomKind) -> Result<Self, GroupError> {
        if let Some(n) = kind.size() {
            if n == 0 {
                return Err(GroupError::InvalidSize {
                    family: kind.family(),
                    size: n,
                });
            }
        }
        let (rank, dim, generator_degrees) = match &kind {
            AtomKind::SU(n) => (n - 1, n * n - 1, (2..=*n).map(|i| 2 * i).collect()),
            AtomKind::SO(n) => {
                let m = n / 2;
                let degrees = if n % 2 == 1 {
                    (1..=m).map(|i| 4 * i).collect()
                } else {
                    let mut d: Vec<u32> = (1..m).map(|i| 4 * i).collect();
                    d.push(2 * m);
                    d
                };
                (m, n * (n - 1) / 2, degrees)
            }
            AtomKind::Sp(n) => (*n, n * (2 * n + 1), (1..=*n).map(|i| 4 * i).collect()),
            AtomKind::U(n) => (*n, n * n, (1..=*n).map(|i| 2 * i).collect()),
            AtomKind::Torus(k) => (*k, *k, vec![2; *k as usize]),
            AtomKind::Finite(name) => {
                let ok = !name.is_empty()
                    && name
                        .chars()
                        .all(|c| c.is_alphanumeric() || matches!(c, '*' | '_' | '-' | '.'));
                if !ok {
                    return Err(GroupError::InvalidFiniteName(name.clone()));
                }
                (0, 0, Vec::new())
            }
        };
        Ok(GroupAtom {
            kind,
            rank,
            dim,
            generator_degrees,
        })
    }

    pub fn su(n: u32) -> Result<Self, GroupError> {
        Self::new(AtomKind::SU(n))
    }

    pub fn so(n: u32) -> Result<Self, GroupError> {
        Self::new(AtomKind::SO(n))
    }

    pub fn finite(name: &str) -> Result<Self, GroupError> {
        Self::new(AtomKind::Finite(name.to_string()))
    }

    /// The binary icosahedral group.
    pub fn binary_icosahedral() -> Self {
        Self::finite("I*").expect("valid name")
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, AtomKind::Finite(_))
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self.kind {
            AtomKind::SU(2) => vec!["u".to_string()],
            AtomKind::SU(n) => (2..=n).map(|i| format!("c{i}")).collect(),
            AtomKind::U(n) => (1..=n).map(|i| format!("c{i}")).collect(),
            AtomKind::Sp(n) => (1..=n).map(|i| format!("q{i}")).collect(),
            AtomKind::Torus(k) => (1..=k).map(|i| format!("t{i}")).collect(),
            AtomKind::SO(n) => {
                let m = n / 2;
                if n % 2 == 1 {
                    (1..=m).map(|i| format!("p{i}")).collect()
                } else {
                    let mut v: Vec<String> = (1..m).map(|i| format!("p{i}")).collect();
                    v.push("e".to_string());
                    v
                }
            }
            AtomKind::Finite(_) => Vec::new(),
        }
    }

    pub fn invariant_ring(&self) -> GradedRing {
        GradedRing::new(
            self.generator_names()
                .into_iter()
                .zip(&self.generator_degrees)
                .map(|(n, &d)| Generator::new(n, d))
                .collect(),
        )
        .expect("catalog degrees are positive and even")
    }
}

impl fmt::Display for GroupAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AtomKind::SU(n) => write!(f, "SU({n})"),
            AtomKind::SO(n) => write!(f, "SO({n})"),
            AtomKind::Sp(n) => write!(f, "Sp({n})"),
            AtomKind::U(n) => write!(f, "U({n})"),
            AtomKind::Torus(k) => write!(f, "T({k})"),
            AtomKind::Finite(name) if name == "I*" || name == "I" => write!(f, "{name}"),
            AtomKind::Finite(name) => write!(f, "Finite({name})"),
        }
    }
}

impl FromStr for GroupAtom {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "S3" => return Self::su(2),
            "I*" | "I" => return Self::finite(&s),
            _ => {}
        }
        let unknown = || GroupError::UnknownAtom(s.clone());
        let (head, rest) = s.split_once('(').ok_or_else(unknown)?;
        let arg = rest.strip_suffix(')').ok_or_else(unknown)?;
        if head == "Finite" {
            return Self::finite(arg);
        }
        let n: u32 = arg.parse().map_err(|_| unknown())?;
        let kind = match head {
            "SU" => AtomKind::SU(n),
            "SO" => AtomKind::SO(n),
            "Sp" => AtomKind::Sp(n),
            "U" => AtomKind::U(n),
            "T" => AtomKind::Torus(n),
            _ => return Err(unknown()),
        };
        Self::new(kind)
    }
}

/// Product of atoms, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GroupExpr {
    pub factors: Vec<GroupAtom>,
}

impl GroupExpr {
    pub fn new(factors: Vec<GroupAtom>) -> Self {
        GroupExpr { factors }
    }

    pub fn trivial() -> Self {
        GroupExpr::default()
    }

    pub fn rank(&self) -> u32 {
        self.factors.iter().map(|a| a.rank).sum()
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().map(|a| a.dim).sum()
    }

    /// Generator names of the product ring; suffixed with `_<factor>` (1-based)
    /// when two factors would otherwise share a name.
    pub fn generator_names(&self) -> Vec<Vec<String>> {
        let per: Vec<Vec<String>> = self.factors.iter().map(GroupAtom::generator_names).collect();
        let mut all: Vec<&String> = per.iter().flatten().collect();
        let total = all.len();
        all.sort();
        all.dedup();
        if all.len() == total {
            return per;
        }
        per.into_iter()
            .enumerate()
            .map(|(i, names)| names.into_iter().map(|n| format!("{n}_{}", i + 1)).collect())
            .collect()
    }

    /// `H*(BG; Q)` as the tensor product of the factor rings.
    pub fn invariant_ring(&self) -> GradedRing {
        let gens = self
            .generator_names()
            .into_iter()
            .zip(&self.factors)
            .flat_map(|(names, atom)| {
                names
                    .into_iter()
                    .zip(atom.generator_degrees.clone())
                    .map(|(n, d)| Generator::new(n, d))
            })
            .collect();
        GradedRing::new(gens).expect("catalog generators are valid")
    }

    /// Offsets of each factor's generators in the product ring.
    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.factors
            .iter()
            .map(|a| {
                let o = acc;
                acc += a.generator_degrees.len();
                o
            })
            .collect()
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for GroupExpr {
    type Err = GroupError;

    /// `ATOM [x ATOM]*`, whitespace-insensitive; `1` is the trivial group.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(GroupError::Empty);
        }
        if compact == "1" {
            return Ok(GroupExpr::trivial());
        }
        // `x` separates factors only at parenthesis depth zero.
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                'x' if depth == 0 => {
                    parts.push(&compact[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&compact[start..]);
        parts
            .into_iter()
            .map(|p| {
                if p.is_empty() {
                    Err(GroupError::UnknownAtom(compact.clone()))
                } else {
                    p.parse()
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GroupExpr::new)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InclusionKind {
    Identity,
    /// Standard inclusion within one classical family, e.g. `SO(n) ⊂ SO(n+k)`.
    Chain,
    /// A finite factor included in an arbitrary atom.
    FiniteIntoAtom,
}

impl fmt::Display for InclusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InclusionKind::Identity => "identity",
            InclusionKind::Chain => "chain",
            InclusionKind::FiniteIntoAtom => "finite-into-atom",
        })
    }
}

/// Factor-wise description of a subgroup inclusion between products.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InclusionSpec {
    pub kinds: Vec<InclusionKind>,
}

fn kind_applicable(kind: InclusionKind, sub: &GroupAtom, sup: &GroupAtom) -> bool {
    match kind {
        InclusionKind::Identity => sub == sup,
        InclusionKind::FiniteIntoAtom => sub.is_finite(),
        InclusionKind::Chain => match (&sub.kind, &sup.kind) {
            (AtomKind::SU(a), AtomKind::SU(b))
            | (AtomKind::SO(a), AtomKind::SO(b))
            | (AtomKind::Sp(a), AtomKind::Sp(b))
            | (AtomKind::U(a), AtomKind::U(b))
            | (AtomKind::Torus(a), AtomKind::Torus(b)) => a <= b,
            _ => false,
        },
    }
}

impl InclusionSpec {
    /// Infers the standard inclusion: identical factors by identity, finite
    /// factors into anything, otherwise a chain within the family.
    pub fn standard(sub: &GroupExpr, sup: &GroupExpr) -> Result<Self, GroupError> {
        check_factor_count(sub, sup)?;
        let kinds = sub
            .factors
            .iter()
            .zip(&sup.factors)
            .enumerate()
            .map(|(index, (a, b))| {
                [InclusionKind::Identity, InclusionKind::FiniteIntoAtom, InclusionKind::Chain]
                    .into_iter()
                    .find(|&k| kind_applicable(k, a, b))
                    .ok_or_else(|| GroupError::Inapplicable {
                        index: index + 1,
                        kind: InclusionKind::Chain,
                        sub: a.to_string(),
                        sup: b.to_string(),
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(InclusionSpec { kinds })
    }

    pub fn identity(g: &GroupExpr) -> Self {
        InclusionSpec {
            kinds: vec![InclusionKind::Identity; g.factors.len()],
        }
    }

    pub fn validate(&self, sub: &GroupExpr, sup: &GroupExpr) -> Result<(), GroupError> {
        check_factor_count(sub, sup)?;
        if self.kinds.len() != sub.factors.len() {
            return Err(GroupError::FactorCount {
                sub: self.kinds.len(),
                sup: sup.factors.len(),
            });
        }
        for (index, ((&kind, a), b)) in self.kinds.iter().zip(&sub.factors).zip(&sup.factors).enumerate() {
            if !kind_applicable(kind, a, b) {
                return Err(GroupError::Inapplicable {
                    index: index + 1,
                    kind,
                    sub: a.to_string(),
                    sup: b.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn check_factor_count(sub: &GroupExpr, sup: &GroupExpr) -> Result<(), GroupError> {
    if sub.factors.len() != sup.factors.len() {
        return Err(GroupError::FactorCount {
            sub: sub.factors.len(),
            sup: sup.factors.len(),
        });
    }
    Ok(())
}

/// One-step restriction `H*(B fam(n)) -> H*(B fam(n-1))` for a classical
/// family, as images in the smaller atom's ring.
fn one_step(sup: &GroupAtom) -> (GroupAtom, Vec<Polynomial>) {
    let n = sup.kind.size().expect("classical atom");
    let kind = match sup.kind {
        AtomKind::SU(_) => AtomKind::SU(n - 1),
        AtomKind::SO(_) => AtomKind::SO(n - 1),
        AtomKind::Sp(_) => AtomKind::Sp(n - 1),
        AtomKind::U(_) => AtomKind::U(n - 1),
        AtomKind::Torus(_) => AtomKind::Torus(n - 1),
        AtomKind::Finite(_) => unreachable!("finite atoms have no chain"),
    };
    let sub = GroupAtom::new(kind).expect("size stays positive");
    let nv = sub.generator_degrees.len();
    let r = sup.generator_degrees.len();
    let images = match sup.kind {
        // SO(2m+1) -> SO(2m): p_i -> p_i (i < m), p_m -> e^2.
        AtomKind::SO(n) if n % 2 == 1 => (0..r)
            .map(|i| {
                if i + 1 < r {
                    Polynomial::var(nv, i)
                } else {
                    Polynomial::var(nv, nv - 1).pow(2)
                }
            })
            .collect(),
        // SO(2m+2) -> SO(2m+1): p_i -> p_i, e -> 0. Other families: the
        // top generator dies and the rest are fixed.
        _ => (0..r)
            .map(|i| {
                if i + 1 < r {
                    Polynomial::var(nv, i)
                } else {
                    Polynomial::zero(nv)
                }
            })
            .collect(),
    };
    (sub, images)
}

/// Images of the `sup` atom's generators in the `sub` atom's ring.
fn atom_restriction(sub: &GroupAtom, sup: &GroupAtom, kind: InclusionKind) -> Vec<Polynomial> {
    let nv = sub.generator_degrees.len();
    match kind {
        InclusionKind::Identity => (0..nv).map(|i| Polynomial::var(nv, i)).collect(),
        InclusionKind::FiniteIntoAtom => vec![Polynomial::zero(nv); sup.generator_degrees.len()],
        InclusionKind::Chain => {
            let mut current = sup.clone();
            let mut images: Vec<Polynomial> = (0..sup.generator_degrees.len())
                .map(|i| Polynomial::var(sup.generator_degrees.len(), i))
                .collect();
            let ring_of = |a: &GroupAtom| a.invariant_ring();
            while current != *sub {
                let (smaller, step) = one_step(&current);
                let map = RingMap::new(ring_of(&current), ring_of(&smaller), step)
                    .expect("catalog one-step maps preserve degree");
                images = images.iter().map(|p| map.apply(p)).collect();
                current = smaller;
            }
            images
        }
    }
}

/// Restriction `H*(B sup) -> H*(B sub)` induced by the inclusion `sub ⊂ sup`.
pub fn restriction_map(
    sub: &GroupExpr,
    sup: &GroupExpr,
    inc: &InclusionSpec,
) -> Result<RingMap, GroupError> {
    inc.validate(sub, sup)?;
    let target = sub.invariant_ring();
    let nv = target.nvars();
    let offsets = sub.offsets();
    let mut images = Vec::with_capacity(sup.invariant_ring().nvars());
    for (((a, b), &kind), &off) in sub.factors.iter().zip(&sup.factors).zip(&inc.kinds).zip(&offsets) {
        for local in atom_restriction(a, b, kind) {
            let global = Polynomial::from_terms(
                nv,
                local.terms().map(|(m, c)| {
                    let mut e = vec![0; nv];
                    e[off..off + m.exponents().len()].copy_from_slice(m.exponents());
                    (crate::graded::Monomial(e), c.clone())
                }),
            );
            images.push(global);
        }
    }
    Ok(RingMap::new(sup.invariant_ring(), target, images)?)
}

/// Transitive pairs `(K, H)` with `K/H` the Poincaré homology sphere that
/// the catalog knows about.
pub fn poincare_pairs() -> Vec<(GroupAtom, GroupAtom)> {
    vec![
        (GroupAtom::su(2).expect("valid"), GroupAtom::binary_icosahedral()),
        (GroupAtom::so(3).expect("valid"), GroupAtom::finite("I").expect("valid")),
    ]
}

pub fn is_poincare_pair(sup: &GroupAtom, sub: &GroupAtom) -> bool {
    poincare_pairs().iter().any(|(k, h)| k == sup && h == sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupExpr {
        s.parse().unwrap()
    }

    #[test]
    fn atom_examples() {
        let s3 = GroupAtom::su(2).unwrap();
        assert_eq!((s3.rank, s3.dim, s3.generator_degrees.clone()), (1, 3, vec![4]));
        let i = GroupAtom::binary_icosahedral();
        assert_eq!((i.rank, i.dim, i.generator_degrees.len()), (0, 0, 0));
        let so3 = GroupAtom::so(3).unwrap();
        assert_eq!((so3.rank, so3.dim, so3.generator_degrees.clone()), (1, 3, vec![4]));
    }

    #[test]
    fn classical_tables() {
        for n in 1..9u32 {
            let su = GroupAtom::su(n).unwrap();
            assert_eq!((su.rank, su.dim), (n - 1, n * n - 1));
            let so = GroupAtom::so(n).unwrap();
            assert_eq!((so.rank, so.dim), (n / 2, n * (n - 1) / 2));
            let sp = GroupAtom::new(AtomKind::Sp(n)).unwrap();
            assert_eq!((sp.rank, sp.dim), (n, n * (2 * n + 1)));
            let u = GroupAtom::new(AtomKind::U(n)).unwrap();
            assert_eq!((u.rank, u.dim), (n, n * n));
            let t = GroupAtom::new(AtomKind::Torus(n)).unwrap();
            assert_eq!(t.generator_degrees, vec![2; n as usize]);
            for a in [su, so, sp, u, t] {
                assert_eq!(a.generator_degrees.len() as u32, a.rank);
                assert_eq!(a.generator_names().len() as u32, a.rank);
            }
        }
        assert_eq!(GroupAtom::so(8).unwrap().generator_degrees, vec![4, 8, 12, 8]);
        assert_eq!(GroupAtom::so(7).unwrap().generator_degrees, vec![4, 8, 12]);
        assert_eq!(GroupAtom::so(2).unwrap().generator_names(), vec!["e"]);
    }

    #[test]
    fn invalid_atoms() {
        assert!(matches!("SO(0)".parse::<GroupAtom>(), Err(GroupError::InvalidSize { .. })));
        assert!(matches!("G2".parse::<GroupAtom>(), Err(GroupError::UnknownAtom(_))));
        assert!(matches!("SO(x)".parse::<GroupAtom>(), Err(GroupError::UnknownAtom(_))));
        assert!("Finite()".parse::<GroupAtom>().is_err());
        assert!(matches!("".parse::<GroupExpr>(), Err(GroupError::Empty)));
        assert!("SO(3) x".parse::<GroupExpr>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let e = g(" S3 x SO( 3 ) ");
        assert_eq!(e.to_string(), "SU(2) x SO(3)");
        assert_eq!(g("I* x Finite(Z2) x T(2) x Sp(1) x U(3)").to_string(), "I* x Finite(Z2) x T(2) x Sp(1) x U(3)");
        assert_eq!(g(&e.to_string()), e);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(g("I* x SO(5)").rank(), 2);
        assert_eq!(g("SU(2) x SO(4)").rank(), 3);
        assert_eq!(GroupExpr::trivial().rank(), 0);
        assert_eq!(g("1"), GroupExpr::trivial());
        assert_eq!(g("SU(2) x SO(4)").dim(), 9);
    }

    #[test]
    fn invariant_ring_examples() {
        let r = g("SU(2)").invariant_ring();
        assert_eq!(r.generators(), &[Generator::new("u", 4)]);
        assert_eq!(g("I*").invariant_ring().nvars(), 0);
        let r = g("SU(2) x SO(3)").invariant_ring();
        assert_eq!(r.generators(), &[Generator::new("u", 4), Generator::new("p1", 4)]);
        let r = g("SO(2) x SO(2)").invariant_ring();
        assert_eq!(r.generators(), &[Generator::new("e_1", 2), Generator::new("e_2", 2)]);
    }

    #[test]
    fn restriction_examples() {
        let so2 = g("SO(2)");
        let so3 = g("SO(3)");
        let m = restriction_map(&so2, &so3, &InclusionSpec::standard(&so2, &so3).unwrap()).unwrap();
        assert_eq!(m.target().format(&m.images()[0]), "e^2");

        let i = g("I*");
        let s3 = g("S3");
        let m = restriction_map(&i, &s3, &InclusionSpec::standard(&i, &s3).unwrap()).unwrap();
        assert!(m.images()[0].is_zero());

        let gg = g("SU(2) x SO(4)");
        let m = restriction_map(&gg, &gg, &InclusionSpec::identity(&gg)).unwrap();
        assert_eq!(m, RingMap::identity(&gg.invariant_ring()));
    }

    #[test]
    fn chain_composes_one_step_maps() {
        let (so2, so3, so4) = (g("SO(2)"), g("SO(3)"), g("SO(4)"));
        let std = |a: &GroupExpr, b: &GroupExpr| {
            restriction_map(a, b, &InclusionSpec::standard(a, b).unwrap()).unwrap()
        };
        let direct = std(&so2, &so4);
        let composed = std(&so3, &so4).then(&std(&so2, &so3));
        assert_eq!(direct, composed);
        let t = direct.target();
        let names: Vec<String> = direct.images().iter().map(|p| t.format(p)).collect();
        assert_eq!(names, vec!["e^2", "0"]);
    }

    #[test]
    fn inclusion_validation() {
        let err = InclusionSpec::standard(&g("SO(3)"), &g("SU(3)")).unwrap_err();
        assert!(matches!(err, GroupError::Inapplicable { .. }));
        let err = InclusionSpec::standard(&g("SO(3)"), &g("SO(3) x SO(2)")).unwrap_err();
        assert!(matches!(err, GroupError::FactorCount { .. }));
        let bad = InclusionSpec {
            kinds: vec![InclusionKind::FiniteIntoAtom],
        };
        assert!(bad.validate(&g("SO(2)"), &g("SO(3)")).is_err());
        assert!(InclusionSpec::standard(&g("SO(5)"), &g("SO(3)")).is_err());
    }

    #[test]
    fn poincare_catalog() {
        for (k, h) in poincare_pairs() {
            assert_eq!(h.rank + 1, k.rank);
            assert_eq!(k.dim - h.dim, 3);
            assert!(is_poincare_pair(&k, &h));
        }
        assert!(!is_poincare_pair(&GroupAtom::so(3).unwrap(), &GroupAtom::binary_icosahedral()));
    }
}
