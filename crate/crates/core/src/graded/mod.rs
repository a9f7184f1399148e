//! Graded polynomial rings over the rationals with even-degree generators,
//! their degree slices, degree-preserving homomorphisms, and Hilbert series.

mod hilbert;
mod map;
mod poly;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Rational;

pub use hilbert::{hilbert_series_ring, ClosedForm, HilbertSeries};
pub use map::{surjectivity_check, RingMap, SurjectivityReport};
pub use poly::{Monomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("generator `{name}` has degree {degree}; degrees must be positive and even")]
    BadGeneratorDegree { name: String, degree: u32 },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of `{generator}` must be homogeneous of degree {expected}, got `{image}`")]
    DegreeMismatch {
        generator: String,
        expected: u32,
        image: String,
    },
    #[error("polynomial has {found} variables, ring has {expected}")]
    Arity { expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cannot parse polynomial `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error("polynomial `{poly}` is not homogeneous of degree {degree}")]
    NotInSlice { poly: String, degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// Monomial basis of one degree slice, with a reverse index.
#[derive(Debug)]
pub struct Slice {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Slice {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

type SliceCache = Arc<RwLock<HashMap<u32, Arc<Slice>>>>;

/// Free commutative graded algebra over Q on named even-degree generators.
///
/// Slices are computed lazily and cached; clones share the cache.
#[derive(Clone)]
pub struct GradedRing {
    generators: Arc<[Generator]>,
    weights: Arc<[u32]>,
    cache: SliceCache,
}

impl std::fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedRing")
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for GradedRing {}

impl Serialize for GradedRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.generators.serialize(s)
    }
}

impl GradedRing {
    pub fn new(generators: Vec<Generator>) -> Result<Self, GradedError> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(GradedError::BadGeneratorDegree {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(GradedError::DuplicateGenerator(g.name.clone()));
            }
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        Ok(GradedRing {
            generators: generators.into(),
            weights: weights.into(),
            cache: Arc::default(),
        })
    }

    /// The ring with no generators.
    pub fn scalars() -> Self {
        Self::new(Vec::new()).expect("empty ring is valid")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn gen(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    /// Monomials of weighted degree `d`, in descending lexicographic order of
    /// exponent vectors (graded lex within the slice).
    pub fn slice(&self, d: u32) -> Arc<Slice> {
        if let Some(s) = self.cache.read().expect("slice cache poisoned").get(&d) {
            return Arc::clone(s);
        }
        let monomials = enumerate_slice(&self.weights, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let slice = Arc::new(Slice {
            degree: d,
            monomials,
            index,
        });
        let mut cache = self.cache.write().expect("slice cache poisoned");
        Arc::clone(cache.entry(d).or_insert(slice))
    }

    pub fn slice_basis(&self, d: u32) -> Vec<Monomial> {
        self.slice(d).monomials.clone()
    }

    pub fn slice_dim(&self, d: u32) -> usize {
        self.slice(d).len()
    }

    pub fn check_arity(&self, p: &Polynomial) -> Result<(), GradedError> {
        if p.nvars() != self.nvars() {
            return Err(GradedError::Arity {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        Ok(())
    }

    /// Coordinates of a degree-`d` homogeneous polynomial in the slice basis.
    pub fn coordinates(&self, d: u32, p: &Polynomial) -> Result<Vec<Rational>, GradedError> {
        self.check_arity(p)?;
        let slice = self.slice(d);
        let mut v = vec![Rational::zero(); slice.len()];
        for (m, c) in p.terms() {
            let i = slice.position(m).ok_or_else(|| GradedError::NotInSlice {
                poly: self.format(p),
                degree: d,
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, d: u32, v: &[Rational]) -> Polynomial {
        let slice = self.slice(d);
        assert_eq!(v.len(), slice.len(), "coordinate length mismatch");
        Polynomial::from_terms(
            self.nvars(),
            slice
                .monomials
                .iter()
                .zip(v)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn is_homogeneous_of(&self, p: &Polynomial, d: u32) -> bool {
        p.is_homogeneous_of(&self.weights, d)
    }

    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<u32> {
        p.homogeneous_degree(&self.weights)
    }

    fn format_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (g, &e) in self.generators.iter().zip(m.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&g.name);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
    }

    /// Serializes with terms in graded-lex order, highest degree first:
    /// `3/2*u*e^2 - p1 + 1`.
    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.degree_of(b)
                .cmp(&self.degree_of(a))
                .then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let a = c.abs();
            if m.is_one() {
                let _ = write!(out, "{a}");
            } else {
                if !a.is_one() {
                    let _ = write!(out, "{a}*");
                }
                self.format_monomial(m, &mut out);
            }
        }
        out
    }

    /// Parses the serialization produced by [`GradedRing::format`]; also
    /// accepts explicit unit coefficients and exponents, and `^` powers of 1.
    pub fn parse(&self, input: &str) -> Result<Polynomial, GradedError> {
        Parser {
            ring: self,
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
        .polynomial()
    }
}

fn enumerate_slice(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], i: usize, rest: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if rest == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let w = weights[i];
        for e in (0..=rest / w).rev() {
            exps.push(e);
            go(weights, i + 1, rest - e * w, exps, out);
            exps.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

struct Parser<'a> {
    ring: &'a GradedRing,
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> GradedError {
        GradedError::Parse {
            input: self.input.to_string(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn polynomial(mut self) -> Result<Polynomial, GradedError> {
        let mut acc = self.ring.zero();
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut first = true;
        while self.pos < self.chars.len() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                _ if first => Rational::one(),
                Some(c) => return Err(self.err(format!("expected `+` or `-`, found `{c}`"))),
                None => unreachable!(),
            };
            first = false;
            let t = self.term()?;
            acc = &acc + &t.scale(&sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, GradedError> {
        let mut t = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            t = &t * &f;
        }
        Ok(t)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn factor(&mut self) -> Result<Polynomial, GradedError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer().expect("digit present");
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.integer()
                        .ok_or_else(|| self.err("expected denominator after `/`"))?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(Polynomial::constant(
                    self.ring.nvars(),
                    Rational::new(num, den),
                ))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self
                    .ring
                    .generator_index(&name)
                    .ok_or(GradedError::UnknownGenerator(name))?;
                let mut e = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let n = self
                        .integer()
                        .ok_or_else(|| self.err("expected exponent after `^`"))?;
                    e = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                }
                Ok(self.ring.gen(i).pow(e))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn ring(gens: &[(&str, u32)]) -> GradedRing {
        GradedRing::new(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect()).unwrap()
    }

    #[test]
    fn slice_basis_examples() {
        let r = ring(&[("u", 4), ("e", 2)]);
        let s = r.slice_basis(4);
        assert_eq!(s, vec![Monomial(vec![1, 0]), Monomial(vec![0, 2])]);
        assert_eq!(r.slice_basis(0), vec![Monomial(vec![0, 0])]);
        assert!(ring(&[("u", 4)]).slice_basis(6).is_empty());
        assert!(r.slice_basis(7).is_empty());
        assert_eq!(GradedRing::scalars().slice_basis(0), vec![Monomial(vec![])]);
        assert!(GradedRing::scalars().slice_basis(2).is_empty());
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            GradedRing::new(vec![Generator::new("x", 3)]),
            Err(GradedError::BadGeneratorDegree { .. })
        ));
        assert!(matches!(
            GradedRing::new(vec![Generator::new("x", 2), Generator::new("x", 4)]),
            Err(GradedError::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn format_and_parse() {
        let r = ring(&[("u", 4), ("e", 2)]);
        let p = r.parse("e^2 + 3/2*u*e - 1").unwrap();
        assert_eq!(r.format(&p), "3/2*u*e + e^2 - 1");
        assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
        assert_eq!(r.format(&r.zero()), "0");
        assert_eq!(r.format(&r.parse("-u").unwrap()), "-u");
        assert_eq!(r.parse(" 1 * u ^ 1 ").unwrap(), r.gen(0));
        assert_eq!(r.parse("2/4").unwrap(), Polynomial::constant(2, Rational::new(1.into(), 2.into())));
        assert!(matches!(r.parse("x"), Err(GradedError::UnknownGenerator(_))));
        assert!(r.parse("u +").is_err());
        assert!(r.parse("1/0").is_err());
        assert!(r.parse("").is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let r = ring(&[("u", 4), ("e", 2)]);
        let p = r.parse("2*u*e^2 - e^4").unwrap();
        let v = r.coordinates(8, &p).unwrap();
        assert_eq!(v, vec![rat(0), rat(2), rat(-1)]);
        assert_eq!(r.from_coordinates(8, &v), p);
        assert!(r.coordinates(6, &p).is_err());
    }
}
