//! The module `ker(H*(BK-) ⊕ H*(BK+) -> H*(BH))`, `(f, g) -> π1(f) - π2(g)`,
//! over `H*(BG)`, computed slice by slice up to a truncation degree.
//!
//! Elements are stored as coordinate vectors over the ambient basis of each
//! degree: the left slice basis followed by the right slice basis.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graded::{hilbert_series_ring, ClosedForm, GradedError, GradedRing, HilbertSeries, Monomial, Polynomial, RingMap};
use crate::linalg::{is_zero_vec, span_basis, Matrix, Rational, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("truncation degree must be even, got {0}")]
    OddTruncation(u32),
    #[error("incompatible setup: {0}")]
    Incompatible(String),
    #[error("square does not commute on base generator `{generator}`: {via_minus} vs {via_plus}")]
    SquareDoesNotCommute {
        generator: String,
        via_minus: String,
        via_plus: String,
    },
    #[error("degree {degree} exceeds the truncation degree {max_degree}")]
    DegreeOverflow { degree: u32, max_degree: u32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element {0} is not in the kernel")]
    NotInKernel(String),
    #[error("regular sequence must be nonempty")]
    EmptySequence,
    #[error("sequence element {index} `{poly}` is not homogeneous")]
    NonHomogeneousElement { index: usize, poly: String },
    #[error("sequence element {index} `{poly}` has degree 0")]
    DegreeZeroElement { index: usize, poly: String },
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// The rings and maps of the short sequence
/// `0 -> M -> H*(BK-) ⊕ H*(BK+) -> H*(BH) -> 0` together with the
/// restrictions from `H*(BG)` that make `M` a module.
#[derive(Clone, Debug)]
pub struct ModuleSetup {
    pub base: GradedRing,
    pub left: GradedRing,
    pub right: GradedRing,
    pub bottom: GradedRing,
    pub pi1: RingMap,
    pub pi2: RingMap,
    pub rho_minus: RingMap,
    pub rho_plus: RingMap,
}

impl ModuleSetup {
    /// Rings are read off the maps. Fails unless `pi1 ∘ rho_minus = pi2 ∘ rho_plus`.
    pub fn new(
        pi1: RingMap,
        pi2: RingMap,
        rho_minus: RingMap,
        rho_plus: RingMap,
    ) -> Result<Self, KernelError> {
        let mismatch = |what: &str| Err(KernelError::Incompatible(what.to_string()));
        if pi1.target() != pi2.target() {
            return mismatch("pi1 and pi2 have different targets");
        }
        if rho_minus.target() != pi1.source() {
            return mismatch("rho_minus does not land in the source of pi1");
        }
        if rho_plus.target() != pi2.source() {
            return mismatch("rho_plus does not land in the source of pi2");
        }
        if rho_minus.source() != rho_plus.source() {
            return mismatch("rho_minus and rho_plus have different sources");
        }
        let via_minus = rho_minus.then(&pi1);
        let via_plus = rho_plus.then(&pi2);
        let bottom = pi1.target().clone();
        for ((g, a), b) in rho_minus
            .source()
            .generators()
            .iter()
            .zip(via_minus.images())
            .zip(via_plus.images())
        {
            if a != b {
                return Err(KernelError::SquareDoesNotCommute {
                    generator: g.name.clone(),
                    via_minus: bottom.format(a),
                    via_plus: bottom.format(b),
                });
            }
        }
        Ok(ModuleSetup {
            base: rho_minus.source().clone(),
            left: pi1.source().clone(),
            right: pi2.source().clone(),
            bottom,
            pi1,
            pi2,
            rho_minus,
            rho_plus,
        })
    }

    pub fn ambient_dim(&self, d: u32) -> usize {
        self.left.slice_dim(d) + self.right.slice_dim(d)
    }

    /// `[matrix(π1, d) | -matrix(π2, d)]`.
    pub fn difference_matrix(&self, d: u32) -> Matrix {
        let minus_one = -Rational::one();
        self.pi1.matrix(d).hstack(&self.pi2.matrix(d).scaled(&minus_one))
    }

    pub fn element(&self, d: u32, coords: &[Rational]) -> ModuleElement {
        let split = self.left.slice_dim(d);
        ModuleElement {
            left: self.left.from_coordinates(d, &coords[..split]),
            right: self.right.from_coordinates(d, &coords[split..]),
        }
    }

    pub fn coordinates(&self, d: u32, e: &ModuleElement) -> Result<Vec<Rational>, KernelError> {
        let mut v = self.left.coordinates(d, &e.left)?;
        v.extend(self.right.coordinates(d, &e.right)?);
        Ok(v)
    }

    /// `π1(f) - π2(g)`.
    pub fn difference(&self, e: &ModuleElement) -> Polynomial {
        &self.pi1.apply(&e.left) - &self.pi2.apply(&e.right)
    }

    /// `z · (f, g) = (ρ-(z) f, ρ+(z) g)`, with no degree bookkeeping.
    pub fn act(&self, z: &Polynomial, e: &ModuleElement) -> ModuleElement {
        ModuleElement {
            left: &self.rho_minus.apply(z) * &e.left,
            right: &self.rho_plus.apply(z) * &e.right,
        }
    }

    /// Degree of a nonzero homogeneous element.
    pub fn element_degree(&self, e: &ModuleElement) -> Option<u32> {
        let mut d = e.left.degrees(self.left.weights());
        d.extend(e.right.degrees(self.right.weights()));
        d.sort_unstable();
        d.dedup();
        match d.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn format_element(&self, e: &ModuleElement) -> String {
        format!("({}, {})", self.left.format(&e.left), self.right.format(&e.right))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub left: Polynomial,
    pub right: Polynomial,
}

impl ModuleElement {
    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSlice {
    pub degree: u32,
    pub left_dim: usize,
    pub right_dim: usize,
    pub bottom_dim: usize,
    /// Rank of the difference map in this degree.
    pub difference_rank: usize,
    /// Reduced echelon basis of the kernel in ambient coordinates.
    pub basis: Vec<Vec<Rational>>,
}

impl KernelSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn surjective(&self) -> bool {
        self.difference_rank == self.bottom_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGenerator {
    pub degree: u32,
    pub coords: Vec<Rational>,
    pub element: ModuleElement,
}

/// Map from the free module on the generators of degree `< d` onto the
/// degree-`d` slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDegree {
    pub degree: u32,
    /// `(generator index, base monomial)` per column.
    pub columns: Vec<(usize, Monomial)>,
    pub image_rank: usize,
    /// A nonzero relation among the columns, when one exists.
    pub syzygy: Option<Vec<Rational>>,
}

impl CoverDegree {
    pub fn injective(&self) -> bool {
        self.image_rank == self.columns.len()
    }
}

#[derive(Clone, Debug)]
pub struct KernelModule {
    setup: ModuleSetup,
    max_degree: u32,
    slices: Vec<KernelSlice>,
    generators: Vec<ModuleGenerator>,
    cover: Vec<CoverDegree>,
}

fn compute_slice(setup: &ModuleSetup, d: u32) -> KernelSlice {
    let diff = setup.difference_matrix(d);
    let ech = diff.echelon();
    let null = ech.nullspace();
    KernelSlice {
        degree: d,
        left_dim: setup.left.slice_dim(d),
        right_dim: setup.right.slice_dim(d),
        bottom_dim: setup.bottom.slice_dim(d),
        difference_rank: ech.rank(),
        basis: span_basis(diff.cols(), &null),
    }
}

/// Nullspace of the difference map in every even degree `≤ max_degree`,
/// followed by greedy generator extraction.
pub fn kernel_slices(setup: ModuleSetup, max_degree: u32) -> Result<KernelModule, KernelError> {
    if max_degree % 2 == 1 {
        return Err(KernelError::OddTruncation(max_degree));
    }
    let degrees: Vec<u32> = (0..=max_degree).step_by(2).collect();
    // Warm the slice caches so parallel workers mostly read.
    for &d in &degrees {
        for r in [&setup.base, &setup.left, &setup.right, &setup.bottom] {
            r.slice(d);
        }
    }
    #[cfg(feature = "parallel")]
    let slices: Vec<KernelSlice> = {
        use rayon::prelude::*;
        degrees.par_iter().map(|&d| compute_slice(&setup, d)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let slices: Vec<KernelSlice> = degrees.iter().map(|&d| compute_slice(&setup, d)).collect();

    let mut km = KernelModule {
        setup,
        max_degree,
        slices,
        generators: Vec::new(),
        cover: Vec::new(),
    };
    km.extract_generators();
    Ok(km)
}

struct ActionCache<'a> {
    setup: &'a ModuleSetup,
    images: HashMap<Monomial, (Polynomial, Polynomial)>,
}

impl<'a> ActionCache<'a> {
    fn new(setup: &'a ModuleSetup) -> Self {
        ActionCache {
            setup,
            images: HashMap::new(),
        }
    }

    fn images_of(&mut self, z: &Monomial) -> &(Polynomial, Polynomial) {
        let setup = self.setup;
        self.images.entry(z.clone()).or_insert_with(|| {
            let p = Polynomial::term(z.clone(), Rational::one());
            (setup.rho_minus.apply(&p), setup.rho_plus.apply(&p))
        })
    }

    fn act(&mut self, z: &Monomial, e: &ModuleElement) -> ModuleElement {
        let (l, r) = self.images_of(z);
        ModuleElement {
            left: l * &e.left,
            right: r * &e.right,
        }
    }
}

impl KernelModule {
    pub fn setup(&self) -> &ModuleSetup {
        &self.setup
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Slices for the even degrees `0, 2, ..., max_degree`.
    pub fn slices(&self) -> &[KernelSlice] {
        &self.slices
    }

    pub fn slice(&self, d: u32) -> Option<&KernelSlice> {
        if d % 2 == 1 || d > self.max_degree {
            return None;
        }
        self.slices.get((d / 2) as usize)
    }

    pub fn slice_dim(&self, d: u32) -> usize {
        self.slice(d).map_or(0, KernelSlice::dim)
    }

    pub fn generators(&self) -> &[ModuleGenerator] {
        &self.generators
    }

    pub fn cover(&self) -> &[CoverDegree] {
        &self.cover
    }

    pub fn slice_elements(&self, d: u32) -> Vec<ModuleElement> {
        self.slice(d)
            .map(|s| s.basis.iter().map(|v| self.setup.element(d, v)).collect())
            .unwrap_or_default()
    }

    fn extract_generators(&mut self) {
        let setup = &self.setup;
        let mut cache = ActionCache::new(setup);
        let mut generators: Vec<ModuleGenerator> = Vec::new();
        let mut cover = Vec::new();
        for slice in &self.slices {
            let d = slice.degree;
            let amb = setup.ambient_dim(d);
            let mut labels = Vec::new();
            let mut columns = Vec::new();
            for (gi, g) in generators.iter().enumerate() {
                for z in setup.base.slice(d - g.degree).monomials.iter() {
                    let img = cache.act(z, &g.element);
                    columns.push(setup.coordinates(d, &img).expect("action preserves degree"));
                    labels.push((gi, z.clone()));
                }
            }
            let mut span = Subspace::new(amb);
            for c in &columns {
                span.insert(c);
            }
            let image_rank = span.dim();
            let syzygy = (image_rank < columns.len()).then(|| {
                Matrix::from_columns(amb, &columns)
                    .nullspace()
                    .into_iter()
                    .next()
                    .expect("rank deficiency gives a relation")
            });
            for b in &slice.basis {
                if span.insert(b) {
                    generators.push(ModuleGenerator {
                        degree: d,
                        coords: b.clone(),
                        element: setup.element(d, b),
                    });
                }
            }
            cover.push(CoverDegree {
                degree: d,
                columns: labels,
                image_rank,
                syzygy,
            });
        }
        self.generators = generators;
        self.cover = cover;
    }

    /// `z · v` through `ρ±`, checked to stay within the truncation.
    pub fn base_action(&self, z: &Polynomial, v: &ModuleElement) -> Result<ModuleElement, KernelError> {
        let s = &self.setup;
        s.base.check_arity(z)?;
        s.left.check_arity(&v.left)?;
        s.right.check_arity(&v.right)?;
        if !s.difference(v).is_zero() {
            return Err(KernelError::NotInKernel(s.format_element(v)));
        }
        if z.is_zero() || v.is_zero() {
            return Ok(ModuleElement {
                left: s.left.zero(),
                right: s.right.zero(),
            });
        }
        let k = s.base.homogeneous_degree(z).ok_or(KernelError::NotHomogeneous)?;
        let d = s.element_degree(v).ok_or(KernelError::NotHomogeneous)?;
        if d + k > self.max_degree {
            return Err(KernelError::DegreeOverflow {
                degree: d + k,
                max_degree: self.max_degree,
            });
        }
        Ok(s.act(z, v))
    }

    /// Coordinates of `z · v` in degree `d + deg z`.
    fn act_coords(&self, images: &(Polynomial, Polynomial), d: u32, k: u32, v: &[Rational]) -> Vec<Rational> {
        let e = self.setup.element(d, v);
        let img = ModuleElement {
            left: &images.0 * &e.left,
            right: &images.1 * &e.right,
        };
        self.setup
            .coordinates(d + k, &img)
            .expect("action preserves degree")
    }

    fn free_prediction(&self) -> Vec<usize> {
        let hs = hilbert_series_ring(&self.setup.base, self.max_degree);
        (0..=self.max_degree)
            .step_by(2)
            .map(|d| {
                self.generators
                    .iter()
                    .filter(|g| g.degree <= d)
                    .map(|g| hs.truncated[(d - g.degree) as usize] as usize)
                    .sum()
            })
            .collect()
    }

    /// Freeness up to the truncation degree, or evidence against it.
    pub fn free_basis_search(&self) -> Freeness {
        let first_syzygy = self.cover.iter().find(|c| !c.injective());
        if let Some(c) = first_syzygy {
            let relation = c.syzygy.as_ref().expect("non-injective degree has a syzygy");
            let mut coeffs: Vec<Polynomial> = vec![self.setup.base.zero(); self.generators.len()];
            for ((gi, z), x) in c.columns.iter().zip(relation) {
                if !x.is_zero() {
                    coeffs[*gi].add_term(z.clone(), x.clone());
                }
            }
            return Freeness::NotFree {
                witness: self.torsion_search(),
                syzygy: Syzygy {
                    degree: c.degree,
                    coefficients: coeffs,
                },
            };
        }
        let predicted = self.free_prediction();
        let dims_match = self
            .slices
            .iter()
            .zip(&predicted)
            .all(|(s, &p)| s.dim() == p);
        if !dims_match {
            return Freeness::Inconclusive {
                reason: "slice dimensions differ from the free prediction".to_string(),
            };
        }
        let top_generator = self.generators.iter().map(|g| g.degree).max().unwrap_or(0);
        let needed = top_generator + self.setup.base.weights().iter().sum::<u32>();
        if self.max_degree < needed {
            return Freeness::Inconclusive {
                reason: format!(
                    "no syzygy up to degree {}, but a free certificate needs degree at least {needed}",
                    self.max_degree
                ),
            };
        }
        Freeness::Free {
            max_degree: self.max_degree,
            basis: self.generators.clone(),
        }
    }

    /// First `(m, z)` with `z` a base generator, `m ≠ 0` and `z · m = 0`,
    /// scanning degrees upward.
    pub fn torsion_search(&self) -> Option<TorsionWitness> {
        let base = &self.setup.base;
        for slice in &self.slices {
            if slice.basis.is_empty() {
                continue;
            }
            let d = slice.degree;
            for (i, g) in base.generators().iter().enumerate() {
                let k = g.degree;
                if d + k > self.max_degree {
                    continue;
                }
                let z = base.gen(i);
                let images = (self.setup.rho_minus.apply(&z), self.setup.rho_plus.apply(&z));
                let cols: Vec<Vec<Rational>> = slice
                    .basis
                    .iter()
                    .map(|b| self.act_coords(&images, d, k, b))
                    .collect();
                let null = Matrix::from_columns(self.setup.ambient_dim(d + k), &cols).nullspace();
                if let Some(c) = null.into_iter().next() {
                    let m = combine(&slice.basis, &c);
                    return Some(TorsionWitness {
                        degree: d,
                        element: self.setup.element(d, &m),
                        annihilator: z,
                    });
                }
            }
        }
        None
    }

    /// Truncated Hilbert series; the closed form is attached only for a
    /// free certificate.
    pub fn hilbert_series(&self, freeness: &Freeness) -> HilbertSeries {
        let truncated = (0..=self.max_degree)
            .map(|d| self.slice_dim(d) as u64)
            .collect();
        let closed_form = match freeness {
            Freeness::Free { basis, .. } => Some(ClosedForm::new(
                basis.iter().map(|g| (g.degree, 1)),
                self.setup.base.weights().to_vec(),
            )),
            _ => None,
        };
        HilbertSeries {
            truncated,
            closed_form,
        }
    }

    /// Checks slice-wise that `hsop[0], hsop[1], ...` is a regular sequence on
    /// the truncated module.
    pub fn regular_sequence_check(&self, hsop: &[Polynomial]) -> Result<RegularSequenceCertificate, KernelError> {
        let base = &self.setup.base;
        if hsop.is_empty() {
            return Err(KernelError::EmptySequence);
        }
        let mut degrees = Vec::with_capacity(hsop.len());
        for (index, z) in hsop.iter().enumerate() {
            base.check_arity(z)?;
            let poly = base.format(z);
            if z.is_zero() {
                return Err(KernelError::DegreeZeroElement { index, poly });
            }
            match base.homogeneous_degree(z) {
                None => return Err(KernelError::NonHomogeneousElement { index, poly }),
                Some(0) => return Err(KernelError::DegreeZeroElement { index, poly }),
                Some(k) => degrees.push(k),
            }
        }
        let dmax = self.max_degree;
        let mut submodule: Vec<Subspace> = self
            .slices
            .iter()
            .map(|s| Subspace::new(self.setup.ambient_dim(s.degree)))
            .collect();
        let idx = |d: u32| (d / 2) as usize;
        let horizon = i64::from(dmax) - degrees.iter().map(|&k| i64::from(k)).sum::<i64>();
        for (index, (z, &k)) in hsop.iter().zip(&degrees).enumerate() {
            let images = (self.setup.rho_minus.apply(z), self.setup.rho_plus.apply(z));
            for slice in &self.slices {
                let d = slice.degree;
                if d + k > dmax {
                    break;
                }
                if slice.basis.is_empty() {
                    continue;
                }
                let cols: Vec<Vec<Rational>> = slice
                    .basis
                    .iter()
                    .map(|b| self.act_coords(&images, d, k, b))
                    .collect();
                let upper = &submodule[idx(d + k)];
                let reduced = upper
                    .annihilator()
                    .mul(&Matrix::from_columns(upper.ambient_dim(), &cols));
                let preimage = reduced.nullspace();
                let lower = &submodule[idx(d)];
                if preimage.len() > lower.dim() {
                    let bad = preimage
                        .iter()
                        .map(|c| combine(&slice.basis, c))
                        .find(|m| !lower.contains(m))
                        .expect("preimage strictly larger than the submodule");
                    return Ok(RegularSequenceCertificate {
                        degrees,
                        max_degree: dmax,
                        outcome: RegularSequenceOutcome::Failed {
                            index,
                            degree: d,
                            element: self.setup.element(d, &bad),
                        },
                    });
                }
            }
            // Quotient by z: add z·M to the submodule in every degree.
            for slice in &self.slices {
                let d = slice.degree;
                if d + k > dmax {
                    break;
                }
                for b in &slice.basis {
                    let img = self.act_coords(&images, d, k, b);
                    submodule[idx(d + k)].insert(&img);
                }
            }
        }
        Ok(RegularSequenceCertificate {
            degrees,
            max_degree: dmax,
            outcome: RegularSequenceOutcome::Verified {
                length: hsop.len(),
                horizon,
            },
        })
    }
}

fn combine(basis: &[Vec<Rational>], c: &[Rational]) -> Vec<Rational> {
    let len = basis.first().map_or(0, Vec::len);
    let mut m = vec![Rational::zero(); len];
    for (b, x) in basis.iter().zip(c) {
        if x.is_zero() {
            continue;
        }
        for (acc, y) in m.iter_mut().zip(b) {
            *acc += x * y;
        }
    }
    debug_assert!(!is_zero_vec(&m) || c.iter().all(Zero::is_zero));
    m
}

/// `m ≠ 0` in the kernel with `annihilator · m = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub degree: u32,
    pub element: ModuleElement,
    pub annihilator: Polynomial,
}

impl TorsionWitness {
    /// Re-checks the witness by direct substitution.
    pub fn verify(&self, setup: &ModuleSetup) -> bool {
        !self.element.is_zero()
            && !self.annihilator.is_zero()
            && setup.difference(&self.element).is_zero()
            && setup.act(&self.annihilator, &self.element).is_zero()
    }
}

/// A relation `Σ coefficients[i] · generator[i] = 0` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy {
    pub degree: u32,
    pub coefficients: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    /// The generators form a basis in every degree up to `max_degree`.
    Free {
        max_degree: u32,
        basis: Vec<ModuleGenerator>,
    },
    NotFree {
        witness: Option<TorsionWitness>,
        syzygy: Syzygy,
    },
    Inconclusive { reason: String },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free { .. })
    }

    pub fn is_not_free(&self) -> bool {
        matches!(self, Freeness::NotFree { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Freeness::Free { .. } => "free",
            Freeness::NotFree { .. } => "not-free",
            Freeness::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSequenceCertificate {
    pub degrees: Vec<u32>,
    pub max_degree: u32,
    pub outcome: RegularSequenceOutcome,
}

impl RegularSequenceCertificate {
    pub fn verified(&self) -> bool {
        matches!(self.outcome, RegularSequenceOutcome::Verified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularSequenceOutcome {
    /// Each element acts injectively on the previous quotient; injectivity
    /// holds in every degree up to `horizon`.
    Verified { length: usize, horizon: i64 },
    /// `element` is nonzero modulo the earlier elements and is killed by
    /// element `index` of the sequence.
    Failed {
        index: usize,
        degree: u32,
        element: ModuleElement,
    },
}

/// Outcome of the default search: base generators in catalog order, then
/// seeded random combinations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsopSearch {
    pub attempts: Vec<(Vec<Polynomial>, RegularSequenceCertificate)>,
    pub seed: u64,
}

impl HsopSearch {
    pub fn accepted(&self) -> Option<&(Vec<Polynomial>, RegularSequenceCertificate)> {
        self.attempts.iter().find(|(_, c)| c.verified())
    }
}

pub const DEFAULT_SEED: u64 = 1;
const RANDOM_ATTEMPTS: usize = 4;

/// Searches for a regular sequence of length `length`: first the leading base
/// generators, then random rational combinations of the base monomials of
/// degree `lcm` of the generator degrees (which contains a power of every
/// generator).
pub fn find_regular_sequence(km: &KernelModule, length: usize, seed: u64) -> Result<HsopSearch, KernelError> {
    let base = &km.setup().base;
    let mut search = HsopSearch {
        attempts: Vec::new(),
        seed,
    };
    if length == 0 || length > base.nvars() {
        return Err(KernelError::EmptySequence);
    }
    let leading: Vec<Polynomial> = (0..length).map(|i| base.gen(i)).collect();
    let cert = km.regular_sequence_check(&leading)?;
    let done = cert.verified();
    search.attempts.push((leading, cert));
    if done {
        return Ok(search);
    }
    let lcm = base
        .weights()
        .iter()
        .fold(1u32, |l, &w| num_integer::Integer::lcm(&l, &w));
    let monomials = base.slice_basis(lcm);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let seq: Vec<Polynomial> = (0..length)
            .map(|_| {
                Polynomial::from_terms(
                    base.nvars(),
                    monomials.iter().map(|m| {
                        let num: i64 = rng.random_range(1..=29) * if rng.random_bool(0.5) { 1 } else { -1 };
                        let den: i64 = rng.random_range(1..=7);
                        (m.clone(), Rational::new(num.into(), den.into()))
                    }),
                )
            })
            .collect();
        let cert = km.regular_sequence_check(&seq)?;
        let done = cert.verified();
        search.attempts.push((seq, cert));
        if done {
            break;
        }
    }
    Ok(search)
}

/// Summary numbers for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceSummary {
    pub degree: u32,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub kernel: usize,
    pub surjective: bool,
}

impl From<&KernelSlice> for SliceSummary {
    fn from(s: &KernelSlice) -> Self {
        SliceSummary {
            degree: s.degree,
            left: s.left_dim,
            right: s.right_dim,
            bottom: s.bottom_dim,
            kernel: s.dim(),
            surjective: s.surjective(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    fn ring(gens: &[(&str, u32)]) -> GradedRing {
        GradedRing::new(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect()).unwrap()
    }

    fn map(src: &GradedRing, dst: &GradedRing, images: &[&str]) -> RingMap {
        RingMap::new(
            src.clone(),
            dst.clone(),
            images.iter().map(|s| dst.parse(s).unwrap()).collect(),
        )
        .unwrap()
    }

    /// Diagram at n = 2: base Q[u,p1], left Q[p1], right Q[u,e], bottom Q[e].
    fn even_example() -> ModuleSetup {
        let base = ring(&[("u", 4), ("p1", 4)]);
        let left = ring(&[("p1", 4)]);
        let right = ring(&[("u", 4), ("e", 2)]);
        let bottom = ring(&[("e", 2)]);
        ModuleSetup::new(
            map(&left, &bottom, &["e^2"]),
            map(&right, &bottom, &["0", "e"]),
            map(&base, &left, &["0", "p1"]),
            map(&base, &right, &["u", "e^2"]),
        )
        .unwrap()
    }

    /// Diagram at n = 1: base Q[u,e], left Q[e], right Q[u], bottom Q.
    fn odd_example() -> ModuleSetup {
        let base = ring(&[("u", 4), ("e", 2)]);
        let left = ring(&[("e", 2)]);
        let right = ring(&[("u", 4)]);
        let bottom = GradedRing::scalars();
        ModuleSetup::new(
            map(&left, &bottom, &["0"]),
            map(&right, &bottom, &["0"]),
            map(&base, &left, &["0", "e"]),
            map(&base, &right, &["u", "0"]),
        )
        .unwrap()
    }

    fn diagonal() -> ModuleSetup {
        let r = ring(&[("u", 4), ("e", 2)]);
        let id = RingMap::identity(&r);
        ModuleSetup::new(id.clone(), id.clone(), id.clone(), id).unwrap()
    }

    fn elem(s: &ModuleSetup, l: &str, r: &str) -> ModuleElement {
        ModuleElement {
            left: s.left.parse(l).unwrap(),
            right: s.right.parse(r).unwrap(),
        }
    }

    #[test]
    fn rejects_noncommuting_square() {
        let s = even_example();
        let bad = map(&s.base, &s.right, &["u", "u"]);
        let err = ModuleSetup::new(s.pi1.clone(), s.pi2.clone(), s.rho_minus.clone(), bad).unwrap_err();
        assert!(matches!(err, KernelError::SquareDoesNotCommute { .. }));
    }

    #[test]
    fn rejects_odd_truncation() {
        assert_eq!(kernel_slices(even_example(), 7).unwrap_err(), KernelError::OddTruncation(7));
    }

    #[test]
    fn even_example_slices_and_generators() {
        let km = kernel_slices(even_example(), 12).unwrap();
        let dims: Vec<usize> = [0, 2, 4, 6, 8].iter().map(|&d| km.slice_dim(d)).collect();
        assert_eq!(dims, vec![1, 0, 2, 1, 3]);
        let s = km.setup();
        let gens: Vec<(u32, ModuleElement)> =
            km.generators().iter().map(|g| (g.degree, g.element.clone())).collect();
        assert_eq!(gens, vec![(0, elem(s, "1", "1")), (6, elem(s, "0", "u*e"))]);
        for sl in km.slices() {
            for v in &sl.basis {
                assert!(s.difference(&s.element(sl.degree, v)).is_zero());
            }
        }
    }

    #[test]
    fn base_action_examples() {
        let km = kernel_slices(even_example(), 12).unwrap();
        let s = km.setup();
        let one = elem(s, "1", "1");
        let u = s.base.parse("u").unwrap();
        let p1 = s.base.parse("p1").unwrap();
        assert_eq!(km.base_action(&u, &one).unwrap(), elem(s, "0", "u"));
        assert_eq!(km.base_action(&p1, &one).unwrap(), elem(s, "p1", "e^2"));
        assert_eq!(km.base_action(&s.base.one(), &one).unwrap(), one);
        let big = s.base.parse("u^4").unwrap();
        assert!(matches!(
            km.base_action(&big, &one),
            Err(KernelError::DegreeOverflow { degree: 16, .. })
        ));
        assert!(matches!(
            km.base_action(&u, &elem(s, "p1", "0")),
            Err(KernelError::NotInKernel(_))
        ));

        let km = kernel_slices(odd_example(), 12).unwrap();
        let s = km.setup();
        let m = elem(s, "e", "0");
        assert!(km.base_action(&s.base.parse("u").unwrap(), &m).unwrap().is_zero());
    }

    #[test]
    fn odd_example_module_is_cyclic_with_torsion() {
        let km = kernel_slices(odd_example(), 12).unwrap();
        let s = km.setup();
        assert!(km.slice_elements(2).contains(&elem(s, "e", "0")));
        let gens: Vec<u32> = km.generators().iter().map(|g| g.degree).collect();
        assert_eq!(gens, vec![0]);
        match km.free_basis_search() {
            Freeness::NotFree { witness: Some(w), .. } => {
                assert_eq!(w.element, elem(s, "e", "0"));
                assert_eq!(w.annihilator, s.base.parse("u").unwrap());
                assert!(w.verify(s));
            }
            other => panic!("expected torsion, got {other:?}"),
        }
        assert!(km.hilbert_series(&km.free_basis_search()).closed_form.is_none());
    }

    #[test]
    fn diagonal_setup() {
        let km = kernel_slices(diagonal(), 16).unwrap();
        for d in (0..=16).step_by(2) {
            assert_eq!(km.slice_dim(d), km.setup().base.slice_dim(d));
        }
        let gens = km.generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].element, elem(km.setup(), "1", "1"));
        let f = km.free_basis_search();
        assert!(f.is_free());
        let hs = km.hilbert_series(&f);
        assert_eq!(hs.closed_form.as_ref().unwrap().to_string(), "1 / ((1-t^2) (1-t^4))");
        assert!(hs.is_consistent());
    }

    #[test]
    fn even_example_free_with_closed_form() {
        let km = kernel_slices(even_example(), 40).unwrap();
        let f = km.free_basis_search();
        let Freeness::Free { basis, .. } = &f else {
            panic!("expected free, got {f:?}");
        };
        assert_eq!(basis.iter().map(|g| g.degree).collect::<Vec<_>>(), vec![0, 6]);
        let hs = km.hilbert_series(&f);
        assert_eq!(hs.closed_form.as_ref().unwrap().to_string(), "(1 + t^6) / (1-t^4)^2");
        assert!(hs.is_consistent());
    }

    #[test]
    fn short_horizon_is_inconclusive() {
        let km = kernel_slices(odd_example(), 4).unwrap();
        assert!(matches!(km.free_basis_search(), Freeness::Inconclusive { .. }));
    }

    #[test]
    fn regular_sequences() {
        let km = kernel_slices(even_example(), 24).unwrap();
        let b = &km.setup().base;
        let cert = km
            .regular_sequence_check(&[b.parse("p1").unwrap(), b.parse("u").unwrap()])
            .unwrap();
        assert_eq!(
            cert.outcome,
            RegularSequenceOutcome::Verified {
                length: 2,
                horizon: 16
            }
        );

        let km = kernel_slices(odd_example(), 24).unwrap();
        let s = km.setup();
        let cert = km.regular_sequence_check(&[s.base.parse("u").unwrap()]).unwrap();
        match cert.outcome {
            RegularSequenceOutcome::Failed { index, degree, element } => {
                assert_eq!((index, degree), (0, 2));
                assert_eq!(element, elem(s, "e", "0"));
            }
            other => panic!("expected failure, got {other:?}"),
        }
        let cert = km
            .regular_sequence_check(&[s.base.parse("u + e^2").unwrap()])
            .unwrap();
        assert!(cert.verified());
        let search = find_regular_sequence(&km, 1, DEFAULT_SEED).unwrap();
        assert!(search.accepted().is_some());
        assert!(search.attempts.len() >= 2);
    }

    #[test]
    fn regular_sequence_rejects_bad_elements() {
        let km = kernel_slices(even_example(), 8).unwrap();
        let b = &km.setup().base;
        assert_eq!(km.regular_sequence_check(&[]).unwrap_err(), KernelError::EmptySequence);
        assert!(matches!(
            km.regular_sequence_check(&[b.parse("u + 1").unwrap()]),
            Err(KernelError::NonHomogeneousElement { index: 0, .. })
        ));
        assert!(matches!(
            km.regular_sequence_check(&[b.parse("3").unwrap()]),
            Err(KernelError::DegreeZeroElement { index: 0, .. })
        ));
    }

    #[test]
    fn degree_zero_truncation() {
        let km = kernel_slices(even_example(), 0).unwrap();
        assert_eq!(km.slices().len(), 1);
        assert_eq!(km.slice_dim(0), 1);
        // Nothing to check below the horizon: injectivity holds vacuously.
        let cert = km.regular_sequence_check(&[km.setup().base.parse("u").unwrap()]).unwrap();
        assert!(cert.verified());
    }
}
