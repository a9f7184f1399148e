use serde::Serialize;

use super::{GradedError, GradedRing, Polynomial};
use crate::linalg::{Matrix, Rational};

/// Degree-preserving homomorphism given by the images of the source
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: GradedRing,
    target: GradedRing,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(
        source: GradedRing,
        target: GradedRing,
        images: Vec<Polynomial>,
    ) -> Result<Self, GradedError> {
        if images.len() != source.nvars() {
            return Err(GradedError::ImageCount {
                expected: source.nvars(),
                found: images.len(),
            });
        }
        for (g, img) in source.generators().iter().zip(&images) {
            target.check_arity(img)?;
            if !target.is_homogeneous_of(img, g.degree) {
                return Err(GradedError::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: g.degree,
                    image: target.format(img),
                });
            }
        }
        Ok(RingMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(ring: &GradedRing) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.gen(i)).collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &GradedRing {
        &self.source
    }

    pub fn target(&self) -> &GradedRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Substitutes the generator images into `p`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.source.nvars(), "polynomial not in map source");
        let n = self.target.nvars();
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(n)]; self.images.len()];
        let mut out = Polynomial::zero(n);
        for (m, c) in p.terms() {
            let mut t = Polynomial::constant(n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &self.images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingMap) -> RingMap {
        assert_eq!(self.target, next.source, "maps do not compose");
        RingMap {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|p| next.apply(p)).collect(),
        }
    }

    /// Matrix of the map between degree-`d` slices: columns indexed by the
    /// source slice basis, rows by the target slice basis.
    pub fn matrix(&self, d: u32) -> Matrix {
        let src = self.source.slice(d);
        let dst = self.target.slice(d);
        let columns: Vec<Vec<Rational>> = src
            .monomials
            .iter()
            .map(|m| {
                let img = self.apply(&Polynomial::term(m.clone(), num_traits::One::one()));
                self.target
                    .coordinates(d, &img)
                    .expect("ring maps preserve degree")
            })
            .collect();
        Matrix::from_columns(dst.len(), &columns)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    /// `(degree, surjective in that degree)` for every even degree.
    pub degrees: Vec<(u32, bool)>,
    pub surjective: bool,
}

impl SurjectivityReport {
    pub fn from_degrees(degrees: Vec<(u32, bool)>) -> Self {
        let surjective = degrees.iter().all(|&(_, ok)| ok);
        SurjectivityReport { degrees, surjective }
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.degrees.iter().find(|(_, ok)| !ok).map(|&(d, _)| d)
    }
}

/// Full-row-rank test of the map in each even degree up to `max_degree`.
pub fn surjectivity_check(m: &RingMap, max_degree: u32) -> SurjectivityReport {
    SurjectivityReport::from_degrees(
        (0..=max_degree)
            .step_by(2)
            .map(|d| (d, m.matrix(d).rank() == m.target().slice_dim(d)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;
    use crate::linalg::rat;

    fn ring(gens: &[(&str, u32)]) -> GradedRing {
        GradedRing::new(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let right = ring(&[("u", 4), ("e", 2)]);
        let bottom = ring(&[("e", 2)]);
        let pi2 = RingMap::new(right.clone(), bottom.clone(), vec![bottom.zero(), bottom.gen(0)]).unwrap();
        let ue = right.parse("u*e").unwrap();
        assert!(pi2.apply(&ue).is_zero());

        let left = ring(&[("p1", 4)]);
        let pi1 = RingMap::new(left.clone(), bottom.clone(), vec![bottom.parse("e^2").unwrap()]).unwrap();
        assert_eq!(pi1.apply(&left.parse("p1^2").unwrap()), bottom.parse("e^4").unwrap());

        let id = RingMap::identity(&right);
        let p = right.parse("u^2 - 2*u*e^2 + 1/3").unwrap();
        assert_eq!(id.apply(&p), p);
    }

    #[test]
    fn rejects_degree_mismatch() {
        let left = ring(&[("p1", 4)]);
        let bottom = ring(&[("e", 2)]);
        let err = RingMap::new(left.clone(), bottom.clone(), vec![bottom.gen(0)]).unwrap_err();
        assert!(matches!(err, GradedError::DegreeMismatch { .. }));
        let err = RingMap::new(left, bottom.clone(), vec![]).unwrap_err();
        assert!(matches!(err, GradedError::ImageCount { .. }));
    }

    #[test]
    fn matrix_examples() {
        let left = ring(&[("p1", 4)]);
        let bottom = ring(&[("e", 2)]);
        let pi1 = RingMap::new(left.clone(), bottom.clone(), vec![bottom.parse("e^2").unwrap()]).unwrap();
        assert_eq!(pi1.matrix(4), Matrix::from_rows(1, &[vec![rat(1)]]));
        let r = ring(&[("u", 4), ("p1", 4)]);
        assert_eq!(RingMap::identity(&r).matrix(8), Matrix::identity(3));
        let kill = RingMap::new(r.clone(), GradedRing::scalars(), vec![Polynomial::zero(0); 2]).unwrap();
        assert!(kill.matrix(4).is_zero());
    }

    #[test]
    fn surjectivity_examples() {
        let so3 = ring(&[("p1", 4)]);
        let so2 = ring(&[("e", 2)]);
        let m = RingMap::new(so3, so2.clone(), vec![so2.parse("e^2").unwrap()]).unwrap();
        let rep = surjectivity_check(&m, 8);
        assert!(!rep.surjective);
        assert_eq!(rep.first_failure(), Some(2));

        let so4 = ring(&[("p1", 4), ("e", 4)]);
        let so3 = ring(&[("p1", 4)]);
        let m = RingMap::new(so4, so3.clone(), vec![so3.gen(0), so3.zero()]).unwrap();
        assert!(surjectivity_check(&m, 40).surjective);
    }
}
