//! Equivariant cohomology of cohomogeneity-one actions with orbit space an
//! interval, computed from the group diagram `(G, H, K-, K+)`.
//!
//! When the principal isotropy has smaller rank than one of the singular
//! isotropies, `H*_G(M)` is the kernel of
//! `H*(BK-) ⊕ H*(BK+) -> H*(BH)`, `(f, g) -> π1(f) - π2(g)`, viewed as a module
//! over `H*(BG)`. The crate computes that module degree by degree over the
//! rationals and certifies freeness, torsion, and regular sequences up to a
//! truncation degree.

pub mod linalg;
pub mod graded;
pub mod groups;
pub mod mvkernel;
pub mod oracle;
pub mod analysis;
pub mod diagram;
pub mod report;
