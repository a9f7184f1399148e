use eqcoh_core::analysis::{analyze, AnalysisOptions, Embedding, GroupDiagram};
use eqcoh_core::diagram::{parse_diagram, render_diagram, DiagramFile, FileOptions, OutputFormat};
use eqcoh_core::graded::{hilbert_series_ring, Generator, GradedRing, Polynomial, RingMap};
use eqcoh_core::linalg::{rat, Rational};
use eqcoh_core::mvkernel::{find_regular_sequence, kernel_slices, ModuleSetup};
use proptest::prelude::*;

fn ring(prefix: &str, degrees: &[u32]) -> GradedRing {
    GradedRing::new(
        degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| Generator::new(format!("{prefix}{i}"), d))
            .collect(),
    )
    .unwrap()
}

fn degrees() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(prop::sample::select(vec![2u32, 4, 6]), 1..=3)
}

/// Homogeneous polynomial of degree `d` with the given coefficients on the
/// slice basis (cycled).
fn homogeneous(r: &GradedRing, d: u32, coeffs: &[i64]) -> Polynomial {
    let basis = r.slice_basis(d);
    let v: Vec<Rational> = (0..basis.len()).map(|i| rat(coeffs[i % coeffs.len()])).collect();
    r.from_coordinates(d, &v)
}

fn ring_map(src: &GradedRing, dst: &GradedRing, coeffs: &[i64]) -> RingMap {
    let images = src
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let c: Vec<i64> = coeffs.iter().skip(i).copied().chain(coeffs.iter().copied()).collect();
            homogeneous(dst, g.degree, &c)
        })
        .collect();
    RingMap::new(src.clone(), dst.clone(), images).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn map_matrix_agrees_with_apply(a in degrees(), b in degrees(), c in coeffs(), pc in coeffs(), d in 0u32..=6) {
        let (src, dst) = (ring("x", &a), ring("y", &b));
        let f = ring_map(&src, &dst, &c);
        let d = 2 * d;
        let p = homogeneous(&src, d, &pc);
        let lhs = dst.coordinates(d, &f.apply(&p)).unwrap();
        let rhs = f.matrix(d).mul_vec(&src.coordinates(d, &p).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn map_matrix_composition(a in degrees(), b in degrees(), c in degrees(),
                              k1 in coeffs(), k2 in coeffs(), d in 0u32..=5) {
        let (r1, r2, r3) = (ring("x", &a), ring("y", &b), ring("z", &c));
        let f = ring_map(&r1, &r2, &k1);
        let g = ring_map(&r2, &r3, &k2);
        let d = 2 * d;
        prop_assert_eq!(f.then(&g).matrix(d), g.matrix(d).mul(&f.matrix(d)));
    }

    #[test]
    fn maps_are_multiplicative(a in degrees(), b in degrees(), c in coeffs(),
                               p in coeffs(), q in coeffs(), dp in 0u32..=3, dq in 0u32..=3) {
        let (src, dst) = (ring("x", &a), ring("y", &b));
        let f = ring_map(&src, &dst, &c);
        let p = homogeneous(&src, 2 * dp, &p);
        let q = homogeneous(&src, 2 * dq, &q);
        prop_assert_eq!(f.apply(&(&p * &q)), &f.apply(&p) * &f.apply(&q));
        prop_assert_eq!(f.apply(&(&p + &q)), &f.apply(&p) + &f.apply(&q));
    }

    #[test]
    fn polynomial_format_parse_round_trip(a in degrees(), c in coeffs(), den in 1i64..5, d in 0u32..=5) {
        let r = ring("v", &a);
        let p = homogeneous(&r, 2 * d, &c).scale(&Rational::new(1.into(), den.into()));
        prop_assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
    }

    #[test]
    fn slice_dims_match_product_expansion(a in degrees(), top in 0u32..=12) {
        let r = ring("w", &a);
        let hs = hilbert_series_ring(&r, top);
        for d in 0..=top {
            prop_assert_eq!(r.slice_dim(d) as u64, hs.truncated[d as usize]);
        }
    }
}

fn join_setup(n: u32) -> ModuleSetup {
    let v = eqcoh_core::analysis::validate(&GroupDiagram::poincare_join(n)).unwrap();
    v.module_setup().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kernel_slices_are_kernel_and_submodule(n in 1u32..=4, d in 0u32..=6, zc in coeffs()) {
        let km = kernel_slices(join_setup(n), 16).unwrap();
        let setup = km.setup();
        let d = 2 * d;
        for e in km.slice_elements(d) {
            prop_assert!(setup.difference(&e).is_zero());
            let z = homogeneous(&setup.base, 4, &zc);
            let ze = setup.act(&z, &e);
            prop_assert!(setup.difference(&ze).is_zero());
            // z·e lies in the computed slice of degree d + 4.
            prop_assert!(km.base_action(&z, &e).is_ok());
        }
    }

    #[test]
    fn dimension_identity_and_hilbert_coefficients(n in 1u32..=5, top in 0u32..=10) {
        let top = 2 * top;
        let km = kernel_slices(join_setup(n), top).unwrap();
        let s = km.setup();
        let (l, r, b) = (
            hilbert_series_ring(&s.left, top),
            hilbert_series_ring(&s.right, top),
            hilbert_series_ring(&s.bottom, top),
        );
        let f = km.free_basis_search();
        let hs = km.hilbert_series(&f);
        prop_assert!(hs.is_consistent());
        for d in (0..=top).step_by(2) {
            let i = d as usize;
            prop_assert_eq!(km.slice_dim(d) as u64 + b.truncated[i], l.truncated[i] + r.truncated[i]);
            prop_assert_eq!(km.slice_dim(d) as u64, hs.truncated[i]);
        }
    }

    #[test]
    fn regular_sequence_search_is_deterministic(n in 1u32..=3, seed in 0u64..1000) {
        let km = kernel_slices(join_setup(n), 16).unwrap();
        let v = eqcoh_core::analysis::validate(&GroupDiagram::poincare_join(n)).unwrap();
        let len = eqcoh_core::analysis::formality_and_dimension(&v).krull_dimension as usize;
        let a = find_regular_sequence(&km, len, seed).unwrap();
        let b = find_regular_sequence(&km, len, seed).unwrap();
        prop_assert_eq!(a.attempts, b.attempts);
    }

    #[test]
    fn diagram_render_parse_round_trip(n in 1u32..=6, max in prop::option::of(0u32..=20),
                                       json in any::<bool>(), explicit in any::<bool>(), seed in prop::option::of(any::<u64>())) {
        let mut diagram = GroupDiagram::poincare_join(n);
        if explicit {
            let v = eqcoh_core::analysis::validate(&diagram).unwrap();
            diagram.embeddings.h_in_k_minus = Embedding::Explicit(v.h_in_k_minus.clone());
            diagram.embeddings.k_plus_in_g = Embedding::Explicit(v.k_plus_in_g.clone());
        }
        let file = DiagramFile {
            diagram,
            options: FileOptions {
                max_degree: max.map(|m| 2 * m),
                hsop: if json { Some(vec!["u".into(), "p1".into()]) } else { None },
                format: Some(if json { OutputFormat::Json } else { OutputFormat::Text }),
                seed,
            },
        };
        let text = render_diagram(&file);
        prop_assert_eq!(parse_diagram(&text).unwrap(), file);
    }

    #[test]
    fn analysis_is_deterministic(n in 1u32..=4, top in 0u32..=8) {
        let opts = AnalysisOptions::new(2 * top);
        let a = serde_json::to_string(&analyze(&GroupDiagram::poincare_join(n), &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze(&GroupDiagram::poincare_join(n), &opts).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
