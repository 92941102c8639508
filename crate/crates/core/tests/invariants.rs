use proptest::prelude::*;
use qexp_core::matcalc::{mpow, random_density, random_prior, tensor};
use qexp_core::{
    divergence, information, CqChannel, DivergenceKind, InfoVariant, OptimizerOptions,
};

const KINDS: [DivergenceKind; 3] = [DivergenceKind::Petz, DivergenceKind::Sandwiched, DivergenceKind::LogEuclidean];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn powers_compose(seed in 0u64..10_000, rank in 1usize..=3, p in -2.0f64..2.0, q in -2.0f64..2.0) {
        let a = random_density(3, rank, seed).unwrap();
        let lhs = mpow(&mpow(a.as_operator(), p, None).unwrap(), q, None).unwrap();
        let rhs = mpow(a.as_operator(), p * q, None).unwrap();
        // Entries of powers grow like λ_min^{pq}; compare relative to the largest.
        let scale = lhs.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9 * scale);
    }

    #[test]
    fn divergences_are_nonnegative_and_additive(
        s1 in 0u64..10_000, s2 in 0u64..10_000, alpha in 0.3f64..3.0, k in 0usize..3,
    ) {
        let kind = KINDS[k];
        let (r1, t1) = (random_density(2, 2, s1).unwrap(), random_density(2, 2, s1 + 1).unwrap());
        let (r2, t2) = (random_density(2, 2, s2).unwrap(), random_density(2, 2, s2 + 1).unwrap());
        let d1 = divergence(kind, r1.as_operator(), t1.as_operator(), alpha).unwrap().to_f64();
        let d2 = divergence(kind, r2.as_operator(), t2.as_operator(), alpha).unwrap().to_f64();
        prop_assert!(d1 >= -1e-12);
        let joint = divergence(
            kind,
            &tensor(r1.as_operator(), r2.as_operator()),
            &tensor(t1.as_operator(), t2.as_operator()),
            alpha,
        ).unwrap().to_f64();
        prop_assert!((joint - d1 - d2).abs() <= 1e-8 * (1.0 + joint.abs()));
    }

    #[test]
    fn renyi_information_is_bounded_by_prior_entropy(seed in 0u64..10_000, alpha in 0.5f64..3.0) {
        let ch = CqChannel::new((0..3).map(|i| random_density(2, 2, seed * 3 + i).unwrap()).collect()).unwrap();
        let p = random_prior(3, seed).unwrap();
        let v = information(InfoVariant::Renyi, DivergenceKind::Petz, &p, &ch, alpha, &OptimizerOptions::default())
            .unwrap()
            .value
            .to_f64();
        prop_assert!(v >= -1e-10);
        prop_assert!(v <= 3f64.ln() + 1e-9);
    }
}
