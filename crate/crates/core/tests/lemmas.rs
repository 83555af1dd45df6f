use hankel_core::lemmas::{carlson_slack, classify_region_exact, pipeline_pairs, psi_eval, sample_schwarz, Region};
use hankel_core::scalar::{q, to_f64};
use hankel_core::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pipeline_pairs_are_covered_with_unit_phi() {
    for (mu, nu) in pipeline_pairs() {
        let v = classify_region_exact(&mu, &nu);
        assert!(v.is_covered(), "({mu}, {nu})");
        assert_eq!(v.phi, Some(1.0), "({mu}, {nu})");
    }
    assert_eq!(classify_region_exact(&q(-15, 16), &q(0, 1)).region, Region::D2);
    assert_eq!(classify_region_exact(&q(-5, 16), &q(0, 1)).region, Region::D1);
    assert_eq!(classify_region_exact(&q(5, 11), &q(-7, 44)).region, Region::D1);
}

#[test]
fn z_cubed_attains_phi() {
    let c = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    assert_eq!(psi_eval(&c, -1.25, 0.0), 1.0);
}

#[test]
fn lemma_and_carlson_hold_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let pairs: Vec<(f64, f64)> = pipeline_pairs().iter().map(|(m, n)| (to_f64(m), to_f64(n))).collect();
    for s in sample_schwarz(&mut rng, 20_000) {
        for &(mu, nu) in &pairs {
            assert!(psi_eval(&s.c, mu, nu) <= 1.0 + 1e-9, "{s:?} at ({mu}, {nu})");
        }
        assert!(carlson_slack(&s.c).iter().all(|&v| v >= -1e-12), "{s:?}");
    }
}
