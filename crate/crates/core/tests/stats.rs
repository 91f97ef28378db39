use coulomb_gaps::rng::{SeedStream, TrialRng};
use coulomb_gaps::special::{chi_square_cdf, chi_square_quantile};
use coulomb_gaps::stats::{
    build_histogram, chi2_poisson, factorial_moment, ks_statistic, poisson_pmf, CountTally, Histogram,
};
use coulomb_gaps::theory::{limit_gap_cdf, limit_gap_quantile};
use proptest::prelude::*;

/// Poisson variate by sequential inversion.
fn poisson(rng: &mut TrialRng, lambda: f64) -> u64 {
    let u = rng.uniform();
    let mut k = 0u64;
    let mut p = (-lambda).exp();
    let mut cdf = p;
    while u >= cdf && k < 1000 {
        k += 1;
        p *= lambda / k as f64;
        cdf += p;
    }
    k
}

#[test]
fn factorial_moments_of_poisson_counts() {
    let mut rng = SeedStream::new(1, 0).rng();
    let tally = CountTally::from_counts((0..200_000).map(|_| poisson(&mut rng, 0.5)));
    assert!((tally.mean() - 0.5).abs() < 0.01);
    assert!((factorial_moment(&tally, 1) - 0.5).abs() < 0.01);
    assert!((factorial_moment(&tally, 2) - 0.25).abs() < 0.01);
    assert!((factorial_moment(&tally, 3) - 0.125).abs() < 0.01);
}

#[test]
fn chi_square_test_is_calibrated() {
    let replicates = 400;
    let mut rejections = 0;
    for r in 0..replicates {
        let mut rng = SeedStream::new(2, r).rng();
        let tally = CountTally::from_counts((0..2000).map(|_| poisson(&mut rng, 0.25)));
        let test = chi2_poisson(&tally, 0.25).unwrap();
        if test.statistic > test.critical_value(0.99) {
            rejections += 1;
        }
    }
    let rate = rejections as f64 / replicates as f64;
    assert!(rate <= 0.03, "rejection rate {rate}");
    // A wrong intensity is rejected.
    let mut rng = SeedStream::new(3, 0).rng();
    let tally = CountTally::from_counts((0..2000).map(|_| poisson(&mut rng, 0.25)));
    let wrong = chi2_poisson(&tally, 0.4).unwrap();
    assert!(wrong.statistic > wrong.critical_value(0.99));
}

#[test]
fn chi_square_quantiles_invert_the_cdf() {
    for dof in 1..12 {
        for p in [0.01, 0.5, 0.95, 0.99] {
            let x = chi_square_quantile(dof, p);
            assert!((chi_square_cdf(dof, x) - p).abs() < 1e-10);
        }
    }
    // Tabulated 99th percentiles.
    assert!((chi_square_quantile(1, 0.99) - 6.634_896_601).abs() < 1e-6);
    assert!((chi_square_quantile(4, 0.99) - 13.276_704_13).abs() < 1e-6);
}

#[test]
fn poisson_pmf_sums_to_one() {
    for lambda in [0.1, 0.25, 1.0, 7.5] {
        let total: f64 = (0..200).map(|k| poisson_pmf(lambda, k)).sum();
        assert!((total - 1.0).abs() < 1e-14);
        let mean: f64 = (0..200).map(|k| k as f64 * poisson_pmf(lambda, k)).sum();
        assert!((mean - lambda).abs() < 1e-12);
    }
}

#[test]
fn inverse_cdf_samples_fit_their_histogram() {
    let (k, j) = (2, 16.0 / 9.0);
    let mut rng = SeedStream::new(4, 0).rng();
    let samples: Vec<f64> = (0..20_000).map(|_| limit_gap_quantile(k, j, rng.uniform())).collect();
    let edges: Vec<f64> = (0..=30).map(|i| 0.1 * i as f64).collect();
    let h = build_histogram(&samples, &edges).unwrap();
    let total = h.total as f64;
    let mut chi2 = 0.0;
    let mut bins = 0;
    for (b, w) in edges.windows(2).enumerate() {
        let expected = total * (limit_gap_cdf(k, j, w[1]) - limit_gap_cdf(k, j, w[0]));
        if expected >= 5.0 {
            chi2 += (h.counts[b] as f64 - expected).powi(2) / expected;
            bins += 1;
        }
    }
    assert!(chi2 < chi_square_quantile(bins - 1, 0.999), "χ² = {chi2} over {bins} bins");
    let d = ks_statistic(&samples, |x| limit_gap_cdf(k, j, x)).unwrap();
    assert!(d < 1.63 / (samples.len() as f64).sqrt(), "KS {d}");
    let dens = h.densities();
    let mass: f64 = dens.iter().zip(edges.windows(2)).map(|(d, w)| d * (w[1] - w[0])).sum();
    assert!((mass - (h.total - h.underflow - h.overflow) as f64 / total).abs() < 1e-12);
}

#[test]
fn histograms_merge_like_concatenation() {
    let edges = vec![0.0, 0.5, 1.0, 2.0];
    let a = [0.1, 0.7, 1.5, 3.0, -1.0];
    let b = [0.2, 0.5, 1.0, f64::NAN];
    let mut ha = build_histogram(&a, &edges).unwrap();
    let hb = build_histogram(&b, &edges).unwrap();
    ha.merge(&hb).unwrap();
    let all: Vec<f64> = a.iter().chain(&b).copied().collect();
    let hall = build_histogram(&all, &edges).unwrap();
    assert_eq!(ha, hall);
    assert!(ha.merge(&Histogram::new(vec![0.0, 1.0]).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ks_is_invariant_under_monotone_maps(seed in any::<u64>(), n in 5usize..300) {
        let mut rng = SeedStream::new(seed, 0).rng();
        let xs: Vec<f64> = (0..n).map(|_| rng.uniform()).collect();
        let cdf = |x: f64| x.clamp(0.0, 1.0).powi(2);
        let d1 = ks_statistic(&xs, cdf).unwrap();
        let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let d2 = ks_statistic(&ys, |y| cdf(y.ln())).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&d1));
    }

    #[test]
    fn tallies_merge_like_concatenation(a in prop::collection::vec(0u64..6, 0..50), b in prop::collection::vec(0u64..6, 0..50)) {
        let mut ta = CountTally::from_counts(a.iter().copied());
        ta.merge(&CountTally::from_counts(b.iter().copied()));
        let tall = CountTally::from_counts(a.iter().chain(&b).copied());
        prop_assert_eq!(ta, tall);
    }
}
