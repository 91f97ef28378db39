use std::f64::consts::PI;

use coulomb_gaps::quadrature::{gauss_legendre, integrate, integrate_to_infinity};
use coulomb_gaps::rng::SeedStream;
use coulomb_gaps::theory::{
    droplet_mass, j_constant_closed, j_constant_quadrature, joint_gap_window_probability, limit_gap_cdf,
    limit_gap_density, limit_gap_mean, limit_gap_quantile, location_weight, poisson_intensity, PotentialModel,
    RegionSpec, SizeWindow,
};
use coulomb_gaps::Complex64;
use proptest::prelude::*;

fn sweep() -> Vec<PotentialModel> {
    let mut models = Vec::new();
    for tau in [0.0, 0.25, 0.5, 0.75] {
        models.push(PotentialModel::elliptic(tau).unwrap());
    }
    for a in [0.0, 0.25, 0.5, 2.0] {
        models.push(PotentialModel::induced_ginibre(a).unwrap());
    }
    for a in [1.1, 1.25, 2.0, 5.0] {
        models.push(PotentialModel::induced_spherical(a).unwrap());
    }
    for a in [0.1, 0.25, 1.0, 3.0] {
        models.push(PotentialModel::truncated_unitary(a).unwrap());
    }
    models
}

#[test]
fn closed_form_constants_of_the_default_models() {
    let cases = [
        (PotentialModel::elliptic(0.5).unwrap(), 16.0 / 9.0),
        (PotentialModel::induced_ginibre(0.5).unwrap(), 1.0),
        (PotentialModel::induced_spherical(1.25).unwrap(), 0.3905),
        (PotentialModel::truncated_unitary(0.25).unwrap(), 9.7625),
    ];
    for (model, expected) in cases {
        assert!((j_constant_closed(&model) - expected).abs() < 5e-5, "{model:?}");
    }
}

#[test]
fn quadrature_agrees_with_closed_forms_over_a_sweep() {
    for model in sweep() {
        let closed = j_constant_closed(&model);
        let quad = j_constant_quadrature(&model, 1e-10).unwrap();
        assert!((closed - quad).abs() <= 1e-6 * closed.max(1.0), "{model:?}: {closed} vs {quad}");
        let mass = droplet_mass(&model, 1e-10).unwrap();
        assert!((mass - 1.0).abs() <= 1e-8, "{model:?}: mass {mass}");
    }
}

/// `π² ∫ ρ³` by a polar Gauss–Legendre rule over the disc `|z| ≤ r_max`,
/// using only the pointwise density.
fn j_by_brute_polar(model: &PotentialModel, r_max: f64) -> f64 {
    let (xr, wr) = gauss_legendre(400);
    let (xt, wt) = gauss_legendre(64);
    let mut total = 0.0;
    for (a, wa) in xr.iter().zip(&wr) {
        let r = 0.5 * r_max * (a + 1.0);
        for (b, wb) in xt.iter().zip(&wt) {
            let theta = PI * (b + 1.0);
            let z = Complex64::from_polar(r, theta);
            total += wa * wb * model.rho(z).powi(3) * r;
        }
    }
    PI * PI * total * 0.5 * r_max * PI
}

#[test]
fn density_field_reproduces_the_constants() {
    for model in [PotentialModel::induced_spherical(1.25).unwrap(), PotentialModel::truncated_unitary(0.25).unwrap()] {
        let (_, r_out) = model.radial_support().unwrap();
        let brute = j_by_brute_polar(&model, r_out);
        assert!((brute / j_constant_closed(&model) - 1.0).abs() < 1e-8, "{model:?}: {brute}");
    }
    for model in sweep() {
        let z = Complex64::new(0.01, 0.02);
        if model.in_droplet(z) {
            assert!((model.rho(z) - model.laplacian_q(z) / (4.0 * PI)).abs() < 1e-12);
        }
        assert_eq!(model.rho(Complex64::new(50.0, 0.0)), 0.0);
    }
}

#[test]
fn limit_laws_are_normalised_and_consistent() {
    for k in 1..=3 {
        for j in [16.0 / 9.0, 1.0, 9.7625] {
            let mass = integrate_to_infinity(|x| limit_gap_density(k, j, x), 0.0, 1e-13, 1e-13, 500).unwrap();
            assert!((mass.value - 1.0).abs() < 1e-10, "k={k} J={j}: {}", mass.value);
            let mean = integrate_to_infinity(|x| x * limit_gap_density(k, j, x), 0.0, 1e-13, 1e-13, 500).unwrap();
            assert!((mean.value - limit_gap_mean(k, j)).abs() < 1e-9);
            for i in 1..60 {
                let x = 0.05 * i as f64;
                let h = 2e-4 * x;
                let f = |t: f64| limit_gap_cdf(k, j, t);
                let fd = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
                let d = limit_gap_density(k, j, x);
                if d > 1e-5 {
                    assert!((fd / d - 1.0).abs() < 1e-6, "k={k} J={j} x={x}: {fd} vs {d}");
                }
                let tail = integrate_to_infinity(|t| limit_gap_density(k, j, t), x, 1e-14, 1e-13, 500).unwrap();
                assert!((limit_gap_cdf(k, j, x) + tail.value - 1.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn documented_values() {
    assert_eq!(limit_gap_density(1, 1.0, 0.0), 0.0);
    assert!((limit_gap_cdf(1, 1.0, (4.0 * 2f64.ln()).powf(0.25)) - 0.5).abs() < 1e-14);
    assert!(((4.0 * 2f64.ln()).powf(0.25) - 1.290391).abs() < 1e-6);
    // Golden-section search for the mode of the k = 1 density.
    let (mut a, mut b) = (0.5f64, 2.5f64);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if limit_gap_density(1, 1.0, c) > limit_gap_density(1, 1.0, d) {
            b = d;
        } else {
            a = c;
        }
    }
    assert!((0.5 * (a + b) - 3f64.powf(0.25)).abs() < 1e-6);
    assert!((limit_gap_mean(1, 1.0) - 1.2818).abs() < 1e-4);
    for k in 1..=4 {
        assert_eq!(limit_gap_cdf(k, 2.0, 0.0), 0.0);
        for p in [0.01, 0.3, 0.5, 0.9, 0.999] {
            let x = limit_gap_quantile(k, 2.0, p);
            assert!((limit_gap_cdf(k, 2.0, x) - p).abs() < 1e-12);
        }
    }
}

/// `∫_{0<x₁<…<x_{k−1}<x} Jᵏ e^{−J x⁴/4} Π x_ℓ³` by nested Gauss–Legendre.
fn simplex_marginal(k: usize, j: f64, x: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(24);
    fn nested(level: usize, upper: f64, nodes: &[f64], weights: &[f64]) -> f64 {
        if level == 0 {
            return 1.0;
        }
        let mut s = 0.0;
        for (t, w) in nodes.iter().zip(weights) {
            let y = 0.5 * upper * (t + 1.0);
            s += w * 0.5 * upper * y.powi(3) * nested(level - 1, y, nodes, weights);
        }
        s
    }
    j.powi(k as i32) * (-0.25 * j * x.powi(4)).exp() * x.powi(3) * nested(k - 1, x, &nodes, &weights)
}

#[test]
fn ordered_simplex_sum_rule() {
    for k in 1..=3 {
        for j in [1.0, 16.0 / 9.0] {
            for i in 1..30 {
                let x = 0.1 * i as f64;
                let expected = limit_gap_density(k, j, x);
                let got = simplex_marginal(k, j, x);
                assert!((got - expected).abs() <= 1e-6 * expected.max(1e-12), "k={k} x={x}: {got} vs {expected}");
            }
        }
    }
}

#[test]
fn joint_window_examples() {
    let total = joint_gap_window_probability(1, 1.0, &[(1e-300, f64::INFINITY)]).unwrap();
    assert!((total - 1.0).abs() < 1e-15);
    let p = joint_gap_window_probability(1, 1.0, &[(1.0, 2.0)]).unwrap();
    assert!((p - 0.760485).abs() < 1e-6);
    let q = joint_gap_window_probability(2, 1.0, &[(0.5, 0.6), (1.0, 2.0)]).unwrap();
    let expected = ((-0.25f64).exp() - (-4.0f64).exp()) * 0.25 * (0.6f64.powi(4) - 0.5f64.powi(4));
    assert!((q - expected).abs() < 1e-15);
    assert!(joint_gap_window_probability(2, 1.0, &[(1.0, 2.0), (0.5, 0.6)]).is_err());
    assert!(joint_gap_window_probability(2, 1.0, &[(0.5, f64::INFINITY), (1.0, 2.0)]).is_err());
}

#[test]
fn joint_window_probability_matches_poisson_monte_carlo() {
    // Points of the limit process: J r⁴/4 are the arrival times of a unit-rate Poisson process.
    let j = 16.0 / 9.0;
    let windows = [(0.3, 0.9), (1.0, 1.4)];
    let exact = joint_gap_window_probability(2, j, &windows).unwrap();
    let trials = 200_000;
    let mut rng = SeedStream::new(2024, 0).rng();
    let mut hits = 0u64;
    for _ in 0..trials {
        let e1 = -(1.0 - rng.uniform()).ln();
        let e2 = e1 - (1.0 - rng.uniform()).ln();
        let t1 = (4.0 * e1 / j).powf(0.25);
        let t2 = (4.0 * e2 / j).powf(0.25);
        if t1 > windows[0].0 && t1 < windows[0].1 && t2 > windows[1].0 && t2 < windows[1].1 {
            hits += 1;
        }
    }
    let p = hits as f64 / trials as f64;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!((p - exact).abs() < 4.0 * sigma, "MC {p} vs {exact}");
}

#[test]
fn poisson_intensities() {
    let ginue = PotentialModel::elliptic(0.0).unwrap();
    let w = SizeWindow::new(0.0, 1.0).unwrap();
    assert!((poisson_intensity(&ginue, &w, &RegionSpec::WholePlane).unwrap() - 0.25).abs() < 1e-15);
    let tiny = SizeWindow::new(0.0, 1e-6).unwrap();
    assert!(poisson_intensity(&ginue, &tiny, &RegionSpec::WholePlane).unwrap() < 1e-24);
    let induced = PotentialModel::induced_ginibre(0.5).unwrap();
    let right = RegionSpec::HalfPlane { normal: Complex64::new(1.0, 0.0), offset: 0.0 };
    assert!((poisson_intensity(&induced, &w, &right).unwrap() - 0.125).abs() < 1e-8);
    assert!(poisson_intensity(&ginue, &SizeWindow::new(0.0, f64::INFINITY).unwrap(), &RegionSpec::WholePlane).is_err());
    for model in sweep() {
        let r = 1.7;
        let lambda = poisson_intensity(&model, &SizeWindow::new(0.0, r).unwrap(), &RegionSpec::WholePlane).unwrap();
        assert_eq!(lambda, j_constant_closed(&model) * r.powi(4) / 4.0);
    }
}

#[test]
fn location_weights_are_additive() {
    let models = [
        PotentialModel::elliptic(0.5).unwrap(),
        PotentialModel::induced_spherical(1.25).unwrap(),
        PotentialModel::truncated_unitary(0.25).unwrap(),
    ];
    let halves = [
        RegionSpec::HalfPlane { normal: Complex64::new(0.6, 0.8), offset: 0.1 },
        RegionSpec::HalfPlane { normal: Complex64::new(-0.6, -0.8), offset: -0.1 },
    ];
    for model in models {
        let j = j_constant_closed(&model);
        let sum: f64 = halves.iter().map(|h| location_weight(&model, h, 1e-10).unwrap()).sum();
        assert!((sum / j - 1.0).abs() < 1e-7, "{model:?}: {sum} vs {j}");
        let big = RegionSpec::Disk { center: Complex64::new(0.0, 0.0), radius: 10.0 };
        assert!((location_weight(&model, &big, 1e-10).unwrap() / j - 1.0).abs() < 1e-7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cdf_is_monotone(k in 1usize..6, j in 0.1f64..20.0, x in 0.0f64..4.0, dx in 0.0f64..1.0) {
        let a = limit_gap_cdf(k, j, x);
        let b = limit_gap_cdf(k, j, x + dx);
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(a <= b);
    }

    #[test]
    fn rho_is_nonnegative(x in -3.0f64..3.0, y in -3.0f64..3.0, which in 0usize..16) {
        let model = sweep()[which];
        prop_assert!(model.rho(Complex64::new(x, y)) >= 0.0);
    }

    #[test]
    fn radial_density_matches_its_integral(which in 8usize..16, r in 0.0f64..1.0) {
        let model = sweep()[which];
        let (r_in, r_out) = model.radial_support().unwrap();
        let cut = r_in + r * (r_out - r_in);
        let mass = integrate(|s| 2.0 * PI * s * model.rho(Complex64::new(s, 0.0)), r_in, cut, 1e-12, 1e-12, 200).unwrap();
        // Closed forms of the radial distribution functions.
        let expected = match model {
            PotentialModel::InducedSpherical { a } => a * cut * cut / (1.0 + cut * cut),
            PotentialModel::TruncatedUnitary { a } => a * cut * cut / (1.0 - cut * cut),
            _ => unreachable!(),
        };
        prop_assert!((mass.value - expected).abs() < 1e-9);
    }
}
