use std::f64::consts::PI;
use std::time::Instant;

use coulomb_gaps::kernels::{
    edge_decay_envelope, edge_gaussian, edge_kernel_k, edge_kernel_k2, edge_point, erfc_asymptotic, erfc_complex,
    fischer_check, k2_coeffs_elliptic, k2_coeffs_radial, ErfcSector, RadialKernelModel,
};
use coulomb_gaps::linalg::ComplexMatrix;
use coulomb_gaps::rng::SeedStream;
use coulomb_gaps::theory::PotentialModel;
use coulomb_gaps::Complex64;

use crate::error::Result;
use crate::report::{CheckResult, ExperimentReport};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Lattice points of `[−r, r]²` inside the disk of radius `r`.
fn disk_grid(radius: f64, steps: usize) -> Vec<Complex64> {
    let h = 2.0 * radius / steps as f64;
    let mut out = Vec::new();
    for i in 0..=steps {
        for j in 0..=steps {
            let z = c(-radius + h * i as f64, -radius + h * j as f64);
            if z.norm() <= radius {
                out.push(z);
            }
        }
    }
    out
}

fn edge_profile() -> Result<f64> {
    let n = 400;
    let model = RadialKernelModel::new(PotentialModel::elliptic(0.0)?, n)?;
    let mut worst = 0.0f64;
    for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let z = edge_point(c(1.0, 0.0), c(1.0, 0.0), 4.0, n, c(x, 0.0));
        let scaled = model.density(z)? * PI / n as f64;
        worst = worst.max((scaled - 0.5 * erfc_complex(c(2.0 * x, 0.0)).re).abs());
    }
    Ok(worst)
}

fn elliptic_identity() -> f64 {
    let pts = disk_grid(2.0, 10);
    let mut worst = 0.0f64;
    for kappa in [0.5, 1.0, 2.5] {
        let kt = 2f64.sqrt() * kappa / (3.0 * PI);
        let coeffs = k2_coeffs_elliptic(kappa);
        for &xi in &pts {
            for &eta in &pts {
                let eb = eta.conj();
                let poly = 2.0 * xi * xi + 2.0 * eb * eb - 2.0 * xi * eb - 1.0;
                let cubic =
                    xi.im.powi(3) - eta.im.powi(3) + 3.0 * eta.re.powi(2) * eta.im - 3.0 * xi.re.powi(2) * xi.im;
                let direct = kt * (edge_gaussian(xi, eta) * poly + c(0.0, 2.0) * edge_kernel_k(xi, eta) * cubic);
                worst = worst.max((edge_kernel_k2(xi, eta, &coeffs) - direct).norm());
            }
        }
    }
    worst
}

fn radial_identity() -> f64 {
    let mut worst = 0.0f64;
    for (z0, dq, dn) in [(1.0, 4.0, 0.0), (2.0, 0.16, -0.128), (0.7, 3.0, 1.2)] {
        let coeffs = k2_coeffs_radial(z0, dq, dn);
        let ratio = dn / dq;
        for i in 0..=40 {
            let t = -2.0 + 0.1 * i as f64;
            let k = edge_kernel_k(c(t, 0.0), c(t, 0.0)).re;
            let brace = (-4.0 * t * t).exp() / (2.0 * PI.sqrt())
                * (ratio * z0 * (5.0 + 8.0 * t * t) + 4.0 - 8.0 * t * t)
                - 12.0 * z0 * ratio * t * k;
            let direct = -dq.sqrt() / (12.0 * PI * z0 * 2f64.sqrt()) * brace;
            worst = worst.max((edge_kernel_k2(c(t, 0.0), c(t, 0.0), &coeffs) - direct).norm());
        }
    }
    worst
}

/// `max |k|` and the smallest decay constant over an `|ξ|, |η| ≤ 8` grid.
fn boundedness_and_decay() -> (f64, f64) {
    let pts = disk_grid(8.0, 20);
    let mut max_abs = 0.0f64;
    let mut fitted = 0.0f64;
    for &xi in &pts {
        for &eta in &pts {
            let v = edge_kernel_k(xi, eta).norm();
            max_abs = max_abs.max(v);
            if (xi + eta.conj()).norm() >= 3.0 {
                fitted = fitted.max(v / edge_decay_envelope(xi, eta));
            }
        }
    }
    (max_abs, fitted)
}

/// Worst relative error of the 4-term expansion at `|s| = 8` in both sectors.
fn erfc_sectors() -> f64 {
    let mut worst = 0.0f64;
    for i in 0..=24 {
        let theta = -PI + 2.0 * PI * i as f64 / 24.0;
        let s = Complex64::from_polar(8.0, theta);
        let exact = erfc_complex(s);
        if theta.abs() <= 2.0 * PI / 3.0 {
            let e = erfc_asymptotic(s, ErfcSector::Right, 4);
            worst = worst.max((e - exact).norm() / exact.norm());
        }
        if theta.abs() >= PI / 3.0 {
            let e = erfc_asymptotic(s, ErfcSector::Left, 4);
            worst = worst.max((e - exact).norm() / exact.norm());
        }
    }
    worst
}

fn k2_hermitian_defect() -> f64 {
    let families = [k2_coeffs_elliptic(0.7), k2_coeffs_radial(1.0, 4.0, 0.0), k2_coeffs_radial(0.7, 3.0, 1.2)];
    let mut rng = SeedStream::new(3, 0).rng();
    let mut worst = 0.0f64;
    for coeffs in &families {
        for _ in 0..200 {
            let xi = c(6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0);
            let eta = c(6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0);
            let a = edge_kernel_k2(xi, eta, coeffs);
            let b = edge_kernel_k2(eta, xi, coeffs).conj();
            worst = worst.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    worst
}

fn fischer_violations(matrices: usize) -> Result<f64> {
    let mut rng = SeedStream::new(4, 0).rng();
    let mut violations = 0usize;
    for _ in 0..matrices {
        let n = 1 + (rng.next_u64() % 8) as usize;
        let g = ComplexMatrix::from_fn(n, n, |_, _| rng.complex_gaussian(1.0));
        let m = g.adjoint_matmul(&g)?.add(&ComplexMatrix::identity(n))?;
        let omega: Vec<usize> = (0..n).filter(|_| rng.uniform() < 0.5).collect();
        if !fischer_check(&m, &omega)? {
            violations += 1;
        }
    }
    Ok(violations as f64)
}

/// Deterministic numerical checks of the kernel layer.
pub fn run_kernel_checks() -> Result<ExperimentReport> {
    let start = Instant::now();
    let (max_abs, decay) = boundedness_and_decay();
    let kernel_checks = vec![
        CheckResult::at_most("edge_profile_ginue_n400", edge_profile()?, 0.05),
        CheckResult::at_most("k2_elliptic_identity", elliptic_identity(), 1e-10),
        CheckResult::at_most("k2_radial_diagonal_identity", radial_identity(), 1e-10),
        CheckResult::at_most("k2_hermitian_defect", k2_hermitian_defect(), 1e-12),
        CheckResult::at_most("edge_kernel_max_abs", max_abs, 1.5),
        CheckResult::at_most("edge_kernel_decay_constant", decay, 2.0),
        CheckResult::at_most("erfc_sector_expansion_rel_error", erfc_sectors(), 1e-4),
        CheckResult::at_most("fischer_violations", fischer_violations(1000)?, 0.0),
    ];
    Ok(ExperimentReport {
        kernel_checks,
        runtime_seconds: start.elapsed().as_secs_f64(),
        ..ExperimentReport::default()
    })
}
