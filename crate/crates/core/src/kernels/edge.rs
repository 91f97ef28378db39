use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::erfc::{erfc_complex, faddeeva};

/// Limiting edge kernel `k(ξ, η) = e^{2ξη̄ − |ξ|² − |η|²} erfc(ξ + η̄)/2`.
///
/// Evaluated through the Faddeeva function so that the Gaussian prefactor
/// and the growth of `erfc` cancel analytically.
pub fn edge_kernel_k(xi: Complex64, eta: Complex64) -> Complex64 {
    let s = xi + eta.conj();
    let gauss = 2.0 * xi * eta.conj() - xi.norm_sqr() - eta.norm_sqr();
    if s.re >= 0.0 {
        0.5 * (gauss - s * s).exp() * faddeeva(Complex64::new(-s.im, s.re))
    } else {
        let m = -s;
        gauss.exp() - 0.5 * (gauss - s * s).exp() * faddeeva(Complex64::new(-m.im, m.re))
    }
}

/// Direct evaluation of the defining formula, without rescaling.
pub fn edge_kernel_k_direct(xi: Complex64, eta: Complex64) -> Complex64 {
    let s = xi + eta.conj();
    let gauss = 2.0 * xi * eta.conj() - xi.norm_sqr() - eta.norm_sqr();
    0.5 * gauss.exp() * erfc_complex(s)
}

/// `e^{−2(Re ξ)² − 2(Re η)²} / (2√π e^{2i(Re ξ Im ξ − Re η Im η)})`.
pub fn edge_gaussian(xi: Complex64, eta: Complex64) -> Complex64 {
    let modulus = (-2.0 * xi.re * xi.re - 2.0 * eta.re * eta.re).exp() / (2.0 * PI.sqrt());
    Complex64::from_polar(modulus, -2.0 * (xi.re * xi.im - eta.re * eta.im))
}

/// Coefficients `β₁..β₅ ∈ ℂ`, `γ₁..γ₈ ∈ ℝ` of the first edge correction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Kernel2Coefficients {
    pub beta: [Complex64; 5],
    pub gamma: [f64; 8],
}

impl Kernel2Coefficients {
    pub fn is_finite(&self) -> bool {
        self.beta.iter().all(|b| b.is_finite()) && self.gamma.iter().all(|g| g.is_finite())
    }
}

/// The `1/√n` edge correction `k₂(ξ, η)` for the given coefficients.
pub fn edge_kernel_k2(xi: Complex64, eta: Complex64, c: &Kernel2Coefficients) -> Complex64 {
    let [b1, b2, b3, b4, b5] = c.beta;
    let [g1, g2, g3, g4, g5, g6, g7, g8] = c.gamma;
    let (x1, y1, x2, y2) = (xi.re, xi.im, eta.re, eta.im);
    let k = edge_kernel_k(xi, eta);
    let g = edge_gaussian(xi, eta);
    let s = xi + eta.conj();

    let polynomial = g1 * (x1.powi(3) + x2.powi(3))
        + g2 * (x1 * x1 * y1 + x2 * x2 * y2)
        + g3 * (x1 * y1 * y1 + x2 * y2 * y2)
        + g4 * (x1 + x2)
        + g5 * (y1 + y2);
    let quadratic =
        b1 * x1 * x1 + b1.conj() * x2 * x2 + b2 * x1 * y1 + b2.conj() * x2 * y2 + b3 * y1 * y1 + b3.conj() * y2 * y2;
    let linear = b4 * x1 + b4.conj() * x2 + b5 * y1 + b5.conj() * y2;

    polynomial * k
        + quadratic * (s * k - g)
        + g6 * s * k
        + g7 * g
        + linear * (s * s * k - s * g)
        + g8 * (s * s * s * k - s * s * g)
}

/// Coefficients for an elliptic droplet whose boundary has curvature `kappa`.
pub fn k2_coeffs_elliptic(kappa: f64) -> Kernel2Coefficients {
    let kt = 2f64.sqrt() * kappa / (3.0 * PI);
    let re = |x: f64| Complex64::new(x, 0.0);
    Kernel2Coefficients {
        beta: [re(-3.0 * kt), Complex64::new(0.0, -6.0 * kt), re(3.0 * kt), re(0.0), re(0.0)],
        gamma: [2.0 * kt, 0.0, -6.0 * kt, 0.0, 0.0, 0.0, -kt, kt],
    }
}

/// Coefficients for a rotation-invariant potential at the boundary radius
/// `z0`, given `ΔQ(z0)` and its outward normal derivative.
pub fn k2_coeffs_radial(z0: f64, laplacian_q: f64, normal_derivative_laplacian_q: f64) -> Kernel2Coefficients {
    let (dq, d) = (laplacian_q, normal_derivative_laplacian_q);
    let root = (2.0 * dq).sqrt();
    let g6 = d / (2.0 * PI * root);
    let g7 = -(4.0 * dq + 5.0 * z0 * d) / (12.0 * PI * z0 * root);
    let g8 = (z0 * d - dq) / (6.0 * PI * z0 * root);
    Kernel2Coefficients { beta: [Complex64::new(0.0, 0.0); 5], gamma: [-4.0 * g8, 0.0, 0.0, 0.0, 0.0, g6, g7, g8] }
}

/// Point `z0 + normal·√2 ξ / √(ΔQ(z0) n/4)` of the edge scaling.
pub fn edge_point(z0: Complex64, normal: Complex64, laplacian_q: f64, n: usize, xi: Complex64) -> Complex64 {
    z0 + normal * xi * 2f64.sqrt() / (laplacian_q * n as f64 / 4.0).sqrt()
}

/// `e^{−|ξ−η|²} + e^{−2(Re ξ)² − 2(Re η)²} / max(1, |ξ + η̄|)`.
pub fn edge_decay_envelope(xi: Complex64, eta: Complex64) -> f64 {
    let s = xi + eta.conj();
    (-(xi - eta).norm_sqr()).exp() + (-2.0 * xi.re * xi.re - 2.0 * eta.re * eta.re).exp() / s.norm().max(1.0)
}
