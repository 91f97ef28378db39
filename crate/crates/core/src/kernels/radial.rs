use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{determinant, ComplexMatrix};
use crate::special::ln_gamma;
use crate::theory::PotentialModel;

/// `log h_j` for the monomials `z^j`, `h_j = ∫ |z|^{2j} e^{−nQ(z)} d²z`.
///
/// Only rotation-invariant potentials have monomial orthogonal
/// polynomials; the elliptic model is accepted for `τ = 0` only.
pub fn monomial_log_norms(potential: &PotentialModel, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::arg("n must be positive"));
    }
    let nf = n as f64;
    let log_pi = std::f64::consts::PI.ln();
    let norms = match *potential {
        PotentialModel::Elliptic { tau } => {
            if tau != 0.0 {
                return Err(Error::arg("monomials are orthogonal only for τ = 0"));
            }
            (0..n).map(|j| log_pi + ln_gamma(j as f64 + 1.0) - (j as f64 + 1.0) * nf.ln()).collect()
        }
        PotentialModel::InducedGinibre { a } => {
            let an = a * nf;
            (0..n).map(|j| log_pi + ln_gamma(j as f64 + an + 1.0) - (j as f64 + an + 1.0) * nf.ln()).collect()
        }
        PotentialModel::InducedSpherical { a } => {
            let an = a * nf;
            if an <= nf {
                return Err(Error::arg(format!("need a·n > n, got a·n = {an}")));
            }
            (0..n)
                .map(|j| {
                    let j = j as f64;
                    log_pi + ln_gamma(j + 1.0) + ln_gamma(an - j - 1.0) - ln_gamma(an)
                })
                .collect()
        }
        PotentialModel::TruncatedUnitary { a } => {
            let an = a * nf;
            (0..n)
                .map(|j| {
                    let j = j as f64;
                    log_pi + ln_gamma(j + 1.0) + ln_gamma(an + 1.0) - ln_gamma(j + an + 2.0)
                })
                .collect()
        }
    };
    Ok(norms)
}

/// Finite-`n` correlation kernel of a rotation-invariant potential.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialKernelModel {
    potential: PotentialModel,
    n: usize,
    log_norms: Vec<f64>,
}

impl RadialKernelModel {
    pub fn new(potential: PotentialModel, n: usize) -> Result<Self> {
        let potential = potential.validated()?;
        let log_norms = monomial_log_norms(&potential, n)?;
        Ok(Self { potential, n, log_norms })
    }

    pub fn potential(&self) -> &PotentialModel {
        &self.potential
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_norms(&self) -> &[f64] {
        &self.log_norms
    }

    fn check_domain(&self, z: Complex64) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::arg(format!("point {z} is not finite")));
        }
        if matches!(self.potential, PotentialModel::TruncatedUnitary { .. }) && z.norm() >= 1.0 {
            return Err(Error::arg(format!("point {z} lies outside the unit disk")));
        }
        Ok(())
    }

    /// `K_n(z, w) = e^{−n(Q(z)+Q(w))/2} Σ_j (z w̄)^j / h_j`.
    pub fn kernel(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        self.check_domain(z)?;
        self.check_domain(w)?;
        let nf = self.n as f64;
        let base = -0.5 * nf * (self.potential.q(z) + self.potential.q(w));
        let product = z * w.conj();
        let log_modulus = product.norm().ln();
        let phase = product.arg();
        // Terms are exponentiated relative to the largest one, with phases e^{ijφ}.
        let log_term = |j: usize| {
            if j == 0 {
                base - self.log_norms[0]
            } else {
                j as f64 * log_modulus - self.log_norms[j] + base
            }
        };
        let peak = (0..self.n).map(log_term).fold(f64::NEG_INFINITY, f64::max);
        if peak == f64::NEG_INFINITY {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if peak.is_nan() {
            return Err(Error::Numerical(format!("kernel at ({z}, {w}) is undefined")));
        }
        let sum: Complex64 =
            (0..self.n).map(|j| Complex64::from_polar((log_term(j) - peak).exp(), j as f64 * phase)).sum();
        Ok(sum * peak.exp())
    }

    /// One-point function `ρ₁(z) = K_n(z, z)`.
    pub fn density(&self, z: Complex64) -> Result<f64> {
        Ok(self.kernel(z, z)?.re)
    }
}

pub fn kernel_eval(model: &RadialKernelModel, z: Complex64, w: Complex64) -> Result<Complex64> {
    model.kernel(z, w)
}

/// `ρ_k(w₁, …, w_k) = det(K_n(w_i, w_j))`.
pub fn correlation_rho_k(model: &RadialKernelModel, points: &[Complex64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::arg("need at least one point"));
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return Err(Error::arg(format!("point {a} is repeated")));
        }
    }
    let k = points.len();
    let mut m = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = model.kernel(points[i], points[j])?;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    let det = determinant(&m)?;
    let scale: f64 = (0..k).map(|i| m[(i, i)].re.abs()).product();
    if det.im.abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Numerical(format!("correlation determinant {det} is not real")));
    }
    Ok(det.re)
}
