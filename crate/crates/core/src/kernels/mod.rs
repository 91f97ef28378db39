//! Correlation kernels.
//!
//! * Finite-`n` kernels of the rotation-invariant potentials, built from
//!   monomial norms and summed in log space.
//! * The universal edge kernel `k` and its first correction `k₂`, with the
//!   coefficient families of elliptic and rotation-invariant droplets.
//! * A complex `erfc` accurate to about `1e-13` relative on `|z| ≤ 10`.
//! * The Fischer inequality for Hermitian positive definite matrices.

mod edge;
mod erfc;
mod radial;

pub use edge::{
    edge_decay_envelope, edge_gaussian, edge_kernel_k, edge_kernel_k2, edge_kernel_k_direct, edge_point,
    k2_coeffs_elliptic, k2_coeffs_radial, Kernel2Coefficients,
};
pub use erfc::{erfc_asymptotic, erfc_complex, faddeeva, ErfcSector};
pub use radial::{correlation_rho_k, kernel_eval, monomial_log_norms, RadialKernelModel};

use crate::error::{Error, Result};
use crate::linalg::{cholesky_log_det, ComplexMatrix};

/// Whether `det M ≤ det M_ω · det M_{ωᶜ}` (with relative slack `1e-10`).
pub fn fischer_check(m: &ComplexMatrix, omega: &[usize]) -> Result<bool> {
    let n = m.rows();
    let mut in_omega = vec![false; n];
    for &i in omega {
        if i >= n || in_omega[i] {
            return Err(Error::arg(format!("index {i} is out of range or repeated")));
        }
        in_omega[i] = true;
    }
    let complement: Vec<usize> = (0..n).filter(|&i| !in_omega[i]).collect();
    let log_det = cholesky_log_det(m)?;
    let part = |idx: &[usize]| -> Result<f64> {
        if idx.is_empty() {
            Ok(0.0)
        } else {
            cholesky_log_det(&m.principal_submatrix(idx)?)
        }
    };
    Ok(log_det <= part(omega)? + part(&complement)? + 1e-10f64.ln_1p())
}
