//! Dense complex linear algebra used by the samplers and kernel checks.
//!
//! All tolerances quoted in this module are relative to the Frobenius norm
//! of the input so the routines stay scale-free.

mod eigen;
mod hermitian;
mod hessenberg;
mod householder;
mod lu;
mod matrix;
mod qr;

pub use eigen::{eigenvalues_general, eigenvalues_general_default, Spectrum};
pub use hermitian::{eig_hermitian, hermitian_power, HermitianEigen};
pub use hessenberg::hessenberg;
pub use lu::{cholesky_log_det, determinant};
pub use matrix::ComplexMatrix;
pub use qr::qr_decompose;
