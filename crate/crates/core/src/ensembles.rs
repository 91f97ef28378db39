//! Exact samplers for the four random matrix models.
//!
//! * elliptic GinUE: `√(1+τ) H₁ + i √(1−τ) H₂` with `Hⱼ = (Gⱼ + Gⱼ†)/2`,
//!   entry variance `1/n`, potential `(r² − τ Re z²)/(1−τ²)`;
//! * induced GinUE: `(G†G)^{1/2} U` with `G` of size `m × n` and variance
//!   `1/n`, `a = (m−n)/n`;
//! * induced SrUE: `(G₂†G₂)^{−1/2} G₁` with `G₂` of size `m × n` and
//!   variance `1`, `a = m/n`;
//! * TUE: top-left `n × n` block of a Haar unitary of size `n + α`,
//!   `a = (α−1)/n`.
//!
//! Integer sizes are obtained by rounding the requested `a`; the effective
//! value is kept in [`EnsembleSpec`] and used for all theory comparisons.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gapstats::PointSample;
use crate::linalg::{eigenvalues_general_default, hermitian_power, qr_decompose, ComplexMatrix};
use crate::rng::{SeedStream, TrialRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleKind {
    #[serde(rename = "elliptic_ginue")]
    EllipticGinUE { tau: f64 },
    #[serde(rename = "induced_ginue")]
    InducedGinUE { a: f64 },
    #[serde(rename = "induced_srue")]
    InducedSrUE { a: f64 },
    #[serde(rename = "tue")]
    Tue { a: f64 },
}

impl EnsembleKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::EllipticGinUE { .. } => "elliptic_ginue",
            Self::InducedGinUE { .. } => "induced_ginue",
            Self::InducedSrUE { .. } => "induced_srue",
            Self::Tue { .. } => "tue",
        }
    }
}

/// A validated ensemble with its integer sizes resolved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    requested: EnsembleKind,
    effective: EnsembleKind,
    n: usize,
    /// `m` for the induced models, `α` for the TUE, zero otherwise.
    extra_dim: usize,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::arg(format!("matrix size must be at least 2, got {n}")));
        }
        let nf = n as f64;
        let (effective, extra_dim) = match kind {
            EnsembleKind::EllipticGinUE { tau } => {
                if !(0.0..1.0).contains(&tau) {
                    return Err(Error::arg(format!("tau must lie in [0, 1), got {tau}")));
                }
                (kind, 0)
            }
            EnsembleKind::InducedGinUE { a } => {
                if !(a >= 0.0 && a.is_finite()) {
                    return Err(Error::arg(format!("a must be nonnegative, got {a}")));
                }
                let m = (nf * (1.0 + a)).round() as usize;
                (EnsembleKind::InducedGinUE { a: (m - n) as f64 / nf }, m)
            }
            EnsembleKind::InducedSrUE { a } => {
                if !(a > 1.0 && a.is_finite()) {
                    return Err(Error::arg(format!("a must exceed 1, got {a}")));
                }
                let m = (a * nf).round() as usize;
                if m <= n {
                    return Err(Error::arg(format!("a = {a} rounds to m = {m} ≤ n = {n}")));
                }
                (EnsembleKind::InducedSrUE { a: m as f64 / nf }, m)
            }
            EnsembleKind::Tue { a } => {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(Error::arg(format!("a must be positive, got {a}")));
                }
                let alpha = ((a * nf).round() as usize + 1).max(1);
                if alpha == 1 {
                    return Err(Error::arg(format!("a = {a} rounds to α = 1, i.e. an effective a of 0")));
                }
                (EnsembleKind::Tue { a: (alpha - 1) as f64 / nf }, alpha)
            }
        };
        Ok(Self { requested: kind, effective, n, extra_dim })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn requested_kind(&self) -> EnsembleKind {
        self.requested
    }

    /// Parameters after rounding to integer matrix sizes.
    pub fn effective_kind(&self) -> EnsembleKind {
        self.effective
    }

    /// Row count `m` of the rectangular block of the induced models.
    pub fn m(&self) -> Option<usize> {
        matches!(self.effective, EnsembleKind::InducedGinUE { .. } | EnsembleKind::InducedSrUE { .. })
            .then_some(self.extra_dim)
    }

    /// Truncation depth `α` of the TUE.
    pub fn alpha(&self) -> Option<usize> {
        matches!(self.effective, EnsembleKind::Tue { .. }).then_some(self.extra_dim)
    }
}

fn ginibre_from(rng: &mut TrialRng, rows: usize, cols: usize, variance: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| rng.complex_gaussian(variance))
}

fn haar_from(rng: &mut TrialRng, dim: usize) -> Result<ComplexMatrix> {
    let g = ginibre_from(rng, dim, dim, 1.0);
    let (mut q, r) = qr_decompose(&g)?;
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Matrix with i.i.d. centred complex Gaussian entries, `E|g|² = variance`.
pub fn sample_ginibre(rows: usize, cols: usize, variance: f64, seed: SeedStream) -> Result<ComplexMatrix> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::arg(format!("variance must be positive, got {variance}")));
    }
    Ok(ginibre_from(&mut seed.rng(), rows, cols, variance))
}

/// Haar-distributed unitary matrix.
pub fn sample_haar_unitary(dim: usize, seed: SeedStream) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    haar_from(&mut seed.rng(), dim)
}

/// The random matrix of the ensemble for one trial.
pub fn sample_matrix(spec: &EnsembleSpec, seed: SeedStream) -> Result<ComplexMatrix> {
    let n = spec.n;
    let nf = n as f64;
    let rng = &mut seed.rng();
    match spec.effective {
        EnsembleKind::EllipticGinUE { tau } => {
            let hermitian_part = |g: ComplexMatrix| {
                let sum = g.add(&g.adjoint()).expect("square");
                sum.scale(Complex64::new(0.5, 0.0))
            };
            let h1 = hermitian_part(ginibre_from(rng, n, n, 1.0 / nf));
            let h2 = hermitian_part(ginibre_from(rng, n, n, 1.0 / nf));
            h1.scale(Complex64::new((1.0 + tau).sqrt(), 0.0)).add(&h2.scale(Complex64::new(0.0, (1.0 - tau).sqrt())))
        }
        EnsembleKind::InducedGinUE { .. } => {
            let g = ginibre_from(rng, spec.extra_dim, n, 1.0 / nf);
            let root = hermitian_power(&g.adjoint_matmul(&g)?, 0.5)?;
            root.matmul(&haar_from(rng, n)?)
        }
        EnsembleKind::InducedSrUE { .. } => {
            let g1 = ginibre_from(rng, n, n, 1.0);
            let g2 = ginibre_from(rng, spec.extra_dim, n, 1.0);
            hermitian_power(&g2.adjoint_matmul(&g2)?, -0.5)?.matmul(&g1)
        }
        EnsembleKind::Tue { .. } => haar_from(rng, n + spec.extra_dim)?.top_left(n, n),
    }
}

/// `R⁻¹ B` for upper triangular `R`.
fn solve_upper(r: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (n, cols) = (r.rows(), b.cols());
    let mut x = b.clone();
    let data = x.as_mut_slice();
    for i in (0..n).rev() {
        let d = r[(i, i)];
        if d.norm() == 0.0 {
            return Err(Error::Singular(format!("triangular factor has a zero pivot at {i}")));
        }
        let (head, tail) = data.split_at_mut((i + 1) * cols);
        let row = &mut head[i * cols..];
        for k in i + 1..n {
            let f = r[(i, k)];
            let xk = &tail[(k - i - 1) * cols..(k - i) * cols];
            for (a, &v) in row.iter_mut().zip(xk) {
                *a -= f * v;
            }
        }
        let inv = 1.0 / d;
        for a in row.iter_mut() {
            *a *= inv;
        }
    }
    Ok(x)
}

/// A matrix whose eigenvalues have the law of those of [`sample_matrix`].
///
/// For the induced models the polar factors are replaced by triangular QR
/// factors: with `G = QR`, `(G†G)^{1/2} = R†W` and `(G†G)^{−1/2} = R⁻¹W`
/// for a unitary `W` depending on `G` only, and `W` is absorbed by the
/// independent unitarily invariant right factor after a cyclic shift.
fn spectral_matrix(spec: &EnsembleSpec, seed: SeedStream) -> Result<ComplexMatrix> {
    let n = spec.n;
    let rng = &mut seed.rng();
    match spec.effective {
        EnsembleKind::InducedGinUE { .. } => {
            let (_, r) = qr_decompose(&ginibre_from(rng, spec.extra_dim, n, 1.0 / n as f64))?;
            r.adjoint().matmul(&haar_from(rng, n)?)
        }
        EnsembleKind::InducedSrUE { .. } => {
            let g1 = ginibre_from(rng, n, n, 1.0);
            let (_, r) = qr_decompose(&ginibre_from(rng, spec.extra_dim, n, 1.0))?;
            solve_upper(&r, &g1)
        }
        _ => sample_matrix(spec, seed),
    }
}

/// Eigenvalues of one sampled matrix, sorted by `≺`.
pub fn sample_eigenvalues(spec: &EnsembleSpec, seed: SeedStream) -> Result<PointSample> {
    let fail = |reason: String| Error::Sampling { trial: seed.trial_index, reason };
    let matrix = spectral_matrix(spec, seed).map_err(|e| fail(e.to_string()))?;
    let spectrum = eigenvalues_general_default(&matrix).map_err(|e| fail(e.to_string()))?;
    if !spectrum.converged {
        return Err(fail(format!(
            "eigenvalue iteration stopped after {} sweeps with {} of {} values",
            spectrum.iterations,
            spectrum.values.len(),
            spec.n
        )));
    }
    PointSample::with_spec(spectrum.values, *spec).map_err(|e| fail(e.to_string()))
}
