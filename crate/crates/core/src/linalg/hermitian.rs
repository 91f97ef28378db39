use num_complex::Complex64;

use super::householder::Reflector;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Spectral decomposition `A = V diag(values) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending real eigenvalues.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(f(values)) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            let vi = v.row(i);
            for j in 0..=i {
                let vj = v.row(j);
                let s: Complex64 = (0..n).map(|k| vi[k] * fv[k] * vj[k].conj()).sum();
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }
}

/// Eigen-decomposition of a Hermitian matrix by Householder
/// tridiagonalisation followed by implicit QL.
///
/// The input must be Hermitian to `1e-10` relative Frobenius defect; it is
/// symmetrised before factorising.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Hermitian eigenproblem needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let norm = a.frobenius_norm();
    if a.hermitian_defect() > 1e-10 * norm {
        return Err(Error::arg("matrix is not Hermitian within 1e-10 relative tolerance"));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(HermitianEigen { values: Vec::new(), vectors: ComplexMatrix::zeros(0, 0) });
    }
    let mut t = a.add(&a.adjoint())?.scale(Complex64::new(0.5, 0.0));

    let reflectors = tridiagonalize(&mut t);
    let mut q = ComplexMatrix::identity(n);
    let mut work = Vec::new();
    for (k, p) in reflectors.iter().enumerate().rev() {
        p.apply_left(&mut q, k + 1, k + 1, &mut work);
    }

    // Rotate the complex off-diagonal onto the nonnegative reals.
    let mut d: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phase = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n - 1 {
        let sub = t[(k + 1, k)];
        let mag = sub.norm();
        e[k] = mag;
        phase[k + 1] = if mag > 0.0 { phase[k] * (sub / mag) } else { phase[k] };
    }

    // Rows of `zt` are the eigenvectors of the real tridiagonal matrix.
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut zt, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));

    // V = Q D Z, with D = diag(phase).
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut qd_row = vec![Complex64::new(0.0, 0.0); n];
    for r in 0..n {
        for (i, slot) in qd_row.iter_mut().enumerate() {
            *slot = q[(r, i)] * phase[i];
        }
        for (c, &src) in order.iter().enumerate() {
            let z = &zt[src * n..(src + 1) * n];
            let s: Complex64 = qd_row.iter().zip(z).map(|(&a, &b)| a * b).sum();
            vectors[(r, c)] = s;
        }
    }
    let values = order.iter().map(|&i| d[i]).collect();
    Ok(HermitianEigen { values, vectors })
}

/// Reduces a Hermitian matrix in place to tridiagonal form.
fn tridiagonalize(a: &mut ComplexMatrix) -> Vec<Reflector> {
    let n = a.rows();
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut column = Vec::with_capacity(n);
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        column.clear();
        column.extend((k + 1..n).map(|i| a[(i, k)]));
        let refl = Reflector::new(&column);
        let m = n - k - 1;
        let off = k + 1;
        if refl.tau != 0.0 {
            let v = &refl.v;
            // p = tau B v on the trailing block B.
            for (i, pi) in p.iter_mut().enumerate().take(m) {
                let row = &a.row(off + i)[off..];
                let s: Complex64 = row.iter().zip(v).map(|(&b, &vj)| b * vj).sum();
                *pi = s * refl.tau;
            }
            let vhp: Complex64 = v.iter().zip(&p[..m]).map(|(vi, &pi)| vi.conj() * pi).sum();
            let half_k = 0.5 * refl.tau * vhp.re;
            for i in 0..m {
                p[i] -= half_k * v[i];
            }
            // B <- B - v w† - w v†
            for i in 0..m {
                let (vi, wi) = (v[i], p[i]);
                let row = &mut a.row_mut(off + i)[off..];
                for j in 0..m {
                    row[j] -= vi * p[j].conj() + wi * v[j].conj();
                }
            }
        }
        a[(k + 1, k)] = refl.beta;
        a[(k, k + 1)] = refl.beta.conj();
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
            a[(k, i)] = Complex64::new(0.0, 0.0);
        }
        reflectors.push(refl);
    }
    reflectors
}

/// Implicit QL on a symmetric tridiagonal matrix (diagonal `d`,
/// off-diagonal `e[i] = T[i, i+1]`). Rotations are applied to the rows of
/// `zt`.
fn tql2(d: &mut [f64], e: &mut [f64], zt: &mut [f64], n: usize) -> Result<()> {
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0_f64;
    let max_iter = 30 * n.max(1);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::NoConvergence { what: "tridiagonal QL iteration", iterations: iter });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = zt.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let hb = *b;
                        *b = s * *a + c * hb;
                        *a = c * *a - s * hb;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// `A^p` through the spectral decomposition of a Hermitian `A`.
///
/// Negative powers require `min λ > 1e-13 · max |λ|`. Non-integer positive
/// powers clamp eigenvalues in `[-1e-10 · max |λ|, 0)` to zero and reject
/// anything more negative.
pub fn hermitian_power(a: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    if !p.is_finite() {
        return Err(Error::arg("power must be finite"));
    }
    let eig = eig_hermitian(a)?;
    let scale = eig.values.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    let min = eig.values.first().copied().unwrap_or(0.0);
    if p < 0.0 && !(min > 1e-13 * scale) {
        return Err(Error::Singular(format!(
            "negative power of a matrix with smallest eigenvalue {min:e} (largest magnitude {scale:e})"
        )));
    }
    let integer = p.fract() == 0.0;
    if !integer && min < -1e-10 * scale {
        return Err(Error::arg(format!("fractional power of an indefinite matrix (smallest eigenvalue {min:e})")));
    }
    Ok(eig.map_values(|x| if integer { x.powi(p as i32) } else { x.max(0.0).powf(p) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::test_support::{random_hermitian, random_matrix};

    fn reconstruction_residual(a: &ComplexMatrix, eig: &HermitianEigen) -> f64 {
        eig.map_values(|x| x).sub(a).unwrap().frobenius_norm()
    }

    #[test]
    fn two_by_two() {
        let a = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let eig = eig_hermitian(&a).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn identity_values() {
        let eig = eig_hermitian(&ComplexMatrix::identity(6)).unwrap();
        assert!(eig.values.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let a = random_hermitian(40, 8);
        let eig = eig_hermitian(&a).unwrap();
        assert!(reconstruction_residual(&a, &eig) <= 1e-10 * a.frobenius_norm());
        let vhv = eig.vectors.adjoint_matmul(&eig.vectors).unwrap();
        assert!(vhv.sub(&ComplexMatrix::identity(40)).unwrap().frobenius_norm() < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn weyl_bound_after_rank_one_update() {
        // Diagonally dominant real test matrix plus a rank-one perturbation.
        let n = 12;
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::new(10.0 + 3.0 * i as f64, 0.0);
            if i + 1 < n {
                a[(i, i + 1)] = Complex64::new(0.7, 0.0);
                a[(i + 1, i)] = Complex64::new(0.7, 0.0);
            }
        }
        let u: Vec<Complex64> = (0..n).map(|i| Complex64::new((i as f64 * 0.37).sin(), 0.0)).collect();
        let pert = ComplexMatrix::from_fn(n, n, |i, j| u[i] * u[j].conj());
        let pert_norm = pert.frobenius_norm();
        let before = eig_hermitian(&a).unwrap().values;
        let after = eig_hermitian(&a.add(&pert).unwrap()).unwrap().values;
        for (x, y) in before.iter().zip(&after) {
            // PSD rank-one update: eigenvalues move up by at most ||uu†||.
            assert!(*y >= *x - 1e-12 && *y <= *x + pert_norm + 1e-12);
        }
        // Interlacing for a rank-one PSD update.
        for i in 0..n - 1 {
            assert!(after[i] <= before[i + 1] + 1e-12);
        }
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn powers() {
        let i3 = ComplexMatrix::identity(3);
        let r = hermitian_power(&i3, -0.5).unwrap();
        assert!(r.sub(&i3).unwrap().frobenius_norm() < 1e-14);

        let d = ComplexMatrix::from_real(2, 2, &[4.0, 0.0, 0.0, 9.0]).unwrap();
        let r = hermitian_power(&d, 0.5).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, 3.0]).unwrap();
        assert!(r.sub(&expect).unwrap().frobenius_norm() < 1e-14);

        let g = random_matrix(30, 20, 77);
        let a = g.adjoint_matmul(&g).unwrap();
        let half = hermitian_power(&a, 0.5).unwrap();
        let inv_half = hermitian_power(&a, -0.5).unwrap();
        let prod = half.matmul(&inv_half).unwrap();
        assert!(prod.sub(&ComplexMatrix::identity(20)).unwrap().frobenius_norm() < 1e-9);
        let sq = half.matmul(&half).unwrap();
        assert!(sq.sub(&a).unwrap().frobenius_norm() <= 1e-9 * a.frobenius_norm());
    }

    #[test]
    fn singular_negative_power_fails() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_power(&a, -0.5), Err(Error::Singular(_))));
        assert!(hermitian_power(&a, 0.5).is_ok());
    }
}
