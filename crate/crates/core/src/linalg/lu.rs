use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Determinant by LU factorisation with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm())).unwrap_or(k);
        let p = m[(pivot, k)];
        if p.re == 0.0 && p.im == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            det = -det;
        }
        det *= p;
        for i in k + 1..n {
            let f = m[(i, k)] / p;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let mkj = m[(k, j)];
                m[(i, j)] -= f * mkj;
            }
        }
    }
    Ok(det)
}

/// `log det A` for Hermitian positive definite `A` via Cholesky.
///
/// Fails with [`Error::InvalidArgument`] when `A` is not Hermitian (relative
/// defect above `1e-10`) or a pivot is not strictly positive.
pub fn cholesky_log_det(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("Cholesky of a {}x{} matrix", a.rows(), a.cols())));
    }
    let scale = a.frobenius_norm();
    if a.hermitian_defect() > 1e-10 * scale {
        return Err(Error::arg("matrix is not Hermitian"));
    }
    let n = a.rows();
    let mut l = ComplexMatrix::zeros(n, n);
    let mut log_det = 0.0;
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::arg("matrix is not positive definite"));
        }
        let djj = d.sqrt();
        l[(j, j)] = Complex64::new(djj, 0.0);
        log_det += 2.0 * djj.ln();
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(log_det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        let a = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!((determinant(&a).unwrap() - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        assert!((cholesky_log_det(&a).unwrap() - 3f64.ln()).abs() < 1e-15);
        let p = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(determinant(&p).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(determinant(&ComplexMatrix::zeros(3, 3)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(cholesky_log_det(&a).is_err());
        let b = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(cholesky_log_det(&b).is_err());
    }
}
