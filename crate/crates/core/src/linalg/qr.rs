use num_complex::Complex64;

use super::householder::Reflector;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Thin Householder QR factorisation of a square or tall matrix.
///
/// Returns `(Q, R)` with `Q` of shape `rows × cols` having orthonormal
/// columns and `R` square upper triangular, `A = Q R`.
pub fn qr_decompose(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::DimensionMismatch(format!("QR needs rows >= cols, got {m}x{n}")));
    }
    if n == 0 {
        return Ok((ComplexMatrix::zeros(m, 0), ComplexMatrix::zeros(0, 0)));
    }
    let mut r = a.clone();
    let mut reflectors = Vec::with_capacity(n);
    let mut work = Vec::new();
    let mut column = Vec::with_capacity(m);
    for k in 0..n {
        column.clear();
        column.extend((k..m).map(|i| r[(i, k)]));
        let p = Reflector::new(&column);
        p.apply_left(&mut r, k, k, &mut work);
        r[(k, k)] = p.beta;
        for i in k + 1..m {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
        reflectors.push(p);
    }

    let mut q = ComplexMatrix::zeros(m, n);
    for i in 0..n {
        q[(i, i)] = Complex64::new(1.0, 0.0);
    }
    for (k, p) in reflectors.iter().enumerate().rev() {
        p.apply_left(&mut q, k, k, &mut work);
    }
    Ok((q, r.top_left(n, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::test_support::random_matrix;

    fn orthonormality_defect(q: &ComplexMatrix) -> f64 {
        let qhq = q.adjoint_matmul(q).unwrap();
        qhq.sub(&ComplexMatrix::identity(q.cols())).unwrap().frobenius_norm()
    }

    #[test]
    fn identity_has_unimodular_diagonals() {
        let (q, r) = qr_decompose(&ComplexMatrix::identity(3)).unwrap();
        for i in 0..3 {
            assert!((q[(i, i)].norm() - 1.0).abs() < 1e-15);
            assert!((r[(i, i)].norm() - 1.0).abs() < 1e-15);
        }
        assert!(r.is_upper_triangular(0.0));
        assert!(orthonormality_defect(&q) < 1e-15);
    }

    #[test]
    fn rotation_is_reconstructed() {
        let a = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]).unwrap();
        let (q, r) = qr_decompose(&a).unwrap();
        let back = q.matmul(&r).unwrap();
        assert!(back.sub(&a).unwrap().frobenius_norm() <= 1e-14);
        assert!(orthonormality_defect(&q) <= 1e-14);
    }

    #[test]
    fn random_square_and_tall() {
        for &(m, n) in &[(50, 50), (70, 30), (1, 1)] {
            let a = random_matrix(m, n, 11 + m as u64);
            let (q, r) = qr_decompose(&a).unwrap();
            assert_eq!((q.rows(), q.cols(), r.rows(), r.cols()), (m, n, n, n));
            let residual = q.matmul(&r).unwrap().sub(&a).unwrap().frobenius_norm();
            assert!(residual <= 1e-12 * a.frobenius_norm(), "residual {residual}");
            assert!(orthonormality_defect(&q) <= 1e-12);
            assert!(r.is_upper_triangular(0.0));
        }
    }

    #[test]
    fn wide_matrix_is_rejected() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(qr_decompose(&a), Err(Error::DimensionMismatch(_))));
    }
}
