use num_complex::Complex64;

use super::householder::Reflector;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Unitary reduction to upper Hessenberg form, `A = U H U†`.
pub fn hessenberg(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Hessenberg reduction needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = a.clone();
    let reflectors = reduce_in_place(&mut h);
    let mut u = ComplexMatrix::identity(n);
    let mut work = Vec::new();
    for (k, p) in reflectors.iter().enumerate().rev() {
        p.apply_left(&mut u, k + 1, k + 1, &mut work);
    }
    Ok((h, u))
}

/// Overwrites `h` with its Hessenberg form and returns the reflectors used.
pub(crate) fn reduce_in_place(h: &mut ComplexMatrix) -> Vec<Reflector> {
    let n = h.rows();
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut work = Vec::new();
    let mut column = Vec::with_capacity(n);
    for k in 0..n.saturating_sub(2) {
        column.clear();
        column.extend((k + 1..n).map(|i| h[(i, k)]));
        let p = Reflector::new(&column);
        p.apply_left(h, k + 1, k, &mut work);
        p.apply_right(h, 0..n, k + 1);
        h[(k + 1, k)] = p.beta;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
        reflectors.push(p);
    }
    reflectors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::test_support::random_matrix;

    fn similarity_residual(a: &ComplexMatrix, h: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
        let back = u.matmul(h).unwrap().matmul(&u.adjoint()).unwrap();
        back.sub(a).unwrap().frobenius_norm()
    }

    #[test]
    fn two_by_two_is_untouched() {
        let a = random_matrix(2, 2, 3);
        let (h, u) = hessenberg(&a).unwrap();
        assert_eq!(h, a);
        assert_eq!(u, ComplexMatrix::identity(2));
    }

    #[test]
    fn upper_triangular_stays_put_up_to_phases() {
        let mut a = random_matrix(5, 5, 4);
        for i in 0..5 {
            for j in 0..i {
                a[(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
        let (h, u) = hessenberg(&a).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert!((h[(i, j)].norm() - a[(i, j)].norm()).abs() < 1e-14);
            }
        }
        assert!(similarity_residual(&a, &h, &u) < 1e-14);
    }

    #[test]
    fn random_similarity_residual() {
        let a = random_matrix(30, 30, 5);
        let (h, u) = hessenberg(&a).unwrap();
        assert!(h.is_upper_hessenberg(0.0));
        assert!(similarity_residual(&a, &h, &u) <= 1e-12 * a.frobenius_norm());
        let uhu = u.adjoint_matmul(&u).unwrap();
        assert!(uhu.sub(&ComplexMatrix::identity(30)).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(hessenberg(&ComplexMatrix::zeros(3, 2)).is_err());
    }
}
