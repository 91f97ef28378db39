//! Hermitian Householder reflectors `P = I - tau v v^H` with real `tau`.

use num_complex::Complex64;

use super::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) struct Reflector {
    pub v: Vec<Complex64>,
    pub tau: f64,
    /// `P x = beta e_1`.
    pub beta: Complex64,
}

impl Reflector {
    /// Reflector mapping `x` onto a multiple of the first unit vector.
    pub fn new(x: &[Complex64]) -> Self {
        let alpha = x[0];
        let tail_sq: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail_sq == 0.0 {
            let mut v = vec![ZERO; x.len()];
            v[0] = Complex64::new(1.0, 0.0);
            return Self { v, tau: 0.0, beta: alpha };
        }
        let abs_alpha = alpha.norm();
        let xnorm = (abs_alpha * abs_alpha + tail_sq).sqrt();
        let phase = if abs_alpha == 0.0 { Complex64::new(1.0, 0.0) } else { alpha / abs_alpha };
        let beta = -phase * xnorm;
        let mut v = x.to_vec();
        v[0] = phase * (abs_alpha + xnorm);
        let tau = 1.0 / (xnorm * (xnorm + abs_alpha));
        Self { v, tau, beta }
    }

    /// `M[r0.., c0..] <- P M[r0.., c0..]` where `P` acts on rows `r0..r0+len`.
    pub fn apply_left(&self, m: &mut ComplexMatrix, r0: usize, c0: usize, work: &mut Vec<Complex64>) {
        if self.tau == 0.0 {
            return;
        }
        let cols = m.cols();
        work.clear();
        work.resize(cols - c0, ZERO);
        for (i, &vi) in self.v.iter().enumerate() {
            let vc = vi.conj();
            for (w, &a) in work.iter_mut().zip(&m.row(r0 + i)[c0..]) {
                *w += vc * a;
            }
        }
        for (i, &vi) in self.v.iter().enumerate() {
            let f = vi * self.tau;
            for (a, &w) in m.row_mut(r0 + i)[c0..].iter_mut().zip(work.iter()) {
                *a -= f * w;
            }
        }
    }

    /// `M[rows, c0..c0+len] <- M[rows, c0..c0+len] P`.
    pub fn apply_right(&self, m: &mut ComplexMatrix, rows: std::ops::Range<usize>, c0: usize) {
        if self.tau == 0.0 {
            return;
        }
        let len = self.v.len();
        for i in rows {
            let seg = &mut m.row_mut(i)[c0..c0 + len];
            let s: Complex64 = seg.iter().zip(&self.v).map(|(&a, &v)| a * v).sum();
            let s = s * self.tau;
            for (a, &v) in seg.iter_mut().zip(&self.v) {
                *a -= s * v.conj();
            }
        }
    }
}
