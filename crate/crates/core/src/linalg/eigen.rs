use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::hessenberg::reduce_in_place;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues of a general complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// All eigenvalues when `converged`, otherwise only the deflated ones.
    pub values: Vec<Complex64>,
    pub converged: bool,
    /// Total number of QR sweeps performed.
    pub iterations: usize,
}

impl Spectrum {
    pub fn into_result(self) -> Result<Vec<Complex64>> {
        if self.converged {
            Ok(self.values)
        } else {
            Err(Error::NoConvergence { what: "shifted QR iteration", iterations: self.iterations })
        }
    }
}

/// [`eigenvalues_general`] with the customary `30 n` sweep budget.
pub fn eigenvalues_general_default(a: &ComplexMatrix) -> Result<Spectrum> {
    eigenvalues_general(a, 30 * a.rows().max(1))
}

/// Eigenvalues by balancing, Householder reduction to Hessenberg form and
/// implicit single-shift QR with Wilkinson shifts.
///
/// `max_sweeps` caps the total number of QR sweeps over the whole
/// deflation process. Running out of sweeps yields `converged == false`
/// rather than an error so callers can decide how to report it.
pub fn eigenvalues_general(a: &ComplexMatrix, max_sweeps: usize) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if max_sweeps == 0 {
        return Err(Error::arg("max_sweeps must be at least 1"));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Spectrum { values: Vec::new(), converged: true, iterations: 0 });
    }
    let mut h = a.clone();
    balance(&mut h);
    reduce_in_place(&mut h);
    Ok(hessenberg_qr(h.as_mut_slice(), n, max_sweeps))
}

#[inline]
fn cabs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity by powers of two equalising row and column norms.
fn balance(a: &mut ComplexMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += cabs1(a[(j, i)]);
                    r += cabs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                changed = true;
                let inv = 1.0 / f;
                for z in a.row_mut(i) {
                    *z *= inv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Givens pair `(c, s, r)` with real `c` such that
/// `[c s; -conj(s) c] [x; y] = [r; 0]`.
#[inline]
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64, Complex64) {
    if y.re == 0.0 && y.im == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0), x);
    }
    let ay = y.norm();
    if x.re == 0.0 && x.im == 0.0 {
        return (0.0, y.conj() / ay, Complex64::new(ay, 0.0));
    }
    let ax = x.norm();
    let norm = ax.hypot(ay);
    let phase = x / ax;
    (ax / norm, phase * y.conj() / norm, phase * norm)
}

fn hessenberg_qr(h: &mut [Complex64], n: usize, max_sweeps: usize) -> Spectrum {
    let ulp = f64::EPSILON;
    let small = f64::MIN_POSITIVE * (n as f64 / ulp);
    let at = |i: usize, j: usize| i * n + j;

    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut total = 0usize;

    loop {
        if hi == 0 {
            values[0] = h[0];
            break;
        }

        // Look for a negligible subdiagonal entry in the active block.
        let mut l = hi;
        while l > 0 {
            let sub = cabs1(h[at(l, l - 1)]);
            if sub <= small {
                break;
            }
            let mut tst = cabs1(h[at(l - 1, l - 1)]) + cabs1(h[at(l, l)]);
            if tst == 0.0 {
                if l >= 2 {
                    tst += h[at(l - 1, l - 2)].re.abs();
                }
                if l < hi {
                    tst += h[at(l + 1, l)].re.abs();
                }
            }
            if sub <= ulp * tst {
                break;
            }
            l -= 1;
        }
        if l > 0 {
            h[at(l, l - 1)] = Complex64::new(0.0, 0.0);
        }
        if l == hi {
            values[hi] = h[at(hi, hi)];
            hi -= 1;
            its = 0;
            continue;
        }
        if total >= max_sweeps {
            return Spectrum { values: values[hi + 1..].to_vec(), converged: false, iterations: total };
        }

        let shift = if its == 10 {
            h[at(l, l)] + 0.75 * h[at(l + 1, l)].re.abs()
        } else if its == 20 {
            h[at(hi, hi)] + 0.75 * h[at(hi, hi - 1)].re.abs()
        } else {
            wilkinson_shift(h[at(hi - 1, hi - 1)], h[at(hi - 1, hi)], h[at(hi, hi - 1)], h[at(hi, hi)])
        };

        // Implicit single-shift sweep on rows/columns l..=hi. Only the active
        // block is updated since no Schur vectors are wanted.
        let mut x = h[at(l, l)] - shift;
        let mut y = h[at(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[at(k, k - 1)];
                y = h[at(k + 1, k - 1)];
            }
            let (c, s, r) = givens(x, y);
            let sc = s.conj();
            if k > l {
                h[at(k, k - 1)] = r;
                h[at(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
            }
            let (upper, lower) = h.split_at_mut(at(k + 1, 0));
            let row_k = &mut upper[at(k, k)..at(k, hi + 1)];
            let row_k1 = &mut lower[k..=hi];
            for (a, b) in row_k.iter_mut().zip(row_k1.iter_mut()) {
                let (va, vb) = (*a, *b);
                *a = va * c + s * vb;
                *b = vb * c - sc * va;
            }
            for i in l..=(k + 2).min(hi) {
                let (va, vb) = (h[at(i, k)], h[at(i, k + 1)]);
                h[at(i, k)] = va * c + vb * sc;
                h[at(i, k + 1)] = vb * c - va * s;
            }
        }
        its += 1;
        total += 1;
    }

    Spectrum { values, converged: true, iterations: total }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let u = b.sqrt() * c.sqrt();
    let mut s = cabs1(u);
    if s == 0.0 {
        return d;
    }
    let x = 0.5 * (a - d);
    let sx = cabs1(x);
    s = s.max(sx);
    let mut y = s * ((x / s) * (x / s) + (u / s) * (u / s)).sqrt();
    if sx > 0.0 {
        let xs = x / sx;
        if xs.re * y.re + xs.im * y.im < 0.0 {
            y = -y;
        }
    }
    let denom = x + y;
    if denom.re == 0.0 && denom.im == 0.0 {
        return d;
    }
    d - u * (u / denom)
}
