use std::f64::consts::PI;

use num_complex::Complex64;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const STEP: f64 = 0.5;
const NODES: i32 = 14;
const CF_TERMS: usize = 60;

/// Faddeeva function `w(z) = e^{−z²} erfc(−iz)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        faddeeva_upper(z)
    } else {
        2.0 * (-z * z).exp() - faddeeva_upper(-z)
    }
}

fn faddeeva_upper(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if (x / 6.3).powi(2) + (y / 4.4).powi(2) >= 1.0 {
        laplace_continued_fraction(z)
    } else {
        trapezoid_with_pole_correction(z)
    }
}

/// `w(z) = (i/√π) / (z − ½/(z − 1/(z − 3/2/(z − …))))`, evaluated bottom-up.
fn laplace_continued_fraction(z: Complex64) -> Complex64 {
    let mut tail = Complex64::new(0.0, 0.0);
    for k in (1..=CF_TERMS).rev() {
        tail = (0.5 * k as f64) / (z - tail);
    }
    Complex64::new(0.0, FRAC_1_SQRT_PI) / (z - tail)
}

/// Trapezoidal rule for `w(z) = (i/π) ∫ e^{−t²}/(z − t) dt` plus the
/// residue term of the pole at `t = z`.
///
/// The node lattice is shifted by half a step when `x` is close to a node,
/// which keeps both the sum and the residue term well conditioned.
fn trapezoid_with_pole_correction(z: Complex64) -> Complex64 {
    let frac = (z.re / STEP).rem_euclid(1.0);
    trapezoid_on_lattice(z, !(0.25..0.75).contains(&frac))
}

fn trapezoid_on_lattice(z: Complex64, shifted: bool) -> Complex64 {
    let offset = if shifted { 0.5 } else { 0.0 };
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -NODES..=NODES {
        let t = (k as f64 + offset) * STEP;
        sum += (-t * t).exp() / (z - t);
    }
    let sum = sum * Complex64::new(0.0, STEP / PI);
    let q = (Complex64::new(0.0, 2.0 * PI / STEP) * z).exp();
    let residue = 2.0 * (-z * z).exp();
    if shifted {
        sum + residue * q / (1.0 + q)
    } else {
        sum - residue * q / (1.0 - q)
    }
}

/// Complementary error function `erfc(z) = (2/√π) ∫_z^∞ e^{−t²} dt`.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return 2.0 - erfc_complex(-z);
    }
    let iz = Complex64::new(-z.im, z.re);
    let value = (-z * z).exp() * faddeeva(iz);
    if z.im == 0.0 {
        Complex64::new(value.re, 0.0)
    } else {
        value
    }
}

/// Sector of the large-argument expansion of `erfc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErfcSector {
    /// `|arg s| ≤ 2π/3`: `erfc s ≈ e^{−s²}/(√π s) · S(s)`.
    Right,
    /// `π/3 ≤ |arg s| ≤ π`: `erfc s ≈ 2 + e^{−s²}/(√π s) · S(s)`.
    Left,
}

/// Large-`|s|` expansion of `erfc(s)` with the series
/// `S(s) = Σ_{m<terms} (−1)^m (1/2)_m s^{−2m}` truncated after `terms`
/// terms; `terms = 1` keeps only the leading factor.
pub fn erfc_asymptotic(s: Complex64, sector: ErfcSector, terms: usize) -> Complex64 {
    let inv_s2 = 1.0 / (s * s);
    let mut term = Complex64::new(1.0, 0.0);
    let mut series = Complex64::new(0.0, 0.0);
    for m in 0..terms.max(1) {
        if m > 0 {
            term *= -(m as f64 - 0.5) * inv_s2;
        }
        series += term;
    }
    let leading = (-s * s).exp() * FRAC_1_SQRT_PI / s * series;
    match sector {
        ErfcSector::Right => leading,
        ErfcSector::Left => 2.0 + leading,
    }
}
