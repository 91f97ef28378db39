//! Equilibrium data of the supported potentials and the limiting laws of
//! the smallest gaps.
//!
//! Each [`PotentialModel`] knows its droplet `S`, density `ρ = ΔQ/(4π)` on
//! `S` and the constant `J = π² ∫_S ρ³`. The gap process converges to a
//! Poisson process whose intensity over `A × Ω` is
//! `(π² ∫_{Ω∩S} ρ³) · ∫_A r³ dr`, and the `k`-th smallest rescaled gap has
//! density proportional to `x^{4k−1} e^{−J x⁴/4}`.

mod laws;
mod potential;
mod region;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use laws::{joint_gap_window_probability, limit_gap_cdf, limit_gap_density, limit_gap_mean, limit_gap_quantile};
pub use potential::PotentialModel;
pub use region::RegionSpec;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate};

/// Interval of rescaled gap sizes `[lo, hi)`; `hi` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeWindow {
    pub lo: f64,
    pub hi: f64,
}

impl SizeWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0 && lo.is_finite() && hi > lo) {
            return Err(Error::arg(format!("size window [{lo}, {hi}) is empty or negative")));
        }
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x < self.hi
    }

    /// `∫_A r³ dr`.
    pub fn quartic_measure(&self) -> f64 {
        0.25 * (self.hi.powi(4) - self.lo.powi(4))
    }
}

/// `J = π² ∫_S ρ³` in closed form.
pub fn j_constant_closed(model: &PotentialModel) -> f64 {
    model.j_constant_closed()
}

/// `J` by numerical integration of `π² ρ³` over the droplet.
///
/// Radial droplets use adaptive Gauss–Kronrod in the radius; the ellipse uses
/// a tensor Gauss–Legendre rule in elliptic polar coordinates, with two rule
/// orders compared for the error estimate.
pub fn j_constant_quadrature(model: &PotentialModel, tol: f64) -> Result<f64> {
    Ok(PI * PI * droplet_moment(model, 3, tol / (PI * PI))?)
}

/// `∫_S ρ`, which must equal one.
pub fn droplet_mass(model: &PotentialModel, tol: f64) -> Result<f64> {
    droplet_moment(model, 1, tol)
}

fn droplet_moment(model: &PotentialModel, power: i32, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::arg("tolerance must be positive"));
    }
    match model.radial_support() {
        Some((r_in, r_out)) => {
            let f = |r: f64| model.rho_radial(r).powi(power) * 2.0 * PI * r;
            Ok(integrate(f, r_in, r_out, 0.1 * tol, 1e-14, 2000)?.value)
        }
        None => {
            let RegionSpec::Ellipse { semi_x, semi_y } = model.droplet() else {
                unreachable!("non-radial droplets are ellipses");
            };
            let rule = |order: usize| {
                let (nodes, weights) = gauss_legendre(order);
                let mut sum = 0.0;
                for (&u, &wu) in nodes.iter().zip(&weights) {
                    let r = 0.5 * (u + 1.0);
                    for (&v, &wv) in nodes.iter().zip(&weights) {
                        let theta = PI * (v + 1.0);
                        let z = num_complex::Complex64::new(semi_x * r * theta.cos(), semi_y * r * theta.sin());
                        sum += wu * wv * model.laplacian_q(z).powi(power) * r;
                    }
                }
                // Jacobian: dr = du/2, dθ = π dv, area element a·b·r.
                sum * 0.5 * PI * semi_x * semi_y / (4.0 * PI).powi(power)
            };
            let (coarse, fine) = (rule(16), rule(32));
            let error = (fine - coarse).abs();
            if error > tol {
                return Err(Error::Quadrature { estimate: fine, error, tolerance: tol });
            }
            Ok(fine)
        }
    }
}

/// `π² ∫_{Ω∩S} ρ³`, the spatial factor of the Poisson intensity.
///
/// Equals `J` when `Ω` covers the droplet. Otherwise the droplet is swept by
/// level curves (circles, or ellipses for the elliptic model) and the angular
/// measure of `Ω` on each curve is integrated adaptively.
pub fn location_weight(model: &PotentialModel, region: &RegionSpec, tol: f64) -> Result<f64> {
    region.validate()?;
    if matches!(region, RegionSpec::WholePlane) {
        return Ok(model.j_constant_closed());
    }
    if !(tol > 0.0) {
        return Err(Error::arg("tolerance must be positive"));
    }
    let integral = match model.radial_support() {
        Some((r_in, r_out)) => {
            let f = |r: f64| {
                let theta = region::angular_measure(region, |t| num_complex::Complex64::from_polar(r, t));
                model.rho_radial(r).powi(3) * r * theta
            };
            integrate(f, r_in, r_out, 0.1 * tol / (PI * PI), 1e-12, 4000)?.value
        }
        None => {
            let RegionSpec::Ellipse { semi_x, semi_y } = model.droplet() else {
                unreachable!("non-radial droplets are ellipses");
            };
            let rho = model.rho_radial(0.0);
            let f = |r: f64| {
                let theta = region::angular_measure(region, |t| {
                    num_complex::Complex64::new(semi_x * r * t.cos(), semi_y * r * t.sin())
                });
                r * theta
            };
            rho.powi(3) * semi_x * semi_y * integrate(f, 0.0, 1.0, 0.1 * tol / (PI * PI), 1e-12, 4000)?.value
        }
    };
    Ok(PI * PI * integral)
}

/// Mean number of gap events with size in `window` and location in `region`
/// under the limiting Poisson process.
pub fn poisson_intensity(model: &PotentialModel, window: &SizeWindow, region: &RegionSpec) -> Result<f64> {
    if !window.hi.is_finite() {
        return Err(Error::arg("the size window must be bounded"));
    }
    let window = SizeWindow::new(window.lo, window.hi)?;
    Ok(location_weight(model, region, 1e-10)? * window.quartic_measure())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn models() -> Vec<PotentialModel> {
        vec![
            PotentialModel::elliptic(0.0).unwrap(),
            PotentialModel::elliptic(0.5).unwrap(),
            PotentialModel::induced_ginibre(0.5).unwrap(),
            PotentialModel::induced_spherical(1.25).unwrap(),
            PotentialModel::truncated_unitary(0.25).unwrap(),
        ]
    }

    #[test]
    fn mass_and_j_by_quadrature() {
        for m in models() {
            assert!((droplet_mass(&m, 1e-12).unwrap() - 1.0).abs() < 1e-8, "{m:?}");
            let jq = j_constant_quadrature(&m, 1e-10).unwrap();
            assert!((jq - m.j_constant_closed()).abs() < 1e-8, "{m:?}: {jq}");
        }
    }

    #[test]
    fn intensity_examples() {
        let ginibre = PotentialModel::elliptic(0.0).unwrap();
        let unit = SizeWindow::new(0.0, 1.0).unwrap();
        assert_eq!(poisson_intensity(&ginibre, &unit, &RegionSpec::WholePlane).unwrap(), 0.25);
        let annulus = PotentialModel::induced_ginibre(0.5).unwrap();
        let right = RegionSpec::HalfPlane { normal: Complex64::new(1.0, 0.0), offset: 0.0 };
        let lambda = poisson_intensity(&annulus, &unit, &right).unwrap();
        assert!((lambda - 0.125).abs() < 1e-9, "{lambda}");
        assert!(poisson_intensity(&ginibre, &SizeWindow { lo: 1.0, hi: 1.0 }, &RegionSpec::WholePlane).is_err());
        let tiny = SizeWindow::new(0.0, 1e-6).unwrap();
        assert!(poisson_intensity(&ginibre, &tiny, &RegionSpec::WholePlane).unwrap() < 1e-24);
    }

    #[test]
    fn elliptic_quadrant_weight_is_a_quarter() {
        let m = PotentialModel::elliptic(0.5).unwrap();
        let quadrant = RegionSpec::Rectangle { min: Complex64::new(0.0, 0.0), max: Complex64::new(5.0, 5.0) };
        let w = location_weight(&m, &quadrant, 1e-10).unwrap();
        assert!((w - m.j_constant_closed() / 4.0).abs() < 1e-8, "{w}");
    }
}
