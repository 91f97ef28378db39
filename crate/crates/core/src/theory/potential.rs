use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::region::RegionSpec;
use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};

/// The four potentials with explicit equilibrium data.
///
/// Parameters are the effective ones of the sampled ensemble (after the
/// integer rounding done by the samplers).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum PotentialModel {
    /// `Q = (|z|² − τ Re z²)/(1 − τ²)`, `0 ≤ τ < 1`.
    Elliptic { tau: f64 },
    /// `Q = |z|² − 2a log|z|`, `a ≥ 0`.
    InducedGinibre { a: f64 },
    /// `Q = a log(1 + |z|²)`, `a > 1`.
    InducedSpherical { a: f64 },
    /// `Q = −a log(1 − |z|²)` on the unit disk and `+∞` outside, `a > 0`.
    TruncatedUnitary { a: f64 },
}

impl PotentialModel {
    pub fn elliptic(tau: f64) -> Result<Self> {
        Self::Elliptic { tau }.validated()
    }

    pub fn induced_ginibre(a: f64) -> Result<Self> {
        Self::InducedGinibre { a }.validated()
    }

    pub fn induced_spherical(a: f64) -> Result<Self> {
        Self::InducedSpherical { a }.validated()
    }

    pub fn truncated_unitary(a: f64) -> Result<Self> {
        Self::TruncatedUnitary { a }.validated()
    }

    /// Potential of an ensemble, using its effective parameters.
    pub fn from_ensemble(spec: &EnsembleSpec) -> Result<Self> {
        match spec.effective_kind() {
            EnsembleKind::EllipticGinUE { tau } => Self::elliptic(tau),
            EnsembleKind::InducedGinUE { a } => Self::induced_ginibre(a),
            EnsembleKind::InducedSrUE { a } => Self::induced_spherical(a),
            EnsembleKind::Tue { a } => Self::truncated_unitary(a),
        }
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Elliptic { tau } => (0.0..1.0).contains(&tau),
            Self::InducedGinibre { a } => a >= 0.0 && a.is_finite(),
            Self::InducedSpherical { a } => a > 1.0 && a.is_finite(),
            Self::TruncatedUnitary { a } => a > 0.0 && a.is_finite(),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::arg(format!("parameters out of range for {self:?}")))
        }
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self, Self::Elliptic { tau } if *tau != 0.0)
    }

    pub fn q(&self, z: Complex64) -> f64 {
        let r2 = z.norm_sqr();
        match *self {
            Self::Elliptic { tau } => (r2 - tau * (z * z).re) / (1.0 - tau * tau),
            Self::InducedGinibre { a } => {
                if a == 0.0 {
                    r2
                } else {
                    r2 - a * r2.ln()
                }
            }
            Self::InducedSpherical { a } => a * r2.ln_1p(),
            Self::TruncatedUnitary { a } => {
                if r2 < 1.0 {
                    -a * (-r2).ln_1p()
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// `ΔQ = ∂²ₓQ + ∂²ᵧQ` (infinite outside the unit disk for the truncated model).
    pub fn laplacian_q(&self, z: Complex64) -> f64 {
        self.radial_laplacian(z.norm())
    }

    /// `ΔQ` as a function of `r = |z|`; for the elliptic model it is constant.
    pub fn radial_laplacian(&self, r: f64) -> f64 {
        let r2 = r * r;
        match *self {
            Self::Elliptic { tau } => 4.0 / (1.0 - tau * tau),
            Self::InducedGinibre { .. } => 4.0,
            Self::InducedSpherical { a } => 4.0 * a / ((1.0 + r2) * (1.0 + r2)),
            Self::TruncatedUnitary { a } => {
                if r2 < 1.0 {
                    4.0 * a / ((1.0 - r2) * (1.0 - r2))
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// `d/dr ΔQ` at radius `r`.
    pub fn radial_laplacian_derivative(&self, r: f64) -> f64 {
        let r2 = r * r;
        match *self {
            Self::Elliptic { .. } | Self::InducedGinibre { .. } => 0.0,
            Self::InducedSpherical { a } => -16.0 * a * r / (1.0 + r2).powi(3),
            Self::TruncatedUnitary { a } => 16.0 * a * r / (1.0 - r2).powi(3),
        }
    }

    pub fn droplet(&self) -> RegionSpec {
        match *self {
            Self::Elliptic { tau } => RegionSpec::Ellipse { semi_x: 1.0 + tau, semi_y: 1.0 - tau },
            Self::InducedGinibre { a } => RegionSpec::Annulus { inner: a.sqrt(), outer: (1.0 + a).sqrt() },
            Self::InducedSpherical { a } => RegionSpec::Annulus { inner: 0.0, outer: 1.0 / (a - 1.0).sqrt() },
            Self::TruncatedUnitary { a } => RegionSpec::Annulus { inner: 0.0, outer: 1.0 / (1.0 + a).sqrt() },
        }
    }

    /// Radii bounding the droplet of a radial model.
    pub fn radial_support(&self) -> Option<(f64, f64)> {
        if !self.is_radial() {
            return None;
        }
        match self.droplet() {
            RegionSpec::Annulus { inner, outer } => Some((inner, outer)),
            RegionSpec::Ellipse { semi_x, .. } => Some((0.0, semi_x)),
            _ => None,
        }
    }

    pub fn in_droplet(&self, z: Complex64) -> bool {
        self.droplet().contains(z)
    }

    /// Equilibrium density `ΔQ/(4π)` on the droplet, zero outside.
    pub fn rho(&self, z: Complex64) -> f64 {
        if self.in_droplet(z) {
            self.laplacian_q(z) / (4.0 * PI)
        } else {
            0.0
        }
    }

    /// Density on the droplet as a function of `|z|`, ignoring the support test.
    pub(crate) fn rho_radial(&self, r: f64) -> f64 {
        self.radial_laplacian(r) / (4.0 * PI)
    }

    /// `π² ∫_S ρ³` in closed form.
    pub fn j_constant_closed(&self) -> f64 {
        match *self {
            Self::Elliptic { tau } => {
                let d = 1.0 - tau * tau;
                1.0 / (d * d)
            }
            Self::InducedGinibre { .. } => 1.0,
            Self::InducedSpherical { a } => {
                (1.0 - 5.0 * a + 10.0 * a * a - 10.0 * a.powi(3) + 5.0 * a.powi(4)) / (5.0 * a * a)
            }
            Self::TruncatedUnitary { a } => {
                (1.0 + 5.0 * a + 10.0 * a * a + 10.0 * a.powi(3) + 5.0 * a.powi(4)) / (5.0 * a * a)
            }
        }
    }
}
