use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planar regions used both as droplets and as location windows.
///
/// Annuli and ellipses are centred at the origin and ellipses are
/// axis-aligned, which covers every droplet of the supported potentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum RegionSpec {
    WholePlane,
    Disk {
        center: Complex64,
        radius: f64,
    },
    Annulus {
        inner: f64,
        outer: f64,
    },
    Ellipse {
        semi_x: f64,
        semi_y: f64,
    },
    Rectangle {
        min: Complex64,
        max: Complex64,
    },
    /// Points with `Re(conj(normal) z) > offset`.
    HalfPlane {
        normal: Complex64,
        offset: f64,
    },
}

impl RegionSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            RegionSpec::WholePlane => true,
            RegionSpec::Disk { center, radius } => center.is_finite() && radius > 0.0 && radius.is_finite(),
            RegionSpec::Annulus { inner, outer } => inner >= 0.0 && outer > inner && outer.is_finite(),
            RegionSpec::Ellipse { semi_x, semi_y } => {
                semi_x > 0.0 && semi_y > 0.0 && semi_x.is_finite() && semi_y.is_finite()
            }
            RegionSpec::Rectangle { min, max } => {
                min.is_finite() && max.is_finite() && max.re > min.re && max.im > min.im
            }
            RegionSpec::HalfPlane { normal, offset } => normal.is_finite() && normal.norm() > 0.0 && offset.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::arg(format!("invalid region {self:?}")))
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            RegionSpec::WholePlane => true,
            RegionSpec::Disk { center, radius } => (z - center).norm() <= radius,
            RegionSpec::Annulus { inner, outer } => {
                let r = z.norm();
                r >= inner && r <= outer
            }
            RegionSpec::Ellipse { semi_x, semi_y } => {
                let (x, y) = (z.re / semi_x, z.im / semi_y);
                x * x + y * y <= 1.0
            }
            RegionSpec::Rectangle { min, max } => z.re >= min.re && z.re <= max.re && z.im >= min.im && z.im <= max.im,
            RegionSpec::HalfPlane { normal, offset } => (normal.conj() * z).re > offset,
        }
    }

    /// Lebesgue measure, infinite for unbounded regions.
    pub fn area(&self) -> f64 {
        use std::f64::consts::PI;
        match *self {
            RegionSpec::WholePlane | RegionSpec::HalfPlane { .. } => f64::INFINITY,
            RegionSpec::Disk { radius, .. } => PI * radius * radius,
            RegionSpec::Annulus { inner, outer } => PI * (outer * outer - inner * inner),
            RegionSpec::Ellipse { semi_x, semi_y } => PI * semi_x * semi_y,
            RegionSpec::Rectangle { min, max } => (max.re - min.re) * (max.im - min.im),
        }
    }
}

/// Measure of `{θ ∈ [0, 2π) : curve(θ) ∈ region}` for a closed curve.
///
/// The curve is sampled on a uniform grid and each membership change is
/// located by bisection, so components narrower than one grid step can be
/// missed.
pub(crate) fn angular_measure(region: &RegionSpec, curve: impl Fn(f64) -> Complex64) -> f64 {
    const SAMPLES: usize = 360;
    let step = std::f64::consts::TAU / SAMPLES as f64;
    let inside: Vec<bool> = (0..=SAMPLES).map(|k| region.contains(curve(k as f64 * step))).collect();
    if inside.iter().all(|&b| b) {
        return std::f64::consts::TAU;
    }
    if inside.iter().all(|&b| !b) {
        return 0.0;
    }
    let mut total = 0.0;
    for k in 0..SAMPLES {
        let (t0, t1) = (k as f64 * step, (k + 1) as f64 * step);
        match (inside[k], inside[k + 1]) {
            (true, true) => total += step,
            (false, false) => {}
            (start_inside, _) => {
                let (mut lo, mut hi) = (t0, t1);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if region.contains(curve(mid)) == start_inside {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let crossing = 0.5 * (lo + hi);
                total += if start_inside { crossing - t0 } else { t1 - crossing };
            }
        }
    }
    total
}
