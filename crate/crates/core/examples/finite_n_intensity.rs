//! Expected number of pairs closer than `x n^{−3/4}` at finite `n`, from the
//! exact two-point function, against the limit `J x⁴/4` and the sampled
//! `−ln P(t₁ > x)`.
//!
//! Usage: `finite_n_intensity [n] [trials]`.
use std::f64::consts::PI;

use coulomb_gaps::ensembles::{sample_eigenvalues, EnsembleKind, EnsembleSpec};
use coulomb_gaps::gapstats::k_smallest_pair_gaps;
use coulomb_gaps::kernels::RadialKernelModel;
use coulomb_gaps::rng::SeedStream;
use coulomb_gaps::theory::{j_constant_closed, PotentialModel};
use coulomb_gaps::Complex64;

/// `E N(x) = ½ ∫∫_{|z−w| < x n^{−3/4}} ρ₂(z, w)` at `x = (i+1)·x_max/bins`,
/// by the midpoint rule in `(r, s, φ)`.
fn expected_close_pairs(model: &RadialKernelModel, r_max: f64, x_max: f64, bins: usize) -> Vec<f64> {
    let n = model.n() as f64;
    let (nr, per_bin, nphi) = (800, 4, 12);
    let ns = bins * per_bin;
    let eps = x_max * n.powf(-0.75);
    let (dr, ds, dphi) = (r_max / nr as f64, eps / ns as f64, 2.0 * PI / nphi as f64);
    let mut shells = vec![0.0; ns];
    for i in 0..nr {
        let r = (i as f64 + 0.5) * dr;
        let z = Complex64::new(r, 0.0);
        let kzz = model.density(z).unwrap();
        if kzz < 1e-12 {
            continue;
        }
        for (j, shell) in shells.iter_mut().enumerate() {
            let s = (j as f64 + 0.5) * ds;
            for k in 0..nphi {
                let w = z + Complex64::from_polar(s, (k as f64 + 0.5) * dphi);
                let Ok(kww) = model.density(w) else { continue };
                let kzw = model.kernel(z, w).unwrap();
                *shell += PI * r * dr * (kzz * kww - kzw.norm_sqr()) * s * ds * dphi;
            }
        }
    }
    shells
        .chunks(per_bin)
        .scan(0.0, |acc, c| {
            *acc += c.iter().sum::<f64>();
            Some(*acc)
        })
        .collect()
}

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let trials: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(400);
    let cases = [
        (EnsembleKind::EllipticGinUE { tau: 0.0 }, 1.4),
        (EnsembleKind::InducedGinUE { a: 0.5 }, 1.6),
        (EnsembleKind::InducedSrUE { a: 1.25 }, 4.0),
        (EnsembleKind::Tue { a: 0.25 }, 0.999),
    ];
    for (kind, r_max) in cases {
        let spec = EnsembleSpec::new(kind, n).unwrap();
        let potential = PotentialModel::from_ensemble(&spec).unwrap();
        let j = j_constant_closed(&potential);
        let model = RadialKernelModel::new(potential, n).unwrap();
        let scale = j.powf(-0.25);
        let bins = 40;
        let x_max = 2.2 * scale;
        let exact = expected_close_pairs(&model, r_max, x_max, bins);
        let xs: Vec<f64> = (1..=bins).map(|i| x_max * i as f64 / bins as f64).collect();
        let ks_exact =
            xs.iter().zip(&exact).map(|(&x, &e)| ((-e).exp() - (-j * x.powi(4) / 4.0).exp()).abs()).fold(0.0, f64::max);
        let mut t1: Vec<f64> = (0..trials)
            .map(|t| k_smallest_pair_gaps(&sample_eigenvalues(&spec, SeedStream::new(99, t)).unwrap(), 1).unwrap()[0])
            .collect();
        t1.sort_by(f64::total_cmp);
        let sampled_vs_exact = xs
            .iter()
            .zip(&exact)
            .map(|(&x, &e)| {
                let below = t1.partition_point(|&t| t <= x) as f64 / trials as f64;
                (below - (1.0 - (-e).exp())).abs()
            })
            .fold(0.0, f64::max);
        println!(
            "{:15} J = {j:7.4}  sup|P_n - P_limit| = {ks_exact:.4}  sup|sampled - P_n| = {sampled_vs_exact:.4}  ({trials} trials)",
            kind.name()
        );
        for q in [0.9, 1.2, 1.5] {
            let i = ((q / 2.2) * bins as f64).round() as usize - 1;
            println!("    x = {q:.2} J^-1/4: limit {:.4}, exact {:.4}", j * xs[i].powi(4) / 4.0, exact[i]);
        }
    }
}
