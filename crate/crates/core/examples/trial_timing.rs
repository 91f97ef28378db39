//! Wall time of one sampled spectrum per ensemble.
use std::time::Instant;

use coulomb_gaps::ensembles::{sample_eigenvalues, EnsembleKind, EnsembleSpec};
use coulomb_gaps::rng::SeedStream;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let reps = 10;
    for kind in [
        EnsembleKind::EllipticGinUE { tau: 0.5 },
        EnsembleKind::InducedGinUE { a: 0.5 },
        EnsembleKind::InducedSrUE { a: 1.25 },
        EnsembleKind::Tue { a: 0.25 },
    ] {
        let spec = EnsembleSpec::new(kind, n).unwrap();
        let t = Instant::now();
        for r in 0..reps {
            sample_eigenvalues(&spec, SeedStream::new(1, r)).unwrap();
        }
        println!("{}: {:.1} ms", kind.name(), t.elapsed().as_secs_f64() * 1e3 / reps as f64);
    }
}
