//! Rough timing of the pieces a single n = 200 trial is made of.
use std::time::Instant;

use coulomb_gaps::linalg::{eig_hermitian, eigenvalues_general_default, qr_decompose, ComplexMatrix};
use coulomb_gaps::rng::SeedStream;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let reps = 10;
    let mut rng = SeedStream::new(1, 0).rng();
    let g = ComplexMatrix::from_fn(n, n, |_, _| rng.complex_gaussian(1.0 / n as f64));

    let t = Instant::now();
    for _ in 0..reps {
        let s = eigenvalues_general_default(&g).unwrap();
        assert!(s.converged);
    }
    println!("general eigenvalues: {:.2} ms", t.elapsed().as_secs_f64() * 1e3 / reps as f64);

    let t = Instant::now();
    for _ in 0..reps {
        coulomb_gaps::linalg::hessenberg(&g).unwrap();
    }
    println!("hessenberg (with U): {:.2} ms", t.elapsed().as_secs_f64() * 1e3 / reps as f64);

    let h = g.adjoint_matmul(&g).unwrap();
    let t = Instant::now();
    for _ in 0..reps {
        eig_hermitian(&h).unwrap();
    }
    println!("hermitian eigen: {:.2} ms", t.elapsed().as_secs_f64() * 1e3 / reps as f64);

    let t = Instant::now();
    for _ in 0..reps {
        qr_decompose(&g).unwrap();
    }
    println!("qr: {:.2} ms", t.elapsed().as_secs_f64() * 1e3 / reps as f64);
}
