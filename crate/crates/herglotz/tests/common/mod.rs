//! Shared random-model generators for the integration suites.

use herglotz::{Atom, HerglotzTriple, RealMeasure};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Atomic measure with `n` sites: distinct positions in
/// `[-5, 5]` separated by at least `sep`, masses in `[mass_lo, mass_hi]`.
pub fn random_atomic(
    rng: &mut ChaCha8Rng,
    n: usize,
    sep: f64,
    mass_lo: f64,
    mass_hi: f64,
) -> RealMeasure {
    let mut positions: Vec<f64> = Vec::with_capacity(n);
    while positions.len() < n {
        let p = rng.gen_range(-5.0..5.0);
        if positions.iter().all(|&q| (q - p).abs() >= sep) {
            positions.push(p);
        }
    }
    positions.sort_by(f64::total_cmp);
    let atoms = positions
        .into_iter()
        .map(|p| Atom::new(p, rng.gen_range(mass_lo..mass_hi)))
        .collect();
    RealMeasure::atomic(atoms).expect("generated atoms are valid")
}

/// The model family of the verification runs: dimension uniform in
/// `1..=30`, positions separated by 0.05, masses in `[0.1, 2]`.
pub fn random_nu_model(rng: &mut ChaCha8Rng) -> RealMeasure {
    let n = rng.gen_range(1..=30);
    random_atomic(rng, n, 0.05, 0.1, 2.0)
}

/// A random atomic triple with `alpha > 0`, for round-trip tests.
pub fn random_atomic_triple(rng: &mut ChaCha8Rng) -> HerglotzTriple {
    let alpha = rng.gen_range(0.1..2.0);
    let beta = rng.gen_range(-2.0..2.0);
    let n = rng.gen_range(1..=6);
    let mu = random_atomic(rng, n, 0.1, 0.1, 2.0);
    HerglotzTriple::new(alpha, beta, mu).expect("valid triple")
}

/// A 5x5 grid in the open upper half-plane.
pub fn upper_grid() -> Vec<num_complex::Complex64> {
    let res = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let ims = [0.1, 0.5, 1.0, 2.0, 5.0];
    let mut grid = Vec::with_capacity(25);
    for &re in &res {
        for &im in &ims {
            grid.push(num_complex::Complex64::new(re, im));
        }
    }
    grid
}
