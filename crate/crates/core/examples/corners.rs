//! Corner spectra of a unitarily invariant matrix: the matrix sampler and
//! the Gibbs sampler on interlacing arrays agree.

use freebessel::ensembles::{empirical_moments, sample_corner_matrix, sample_corner_mcmc, SimConfig};

fn main() -> freebessel::Result<()> {
    let a: Vec<f64> = (0..8).map(|i| i as f64).collect();
    let cfg = SimConfig { n: 8, theta: 1.0, trajectories: 2000, seed: 3, ..SimConfig::default() };
    let exact = sample_corner_matrix(&a, 4, &cfg)?;
    let gibbs = sample_corner_mcmc(&a, 4, &cfg)?;
    for (name, s) in [("matrix", &exact), ("gibbs", &gibbs)] {
        let m = empirical_moments(s, &[1, 2], 1.0)?;
        println!("{name}: m1 = {:.3} +/- {:.3}, m2 = {:.3} +/- {:.3}", m.mean[0], m.stderr[0], m.mean[1], m.stderr[1]);
    }
    Ok(())
}
