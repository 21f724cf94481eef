//! θ-Dyson Brownian motion from the origin: the mean of Σ W_i(t)² is
//! N·t·(1 + θ(N − 1)) for every θ ≥ 1/2.

use freebessel::ensembles::{power_sum_stats, simulate_dbm, SimConfig};

fn main() -> freebessel::Result<()> {
    let n = 10;
    for theta in [1.0, 0.5] {
        let cfg = SimConfig { n, theta, trajectories: 10_000, dt: 1e-3, t_final: 1.0, seed: 2024, ..SimConfig::default() };
        let t0 = std::time::Instant::now();
        let s = simulate_dbm(&cfg, &vec![0.0; n])?;
        let (mean, se) = power_sum_stats(&s, 2);
        let exact = n as f64 * cfg.t_final * (1.0 + theta * (n as f64 - 1.0));
        println!(
            "theta={theta}: mean sum W^2 = {mean:.3} +/- {se:.3}, exact {exact}, z = {:.2} ({:.1?})",
            (mean - exact) / se,
            t0.elapsed()
        );
    }
    Ok(())
}
