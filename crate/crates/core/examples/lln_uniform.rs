//! Leading log-BGF coefficients of the uniform profile a_i = i against
//! the free cumulants of the uniform law on [0, 1].

use freebessel::bessel::{linear_fit, log_bgf_atomic, AtomicMeasure};
use freebessel::symcore::rational::to_f64;
use freebessel::symcore::{rat, Partition, Rat};

fn main() -> freebessel::Result<()> {
    let grid = [8usize, 12, 16, 20];
    for theta in [rat(1, 2), rat(1, 1), rat(2, 1)] {
        let th = to_f64(&theta);
        let mut ys = vec![Vec::new(); 3];
        for &n in &grid {
            let point: Vec<Rat> = (1..=n as i64).map(|i| rat(i, 1)).collect();
            let g = log_bgf_atomic(&AtomicMeasure::point_mass(point)?, &theta, 3)?;
            for d in 1..=3 {
                ys[d - 1].push(to_f64(&g.a(&Partition::single(d as u32))) / n as f64);
            }
        }
        let x: Vec<f64> = grid.iter().map(|&n| 1.0 / n as f64).collect();
        // free cumulants of uniform[0,1]: 1/2, 1/12, 0
        let kappa = [0.5, 1.0 / 12.0, 0.0];
        for d in 1..=3 {
            let (c0, c1) = linear_fit(&x, &ys[d - 1]);
            let target = th.powi(1 - d as i32) * kappa[d - 1] / d as f64;
            println!("theta={th} d={d} limit={c0:.6} slope={c1:.4} target={target:.6} values={:?}", ys[d - 1]);
        }
    }
    Ok(())
}
