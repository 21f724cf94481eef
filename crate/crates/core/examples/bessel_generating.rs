//! Multivariate Bessel functions, log-BGF coefficients and the three
//! operations on them: θ-addition, corners and Dyson Brownian motion.

use freebessel::bessel::{bessel_truncated, corner_restrict, dbm_factor, log_bgf_atomic, theta_add, AtomicMeasure};
use freebessel::symcore::{rat, Rat};

fn point(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat(x, 1)).collect()
}

fn main() -> freebessel::Result<()> {
    let theta = rat(1, 1);
    println!("B_(0,1) = {}", bessel_truncated(&point(&[0, 1]), &theta, 3)?);
    println!("corner = {}", corner_restrict(&bessel_truncated(&point(&[0, 1]), &theta, 3)?, 1)?);

    let a = log_bgf_atomic(&AtomicMeasure::point_mass(point(&[0, 1, 2]))?, &theta, 3)?;
    let b = log_bgf_atomic(&AtomicMeasure::point_mass(point(&[1, 1, 4]))?, &theta, 3)?;
    let sum = theta_add(&a, &b)?;
    let moved = dbm_factor(&a, &rat(1, 2))?;
    for (lam, c) in sum.series().terms() {
        println!("a{lam}: {} + {} = {c}, after DBM(1/2): {}", a.a(lam), b.a(lam), moved.a(lam));
    }
    Ok(())
}
