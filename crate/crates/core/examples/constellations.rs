//! Rooted oriented constellations and the free-cumulant polynomials they
//! generate.

use freebessel::constellations::{constellation_stats, cumulant_polynomial, enumerate_orientable, normality_count};

fn main() -> freebessel::Result<()> {
    for c in enumerate_orientable(2, 1)? {
        let s = constellation_stats(&c)?;
        println!("{:?}: mu2={} eta={} genus={} normal={}", c.perms(), s.mu2, s.eta_partition(), s.genus, s.normal);
    }
    for d in 1..=3 {
        let counts = normality_count(d)?;
        println!(
            "d={d}: {} one-face genus-0 objects, {} not normal; kappa_{d} = {}",
            counts.one_face_genus0,
            counts.not_normal,
            cumulant_polynomial(d)?
        );
    }
    Ok(())
}
