//! Moments and free cumulants through Lukasiewicz paths, checked against the
//! non-crossing partition sum, plus free convolution of semicircles.

use freebessel::freeprob::{
    cumulants_from_moments, free_convolve, luk_enumerate, moments_from_cumulants, nc_oracle_cumulants,
    semicircle_cumulants, FormalPoly,
};
use freebessel::symcore::rat;

fn main() -> freebessel::Result<()> {
    for k in 1..=6 {
        println!("{k}: {} Lukasiewicz paths", luk_enumerate(k)?.len());
    }

    let kappa: Vec<FormalPoly> = (1..=4).map(|k| FormalPoly::gen('k', k)).collect();
    for (k, m) in moments_from_cumulants(&kappa, 4)?.iter().enumerate() {
        println!("m{} = {m}", k + 1);
    }

    let uniform: Vec<_> = (1..=6).map(|k| rat(1, k + 1)).collect();
    let a = cumulants_from_moments(&uniform, 6)?;
    assert_eq!(a, nc_oracle_cumulants(&uniform, 6)?);
    println!("uniform[0,1] cumulants: {}", a.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));

    let s = free_convolve(&semicircle_cumulants(&rat(1, 1), 6)?, &semicircle_cumulants(&rat(2, 1), 6)?)?;
    let m = moments_from_cumulants(&s, 6)?;
    println!("semicircle(1) + semicircle(2) moments: {}", m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}
