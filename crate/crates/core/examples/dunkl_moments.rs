//! Moments of an atomic measure read off its Bessel generating function with
//! Dunkl operators, compared with the direct expectation.

use freebessel::bessel::{bgf_atomic, Atom, AtomicMeasure};
use freebessel::dunkl::{moment_extract, pk_apply, DunklContext, MVPoly};
use freebessel::symcore::{partitions_up_to, rat};

fn main() -> freebessel::Result<()> {
    let theta = rat(1, 2);
    let mu = AtomicMeasure::new(
        2,
        vec![
            Atom { weight: rat(1, 3), point: vec![rat(-1, 1), rat(1, 2)] },
            Atom { weight: rat(2, 3), point: vec![rat(0, 1), rat(2, 1)] },
        ],
    )?;
    let g = bgf_atomic(&mu, &theta, 4)?;
    let ctx = DunklContext::new(2, theta)?;
    for lam in partitions_up_to(4).into_iter().filter(|l| !l.is_empty()) {
        let via_dunkl = moment_extract(&ctx, &g, 4, &lam)?;
        println!("E p{lam}: dunkl {via_dunkl}, direct {}", mu.expectation(&lam));
    }

    // P_2 applied to p_1^2 in three variables
    let ctx = DunklContext::new(3, rat(1, 1))?;
    let p1 = MVPoly::power_sum(3, 1);
    println!("P_2(p1^2) = {}", pk_apply(&ctx, 2, &p1.mul(&p1)?)?);
    Ok(())
}
