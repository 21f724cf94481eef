#![allow(dead_code)]

use freebessel::dunkl::MVPoly;
use freebessel::symcore::{rat, Rat};
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

pub fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

/// ln(g) through degree `d` by the series of ln(1 + u); g(0) must be 1.
pub fn log_truncated(g: &MVPoly, d: usize) -> MVPoly {
    let n = g.num_vars();
    assert_eq!(g.constant_term(), rat(1, 1));
    let u = g.truncate(d).sub(&MVPoly::one(n)).unwrap();
    let mut out = MVPoly::zero(n);
    let mut power = MVPoly::one(n);
    for k in 1..=d {
        power = power.mul_truncated(&u, d).unwrap();
        let c = rat(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        out = out.add(&power.scale(&c)).unwrap();
    }
    out
}

/// ∂^{e_1}_1 ⋯ ∂^{e_N}_N f at the origin.
pub fn derivative_at_zero(f: &MVPoly, e: &[u32]) -> Rat {
    let mut g = f.clone();
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            g = g.partial(i + 1).unwrap();
        }
    }
    g.constant_term()
}
