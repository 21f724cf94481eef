//! Rational Dunkl operators
//!
//! `D_i = ∂_i + θ Σ_{j≠i} (1 − σ_ij)/(x_i − x_j)` acting on exact polynomials,
//! their power sums `P_k = Σ_i D_i^k`, and moment extraction from Bessel
//! generating functions.

mod mvpoly;

pub use mvpoly::{distinct_permutations, MVPoly};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symcore::rational::fmt_rat;
use crate::symcore::{Partition, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DunklContext {
    n: usize,
    theta: Rat,
}

impl DunklContext {
    pub fn new(n: usize, theta: Rat) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("need at least one variable".into()));
        }
        if !theta.is_positive() {
            return Err(Error::InvalidInput(format!("theta must be positive, got {theta}")));
        }
        Ok(DunklContext { n, theta })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &Rat {
        &self.theta
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, num_vars: self.n });
        }
        Ok(())
    }

    fn check_poly(&self, f: &MVPoly) -> Result<()> {
        if f.num_vars() != self.n {
            return Err(Error::LengthMismatch(f.num_vars(), self.n));
        }
        Ok(())
    }
}

/// `(1 − σ_ij) f / (x_i − x_j)`, termwise on monomials:
///
/// * `m_i ≥ m_j`: `Σ_{a=m_j}^{m_i−1} x_i^a x_j^{m_i+m_j−1−a}`
/// * `m_i < m_j`: `−Σ_{a=m_i}^{m_j−1} x_i^a x_j^{m_i+m_j−1−a}`
pub fn divided_difference(ctx: &DunklContext, i: usize, j: usize, f: &MVPoly) -> Result<MVPoly> {
    ctx.check(i)?;
    ctx.check(j)?;
    ctx.check_poly(f)?;
    if i == j {
        return Err(Error::InvalidInput(format!("divided difference needs i != j, got {i}")));
    }
    let (i, j) = (i - 1, j - 1);
    let mut out = Vec::new();
    for (e, c) in f.terms() {
        let (mi, mj) = (e[i], e[j]);
        let (lo, hi, coef) = if mi >= mj { (mj, mi, c.clone()) } else { (mi, mj, -c.clone()) };
        for a in lo..hi {
            let mut g = e.clone();
            g[i] = a;
            g[j] = mi + mj - 1 - a;
            out.push((g, coef.clone()));
        }
    }
    Ok(MVPoly::from_terms(ctx.n, out))
}

pub fn dunkl_apply(ctx: &DunklContext, i: usize, f: &MVPoly) -> Result<MVPoly> {
    ctx.check(i)?;
    ctx.check_poly(f)?;
    let mut acc = f.partial(i)?;
    let mut dd = MVPoly::zero(ctx.n);
    for j in (1..=ctx.n).filter(|&j| j != i) {
        dd = dd.add(&divided_difference(ctx, i, j, f)?)?;
    }
    acc = acc.add(&dd.scale(&ctx.theta))?;
    Ok(acc)
}

/// `P_k f = Σ_i D_i^k f`
pub fn pk_apply(ctx: &DunklContext, k: u32, f: &MVPoly) -> Result<MVPoly> {
    ctx.check_poly(f)?;
    let mut total = MVPoly::zero(ctx.n);
    for i in 1..=ctx.n {
        let mut g = f.clone();
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = dunkl_apply(ctx, i, &g)?;
        }
        total = total.add(&g)?;
    }
    Ok(total)
}

/// `(Π_i P_{λ_i}) G` at the origin, i.e. `E[Π_i p_{λ_i}(a)]` when `G` is the
/// Bessel generating function of the law of `a`, truncated at degree
/// `truncation ≥ |λ|`.
///
/// Only the degree-|λ| part of `G` can contribute, so that is all that is
/// pushed through the operators.
pub fn moment_extract(ctx: &DunklContext, g: &MVPoly, truncation: usize, lam: &Partition) -> Result<Rat> {
    ctx.check_poly(g)?;
    if truncation < lam.size() {
        return Err(Error::InsufficientTruncation { have: truncation, need: lam.size() });
    }
    if g.degree() > truncation {
        return Err(Error::InvalidInput(format!(
            "polynomial of degree {} exceeds its stated truncation {truncation}",
            g.degree()
        )));
    }
    let c0 = g.constant_term();
    if !c0.is_one() {
        return Err(Error::WrongConstantTerm { expected: "1".into(), found: fmt_rat(&c0) });
    }
    let mut h = g.homogeneous(lam.size());
    for &k in lam.parts() {
        if h.is_zero() {
            return Ok(Rat::zero());
        }
        h = pk_apply(ctx, k, &h)?;
    }
    Ok(h.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;
    use proptest::prelude::*;

    fn ctx(n: usize, theta: Rat) -> DunklContext {
        DunklContext::new(n, theta).unwrap()
    }

    fn x(n: usize, i: usize) -> MVPoly {
        MVPoly::var(n, i).unwrap()
    }

    /// exp(h) truncated at degree d, for h without constant term.
    fn exp_trunc(h: &MVPoly, d: usize) -> MVPoly {
        let n = h.num_vars();
        let mut total = MVPoly::one(n);
        let mut term = MVPoly::one(n);
        for j in 1..=d {
            term = term.mul_truncated(h, d).unwrap().scale(&rat(1, j as i64));
            total = total.add(&term).unwrap();
        }
        total
    }

    #[test]
    fn divided_difference_examples() {
        for n in 2..5 {
            let c = ctx(n, rat(1, 1));
            assert_eq!(divided_difference(&c, 1, 2, &x(n, 1)).unwrap(), MVPoly::one(n));
            assert_eq!(divided_difference(&c, 1, 2, &x(n, 2)).unwrap(), MVPoly::constant(n, rat(-1, 1)));
            assert!(divided_difference(&c, 1, 2, &MVPoly::constant(n, rat(3, 1))).unwrap().is_zero());
        }
        let c = ctx(2, rat(1, 1));
        assert!(matches!(divided_difference(&c, 1, 3, &x(2, 1)), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn divided_difference_agrees_with_multiplication() {
        // (x_i − x_j) · dd(f) = f − σ_ij f
        let c = ctx(3, rat(1, 1));
        let f = MVPoly::from_terms(3, [(vec![3, 1, 0], rat(2, 1)), (vec![0, 4, 2], rat(-1, 3)), (vec![1, 1, 1], rat(5, 1))]);
        let dd = divided_difference(&c, 1, 2, &f).unwrap();
        let diff = x(3, 1).sub(&x(3, 2)).unwrap();
        assert_eq!(diff.mul(&dd).unwrap(), f.sub(&f.swap(1, 2).unwrap()).unwrap());
    }

    #[test]
    fn dunkl_examples() {
        let theta = rat(2, 3);
        let c = ctx(2, theta.clone());
        assert_eq!(dunkl_apply(&c, 1, &x(2, 1)).unwrap(), MVPoly::constant(2, rat(1, 1) + &theta));
        assert_eq!(dunkl_apply(&c, 1, &x(2, 2)).unwrap(), MVPoly::constant(2, -theta.clone()));
        assert!(dunkl_apply(&c, 1, &MVPoly::one(2)).unwrap().is_zero());
        let s = x(2, 1).add(&x(2, 2)).unwrap();
        assert_eq!(pk_apply(&c, 1, &s).unwrap(), MVPoly::constant(2, rat(2, 1)));
        assert!(pk_apply(&c, 3, &MVPoly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn second_power_sum_on_gaussian_factor() {
        for (n, theta) in [(1, rat(1, 1)), (3, rat(1, 2)), (4, rat(2, 1))] {
            let t = rat(3, 5);
            let c = ctx(n, theta.clone());
            let g = exp_trunc(&MVPoly::power_sum(n, 2).scale(&(&t / rat(2, 1))), 4);
            let got = pk_apply(&c, 2, &g).unwrap().constant_term();
            let nn = rat(n as i64, 1);
            assert_eq!(got, &nn * &t * (rat(1, 1) + &theta * (&nn - rat(1, 1))));
            assert_eq!(moment_extract(&c, &g, 4, &Partition::single(2)).unwrap(), got);
        }
    }

    #[test]
    fn moment_extract_examples() {
        let c = ctx(3, rat(1, 2));
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(moment_extract(&c, &MVPoly::one(3), 3, &lam).unwrap(), rat(0, 1));
        assert!(matches!(
            moment_extract(&c, &MVPoly::one(3), 2, &lam),
            Err(Error::InsufficientTruncation { have: 2, need: 3 })
        ));
        // point mass at (c,…,c): exp(c p_1)
        let cc = rat(-3, 2);
        let g = exp_trunc(&MVPoly::power_sum(3, 1).scale(&cc), 3);
        assert_eq!(moment_extract(&c, &g, 3, &Partition::single(2)).unwrap(), rat(3, 1) * &cc * &cc);
        assert_eq!(moment_extract(&c, &g, 3, &lam).unwrap(), rat(9, 1) * &cc * &cc * &cc);
        assert!(matches!(
            moment_extract(&c, &g.scale(&rat(2, 1)), 3, &lam),
            Err(Error::WrongConstantTerm { .. })
        ));
    }

    fn arb_poly(n: usize, deg: u32) -> impl Strategy<Value = MVPoly> {
        prop::collection::vec((prop::collection::vec(0..=deg, n), -5i64..=5, 1i64..=4), 1..6).prop_map(move |ts| {
            MVPoly::from_terms(
                n,
                ts.into_iter()
                    .filter(|(e, _, _)| e.iter().sum::<u32>() <= deg)
                    .map(|(e, a, b)| (e, rat(a, b))),
            )
        })
    }

    fn arb_theta() -> impl Strategy<Value = Rat> {
        prop::sample::select(vec![rat(1, 2), rat(1, 1), rat(2, 1)])
    }

    fn symmetrize(f: &MVPoly) -> MVPoly {
        let n = f.num_vars();
        let idx: Vec<u32> = (0..n as u32).collect();
        let mut out = MVPoly::zero(n);
        for perm in distinct_permutations(&idx) {
            let g = MVPoly::from_terms(
                n,
                f.terms().map(|(e, c)| ((0..n).map(|k| e[perm[k] as usize]).collect(), c.clone())),
            );
            out = out.add(&g).unwrap();
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dunkl_operators_commute(n in 2usize..=4, theta in arb_theta(), seed in any::<u64>(), f in arb_poly(4, 5)) {
            let f = f.restrict_leading(n);
            let c = ctx(n, theta);
            let i = (seed % n as u64) as usize + 1;
            let j = ((seed / 7) % n as u64) as usize + 1;
            let a = dunkl_apply(&c, i, &dunkl_apply(&c, j, &f).unwrap()).unwrap();
            let b = dunkl_apply(&c, j, &dunkl_apply(&c, i, &f).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn power_sums_preserve_symmetry(n in 2usize..=4, theta in arb_theta(), k in 1u32..=3, f in arb_poly(4, 5)) {
            let f = symmetrize(&f.restrict_leading(n));
            prop_assert!(f.is_symmetric());
            let c = ctx(n, theta);
            prop_assert!(pk_apply(&c, k, &f).unwrap().is_symmetric());
        }

        #[test]
        fn dunkl_lowers_degree_by_one(n in 2usize..=4, theta in arb_theta(), d in 1usize..=5, f in arb_poly(4, 5)) {
            let h = f.restrict_leading(n).homogeneous(d);
            let c = ctx(n, theta);
            let g = dunkl_apply(&c, 1, &h).unwrap();
            prop_assert!(g.terms().all(|(e, _)| e.iter().sum::<u32>() as usize == d - 1));
        }
    }
}
