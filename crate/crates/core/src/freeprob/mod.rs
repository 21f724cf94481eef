//! Moments and free cumulants through Lukasiewicz paths, plus the free
//! operations acting on cumulant sequences.
//!
//! Sequences are 1-indexed mathematically and stored from index 0, so
//! `kappa[0]` is κ₁.

mod formal;

pub use formal::FormalPoly;

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symcore::rational::fmt_rat;
use crate::symcore::Rat;

pub const LUK_CAP: usize = 12;
pub const NC_CAP: usize = 10;

/// Coefficient ring for the moment–cumulant maps: exact rationals, floats,
/// or formal polynomials.
pub trait Scalar: Clone + Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}

impl<T> Scalar for T where T: Clone + Debug + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> {}

/// A Lukasiewicz path stored as its vertical displacements, each ≥ −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LukPath {
    steps: Vec<i32>,
}

impl LukPath {
    pub fn new(steps: Vec<i32>) -> Result<Self> {
        let mut h = 0i64;
        for &s in &steps {
            if s < -1 {
                return Err(Error::InvalidInput(format!("step {s} below -1")));
            }
            h += s as i64;
            if h < 0 {
                return Err(Error::InvalidInput("path leaves the first quadrant".into()));
            }
        }
        if h != 0 {
            return Err(Error::InvalidInput(format!("path ends at height {h}")));
        }
        Ok(LukPath { steps })
    }

    pub fn steps(&self) -> &[i32] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Π_d κ_d^{#steps of height change d−1}
    pub fn weight<S: Scalar>(&self, kappa: &[S]) -> S {
        self.steps
            .iter()
            .filter(|&&s| s >= 0)
            .fold(S::one(), |acc, &s| acc * kappa[s as usize].clone())
    }
}

/// All paths of length `k`, lexicographic in their step sequences.
pub fn luk_enumerate(k: usize) -> Result<Vec<LukPath>> {
    if k > LUK_CAP {
        return Err(Error::CapExceeded { what: "path length", value: k, cap: LUK_CAP });
    }
    fn go(left: usize, h: i32, cur: &mut Vec<i32>, out: &mut Vec<LukPath>) {
        if left == 0 {
            if h == 0 {
                out.push(LukPath { steps: cur.clone() });
            }
            return;
        }
        // must be able to come back down in the remaining steps
        let max_up = left as i32 - 1 - h;
        for s in -1..=max_up {
            if h + s < 0 {
                continue;
            }
            cur.push(s);
            go(left - 1, h + s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

fn need<S>(v: &[S], k: usize) -> Result<()> {
    if v.len() < k {
        return Err(Error::LengthMismatch(v.len(), k));
    }
    Ok(())
}

/// `m_1..m_K` from `κ_1..κ_K`, summing path weights by dynamic programming
/// over the current height.
pub fn moments_from_cumulants<S: Scalar>(kappa: &[S], k_max: usize) -> Result<Vec<S>> {
    need(kappa, k_max)?;
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        // weights[h] = total weight of prefixes ending at height h
        let mut weights = vec![S::zero(); k + 1];
        weights[0] = S::one();
        for step in 0..k {
            let left = k - step - 1;
            let mut next = vec![S::zero(); k + 1];
            for h in 0..=k {
                if weights[h].is_zero() {
                    continue;
                }
                if h > 0 {
                    next[h - 1] = next[h - 1].clone() + weights[h].clone();
                }
                for d in 1..=k {
                    let nh = h + d - 1;
                    if nh > left {
                        break;
                    }
                    next[nh] = next[nh].clone() + weights[h].clone() * kappa[d - 1].clone();
                }
            }
            weights = next;
        }
        out.push(weights[0].clone());
    }
    Ok(out)
}

/// Path-by-path evaluation of the same sum, used as a cross-check.
pub fn moments_by_paths<S: Scalar>(kappa: &[S], k_max: usize) -> Result<Vec<S>> {
    need(kappa, k_max)?;
    (1..=k_max)
        .map(|k| Ok(luk_enumerate(k)?.iter().fold(S::zero(), |acc, p| acc + p.weight(kappa))))
        .collect()
}

/// Inverts [`moments_from_cumulants`]: `m_k = κ_k + (polynomial in κ_1..κ_{k−1})`.
pub fn cumulants_from_moments<S: Scalar>(m: &[S], k_max: usize) -> Result<Vec<S>> {
    need(m, k_max)?;
    let mut kappa: Vec<S> = vec![S::zero(); k_max];
    for k in 1..=k_max {
        let lower = moments_from_cumulants(&kappa[..k], k)?;
        kappa[k - 1] = m[k - 1].clone() - lower[k - 1].clone();
    }
    Ok(kappa)
}

/// Set partitions of {0..k-1} as block labels, restricted growth strings.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, k: usize, maxb: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..=maxb {
            cur.push(b);
            go(i + 1, k, maxb.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, 0, &mut Vec::new(), &mut out);
    out
}

fn is_non_crossing(labels: &[usize]) -> bool {
    let k = labels.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    if labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Block sizes of every non-crossing partition of a k-set.
pub fn non_crossing_block_sizes(k: usize) -> Vec<Vec<usize>> {
    set_partitions(k)
        .into_iter()
        .filter(|l| is_non_crossing(l))
        .map(|l| {
            let nb = l.iter().max().map_or(0, |m| m + 1);
            let mut sizes = vec![0; nb];
            for b in l {
                sizes[b] += 1;
            }
            sizes
        })
        .collect()
}

/// Free cumulants from the classical definition `m_k = Σ_{π∈NC(k)} Π_B κ_{|B|}`,
/// solved triangularly.
pub fn nc_oracle_cumulants<S: Scalar>(m: &[S], k_max: usize) -> Result<Vec<S>> {
    if k_max > NC_CAP {
        return Err(Error::CapExceeded { what: "order", value: k_max, cap: NC_CAP });
    }
    need(m, k_max)?;
    let mut kappa: Vec<S> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let rest = non_crossing_block_sizes(k)
            .into_iter()
            .filter(|s| s.len() > 1)
            .fold(S::zero(), |acc, sizes| {
                acc + sizes.iter().fold(S::one(), |p, &b| p * kappa[b - 1].clone())
            });
        kappa.push(m[k - 1].clone() - rest);
    }
    Ok(kappa)
}

/// Free additive convolution: cumulants add.
pub fn free_convolve<S: Scalar>(a: &[S], b: &[S]) -> Result<Vec<S>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect())
}

/// Free α-projection: `κ_d ↦ κ_d / α` for `0 < α ≤ 1`.
pub fn free_project(kappa: &[Rat], alpha: &Rat) -> Result<Vec<Rat>> {
    if !alpha.is_positive() || alpha > &Rat::one() {
        return Err(Error::AlphaOutOfRange(fmt_rat(alpha)));
    }
    Ok(kappa.iter().map(|k| k / alpha).collect())
}

/// Floating-point variant of [`free_project`].
pub fn free_project_f64(kappa: &[f64], alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha.to_string()));
    }
    Ok(kappa.iter().map(|k| k / alpha).collect())
}

/// Semicircle of variance T: `(0, T, 0, 0, …)` through order K.
pub fn semicircle_cumulants(t: &Rat, k_max: usize) -> Result<Vec<Rat>> {
    if t.is_negative() {
        return Err(Error::InvalidInput(format!("semicircle variance must be >= 0, got {}", fmt_rat(t))));
    }
    Ok((1..=k_max).map(|d| if d == 2 { t.clone() } else { Rat::zero() }).collect())
}

/// Density of the semicircle law of variance T.
pub fn semicircle_density(t: f64, x: f64) -> f64 {
    let r = 4.0 * t - x * x;
    if r <= 0.0 {
        0.0
    } else {
        r.sqrt() / (2.0 * std::f64::consts::PI * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn path_enumeration() {
        let steps = |k| luk_enumerate(k).unwrap().into_iter().map(|p| p.steps).collect::<Vec<_>>();
        assert_eq!(steps(1), vec![vec![0]]);
        assert_eq!(steps(2), vec![vec![0, 0], vec![1, -1]]);
        let mut three = steps(3);
        three.sort();
        let mut expect = vec![vec![0, 0, 0], vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1], vec![2, -1, -1]];
        expect.sort();
        assert_eq!(three, expect);
        // Catalan(k) paths of length k
        let counts: Vec<usize> = (1..=8).map(|k| luk_enumerate(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429, 1430]);
        assert!(matches!(luk_enumerate(13), Err(Error::CapExceeded { .. })));
        assert!(LukPath::new(vec![-1, 1]).is_err());
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moments_from_cumulants(&ints(&[1, 0, 0, 0, 0]), 5).unwrap(), ints(&[1; 5]));
        let t = rat(3, 2);
        let m = moments_from_cumulants(&semicircle_cumulants(&t, 6).unwrap(), 6).unwrap();
        assert_eq!(m[1], t);
        assert_eq!(m[3], rat(2, 1) * &t * &t);
        assert_eq!(m[5], rat(5, 1) * &t * &t * &t);
        assert!(m[0].is_zero() && m[2].is_zero() && m[4].is_zero());

        let k = [FormalPoly::gen('k', 1), FormalPoly::gen('k', 2), FormalPoly::gen('k', 3)];
        let m3 = moments_from_cumulants(&k, 3).unwrap()[2].clone();
        assert_eq!(m3.to_string(), "k3 + 3*k1*k2 + k1^3");
    }

    #[test]
    fn cumulant_examples() {
        let z = vec![rat(0, 1); 6];
        assert_eq!(cumulants_from_moments(&z, 6).unwrap(), z);
        let k = cumulants_from_moments(&[rat(1, 2), rat(1, 3), rat(1, 4)], 3).unwrap();
        assert_eq!(k, vec![rat(1, 2), rat(1, 12), rat(0, 1)]);

        let t = rat(2, 1);
        let cat = [1i64, 2, 5, 14, 42];
        let m: Vec<Rat> = (1..=10)
            .map(|k| if k % 2 == 1 { rat(0, 1) } else { rat(cat[k / 2 - 1], 1) * crate::symcore::rational::pow(&t, k as u32 / 2) })
            .collect();
        assert_eq!(nc_oracle_cumulants(&m, 10).unwrap(), semicircle_cumulants(&t, 10).unwrap());
        assert_eq!(nc_oracle_cumulants(&ints(&[1; 6]), 6).unwrap(), ints(&[1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn free_operations() {
        let k = ints(&[3, -1, 2]);
        let zero = ints(&[0, 0, 0]);
        assert_eq!(free_convolve(&k, &zero).unwrap(), k);
        let s1 = semicircle_cumulants(&rat(1, 3), 4).unwrap();
        let s2 = semicircle_cumulants(&rat(1, 2), 4).unwrap();
        assert_eq!(free_convolve(&s1, &s2).unwrap(), semicircle_cumulants(&rat(5, 6), 4).unwrap());
        let shifted = free_convolve(&ints(&[5, 0, 0]), &k).unwrap();
        assert_eq!(shifted, ints(&[8, -1, 2]));
        assert!(free_convolve(&k, &ints(&[1])).is_err());

        assert_eq!(free_project(&k, &rat(1, 1)).unwrap(), k);
        let t = rat(7, 3);
        assert_eq!(
            free_project(&semicircle_cumulants(&t, 4).unwrap(), &rat(1, 2)).unwrap(),
            semicircle_cumulants(&(&t * rat(2, 1)), 4).unwrap()
        );
        assert_eq!(free_project(&ints(&[1, 1]), &rat(1, 4)).unwrap(), ints(&[4, 4]));
        assert!(matches!(free_project(&k, &rat(3, 2)), Err(Error::AlphaOutOfRange(_))));
        assert!(free_project(&k, &rat(0, 1)).is_err());
        assert_eq!(semicircle_cumulants(&rat(0, 1), 3).unwrap(), ints(&[0, 0, 0]));
        assert!(semicircle_cumulants(&rat(-1, 1), 3).is_err());
    }

    #[test]
    fn semicircle_second_moment_by_quadrature() {
        for t in [0.5, 1.0, 3.0] {
            // Simpson on x = 2√T sin φ removes the endpoint square roots
            let n = 2000;
            let r = 2.0 * f64::sqrt(t);
            let h = std::f64::consts::PI / n as f64;
            let f = |phi: f64| {
                let x = r * phi.sin();
                x * x * semicircle_density(t, x) * r * phi.cos()
            };
            let mut s = f(-std::f64::consts::FRAC_PI_2) + f(std::f64::consts::FRAC_PI_2);
            for i in 1..n {
                let phi = -std::f64::consts::FRAC_PI_2 + i as f64 * h;
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(phi);
            }
            let m2 = s * h / 3.0;
            assert!((m2 - t).abs() < 1e-9, "T = {t}: {m2}");
        }
    }

    #[test]
    fn float_path_matches_exact() {
        let kf = [0.3, 1.2, -0.5, 0.25];
        let mf = moments_from_cumulants(&kf, 4).unwrap();
        let back = cumulants_from_moments(&mf, 4).unwrap();
        for (a, b) in kf.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=9).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn roundtrip_through_order_8(k in prop::collection::vec(arb_rat(), 8)) {
            let m = moments_from_cumulants(&k, 8).unwrap();
            prop_assert_eq!(cumulants_from_moments(&m, 8).unwrap(), k.clone());
            prop_assert_eq!(moments_by_paths(&k, 8).unwrap(), m);
        }

        #[test]
        fn oracle_agrees(m in prop::collection::vec(arb_rat(), 8)) {
            prop_assert_eq!(nc_oracle_cumulants(&m, 8).unwrap(), cumulants_from_moments(&m, 8).unwrap());
        }

        #[test]
        fn weighted_homogeneity(k in prop::collection::vec(arb_rat(), 6), c in arb_rat()) {
            let scaled: Vec<Rat> = k.iter().enumerate().map(|(i, x)| x * crate::symcore::rational::pow(&c, i as u32 + 1)).collect();
            let m = moments_from_cumulants(&k, 6).unwrap();
            let ms = moments_from_cumulants(&scaled, 6).unwrap();
            for (i, (a, b)) in m.iter().zip(&ms).enumerate() {
                prop_assert_eq!(a * crate::symcore::rational::pow(&c, i as u32 + 1), b.clone());
            }
        }
    }
}
