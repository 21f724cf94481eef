//! Change-of-basis matrices between power sums, monomial and elementary
//! symmetric functions, one homogeneous degree at a time.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partition::{partitions_of, Partition};
use super::rational::Rat;

/// Row convention: `f_λ = Σ_μ M[λ][μ] g_μ` for a matrix from basis f to basis g.
#[derive(Debug)]
pub struct Transitions {
    pub degree: usize,
    pub partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    pub power_to_monomial: Vec<Vec<Rat>>,
    pub monomial_to_power: Vec<Vec<Rat>>,
    pub elementary_to_power: Vec<Vec<Rat>>,
    pub power_to_elementary: Vec<Vec<Rat>>,
}

impl Transitions {
    fn build(degree: usize) -> Self {
        let partitions = partitions_of(degree);
        let index: HashMap<_, _> = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

        let power_to_monomial: Vec<Vec<Rat>> = partitions
            .iter()
            .map(|lam| {
                partitions
                    .iter()
                    .map(|mu| Rat::from_integer(BigInt::from(power_in_monomial(lam, mu))))
                    .collect()
            })
            .collect();
        let monomial_to_power = invert(&power_to_monomial);

        let elementary_to_power: Vec<Vec<Rat>> = partitions
            .iter()
            .map(|lam| {
                let expansion = elementary_in_power(lam);
                partitions
                    .iter()
                    .map(|mu| expansion.get(mu).cloned().unwrap_or_else(Rat::zero))
                    .collect()
            })
            .collect();
        let power_to_elementary = invert(&elementary_to_power);

        Transitions {
            degree,
            partitions,
            index,
            power_to_monomial,
            monomial_to_power,
            elementary_to_power,
            power_to_elementary,
        }
    }

    pub fn index_of(&self, lam: &Partition) -> Option<usize> {
        self.index.get(lam).copied()
    }
}

/// Cached transition data for homogeneous degree `d`.
pub fn transitions(d: usize) -> Arc<Transitions> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transitions>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&d) {
        return Arc::clone(t);
    }
    // built outside the lock; a racing builder produces an identical table
    let built = Arc::new(Transitions::build(d));
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(d).or_insert(built))
}

/// Coefficient of m_μ in p_λ: the number of ways to distribute the parts of λ
/// into the rows of μ so that every row is filled exactly.
fn power_in_monomial(lam: &Partition, mu: &Partition) -> u128 {
    fn go(parts: &[u32], caps: &mut Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), u128>) -> u128 {
        if parts.is_empty() {
            return caps.iter().all(|&c| c == 0) as u128;
        }
        let key = (parts.len(), caps.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for j in 0..caps.len() {
            if caps[j] >= parts[0] {
                caps[j] -= parts[0];
                total += go(&parts[1..], caps, memo);
                caps[j] += parts[0];
            }
        }
        memo.insert(key, total);
        total
    }
    if lam.size() != mu.size() {
        return 0;
    }
    go(lam.parts(), &mut mu.parts().to_vec(), &mut HashMap::new())
}

/// e_λ expanded in power sums via e_n = Σ_{ρ ⊢ n} (-1)^{n-ℓ(ρ)} p_ρ / z_ρ.
fn elementary_in_power(lam: &Partition) -> HashMap<Partition, Rat> {
    let mut acc: HashMap<Partition, Rat> = HashMap::from([(Partition::empty(), Rat::one())]);
    for &n in lam.parts() {
        let factor: Vec<(Partition, Rat)> = partitions_of(n as usize)
            .into_iter()
            .map(|rho| {
                let sign = if (n as usize - rho.len()) % 2 == 0 { 1 } else { -1 };
                let c = Rat::new(BigInt::from(sign), rho.z());
                (rho, c)
            })
            .collect();
        let mut next: HashMap<Partition, Rat> = HashMap::new();
        for (a, ca) in &acc {
            for (b, cb) in &factor {
                *next.entry(a.union(b)).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        acc = next;
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Exact inverse by Gauss-Jordan elimination; panics on a singular matrix.
pub(crate) fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular transition matrix");
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rational::rat;

    fn identity_check(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
        let n = a.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: Rat = (0..n).map(|k| &a[i][k] * &b[k][j]).sum();
                s == if i == j { Rat::one() } else { Rat::zero() }
            })
        })
    }

    #[test]
    fn transition_products_are_identity_through_degree_8() {
        for d in 0..=8 {
            let t = transitions(d);
            assert!(identity_check(&t.monomial_to_power, &t.power_to_monomial), "degree {d}");
            assert!(identity_check(&t.power_to_monomial, &t.monomial_to_power), "degree {d}");
            assert!(identity_check(&t.elementary_to_power, &t.power_to_elementary), "degree {d}");
        }
    }

    #[test]
    fn known_small_entries() {
        let t = transitions(2);
        // partitions: (2), (1,1); p_11 = m_2 + 2 m_11
        let i2 = t.index_of(&Partition::single(2)).unwrap();
        let i11 = t.index_of(&Partition::column(2)).unwrap();
        assert_eq!(t.power_to_monomial[i11][i2], rat(1, 1));
        assert_eq!(t.power_to_monomial[i11][i11], rat(2, 1));
        // m_11 = (p_11 - p_2)/2
        assert_eq!(t.monomial_to_power[i11][i11], rat(1, 2));
        assert_eq!(t.monomial_to_power[i11][i2], rat(-1, 2));
        // e_2 = m_11
        let e_in_m: Rat = (0..2).map(|k| &t.elementary_to_power[i2][k] * &t.power_to_monomial[k][i11]).sum();
        assert_eq!(e_in_m, rat(1, 1));
    }

    #[test]
    fn power_sums_are_unitriangular_in_dominance() {
        let t = transitions(6);
        for (i, lam) in t.partitions.iter().enumerate() {
            for (j, mu) in t.partitions.iter().enumerate() {
                let c = &t.power_to_monomial[i][j];
                if !c.is_zero() {
                    assert!(mu.dominates(lam), "{lam} -> {mu}");
                }
            }
        }
    }
}
