//! Jack symmetric functions J_λ in the J-normalization (coefficient of
//! m_{1^n} equal to n!), expanded in power sums.
//!
//! Construction is Gram–Schmidt on the monomial basis with the α-deformed
//! Hall product `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ α^{ℓ(λ)}`, processing partitions from
//! `(1^n)` upwards in a linear extension of dominance order.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symcore::rational::{factorial, Rat};
use crate::symcore::{basis_convert, partitions_of, Basis, Partition, SymSeries};

pub const DEFAULT_DEGREE_CAP: usize = 8;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Largest |λ| for which Jack functions are built on demand.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JackParam {
    alpha: Rat,
}

impl JackParam {
    pub fn new(alpha: Rat) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidInput(format!("Jack parameter must be positive, got {alpha}")));
        }
        Ok(JackParam { alpha })
    }

    /// α = θ⁻¹
    pub fn from_theta(theta: &Rat) -> Result<Self> {
        if !theta.is_positive() {
            return Err(Error::InvalidInput(format!("theta must be positive, got {theta}")));
        }
        Self::new(theta.recip())
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn theta(&self) -> Rat {
        self.alpha.recip()
    }
}

fn homogeneous_degree(f: &SymSeries) -> Option<usize> {
    let mut degs = f.terms().map(|(l, _)| l.size());
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

/// The α-deformed Hall inner product of two homogeneous power-sum series.
pub fn jack_inner(f: &SymSeries, g: &SymSeries, p: &JackParam) -> Result<Rat> {
    if f.basis() != Basis::Power || g.basis() != Basis::Power {
        return Err(Error::MismatchedContext("jack_inner expects power-sum series".into()));
    }
    match (homogeneous_degree(f), homogeneous_degree(g)) {
        (Some(a), Some(b)) if a != b => return Err(Error::DegreeMismatch(a, b)),
        (None, _) | (_, None) if !f.is_zero() && !g.is_zero() => {
            let (a, b) = (f.terms().map(|(l, _)| l.size()).max(), g.terms().map(|(l, _)| l.size()).max());
            return Err(Error::DegreeMismatch(a.unwrap_or(0), b.unwrap_or(0)));
        }
        _ => {}
    }
    Ok(f.terms().map(|(lam, c)| c * g.coeff(lam) * hall_weight(lam, &p.alpha)).sum())
}

fn hall_weight(lam: &Partition, alpha: &Rat) -> Rat {
    Rat::from_integer(lam.z()) * crate::symcore::rational::pow(alpha, lam.len() as u32)
}

/// Builds J_λ for every λ ⊢ n at once.
fn build_degree(n: usize, p: &JackParam) -> Vec<(Partition, SymSeries)> {
    let mut order = partitions_of(n);
    order.reverse(); // (1^n) first: compatible with dominance
    let norm_of = |s: &SymSeries| -> Rat { s.terms().map(|(l, c)| c * c * hall_weight(l, &p.alpha)).sum() };

    let mut done: Vec<(Partition, SymSeries, Rat)> = Vec::new();
    for lam in order {
        let m = SymSeries::from_terms(Basis::Monomial, n, [(lam.clone(), Rat::one())]);
        let mut v = basis_convert(&m, Basis::Power, None).expect("unbounded conversion");
        let m_power = v.clone();
        for (_, q, qq) in &done {
            let c = jack_inner(&m_power, q, p).expect("same degree") / qq;
            v = v.sub(&q.scale(&c)).expect("same basis");
        }
        let norm = norm_of(&v);
        done.push((lam, v, norm));
    }
    let column = Partition::column(n as u32);
    done.into_iter()
        .map(|(lam, pl, _)| {
            let mono = basis_convert(&pl, Basis::Monomial, None).expect("unbounded conversion");
            let lead = mono.coeff(&column);
            assert!(!lead.is_zero(), "P_{lam} has no m_(1^n) component");
            let scale = Rat::from_integer(factorial(n as u32)) / lead;
            (lam, pl.scale(&scale))
        })
        .collect()
}

/// J_λ with the given parameter, in the power-sum basis, truncated at |λ|.
pub fn jack_j(lam: &Partition, p: &JackParam) -> SymSeries {
    build_degree(lam.size(), p)
        .into_iter()
        .find(|(l, _)| l == lam)
        .map(|(_, j)| j)
        .expect("partition of its own size")
}

/// Precomputed J_λ for all |λ| ≤ degree.
#[derive(Debug)]
pub struct JackTable {
    param: JackParam,
    degree: usize,
    entries: BTreeMap<Partition, SymSeries>,
}

impl JackTable {
    pub fn build(param: JackParam, degree: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(Partition::empty(), SymSeries::one(Basis::Power, 0));
        for n in 1..=degree {
            entries.extend(build_degree(n, &param));
        }
        JackTable { param, degree, entries }
    }

    /// Shared table covering at least `degree`, from a process-wide cache.
    pub fn cached(param: &JackParam, degree: usize) -> Result<Arc<JackTable>> {
        let cap = degree_cap();
        if degree > cap {
            return Err(Error::DegreeCapExceeded { requested: degree, cap });
        }
        static CACHE: OnceLock<Mutex<HashMap<JackParam, Arc<JackTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().unwrap().get(param) {
            if t.degree >= degree {
                return Ok(Arc::clone(t));
            }
        }
        let table = Arc::new(JackTable::build(param.clone(), degree));
        let mut guard = cache.lock().unwrap();
        let slot = guard.entry(param.clone()).or_insert_with(|| Arc::clone(&table));
        if slot.degree < degree {
            *slot = Arc::clone(&table);
        }
        Ok(Arc::clone(slot))
    }

    pub fn param(&self) -> &JackParam {
        &self.param
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, lam: &Partition) -> Option<&SymSeries> {
        self.entries.get(lam)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &SymSeries)> {
        self.entries.iter()
    }
}

/// `Π_{(i,j)∈λ} (α(λ_i−j) + (λ'_j−i) + 1)`, the ratio J_λ / P_λ between the
/// J-normalized and monic Jack functions.
pub fn j_to_p_factor(lam: &Partition, p: &JackParam) -> Rat {
    let conj = lam.conjugate();
    lam.cells()
        .map(|(i, j)| {
            let arm = i64::from(lam.parts()[i as usize - 1] - j);
            let leg = i64::from(conj.parts()[j as usize - 1]) - i64::from(i);
            &p.alpha * Rat::from_integer(arm.into()) + Rat::from_integer((leg + 1).into())
        })
        .product()
}

/// Monic Jack function P_λ = J_λ / [`j_to_p_factor`].
pub fn jack_p(lam: &Partition, p: &JackParam) -> SymSeries {
    jack_j(lam, p).scale(&j_to_p_factor(lam, p).recip())
}

/// Coefficient of P_λ(x)P_λ(a) (monic Jack functions) in the expansion of the multivariate
/// Bessel function B_a(x; θ) in N variables:
///
/// Π_{(i,j)∈λ} (α(λ_i−j)+(λ'_j−i)+1) / [(α(λ_i−j)+(λ'_j−i)+α)(Nθ+j−1−θ(i−1))]
///
/// Panics if a factor of the denominator vanishes, which cannot happen for
/// θ > 0 and ℓ(λ) ≤ N.
pub fn jack_weight(lam: &Partition, p: &JackParam, n: usize, theta: &Rat) -> Rat {
    assert!(lam.len() <= n, "jack_weight needs l({lam}) <= N = {n}");
    let conj = lam.conjugate();
    let alpha = &p.alpha;
    let nt = Rat::from_integer(n.into()) * theta;
    let mut num = Rat::one();
    let mut den = Rat::one();
    for (i, j) in lam.cells() {
        let arm = Rat::from_integer((lam.parts()[i as usize - 1] - j).into());
        let leg = Rat::from_integer((i64::from(conj.parts()[j as usize - 1]) - i64::from(i)).into());
        let base = alpha * &arm + &leg;
        num *= &base + Rat::one();
        let d1 = &base + alpha;
        let d2 = &nt + Rat::from_integer((j as i64 - 1).into()) - theta * Rat::from_integer((i as i64 - 1).into());
        assert!(!d1.is_zero() && !d2.is_zero(), "vanishing denominator in jack_weight for {lam}");
        den *= d1 * d2;
    }
    num / den
}

/// Evaluates a power-sum series at the point `a` (p_k(a) = Σ a_i^k).
pub fn eval_power_series(s: &SymSeries, a: &[Rat]) -> Rat {
    assert_eq!(s.basis(), Basis::Power);
    let max = s.terms().flat_map(|(l, _)| l.parts().first().copied()).max().unwrap_or(0);
    let pk: Vec<Rat> = (0..=max)
        .map(|k| a.iter().map(|x| crate::symcore::rational::pow(x, k)).sum())
        .collect();
    s.terms()
        .map(|(lam, c)| c * lam.parts().iter().map(|&k| pk[k as usize].clone()).product::<Rat>())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn power(trunc: usize, terms: &[(&[u32], Rat)]) -> SymSeries {
        SymSeries::from_terms(Basis::Power, trunc, terms.iter().map(|(l, c)| (p(l), c.clone())))
    }

    #[test]
    fn inner_product_examples() {
        let one = JackParam::new(rat(1, 1)).unwrap();
        let a32 = JackParam::new(rat(3, 2)).unwrap();
        let p1 = power(1, &[(&[1], rat(1, 1))]);
        let p2 = power(2, &[(&[2], rat(1, 1))]);
        let p11 = power(2, &[(&[1, 1], rat(1, 1))]);
        assert_eq!(jack_inner(&p1, &p1, &one).unwrap(), rat(1, 1));
        assert_eq!(jack_inner(&p2, &p2, &a32).unwrap(), rat(3, 1));
        assert_eq!(jack_inner(&p2, &p11, &a32).unwrap(), rat(0, 1));
        assert_eq!(jack_inner(&p1, &p2, &one), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn low_degree_jacks() {
        for alpha in [rat(1, 1), rat(2, 1), rat(5, 3)] {
            let prm = JackParam::new(alpha.clone()).unwrap();
            assert_eq!(jack_j(&p(&[1]), &prm), power(1, &[(&[1], rat(1, 1))]));
            assert_eq!(jack_j(&p(&[2]), &prm), power(2, &[(&[1, 1], rat(1, 1)), (&[2], alpha.clone())]));
            assert_eq!(jack_j(&p(&[1, 1]), &prm), power(2, &[(&[1, 1], rat(1, 1)), (&[2], rat(-1, 1))]));
        }
    }

    #[test]
    fn weight_examples() {
        for theta in [rat(1, 2), rat(1, 1), rat(3, 1)] {
            let prm = JackParam::from_theta(&theta).unwrap();
            for n in 1..5usize {
                // single box: numerator 1, denominator α·Nθ
                assert_eq!(jack_weight(&p(&[1]), &prm, n, &theta), rat(1, n as i64));
                assert_eq!(jack_weight(&Partition::empty(), &prm, n, &theta), rat(1, 1));
            }
        }
        let prm = JackParam::new(rat(1, 1)).unwrap();
        assert_eq!(jack_weight(&p(&[2]), &prm, 2, &rat(1, 1)), rat(1, 6));
    }

    #[test]
    fn rejects_nonpositive_parameter() {
        assert!(JackParam::new(rat(0, 1)).is_err());
        assert!(JackParam::from_theta(&rat(-1, 2)).is_err());
    }

    #[test]
    fn cache_respects_cap() {
        let prm = JackParam::new(rat(7, 5)).unwrap();
        assert!(matches!(
            JackTable::cached(&prm, degree_cap() + 1),
            Err(Error::DegreeCapExceeded { .. })
        ));
        let t = JackTable::cached(&prm, 3).unwrap();
        assert!(t.degree() >= 3);
        assert_eq!(t.get(&p(&[2])).unwrap(), &jack_j(&p(&[2]), &prm));
    }
}
