//! Truncated graded symmetric-function series with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::partition::{partitions_of, Partition};
use super::rational::{fmt_rat, int, Rat};
use super::transition::transitions;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Power,
    Monomial,
    Elementary,
}

impl Basis {
    fn symbol(self) -> &'static str {
        match self {
            Basis::Power => "p",
            Basis::Monomial => "M",
            Basis::Elementary => "e",
        }
    }
}

/// Element of the ring of symmetric functions truncated above
/// `truncation_degree`, stored as partition-indexed coefficients in one basis.
/// The empty partition carries the constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSeries {
    basis: Basis,
    truncation_degree: usize,
    coeffs: BTreeMap<Partition, Rat>,
}

impl SymSeries {
    pub fn zero(basis: Basis, truncation_degree: usize) -> Self {
        SymSeries { basis, truncation_degree, coeffs: BTreeMap::new() }
    }

    pub fn one(basis: Basis, truncation_degree: usize) -> Self {
        Self::from_terms(basis, truncation_degree, [(Partition::empty(), Rat::one())])
    }

    /// Collects terms, summing repeats and dropping zeros and anything above
    /// the truncation degree.
    pub fn from_terms(
        basis: Basis,
        truncation_degree: usize,
        terms: impl IntoIterator<Item = (Partition, Rat)>,
    ) -> Self {
        let mut coeffs: BTreeMap<Partition, Rat> = BTreeMap::new();
        for (lam, c) in terms {
            if lam.size() <= truncation_degree {
                *coeffs.entry(lam).or_insert_with(Rat::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        SymSeries { basis, truncation_degree, coeffs }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn truncation_degree(&self) -> usize {
        self.truncation_degree
    }

    pub fn coeff(&self, lam: &Partition) -> Rat {
        self.coeffs.get(lam).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Partition::empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn with_truncation(&self, truncation_degree: usize) -> Self {
        Self::from_terms(self.basis, truncation_degree, self.coeffs.clone())
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        Self::from_terms(
            self.basis,
            self.truncation_degree,
            self.coeffs.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.basis, self.truncation_degree, self.coeffs.iter().map(|(l, x)| (l.clone(), x * c)))
    }

    pub fn add(&self, other: &SymSeries) -> Result<Self> {
        self.same_basis(other)?;
        let terms = self.coeffs.iter().chain(other.coeffs.iter()).map(|(l, c)| (l.clone(), c.clone()));
        Ok(Self::from_terms(self.basis, self.truncation_degree.min(other.truncation_degree), terms))
    }

    pub fn sub(&self, other: &SymSeries) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Product in the power-sum or elementary basis, where basis elements
    /// multiply by taking the union of partitions.
    pub fn mul(&self, other: &SymSeries) -> Result<Self> {
        self.same_basis(other)?;
        if self.basis == Basis::Monomial {
            let a = basis_convert(self, Basis::Power, None)?;
            let b = basis_convert(other, Basis::Power, None)?;
            return basis_convert(&a.mul(&b)?, Basis::Monomial, None);
        }
        let trunc = self.truncation_degree.min(other.truncation_degree);
        let mut out: BTreeMap<Partition, Rat> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.size() + b.size() <= trunc {
                    *out.entry(a.union(b)).or_insert_with(Rat::zero) += ca * cb;
                }
            }
        }
        Ok(Self::from_terms(self.basis, trunc, out))
    }

    fn same_basis(&self, other: &SymSeries) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::MismatchedContext(format!("bases {:?} and {:?}", self.basis, other.basis)));
        }
        Ok(())
    }

    fn max_degree(&self) -> usize {
        self.coeffs.keys().map(Partition::size).max().unwrap_or(0)
    }
}

impl fmt::Display for SymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if lam.is_empty() {
                write!(f, "{}", fmt_rat(c))?;
            } else {
                write!(f, "{}*{}{}", fmt_rat(c), self.basis.symbol(), lam)?;
            }
        }
        Ok(())
    }
}

/// Re-expresses `s` in `target`. With `num_vars = Some(n)` the conversion is
/// only well defined (unique) when the truncation degree is at most `n`.
pub fn basis_convert(s: &SymSeries, target: Basis, num_vars: Option<usize>) -> Result<SymSeries> {
    if let Some(n) = num_vars {
        if s.truncation_degree > n {
            return Err(Error::DegreeExceedsVariables { degree: s.truncation_degree, num_vars: n });
        }
    }
    if s.basis == target {
        return Ok(s.clone());
    }
    // route everything through the power-sum basis
    let mut out: Vec<(Partition, Rat)> = Vec::new();
    for d in 0..=s.max_degree() {
        let t = transitions(d);
        let mut row = vec![Rat::zero(); t.partitions.len()];
        let mut any = false;
        for (lam, c) in s.coeffs.iter().filter(|(l, _)| l.size() == d) {
            any = true;
            row[t.index_of(lam).expect("partition of degree d")] = c.clone();
        }
        if !any {
            continue;
        }
        let to_power = match s.basis {
            Basis::Power => None,
            Basis::Monomial => Some(&t.monomial_to_power),
            Basis::Elementary => Some(&t.elementary_to_power),
        };
        if let Some(m) = to_power {
            row = apply(&row, m);
        }
        let from_power = match target {
            Basis::Power => None,
            Basis::Monomial => Some(&t.power_to_monomial),
            Basis::Elementary => Some(&t.power_to_elementary),
        };
        if let Some(m) = from_power {
            row = apply(&row, m);
        }
        out.extend(t.partitions.iter().cloned().zip(row));
    }
    Ok(SymSeries::from_terms(target, s.truncation_degree, out))
}

fn apply(row: &[Rat], m: &[Vec<Rat>]) -> Vec<Rat> {
    let n = row.len();
    (0..n)
        .map(|j| row.iter().zip(m).filter(|(c, _)| !c.is_zero()).map(|(c, r)| c * &r[j]).sum())
        .collect()
}

/// Truncated exponential; the input must have zero constant term.
pub fn series_exp(s: &SymSeries) -> Result<SymSeries> {
    let c0 = s.constant_term();
    if !c0.is_zero() {
        return Err(Error::WrongConstantTerm { expected: "0".into(), found: fmt_rat(&c0) });
    }
    let basis = s.basis;
    let x = basis_convert(s, Basis::Power, None)?;
    let trunc = x.truncation_degree;
    let mut total = SymSeries::one(Basis::Power, trunc);
    let mut term = SymSeries::one(Basis::Power, trunc);
    for j in 1..=trunc {
        term = term.mul(&x)?.scale(&Rat::new(1.into(), (j as i64).into()));
        if term.is_zero() {
            break;
        }
        total = total.add(&term)?;
    }
    basis_convert(&total, basis, None)
}

/// Truncated logarithm `Σ_j (-1)^{j+1} (s-1)^j / j`; the constant term must be 1.
pub fn series_log(s: &SymSeries) -> Result<SymSeries> {
    let c0 = s.constant_term();
    if !c0.is_one() {
        return Err(Error::WrongConstantTerm { expected: "1".into(), found: fmt_rat(&c0) });
    }
    let basis = s.basis;
    let g = basis_convert(s, Basis::Power, None)?;
    let trunc = g.truncation_degree;
    let u = g.sub(&SymSeries::one(Basis::Power, trunc))?;
    let mut total = SymSeries::zero(Basis::Power, trunc);
    let mut power = SymSeries::one(Basis::Power, trunc);
    for j in 1..=trunc {
        power = power.mul(&u)?;
        if power.is_zero() {
            break;
        }
        let sign = if j % 2 == 1 { 1 } else { -1 };
        total = total.add(&power.scale(&Rat::new(sign.into(), (j as i64).into())))?;
    }
    basis_convert(&total, basis, None)
}

/// Evaluates the polynomial f_η expressing m_η through elementary symmetric
/// functions at `e_k = values[k-1]`.
pub fn f_eta_eval(eta: &Partition, values: &[Rat]) -> Rat {
    let d = eta.size();
    assert!(values.len() >= d, "need e_1..e_{d}, got {} values", values.len());
    let m = SymSeries::from_terms(Basis::Monomial, d, [(eta.clone(), Rat::one())]);
    let e = basis_convert(&m, Basis::Elementary, None).expect("unbounded conversion");
    e.terms()
        .map(|(lam, c)| c * lam.parts().iter().map(|&k| values[k as usize - 1].clone()).product::<Rat>())
        .sum()
}

/// `e_k = (-1)^k` for k = 1..=n, the specialization used by the constellation sums.
pub fn alternating_signs(n: usize) -> Vec<Rat> {
    (1..=n).map(|k| int(if k % 2 == 0 { 1 } else { -1 })).collect()
}

/// All partitions up to degree `d`, useful for iterating a dense view of a series.
pub fn support_up_to(d: usize) -> impl Iterator<Item = Partition> {
    (0..=d).flat_map(partitions_of)
}
