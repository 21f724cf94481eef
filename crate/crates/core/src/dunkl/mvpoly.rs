use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symcore::rational::{fmt_rat, pow, Rat};
use crate::symcore::{basis_convert, Basis, Partition, SymSeries};

/// Sparse polynomial in `num_vars` ordered variables with exact coefficients.
/// Keys are dense exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MVPoly {
    pub fn zero(num_vars: usize) -> Self {
        MVPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        Self::from_terms(num_vars, [(vec![0; num_vars], c)])
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rat::one())
    }

    /// The variable x_i, 1-based.
    pub fn var(num_vars: usize, i: usize) -> Result<Self> {
        check_index(i, num_vars)?;
        let mut e = vec![0; num_vars];
        e[i - 1] = 1;
        Ok(Self::from_terms(num_vars, [(e, Rat::one())]))
    }

    /// p_k(x_1..x_N)
    pub fn power_sum(num_vars: usize, k: u32) -> Self {
        Self::from_terms(
            num_vars,
            (0..num_vars).map(|i| {
                let mut e = vec![0; num_vars];
                e[i] = k;
                (e, Rat::one())
            }),
        )
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        assert_eq!(e.len(), self.num_vars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.num_vars])
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| total(e)).max().unwrap_or(0)
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        self.filter(|e| total(e) == d)
    }

    pub fn truncate(&self, d: usize) -> Self {
        self.filter(|e| total(e) <= d)
    }

    fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        MVPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    fn same_vars(&self, other: &MVPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::LengthMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &MVPoly) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MVPoly) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        MVPoly { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &MVPoly) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        Ok(out)
    }

    /// Product truncated to total degree at most `d`.
    pub fn mul_truncated(&self, other: &MVPoly, d: usize) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            let da = total(ea);
            for (eb, cb) in other.terms.iter().filter(|(eb, _)| da + total(eb) <= d) {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        Ok(out)
    }

    /// ∂/∂x_i, 1-based.
    pub fn partial(&self, i: usize) -> Result<Self> {
        check_index(i, self.num_vars)?;
        let k = i - 1;
        let mut out = Self::zero(self.num_vars);
        for (e, c) in self.terms.iter().filter(|(e, _)| e[k] > 0) {
            let mut f = e.clone();
            f[k] -= 1;
            out.add_term(f, c * Rat::from_integer(e[k].into()));
        }
        Ok(out)
    }

    /// σ_{ij} f: exchange x_i and x_j.
    pub fn swap(&self, i: usize, j: usize) -> Result<Self> {
        check_index(i, self.num_vars)?;
        check_index(j, self.num_vars)?;
        Ok(MVPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f.swap(i - 1, j - 1);
                    (f, c.clone())
                })
                .collect(),
        })
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.num_vars {
            return Err(Error::LengthMismatch(x.len(), self.num_vars));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, xi)| pow(xi, k)).product::<Rat>())
            .sum())
    }

    /// Sets x_{m+1}, …, x_N to zero and drops them.
    pub fn restrict_leading(&self, m: usize) -> Self {
        assert!(m <= self.num_vars);
        let mut out = Self::zero(m);
        for (e, c) in self.terms.iter().filter(|(e, _)| e[m..].iter().all(|&k| k == 0)) {
            out.add_term(e[..m].to_vec(), c.clone());
        }
        out
    }

    /// True when every coefficient is constant on the orbit of its exponent
    /// vector under coordinate permutations and every orbit is complete.
    pub fn is_symmetric(&self) -> bool {
        let mut orbits: BTreeMap<Vec<u32>, (Rat, usize)> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.sort_unstable_by(|a, b| b.cmp(a));
            match orbits.get_mut(&key) {
                Some((c0, n)) => {
                    if c0 != c {
                        return false;
                    }
                    *n += 1;
                }
                None => {
                    orbits.insert(key, (c.clone(), 1));
                }
            }
        }
        orbits.iter().all(|(key, (_, n))| *n == orbit_size(key))
    }

    /// Coefficients on the monomial symmetric functions M_μ, assuming
    /// [`is_symmetric`](Self::is_symmetric) holds.
    pub fn monomial_coefficients(&self) -> BTreeMap<Partition, Rat> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                out.insert(Partition::from_unsorted(e.clone()), c.clone());
            }
        }
        out
    }

    /// Realizes a symmetric series in `num_vars` variables; monomials with
    /// more parts than variables vanish.
    pub fn from_symmetric(s: &SymSeries, num_vars: usize) -> Self {
        let m = basis_convert(s, Basis::Monomial, None).expect("unbounded conversion");
        let mut out = Self::zero(num_vars);
        for (mu, c) in m.terms().filter(|(mu, _)| mu.len() <= num_vars) {
            let mut base = mu.parts().to_vec();
            base.resize(num_vars, 0);
            for e in distinct_permutations(&base) {
                out.add_term(e, c.clone());
            }
        }
        out
    }
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, num_vars: n });
    }
    Ok(())
}

/// N! / Π m_j! where the multiplicities include zeros.
fn orbit_size(key: &[u32]) -> usize {
    let mut n = 1usize;
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, &k) in key.iter().enumerate() {
        let c = counts.entry(k).or_insert(0);
        *c += 1;
        n = n * (i + 1) / *c;
    }
    n
}

/// Distinct rearrangements of a weakly decreasing vector, lexicographically.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next-permutation on the ascending start
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

impl fmt::Display for MVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_rat(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
