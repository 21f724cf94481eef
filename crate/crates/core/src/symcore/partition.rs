use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::factorial;
use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing and positive.
///
/// The empty partition stands for the constant term of a graded series.
/// Partitions are ordered first by size, then reverse-lexicographically
/// within a size, so `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single(k: u32) -> Self {
        assert!(k > 0);
        Partition(vec![k])
    }

    /// `(1^n)`
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// m_j(λ)
    pub fn multiplicity(&self, j: u32) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// z_λ = Π_j j^{m_j} m_j!
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i];
            let m = self.multiplicity(j);
            z *= num_traits::pow(BigInt::from(j), m) * factorial(m as u32);
            i += m;
        }
        z
    }

    /// Union of multisets of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Cells `(i, j)` of the Young diagram, 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (1..=row).map(move |j| (i as u32 + 1, j)))
    }

    /// Dominance order on partitions of equal size.
    pub fn dominates(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..self.len().max(other.len()) {
            a += *self.0.get(i).unwrap_or(&0) as u64;
            b += *other.0.get(i).unwrap_or(&0) as u64;
            if a < b {
                return false;
            }
        }
        true
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `d` in reverse lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d as u32, d as u32, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `d`, in canonical order.
pub fn partitions_up_to(d: usize) -> Vec<Partition> {
    (0..=d).flat_map(partitions_of).collect()
}
