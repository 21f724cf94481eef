use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::symcore::rational::fmt_rat;
use crate::symcore::{Partition, Rat};

/// Polynomial with rational coefficients in commuting symbols `s_1, s_2, …`.
/// A monomial `s_{λ_1} s_{λ_2} ⋯` is keyed by the partition λ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalPoly {
    terms: BTreeMap<Partition, Rat>,
    symbol: char,
}

impl FormalPoly {
    /// The generator `s_k` printed with the given letter.
    pub fn gen(symbol: char, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::single(k), Rat::one());
        FormalPoly { terms, symbol }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = FormalPoly::default();
        p.push(Partition::empty(), c);
        p
    }

    pub fn from_terms(symbol: char, terms: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        let mut p = FormalPoly { terms: BTreeMap::new(), symbol };
        for (k, c) in terms {
            p.push(k, c);
        }
        p
    }

    fn push(&mut self, key: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &Partition) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn with_symbol(mut self, symbol: char) -> Self {
        self.symbol = symbol;
        self
    }

    /// Substitutes `s_k = values[k-1]`.
    pub fn eval(&self, values: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(key, c)| c * key.parts().iter().map(|&k| values[k as usize - 1].clone()).product::<Rat>())
            .sum()
    }

    fn symbol_or(&self, other: &Self) -> char {
        if self.symbol != '\0' {
            self.symbol
        } else {
            other.symbol
        }
    }
}

impl Add for FormalPoly {
    type Output = FormalPoly;
    fn add(mut self, rhs: FormalPoly) -> FormalPoly {
        self.symbol = self.symbol_or(&rhs);
        for (k, c) in rhs.terms {
            self.push(k, c);
        }
        self
    }
}

impl Neg for FormalPoly {
    type Output = FormalPoly;
    fn neg(mut self) -> FormalPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for FormalPoly {
    type Output = FormalPoly;
    fn sub(self, rhs: FormalPoly) -> FormalPoly {
        self + (-rhs)
    }
}

impl Mul for FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: FormalPoly) -> FormalPoly {
        let mut out = FormalPoly { terms: BTreeMap::new(), symbol: self.symbol_or(&rhs) };
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.push(a.union(b), ca * cb);
            }
        }
        out
    }
}

impl Zero for FormalPoly {
    fn zero() -> Self {
        FormalPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for FormalPoly {
    fn one() -> Self {
        FormalPoly::constant(Rat::one())
    }
}

impl fmt::Display for FormalPoly {
    /// Highest total degree first, e.g. `m3 - 3*m1*m2 + 2*m1^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = if self.symbol == '\0' { 's' } else { self.symbol };
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.size().cmp(&a.size()).then(a.len().cmp(&b.len())).then(b.parts().cmp(a.parts())));
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let mut parts = key.parts().to_vec();
            parts.sort_unstable();
            let mut i = 0;
            while i < parts.len() {
                let k = parts[i];
                let e = parts.iter().filter(|&&p| p == k).count();
                factors.push(if e == 1 { format!("{sym}{k}") } else { format!("{sym}{k}^{e}") });
                i += e;
            }
            let coeff = fmt_rat(&mag);
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    #[test]
    fn ring_operations_and_display() {
        let m1 = FormalPoly::gen('m', 1);
        let m2 = FormalPoly::gen('m', 2);
        let k2 = m2.clone() - m1.clone() * m1.clone();
        assert_eq!(k2.to_string(), "m2 - m1^2");
        let p = m1.clone() * m2.clone() * FormalPoly::constant(rat(-3, 1)) + m1.clone() * m1.clone() * m1.clone() * FormalPoly::constant(rat(2, 1));
        assert_eq!(p.to_string(), "-3*m1*m2 + 2*m1^3");
        assert_eq!(k2.eval(&[rat(1, 2), rat(1, 3)]), rat(1, 12));
        assert!((m1.clone() - m1).is_zero());
    }
}
