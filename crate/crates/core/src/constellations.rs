//! Rooted connected orientable k-constellations as permutation tuples.
//!
//! A constellation of size d with k nonzero colors is a tuple
//! `(σ_0, σ_1, …, σ_k)` of permutations of `{0..d-1}` generating a transitive
//! group. Color-i vertices are the cycles of σ_i, faces are the cycles of
//! `φ = σ_0 σ_1 ⋯ σ_k`, and there are `k·d` edges. Rooting is realized by
//! keeping only tuples that are fixed by breadth-first relabeling from
//! label 0, one representative per rooted object.

use rayon::prelude::*;
use serde::Serialize;

use crate::bessel::{linear_fit, log_bgf_atomic, AtomicMeasure};
use crate::error::{Error, Result};
use crate::freeprob::FormalPoly;
use crate::symcore::rational::{pow, to_f64};
use crate::symcore::{alternating_signs, f_eta_eval, Partition, Rat};

pub const MAX_SIZE: usize = 4;
pub const MAX_COLORS: usize = 4;

pub type Perm = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedConstellation {
    d: usize,
    perms: Vec<Perm>,
}

impl OrientedConstellation {
    pub fn new(perms: Vec<Perm>) -> Result<Self> {
        let d = perms.first().map_or(0, Vec::len);
        if perms.len() < 2 || d == 0 {
            return Err(Error::InvalidInput("need sigma_0 and at least one colored permutation".into()));
        }
        for p in &perms {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&x| (x as usize) >= d || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::InvalidInput(format!("{p:?} is not a permutation of 0..{d}")));
            }
        }
        if !transitive(&perms, d) {
            return Err(Error::InvalidInput("permutations do not act transitively".into()));
        }
        Ok(OrientedConstellation { d, perms })
    }

    pub fn size(&self) -> usize {
        self.d
    }

    /// Number of nonzero colors.
    pub fn colors(&self) -> usize {
        self.perms.len() - 1
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// The root is the label 0.
    pub fn root(&self) -> usize {
        0
    }

    /// `φ(x) = σ_0(σ_1(⋯σ_k(x)))`
    pub fn face_permutation(&self) -> Perm {
        (0..self.d as u8).map(|x| self.perms.iter().rev().fold(x, |y, p| p[y as usize])).collect()
    }
}

fn cycle_type(p: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let (mut x, mut len) = (s, 0);
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

fn transitive(perms: &[Perm], d: usize) -> bool {
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p[x] as usize;
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == d
}

/// Labels in order of discovery from 0, scanning generators in order.
fn bfs_relabel(perms: &[Perm], d: usize) -> Vec<Perm> {
    let mut new_of = vec![u8::MAX; d];
    let mut order = vec![0u8];
    new_of[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let x = order[head] as usize;
        head += 1;
        for p in perms {
            let y = p[x] as usize;
            if new_of[y] == u8::MAX {
                new_of[y] = order.len() as u8;
                order.push(y as u8);
            }
        }
    }
    perms
        .iter()
        .map(|p| {
            let mut q = vec![0u8; d];
            for x in 0..d {
                q[new_of[x] as usize] = new_of[p[x] as usize];
            }
            q
        })
        .collect()
}

fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    fn go(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    go(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Every rooted connected orientable k-constellation of size d, once each,
/// in lexicographic order of the canonical tuples.
pub fn enumerate_orientable(d: usize, k: usize) -> Result<Vec<OrientedConstellation>> {
    if d == 0 || d > MAX_SIZE {
        return Err(Error::CapExceeded { what: "size d", value: d, cap: MAX_SIZE });
    }
    if k == 0 || k > MAX_COLORS {
        return Err(Error::CapExceeded { what: "colors k", value: k, cap: MAX_COLORS });
    }
    let base = all_perms(d);
    let total = base.len().pow(k as u32 + 1);
    let mut found: Vec<OrientedConstellation> = base
        .par_iter()
        .enumerate()
        .flat_map_iter(|(first, _)| {
            let base = &base;
            let per_first = total / base.len();
            (0..per_first).filter_map(move |mut code| {
                let mut perms = Vec::with_capacity(k + 1);
                perms.push(base[first].clone());
                for _ in 0..k {
                    perms.push(base[code % base.len()].clone());
                    code /= base.len();
                }
                if !transitive(&perms, d) || bfs_relabel(&perms, d) != perms {
                    return None;
                }
                Some(OrientedConstellation { d, perms })
            })
        })
        .collect();
    found.sort();
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstellationStats {
    /// face degrees
    pub mu1: Partition,
    /// color-0 vertex degrees
    pub mu2: Partition,
    /// d − (number of color-i vertices), i = 1..k
    pub eta: Vec<u32>,
    pub genus: u32,
    pub normal: bool,
}

impl ConstellationStats {
    pub fn eta_partition(&self) -> Partition {
        Partition::from_unsorted(self.eta.clone())
    }
}

pub fn constellation_stats(m: &OrientedConstellation) -> Result<ConstellationStats> {
    let d = m.d as i64;
    let k = m.colors() as i64;
    let counts: Vec<i64> = m.perms.iter().map(|p| cycle_type(p).len() as i64).collect();
    let faces = cycle_type(&m.face_permutation());
    let v: i64 = counts.iter().sum();
    let chi = v - k * d + faces.len() as i64;
    let mu1 = Partition::from_unsorted(faces);
    let mu2 = Partition::from_unsorted(cycle_type(&m.perms[0]));
    let eta: Vec<u32> = counts[1..].iter().map(|&c| (d - c) as u32).collect();
    let lhs = eta.iter().map(|&e| e as i64).sum::<i64>() - mu1.len() as i64 - mu2.len() as i64;
    if chi > 2 || chi % 2 != 0 || lhs != -chi {
        return Err(Error::EulerInconsistency { lhs, genus: format!("{}/2", 2 - chi) });
    }
    let normal = eta.windows(2).all(|w| w[0] >= w[1]);
    Ok(ConstellationStats { mu1, mu2, eta, genus: ((2 - chi) / 2) as u32, normal })
}

/// κ_d as a polynomial in formal moments m_1..m_d, summed over normal
/// one-face genus-0 constellations with d − 1 colors:
/// `Σ Π_{v color 0} m_{deg v} · f_η(e_j = (−1)^j)`.
pub fn cumulant_polynomial(d: usize) -> Result<FormalPoly> {
    let k = d.saturating_sub(1).max(1);
    let signs = alternating_signs(d.max(1));
    let mut total = FormalPoly::from_terms('m', []);
    for m in enumerate_orientable(d, k)? {
        let s = constellation_stats(&m)?;
        if s.mu1.len() != 1 || s.genus != 0 || !s.normal {
            continue;
        }
        let f = f_eta_eval(&s.eta_partition(), &signs);
        total = total + FormalPoly::from_terms('m', [(s.mu2.clone(), f)]);
    }
    Ok(total)
}

/// Counts of one-face genus-0 objects with d − 1 colors, and how many of
/// them the normality condition removes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityCount {
    pub d: usize,
    pub one_face_genus0: usize,
    pub not_normal: usize,
}

pub fn normality_count(d: usize) -> Result<NormalityCount> {
    let k = d.saturating_sub(1).max(1);
    let mut out = NormalityCount { d, one_face_genus0: 0, not_normal: 0 };
    for m in enumerate_orientable(d, k)? {
        let s = constellation_stats(&m)?;
        if s.mu1.len() == 1 && s.genus == 0 {
            out.one_face_genus0 += 1;
            out.not_normal += usize::from(!s.normal);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeadingCoeffReport {
    pub d: usize,
    pub theta: f64,
    pub cumulant_formula: String,
    /// (1/d) θ^{1−d} κ_d with κ_d from the constellation sum
    pub prediction: f64,
    pub values: Vec<(usize, f64)>,
    pub fitted_limit: f64,
    pub residual: f64,
    /// residual / |prediction|, or the absolute residual when the prediction is 0
    pub relative_residual: f64,
}

/// Extrapolates `a_(d)^N / N` for a sequence of point masses and compares it
/// with the constellation prediction evaluated at the limiting moments
/// `moments[k-1] = m_k`.
pub fn leading_coeff_verify(
    d: usize,
    theta: &Rat,
    profile: &[Vec<Rat>],
    moments: &[Rat],
) -> Result<LeadingCoeffReport> {
    if d == 0 || d > 3 {
        return Err(Error::CapExceeded { what: "degree d", value: d, cap: 3 });
    }
    if profile.len() < 3 {
        return Err(Error::InsufficientGrid { have: profile.len(), need: 3 });
    }
    if moments.len() < d {
        return Err(Error::LengthMismatch(moments.len(), d));
    }
    let poly = cumulant_polynomial(d)?;
    let kappa = poly.eval(moments);
    let exact = &kappa * pow(&theta.recip(), d as u32 - 1) / Rat::from_integer((d as i64).into());
    let prediction = to_f64(&exact);

    let lam = Partition::single(d as u32);
    let values = profile
        .iter()
        .map(|point| {
            let n = point.len();
            let g = log_bgf_atomic(&AtomicMeasure::point_mass(point.clone())?, theta, d)?;
            Ok((n, to_f64(&(g.a(&lam) / Rat::from_integer((n as i64).into())))))
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = values.iter().map(|(n, _)| 1.0 / *n as f64).collect();
    let y: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
    let (c0, _) = linear_fit(&x, &y);
    let residual = (c0 - prediction).abs();
    let relative_residual = if prediction == 0.0 { residual } else { residual / prediction.abs() };
    Ok(LeadingCoeffReport {
        d,
        theta: to_f64(theta),
        cumulant_formula: poly.to_string(),
        prediction,
        values,
        fitted_limit: c0,
        residual,
        relative_residual,
    })
}
