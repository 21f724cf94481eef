//! Seeded Monte-Carlo samplers: Gaussian β-ensembles, θ-Dyson Brownian
//! motion, and corners of unitarily/orthogonally invariant matrices, with a
//! Gibbs sampler for general-θ corners.
//!
//! Trajectory `i` always draws from its own ChaCha8 stream `(seed, i)`, so
//! results do not depend on the number of worker threads.

use std::io::Write;

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub n: usize,
    pub theta: f64,
    pub seed: u64,
    pub trajectories: usize,
    pub dt: f64,
    pub t_final: f64,
    /// burn-in sweeps for the corners Gibbs sampler
    pub mcmc_sweeps: usize,
    /// sweeps between retained Gibbs samples
    pub thin: usize,
    /// independent Gibbs chains sharing the trajectory budget
    pub chains: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 10,
            theta: 1.0,
            seed: 0,
            trajectories: 1000,
            dt: 1e-3,
            t_final: 1.0,
            mcmc_sweeps: 100,
            thin: 10,
            chains: 8,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(Error::InvalidInput(format!("theta must be positive, got {}", self.theta)));
        }
        if !(self.dt > 0.0) {
            return Err(Error::InvalidInput(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_final >= 0.0) {
            return Err(Error::InvalidInput(format!("t must be non-negative, got {}", self.t_final)));
        }
        if self.trajectories == 0 || self.chains == 0 || self.thin == 0 {
            return Err(Error::InvalidInput("trajectories, chains and thin must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// trajectories × N draws, each row ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleSample {
    pub points: Vec<Vec<f64>>,
}

impl EnsembleSample {
    pub fn trajectories(&self) -> usize {
        self.points.len()
    }

    /// `trajectory,i,value` rows, `i` 1-based.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "trajectory,i,value")?;
        for (t, row) in self.points.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                writeln!(w, "{t},{},{x}", i + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub k: Vec<u32>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl MomentEstimate {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,mean,stderr")?;
        for i in 0..self.k.len() {
            writeln!(w, "{},{},{}", self.k[i], self.mean[i], self.stderr[i])?;
        }
        Ok(())
    }
}

/// Mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// For each k: mean and standard error over trajectories of `(1/N) Σ_i (x_i/scale)^k`.
pub fn empirical_moments(s: &EnsembleSample, ks: &[u32], scale: f64) -> Result<MomentEstimate> {
    if !(scale > 0.0) {
        return Err(Error::InvalidInput(format!("scale must be positive, got {scale}")));
    }
    if s.points.is_empty() {
        return Err(Error::InvalidInput("empty sample".into()));
    }
    let mut mean = Vec::new();
    let mut stderr = Vec::new();
    for &k in ks {
        let per: Vec<f64> = s
            .points
            .iter()
            .map(|row| row.iter().map(|x| (x / scale).powi(k as i32)).sum::<f64>() / row.len() as f64)
            .collect();
        let (m, e) = mean_stderr(&per);
        mean.push(m);
        stderr.push(e);
    }
    Ok(MomentEstimate { k: ks.to_vec(), mean, stderr })
}

/// Mean and standard error of `Σ_i x_i^k` over trajectories.
pub fn power_sum_stats(s: &EnsembleSample, k: u32) -> (f64, f64) {
    let per: Vec<f64> = s.points.iter().map(|row| row.iter().map(|x| x.powi(k as i32)).sum()).collect();
    mean_stderr(&per)
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    v
}

/// Eigenvalues of the tridiagonal β = 2θ model, scaled to the weight
/// `exp(−λ²/(2·variance))`.
fn gbe_draw<R: Rng>(n: usize, theta: f64, variance: f64, rng: &mut R) -> Vec<f64> {
    let beta = 2.0 * theta;
    let s = (variance / 2.0).sqrt();
    let mut h = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let g: f64 = rng.sample(StandardNormal);
        h[(i, i)] = g * 2f64.sqrt() * s;
        if i + 1 < n {
            let chi = ChiSquared::new(beta * (n - 1 - i) as f64).expect("positive degrees").sample(rng).sqrt();
            h[(i, i + 1)] = chi * s;
            h[(i + 1, i)] = chi * s;
        }
    }
    sorted(h.symmetric_eigenvalues().iter().copied().collect())
}

/// Draws from `Π_{i<j}|λ_i−λ_j|^{2θ} Π_i exp(−λ_i²/(2·variance))`.
pub fn sample_gbe(cfg: &SimConfig, variance: f64) -> Result<EnsembleSample> {
    cfg.validate()?;
    if !(variance > 0.0) {
        return Err(Error::InvalidInput(format!("variance must be positive, got {variance}")));
    }
    let points = (0..cfg.trajectories)
        .into_par_iter()
        .map(|t| gbe_draw(cfg.n, cfg.theta, variance, &mut rng_for(cfg.seed, t as u64)))
        .collect();
    Ok(EnsembleSample { points })
}

pub const GAP_GUARD: f64 = 1e-12;
pub const MAX_HALVINGS: u32 = 10;
const NEWTON_ITERS: usize = 50;

fn min_gap(w: &[f64]) -> f64 {
    w.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min)
}

fn ordered(w: &[f64]) -> bool {
    w.windows(2).all(|p| p[1] - p[0] >= GAP_GUARD)
}

/// `θ Σ_{j≠i} 1/(w_i − w_j)`, skipping pairs closer than the guard.
fn repulsion(w: &[f64], theta: f64, out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let d = w[j] - w[i];
            if d >= GAP_GUARD {
                out[i] -= theta / d;
                out[j] += theta / d;
            }
        }
    }
}

/// `Σ_i (u_i − y_i)²/2 − c Σ_{i<j} log(u_j − u_i)`, infinite off the chamber.
fn prox_objective(u: &[f64], y: &[f64], c: f64) -> f64 {
    if !ordered(u) {
        return f64::INFINITY;
    }
    let mut v: f64 = u.iter().zip(y).map(|(a, b)| 0.5 * (a - b) * (a - b)).sum();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            v -= c * (u[j] - u[i]).ln();
        }
    }
    v
}

/// Solves `u − c·b(u)/θ = y` for ordered `u` (the proximal map of the
/// log-gas energy) by damped Newton from the ordered guess `u`.
fn prox_solve(u: &mut Vec<f64>, y: &[f64], c: f64) -> bool {
    let n = u.len();
    let mut grad = vec![0.0; n];
    let mut hess = vec![0.0; n * n];
    let mut step = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut f = prox_objective(u, y, c);
    for _ in 0..NEWTON_ITERS {
        hess.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..n {
            grad[i] = u[i] - y[i];
            hess[i * n + i] = 1.0;
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = u[j] - u[i];
                grad[i] += c / d;
                grad[j] -= c / d;
                let k = c / (d * d);
                hess[i * n + i] += k;
                hess[j * n + j] += k;
                hess[i * n + j] -= k;
                hess[j * n + i] -= k;
            }
        }
        if !cholesky_solve(&mut hess, n, &grad, &mut step) {
            return false;
        }
        let scale = 1.0 + u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let decrement: f64 = grad.iter().zip(&step).map(|(g, s)| g * s).sum();
        // roundoff in the stiff close-pair directions floors the decrement
        if decrement < 1e-18 * scale * scale {
            return true;
        }
        let mut alpha = 1.0;
        loop {
            for i in 0..n {
                trial[i] = u[i] - alpha * step[i];
            }
            let ft = prox_objective(&trial, y, c);
            if alpha == 1.0 && ft >= f && decrement < 1e-12 * scale * scale {
                return true;
            }
            if ft <= f - 0.25 * alpha * decrement {
                f = ft;
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-12 {
                return decrement < 1e-20 * scale * scale;
            }
        }
        std::mem::swap(u, &mut trial);
    }
    false
}

/// In-place Cholesky of the row-major SPD matrix `a`, then solves `a x = b`.
fn cholesky_solve(a: &mut [f64], n: usize, b: &[f64], x: &mut [f64]) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if !(d > 0.0) {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= a[i * n + k] * x[k];
        }
        x[i] = s / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= a[k * n + i] * x[k];
        }
        x[i] = s / a[i * n + i];
    }
    true
}

/// Spreads coincident points symmetrically by `eps` so the chamber is entered.
fn spread_ties(w: &[f64], eps: f64) -> Vec<f64> {
    let mut u = w.to_vec();
    let mut i = 0;
    while i < u.len() {
        let mut j = i + 1;
        while j < u.len() && u[j] - u[j - 1] < GAP_GUARD {
            j += 1;
        }
        let k = j - i;
        for (r, x) in u[i..j].iter_mut().enumerate() {
            *x += eps * (r as f64 - (k as f64 - 1.0) / 2.0);
        }
        i = j;
    }
    u
}

fn dbm_path<R: Rng>(cfg: &SimConfig, a0: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    let n = a0.len();
    let theta = cfg.theta;
    let mut w = a0.to_vec();
    let mut t = 0.0;
    let mut drift = vec![0.0; n];
    let mut noise = vec![0.0; n];
    let mut y = vec![0.0; n];
    while t < cfg.t_final {
        let mut h = cfg.dt.min(cfg.t_final - t);
        for z in noise.iter_mut() {
            *z = rng.sample(StandardNormal);
        }
        repulsion(&w, theta, &mut drift);
        let mut halvings = 0;
        let next = loop {
            // half the drift explicit, half implicit
            let sh = h.sqrt();
            for i in 0..n {
                y[i] = w[i] + 0.5 * h * drift[i] + sh * noise[i];
            }
            // explicit predictor as the Newton start when it stays ordered
            let mut u: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * h * drift[i]).collect();
            if !ordered(&u) {
                u = if ordered(&w) { w.clone() } else { spread_ties(&w, sh) };
            }
            if n == 1 {
                break y.clone();
            }
            if prox_solve(&mut u, &y, 0.5 * h * theta) && ordered(&u) {
                break u;
            }
            if halvings == MAX_HALVINGS {
                // reflect and reorder
                if y.iter().any(|x| !x.is_finite()) {
                    return Err(Error::BlowUp { time: t, gap: min_gap(&w), halvings });
                }
                let mut r = y.clone();
                r.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
                for i in 1..n {
                    if r[i] - r[i - 1] < GAP_GUARD {
                        r[i] = r[i - 1] + GAP_GUARD;
                    }
                }
                if !ordered(&r) {
                    return Err(Error::BlowUp { time: t, gap: min_gap(&r), halvings });
                }
                break r;
            }
            h /= 2.0;
            for z in noise.iter_mut() {
                *z = rng.sample(StandardNormal);
            }
            halvings += 1;
        };
        w = next;
        t += h;
    }
    Ok(w)
}

/// Endpoint of `dW_i = θ Σ_{j≠i} dt/(W_i − W_j) + dB_i` up to `t_final`.
///
/// Euler–Maruyama in the noise with the drift split half explicit, half
/// implicit. The implicit half is the proximal map of the convex log-gas
/// energy, so every accepted step stays strictly ordered and no step-size
/// cap near collisions is needed. Coincident starting points are allowed.
pub fn simulate_dbm(cfg: &SimConfig, a0: &[f64]) -> Result<EnsembleSample> {
    cfg.validate()?;
    if cfg.theta < 0.5 {
        return Err(Error::InvalidInput(format!(
            "theta = {} < 1/2: particles collide in finite time",
            cfg.theta
        )));
    }
    if a0.len() != cfg.n {
        return Err(Error::LengthMismatch(a0.len(), cfg.n));
    }
    if a0.windows(2).any(|p| p[0] > p[1]) || a0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("a0 must be finite and sorted ascending".into()));
    }
    if cfg.t_final == 0.0 {
        return Ok(EnsembleSample { points: vec![a0.to_vec(); cfg.trajectories] });
    }
    let points = (0..cfg.trajectories)
        .into_par_iter()
        .map(|t| dbm_path(cfg, a0, &mut rng_for(cfg.seed, t as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleSample { points })
}

fn corner_real<R: Rng>(a: &[f64], m: usize, rng: &mut R) -> Vec<f64> {
    let n = a.len();
    let g = DMatrix::<f64>::from_fn(n, m, |_, _| rng.sample(StandardNormal));
    // column space of a Gaussian matrix is uniform; phases of Q do not
    // change the spectrum of Q* D Q
    let q = g.qr().q();
    let c = DMatrix::<f64>::from_fn(m, m, |i, j| (0..n).map(|r| q[(r, i)] * a[r] * q[(r, j)]).sum());
    sorted(c.symmetric_eigenvalues().iter().copied().collect())
}

fn corner_complex<R: Rng>(a: &[f64], m: usize, rng: &mut R) -> Vec<f64> {
    let n = a.len();
    let g = DMatrix::<Complex<f64>>::from_fn(n, m, |_, _| {
        Complex::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let q = g.qr().q();
    let c = DMatrix::<Complex<f64>>::from_fn(m, m, |i, j| {
        (0..n).map(|r| q[(r, i)].conj() * a[r] * q[(r, j)]).sum()
    });
    sorted(c.symmetric_eigenvalues().iter().copied().collect())
}

/// Spectrum of the top-left M×M block of `U diag(a) U*`, U Haar orthogonal
/// (θ = 1/2) or unitary (θ = 1).
pub fn sample_corner_matrix(a: &[f64], m: usize, cfg: &SimConfig) -> Result<EnsembleSample> {
    cfg.validate()?;
    let complex = if cfg.theta == 1.0 {
        true
    } else if cfg.theta == 0.5 {
        false
    } else {
        return Err(Error::UnsupportedTheta(cfg.theta));
    };
    check_corner_args(a, m)?;
    let points = (0..cfg.trajectories)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(cfg.seed, t as u64);
            if complex {
                corner_complex(a, m, &mut rng)
            } else {
                corner_real(a, m, &mut rng)
            }
        })
        .collect();
    Ok(EnsembleSample { points })
}

fn check_corner_args(a: &[f64], m: usize) -> Result<()> {
    if m == 0 || m >= a.len() {
        return Err(Error::InvalidInput(format!("corner size must satisfy 1 <= M < N = {}, got {m}", a.len())));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("top row must be finite".into()));
    }
    Ok(())
}

pub const GRID: usize = 512;

/// Interlacing array, `levels[k]` has `m + k` entries; the last level is the
/// fixed top row.
struct Array {
    levels: Vec<Vec<f64>>,
}

impl Array {
    fn initial(a: &[f64], m: usize) -> Self {
        let n = a.len();
        let mut levels = vec![a.to_vec()];
        for _ in m..n {
            let up = levels.last().unwrap();
            levels.push(up.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect());
        }
        levels.reverse();
        Array { levels }
    }
}

/// One Gibbs sweep over every free site. Level 0 (size M) carries the
/// exponent 1 on its own Vandermonde, intermediate levels 2 − 2θ, and every
/// pair of adjacent levels θ − 1.
fn sweep<R: Rng>(arr: &mut Array, theta: f64, rng: &mut R, weights: &mut [f64]) {
    let top = arr.levels.len() - 1;
    let cross = theta - 1.0;
    for lv in 0..top {
        let self_exp = if lv == 0 { 1.0 } else { 2.0 - 2.0 * theta };
        for i in 0..arr.levels[lv].len() {
            let (up, rest) = (&arr.levels[lv + 1], &arr.levels[lv]);
            let mut lo = up[i];
            let mut hi = up[i + 1];
            if lv > 0 {
                let down = &arr.levels[lv - 1];
                if i > 0 {
                    lo = lo.max(down[i - 1]);
                }
                if i < down.len() {
                    hi = hi.min(down[i]);
                }
            }
            if !(hi > lo) {
                continue;
            }
            let log_density = |x: f64| -> f64 {
                let mut s = 0.0;
                if self_exp != 0.0 {
                    s += self_exp * rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, y)| (x - y).abs().ln()).sum::<f64>();
                }
                if cross != 0.0 {
                    s += cross * up.iter().map(|y| (x - y).abs().ln()).sum::<f64>();
                    if lv > 0 {
                        s += cross * arr.levels[lv - 1].iter().map(|y| (x - y).abs().ln()).sum::<f64>();
                    }
                }
                s
            };
            let x = sample_on_grid(lo, hi, log_density, rng, weights);
            arr.levels[lv][i] = x;
        }
    }
}

/// Inverse-CDF draw from a density on [lo, hi] known up to a constant, on a
/// grid refined towards both endpoints by `x = lo + (hi−lo)(1−cos πs)/2`.
fn sample_on_grid<R: Rng>(lo: f64, hi: f64, log_density: impl Fn(f64) -> f64, rng: &mut R, w: &mut [f64]) -> f64 {
    let n = w.len();
    let map = |s: f64| lo + (hi - lo) * 0.5 * (1.0 - (std::f64::consts::PI * s).cos());
    let mut max = f64::NEG_INFINITY;
    for (c, slot) in w.iter_mut().enumerate() {
        let s = (c as f64 + 0.5) / n as f64;
        let jac = (std::f64::consts::PI * s).sin();
        let v = log_density(map(s)) + jac.ln();
        *slot = v;
        max = max.max(v);
    }
    let mut total = 0.0;
    for slot in w.iter_mut() {
        *slot = if slot.is_finite() { (*slot - max).exp() } else { 0.0 };
        total += *slot;
    }
    let mut u = rng.gen::<f64>() * total;
    let mut cell = n - 1;
    for (c, v) in w.iter().enumerate() {
        if u < *v {
            cell = c;
            break;
        }
        u -= v;
    }
    let s = (cell as f64 + rng.gen::<f64>()) / n as f64;
    map(s).clamp(lo, hi)
}

/// Gibbs sampler for the θ-corners process; returns the level-M row.
///
/// Levels below M are integrated out, which leaves exponent 1 on the
/// level-M Vandermonde. Chains run independently (stream = chain index),
/// each with `mcmc_sweeps` burn-in sweeps and one retained row every `thin`
/// sweeps.
pub fn sample_corner_mcmc(a: &[f64], m: usize, cfg: &SimConfig) -> Result<EnsembleSample> {
    cfg.validate()?;
    check_corner_args(a, m)?;
    if let Some(i) = (1..a.len()).find(|&i| a[i] <= a[i - 1]) {
        return Err(Error::NonDistinct(i, i + 1));
    }
    let chains = cfg.chains.min(cfg.trajectories);
    let per_chain: Vec<usize> = (0..chains)
        .map(|c| cfg.trajectories / chains + usize::from(c < cfg.trajectories % chains))
        .collect();
    let rows: Vec<Vec<Vec<f64>>> = (0..chains)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng_for(cfg.seed, c as u64);
            let mut arr = Array::initial(a, m);
            let mut weights = vec![0.0; GRID];
            for _ in 0..cfg.mcmc_sweeps {
                sweep(&mut arr, cfg.theta, &mut rng, &mut weights);
            }
            let mut out = Vec::with_capacity(per_chain[c]);
            for _ in 0..per_chain[c] {
                for _ in 0..cfg.thin {
                    sweep(&mut arr, cfg.theta, &mut rng, &mut weights);
                }
                out.push(arr.levels[0].clone());
            }
            out
        })
        .collect();
    Ok(EnsembleSample { points: rows.into_iter().flatten().collect() })
}
