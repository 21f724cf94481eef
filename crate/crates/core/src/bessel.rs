//! Multivariate Bessel functions, Bessel generating functions (BGFs) of
//! finite atomic measures, and their power-sum log coefficients `a_λ^N`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dunkl::MVPoly;
use crate::error::{Error, Result};
use crate::jack::{eval_power_series, j_to_p_factor, jack_weight, JackParam, JackTable};
use crate::symcore::rational::{fmt_rat, parse_rat, pow, to_f64};
use crate::symcore::{basis_convert, partitions_up_to, series_exp, series_log, Basis, Partition, Rat, SymSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub weight: Rat,
    pub point: Vec<Rat>,
}

/// Probability measure with finitely many atoms in the closed Weyl chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    n: usize,
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(n: usize, atoms: Vec<Atom>) -> Result<Self> {
        if n == 0 || atoms.is_empty() {
            return Err(Error::InvalidInput("measure needs N >= 1 and at least one atom".into()));
        }
        let mut total = Rat::zero();
        for (idx, atom) in atoms.iter().enumerate() {
            if !atom.weight.is_positive() {
                return Err(Error::InvalidInput(format!("atom {idx} has non-positive weight {}", fmt_rat(&atom.weight))));
            }
            if atom.point.len() != n {
                return Err(Error::LengthMismatch(atom.point.len(), n));
            }
            if atom.point.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidInput(format!("atom {idx} is not weakly increasing")));
            }
            total += &atom.weight;
        }
        if !total.is_one() {
            return Err(Error::InvalidInput(format!("weights sum to {}, not 1", fmt_rat(&total))));
        }
        Ok(AtomicMeasure { n, atoms })
    }

    pub fn point_mass(point: Vec<Rat>) -> Result<Self> {
        Self::new(point.len(), vec![Atom { weight: Rat::one(), point }])
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `E[Π_i p_{λ_i}(a)]`
    pub fn expectation(&self, lam: &Partition) -> Rat {
        self.atoms
            .iter()
            .map(|at| {
                let v: Rat = lam
                    .parts()
                    .iter()
                    .map(|&k| at.point.iter().map(|x| pow(x, k)).sum::<Rat>())
                    .product();
                &at.weight * v
            })
            .sum()
    }

    /// Parses the shared measure format, returning the measure and its θ.
    pub fn from_json(text: &str) -> Result<(Self, Rat)> {
        let file: MeasureFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("measure JSON: {e}")))?;
        let theta = file.theta.to_rat()?;
        let atoms = file
            .atoms
            .into_iter()
            .map(|a| {
                Ok(Atom {
                    weight: a.w.to_rat()?,
                    point: a.a.into_iter().map(|x| x.to_rat()).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Self::new(file.n, atoms)?, theta))
    }

    pub fn to_json(&self, theta: &Rat) -> String {
        let file = MeasureFile {
            n: self.n,
            theta: RatField::Str(fmt_rat(theta)),
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomFile {
                    w: RatField::Str(fmt_rat(&a.weight)),
                    a: a.point.iter().map(|x| RatField::Str(fmt_rat(x))).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatField {
    Str(String),
    Int(i64),
}

impl RatField {
    fn to_rat(&self) -> Result<Rat> {
        match self {
            RatField::Str(s) => parse_rat(s),
            RatField::Int(i) => Ok(Rat::from_integer((*i).into())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AtomFile {
    w: RatField,
    a: Vec<RatField>,
}

#[derive(Serialize, Deserialize)]
struct MeasureFile {
    #[serde(rename = "N")]
    n: usize,
    theta: RatField,
    atoms: Vec<AtomFile>,
}

/// `Σ_{|λ|≤n, ℓ(λ)≤N} w_λ P_λ(a) P_λ` as a power-sum series, N = a.len(),
/// with P_λ the monic Jack function (the only normalization for which the
/// one-variable case reduces to e^{ax}).
pub fn bessel_series(a: &[Rat], theta: &Rat, n: usize) -> Result<SymSeries> {
    let big_n = a.len();
    if big_n == 0 {
        return Err(Error::InvalidInput("empty point".into()));
    }
    let param = JackParam::from_theta(theta)?;
    let table = JackTable::cached(&param, n)?;
    let mut out = SymSeries::zero(Basis::Power, n);
    for (lam, j) in table.iter().filter(|(l, _)| l.size() <= n && l.len() <= big_n) {
        let ja = eval_power_series(j, a);
        if ja.is_zero() {
            continue;
        }
        let h = j_to_p_factor(lam, &param);
        let c = jack_weight(lam, &param, big_n, theta) * ja / (&h * &h);
        out = out.add(&j.with_truncation(n).scale(&c))?;
    }
    Ok(out)
}

/// Degree-`n` truncation of B_a(x; θ) in `a.len()` variables.
pub fn bessel_truncated(a: &[Rat], theta: &Rat, n: usize) -> Result<MVPoly> {
    Ok(MVPoly::from_symmetric(&bessel_series(a, theta, n)?, a.len()))
}

/// Power-sum series of the BGF `Σ_atoms w·B_atom`, truncated at degree `n`.
pub fn bgf_atomic_series(mu: &AtomicMeasure, theta: &Rat, n: usize) -> Result<SymSeries> {
    let parts: Vec<SymSeries> = mu
        .atoms
        .par_iter()
        .map(|at| Ok(bessel_series(&at.point, theta, n)?.scale(&at.weight)))
        .collect::<Result<_>>()?;
    parts.iter().try_fold(SymSeries::zero(Basis::Power, n), |acc, s| acc.add(s))
}

/// The BGF of `mu` realized as a polynomial in N variables, truncated at `n`.
pub fn bgf_atomic(mu: &AtomicMeasure, theta: &Rat, n: usize) -> Result<MVPoly> {
    Ok(MVPoly::from_symmetric(&bgf_atomic_series(mu, theta, n)?, mu.n))
}

/// Log-BGF coefficients: `ln G = Σ_λ a_λ^N p_λ` through degree ≤ N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgfCoeffs {
    n: usize,
    theta: Rat,
    series: SymSeries,
}

impl BgfCoeffs {
    pub fn new(n: usize, theta: Rat, series: SymSeries) -> Result<Self> {
        if series.basis() != Basis::Power {
            return Err(Error::MismatchedContext("log-BGF coefficients live in the power-sum basis".into()));
        }
        if series.truncation_degree() > n {
            return Err(Error::DegreeExceedsVariables { degree: series.truncation_degree(), num_vars: n });
        }
        if !series.constant_term().is_zero() {
            return Err(Error::WrongConstantTerm { expected: "0".into(), found: fmt_rat(&series.constant_term()) });
        }
        if !theta.is_positive() {
            return Err(Error::InvalidInput(format!("theta must be positive, got {theta}")));
        }
        Ok(BgfCoeffs { n, theta, series })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &Rat {
        &self.theta
    }

    pub fn series(&self) -> &SymSeries {
        &self.series
    }

    pub fn truncation(&self) -> usize {
        self.series.truncation_degree()
    }

    /// a_λ^N
    pub fn a(&self, lam: &Partition) -> Rat {
        self.series.coeff(lam)
    }

    /// exp of the log series, realized in N variables.
    pub fn to_bgf(&self) -> MVPoly {
        let g = series_exp(&self.series).expect("zero constant term");
        MVPoly::from_symmetric(&g, self.n)
    }
}

/// `a_λ^N` for a polynomial BGF truncation, through `degree ≤ N`.
///
/// Symmetry is validated orbit by orbit: every coordinate permutation of an
/// exponent vector must carry the same coefficient.
pub fn log_bgf_coeffs(g: &MVPoly, theta: &Rat, degree: usize) -> Result<BgfCoeffs> {
    let n = g.num_vars();
    if degree > n {
        return Err(Error::DegreeExceedsVariables { degree, num_vars: n });
    }
    let g = g.truncate(degree);
    if !g.is_symmetric() {
        return Err(Error::AsymmetricInput);
    }
    let c0 = g.constant_term();
    if !c0.is_one() {
        return Err(Error::WrongConstantTerm { expected: "1".into(), found: fmt_rat(&c0) });
    }
    let m = SymSeries::from_terms(Basis::Monomial, degree, g.monomial_coefficients());
    let log = series_log(&m)?;
    BgfCoeffs::new(n, theta.clone(), basis_convert(&log, Basis::Power, Some(n))?)
}

/// Same coefficients computed directly from the Jack expansion, without
/// realizing the BGF as a polynomial.
pub fn log_bgf_atomic(mu: &AtomicMeasure, theta: &Rat, degree: usize) -> Result<BgfCoeffs> {
    if degree > mu.n {
        return Err(Error::DegreeExceedsVariables { degree, num_vars: mu.n });
    }
    let g = bgf_atomic_series(mu, theta, degree)?;
    BgfCoeffs::new(mu.n, theta.clone(), series_log(&g)?)
}

/// θ-addition: BGFs multiply, so log coefficients add.
pub fn theta_add(g1: &BgfCoeffs, g2: &BgfCoeffs) -> Result<BgfCoeffs> {
    if g1.n != g2.n {
        return Err(Error::MismatchedContext(format!("N = {} vs {}", g1.n, g2.n)));
    }
    if g1.theta != g2.theta {
        return Err(Error::MismatchedContext(format!("theta = {} vs {}", g1.theta, g2.theta)));
    }
    if g1.truncation() != g2.truncation() {
        return Err(Error::MismatchedContext(format!("truncation = {} vs {}", g1.truncation(), g2.truncation())));
    }
    BgfCoeffs::new(g1.n, g1.theta.clone(), g1.series.add(&g2.series)?)
}

/// BGF of the level-M corner: set `x_{M+1} = … = x_N = 0`.
pub fn corner_restrict(g: &MVPoly, m: usize) -> Result<MVPoly> {
    if m == 0 || m >= g.num_vars() {
        return Err(Error::InvalidInput(format!("corner size must satisfy 1 <= M < N = {}, got {m}", g.num_vars())));
    }
    Ok(g.restrict_leading(m))
}

/// Dyson Brownian motion run for time `t`: the BGF gains `exp((t/2) p_2)`.
pub fn dbm_factor(g: &BgfCoeffs, t: &Rat) -> Result<BgfCoeffs> {
    if g.truncation() < 2 {
        return Err(Error::InsufficientTruncation { have: g.truncation(), need: 2 });
    }
    let bump = SymSeries::from_terms(Basis::Power, g.truncation(), [(Partition::single(2), t / Rat::from_integer(2.into()))]);
    BgfCoeffs::new(g.n, g.theta.clone(), g.series.add(&bump)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaEstimate {
    pub d: usize,
    /// d·θ^{d−1}·(extrapolated limit of a_(d)^N/N)
    pub kappa: f64,
    /// c0 of the fit c0 + c1/N
    pub limit: f64,
    pub slope: f64,
    /// |y_last − y_prev| / |y_prev − y_prevprev| over the last three N
    pub diff_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LlnResidual {
    pub n: usize,
    pub partition: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LlnReport {
    pub kappa_estimates: Vec<KappaEstimate>,
    /// distance of a_(d)^N/N from its fitted curve, scaled by max(1, |limit|)
    pub condition_a_residuals: Vec<LlnResidual>,
    /// |a_λ^N| / N^{ℓ(λ)} for ℓ(λ) ≥ 2
    pub condition_b_residuals: Vec<LlnResidual>,
    /// extrapolated N → ∞ limit of |a_λ^N| / N^{ℓ(λ)}
    pub condition_b_limits: Vec<LlnResidual>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Least-squares fit of `y ≈ c0 + c1 x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let c1 = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (my - c1 * mx, c1)
}

/// Checks the two LLN-appropriateness conditions along a sequence of
/// increasing N, extrapolating every ratio with a `c0 + c1/N` fit.
pub fn lln_check(seq: &[BgfCoeffs], theta: &Rat, tol: f64) -> Result<LlnReport> {
    if seq.len() < 3 || seq.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(Error::InsufficientSequence(seq.len()));
    }
    if let Some(g) = seq.iter().find(|g| &g.theta != theta) {
        return Err(Error::MismatchedContext(format!("sequence has theta {} but check uses {theta}", g.theta)));
    }
    let degree = seq.iter().map(BgfCoeffs::truncation).min().unwrap_or(0);
    let inv_n: Vec<f64> = seq.iter().map(|g| 1.0 / g.n as f64).collect();
    let th = to_f64(theta);

    let mut kappa_estimates = Vec::new();
    let mut condition_a_residuals = Vec::new();
    for d in 1..=degree {
        let lam = Partition::single(d as u32);
        let y: Vec<f64> = seq.iter().map(|g| to_f64(&(g.a(&lam) / Rat::from_integer(g.n.into())))).collect();
        let (c0, c1) = linear_fit(&inv_n, &y);
        let scale = c0.abs().max(1.0);
        for (g, (x, yv)) in seq.iter().zip(inv_n.iter().zip(&y)) {
            condition_a_residuals.push(LlnResidual { n: g.n, partition: lam.to_string(), value: (yv - c0 - c1 * x).abs() / scale });
        }
        let k = y.len();
        let denom = (y[k - 2] - y[k - 3]).abs();
        let diff_ratio = (denom > 0.0).then(|| (y[k - 1] - y[k - 2]).abs() / denom);
        kappa_estimates.push(KappaEstimate { d, kappa: d as f64 * th.powi(d as i32 - 1) * c0, limit: c0, slope: c1, diff_ratio });
    }

    let mut condition_b_residuals = Vec::new();
    let mut condition_b_limits = Vec::new();
    for lam in partitions_up_to(degree).into_iter().filter(|l| l.len() >= 2) {
        let z: Vec<f64> = seq
            .iter()
            .map(|g| to_f64(&(g.a(&lam).abs() / pow(&Rat::from_integer(g.n.into()), lam.len() as u32))))
            .collect();
        for (g, v) in seq.iter().zip(&z) {
            condition_b_residuals.push(LlnResidual { n: g.n, partition: lam.to_string(), value: *v });
        }
        let (c0, _) = linear_fit(&inv_n, &z);
        condition_b_limits.push(LlnResidual { n: usize::MAX, partition: lam.to_string(), value: c0.abs() });
    }

    let pass = condition_a_residuals.iter().all(|r| r.value <= tol) && condition_b_limits.iter().all(|r| r.value <= tol);
    Ok(LlnReport { kappa_estimates, condition_a_residuals, condition_b_residuals, condition_b_limits, tolerance: tol, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn exp_series_1d(c: &Rat, n: usize) -> MVPoly {
        let mut term = Rat::one();
        let mut out = Vec::new();
        for d in 0..=n {
            if d > 0 {
                term = term * c / rat(d as i64, 1);
            }
            out.push((vec![d as u32], term.clone()));
        }
        MVPoly::from_terms(1, out)
    }

    /// exp(h) truncated at degree d, for h without constant term.
    fn exp_poly(h: &MVPoly, d: usize) -> MVPoly {
        let n = h.num_vars();
        let (mut total, mut term) = (MVPoly::one(n), MVPoly::one(n));
        for j in 1..=d {
            term = term.mul_truncated(h, d).unwrap().scale(&rat(1, j as i64));
            total = total.add(&term).unwrap();
        }
        total
    }

    #[test]
    fn one_variable_reduces_to_exponential() {
        for theta in [rat(1, 3), rat(1, 1), rat(5, 2)] {
            for c in [rat(2, 1), rat(-3, 7)] {
                assert_eq!(bessel_truncated(&[c.clone()], &theta, 6).unwrap(), exp_series_1d(&c, 6));
            }
        }
    }

    #[test]
    fn bessel_basic_examples() {
        let theta = rat(1, 2);
        let zero = vec![rat(0, 1); 3];
        assert_eq!(bessel_truncated(&zero, &theta, 4).unwrap(), MVPoly::one(3));
        let a = vec![rat(-1, 1), rat(1, 3), rat(2, 1)];
        let b = vec![rat(1, 3), rat(-1, 1), rat(2, 1)];
        assert_eq!(bessel_truncated(&a, &theta, 4).unwrap(), bessel_truncated(&b, &theta, 4).unwrap());
        assert!(matches!(bessel_truncated(&a, &theta, 40), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn bgf_examples() {
        let theta = rat(2, 1);
        let c = rat(3, 2);
        let mu = AtomicMeasure::point_mass(vec![c.clone(); 3]).unwrap();
        let expect = exp_poly(&MVPoly::power_sum(3, 1).scale(&c), 3);
        assert_eq!(bgf_atomic(&mu, &theta, 3).unwrap(), expect);

        let zero = Atom { weight: rat(1, 2), point: vec![rat(0, 1); 2] };
        let mu = AtomicMeasure::new(2, vec![zero.clone(), zero]).unwrap();
        assert_eq!(bgf_atomic(&mu, &theta, 2).unwrap(), MVPoly::one(2));

        let mu = AtomicMeasure::new(
            1,
            vec![Atom { weight: rat(1, 2), point: vec![rat(0, 1)] }, Atom { weight: rat(1, 2), point: vec![rat(2, 1)] }],
        )
        .unwrap();
        let half = |p: MVPoly| p.scale(&rat(1, 2));
        let expect = half(MVPoly::one(1)).add(&half(exp_series_1d(&rat(2, 1), 5))).unwrap();
        assert_eq!(bgf_atomic(&mu, &rat(1, 1), 5).unwrap(), expect);
        // ln((1+e^{2x})/2) = x + x²/2 − x⁴/12 + …; only degree 1 is within N = 1
        let g = log_bgf_coeffs(&expect, &rat(1, 1), 1).unwrap();
        assert_eq!(g.a(&p(&[1])), rat(1, 1));
        assert!(matches!(log_bgf_coeffs(&expect, &rat(1, 1), 2), Err(Error::DegreeExceedsVariables { .. })));
    }

    #[test]
    fn log_coefficient_examples() {
        let theta = rat(1, 1);
        let c = rat(-2, 5);
        let g = exp_poly(&MVPoly::power_sum(3, 1).scale(&c), 3);
        let a = log_bgf_coeffs(&g, &theta, 3).unwrap();
        assert_eq!(a.series(), &SymSeries::from_terms(Basis::Power, 3, [(p(&[1]), c)]));

        for n in [2usize, 3, 4] {
            let p1 = MVPoly::power_sum(n, 1);
            let h = p1.mul(&p1).unwrap().scale(&rat(n as i64, 2));
            let a = log_bgf_coeffs(&exp_poly(&h, n), &theta, n).unwrap();
            assert_eq!(a.series(), &SymSeries::from_terms(Basis::Power, n, [(p(&[1, 1]), rat(n as i64, 2))]));
        }

        let asym = MVPoly::one(2).add(&MVPoly::var(2, 1).unwrap()).unwrap();
        assert_eq!(log_bgf_coeffs(&asym, &theta, 2), Err(Error::AsymmetricInput));
        let bad = MVPoly::constant(2, rat(2, 1));
        assert!(matches!(log_bgf_coeffs(&bad, &theta, 2), Err(Error::WrongConstantTerm { .. })));
    }

    #[test]
    fn polynomial_and_series_routes_agree() {
        let theta = rat(1, 2);
        let mu = AtomicMeasure::new(
            3,
            vec![
                Atom { weight: rat(1, 3), point: vec![rat(-1, 1), rat(0, 1), rat(2, 1)] },
                Atom { weight: rat(2, 3), point: vec![rat(1, 2), rat(1, 2), rat(3, 1)] },
            ],
        )
        .unwrap();
        let via_poly = log_bgf_coeffs(&bgf_atomic(&mu, &theta, 3).unwrap(), &theta, 3).unwrap();
        assert_eq!(via_poly, log_bgf_atomic(&mu, &theta, 3).unwrap());
    }

    #[test]
    fn addition_corners_and_dbm() {
        let theta = rat(1, 1);
        let n = 3;
        let pm = |c: Rat| log_bgf_atomic(&AtomicMeasure::point_mass(vec![c; n]).unwrap(), &theta, 3).unwrap();
        let zero = pm(rat(0, 1));
        let g = pm(rat(2, 3));
        assert_eq!(theta_add(&g, &zero).unwrap(), g);
        assert_eq!(theta_add(&g, &pm(rat(1, 3))).unwrap(), pm(rat(1, 1)));
        let other_theta = BgfCoeffs::new(n, rat(2, 1), g.series().clone()).unwrap();
        assert!(matches!(theta_add(&g, &other_theta), Err(Error::MismatchedContext(_))));

        let gauss = BgfCoeffs::new(n, theta.clone(), SymSeries::from_terms(Basis::Power, 3, [(p(&[1, 1]), rat(3, 2))])).unwrap();
        assert_eq!(theta_add(&gauss, &gauss).unwrap().a(&p(&[1, 1])), rat(3, 1));

        assert_eq!(dbm_factor(&g, &rat(0, 1)).unwrap(), g);
        let moved = dbm_factor(&zero, &rat(1, 1)).unwrap();
        assert_eq!(moved.series(), &SymSeries::from_terms(Basis::Power, 3, [(p(&[2]), rat(1, 2))]));

        // corner of the point mass (c,c) is the point mass (c)
        let c = rat(5, 4);
        let two = bgf_atomic(&AtomicMeasure::point_mass(vec![c.clone(); 2]).unwrap(), &theta, 4).unwrap();
        assert_eq!(corner_restrict(&two, 1).unwrap(), exp_series_1d(&c, 4));
        assert_eq!(corner_restrict(&MVPoly::one(3), 2).unwrap(), MVPoly::one(2));
        assert!(corner_restrict(&two, 2).is_err());

        let b = bessel_truncated(&[rat(0, 1), rat(1, 1)], &theta, 2).unwrap();
        let expect = MVPoly::from_terms(1, [(vec![0], rat(1, 1)), (vec![1], rat(1, 2)), (vec![2], rat(1, 6))]);
        assert_eq!(corner_restrict(&b, 1).unwrap(), expect);
    }

    #[test]
    fn lln_gaussian_sequence() {
        let theta = rat(1, 1);
        let seq: Vec<BgfCoeffs> = [4usize, 8, 16, 32]
            .iter()
            .map(|&n| {
                let s = SymSeries::from_terms(Basis::Power, 4, [(p(&[1, 1]), rat(n as i64, 2))]);
                BgfCoeffs::new(n, theta.clone(), s).unwrap()
            })
            .collect();
        let r = lln_check(&seq, &theta, 1e-9).unwrap();
        assert!(r.pass);
        assert!(r.kappa_estimates.iter().all(|k| k.kappa == 0.0));
        assert!(matches!(lln_check(&seq[..2], &theta, 1e-9), Err(Error::InsufficientSequence(2))));
    }

    #[test]
    fn measure_json_roundtrip() {
        let text = r#"{"N": 2, "theta": "1/2", "atoms": [{"w": "1/4", "a": ["0", "1"]}, {"w": "3/4", "a": [-1, "5/2"]}]}"#;
        let (mu, theta) = AtomicMeasure::from_json(text).unwrap();
        assert_eq!(theta, rat(1, 2));
        assert_eq!(mu.atoms()[1].point, vec![rat(-1, 1), rat(5, 2)]);
        assert_eq!(AtomicMeasure::from_json(&mu.to_json(&theta)).unwrap(), (mu, theta));
        let bad = r#"{"N": 2, "theta": "1", "atoms": [{"w": "1/2", "a": ["0", "1"]}]}"#;
        assert!(AtomicMeasure::from_json(bad).is_err());
        let unsorted = r#"{"N": 2, "theta": "1", "atoms": [{"w": "1", "a": ["2", "1"]}]}"#;
        assert!(AtomicMeasure::from_json(unsorted).is_err());
    }
}
