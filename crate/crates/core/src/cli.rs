//! Command-line front end.
//!
//! `--theta` is read as an exact rational (`p/q`) by the symbolic
//! subcommands and as a float by the samplers. Exit codes: 0 on success,
//! 1 on validation errors, 2 on runtime failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::bessel::{
    bessel_truncated, bgf_atomic, corner_restrict, dbm_factor, lln_check, log_bgf_atomic, theta_add, AtomicMeasure,
    BgfCoeffs,
};
use crate::constellations::{constellation_stats, cumulant_polynomial, enumerate_orientable, leading_coeff_verify};
use crate::dunkl::MVPoly;
use crate::ensembles::{
    empirical_moments, sample_corner_matrix, sample_corner_mcmc, sample_gbe, simulate_dbm, EnsembleSample, SimConfig,
};
use crate::error::Error;
use crate::freeprob::{cumulants_from_moments, moments_from_cumulants, FormalPoly};
use crate::symcore::rational::{fmt_rat, parse_rat};
use crate::symcore::{rat, Partition, Rat};

#[derive(Parser, Debug)]
#[command(name = "freebessel", version, about = "Bessel generating functions, free cumulants and beta-ensemble samplers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free cumulants from moments m1, m2, ...
    Cumulants {
        #[arg(long)]
        moments: String,
        /// highest order (defaults to the number of moments given)
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Moments from free cumulants k1, k2, ...
    Moments {
        #[arg(long)]
        kappa: String,
        /// highest order (defaults to the number of cumulants given)
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Taylor coefficients of B_a(x; theta), or of the BGF of a measure
    BesselExpand {
        #[command(flatten)]
        input: ExactInput,
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Law-of-large-numbers check on a sequence of measures
    LlnCheck {
        /// measure JSON files, one per N (at least three)
        #[arg(long)]
        measure: Vec<String>,
        /// built-in profile instead of files: `uniform` (a_i = i) or `gaussian`
        #[arg(long)]
        profile: Option<String>,
        /// values of N for --profile
        #[arg(long, default_value = "8,12,16,20")]
        ns: String,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, default_value_t = 3)]
        deg: usize,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Log-BGF coefficients of the theta-sum of two measures
    ThetaAdd {
        /// two measure JSON files
        #[arg(long)]
        measure: Vec<String>,
        /// first point mass, used with --b
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        output: Output,
    },
    /// BGF of the m x m corner
    Corner {
        #[command(flatten)]
        input: ExactInput,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Log-BGF coefficients after running theta-Dyson Brownian motion for time t
    Dbm {
        #[command(flatten)]
        input: ExactInput,
        #[arg(long)]
        t: String,
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Gaussian beta-ensemble eigenvalues
    SampleGbe {
        #[command(flatten)]
        sampler: Sampler,
        #[arg(long, default_value_t = 1.0)]
        variance: f64,
    },
    /// theta-Dyson Brownian motion endpoints
    SimulateDbm {
        #[command(flatten)]
        sampler: Sampler,
        /// starting point (comma list or JSON array); zeros by default
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        measure: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Corner eigenvalues of a matrix with fixed spectrum
    SampleCorner {
        #[command(flatten)]
        sampler: Sampler,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        measure: Option<String>,
        #[arg(long)]
        m: usize,
        /// `matrix` (theta 1/2 or 1) or `mcmc`
        #[arg(long, default_value = "matrix")]
        method: String,
        #[arg(long, default_value_t = 100)]
        sweeps: usize,
        #[arg(long, default_value_t = 10)]
        thin: usize,
        #[arg(long, default_value_t = 8)]
        chains: usize,
    },
    /// Rooted oriented constellations of size d with k colors
    EnumerateConstellations {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare the constellation cumulant formula with moment-cumulant inversion
    VerifyCumulantFormula {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Extrapolate a_(d)/N for the uniform profile and compare with the prediction
    VerifyLeadingCoeff {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "1")]
        theta: String,
        #[arg(long, default_value = "8,12,16,20")]
        ns: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ExactInput {
    /// point (comma list of rationals or JSON array)
    #[arg(long)]
    a: Option<String>,
    /// measure JSON file
    #[arg(long)]
    measure: Option<String>,
    /// number of variables (defaults to the length of --a)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    theta: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct Sampler {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "1")]
    theta: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trajectories: usize,
    /// report (k, mean, stderr) for these orders instead of raw samples
    #[arg(long)]
    moments: Option<String>,
    /// moments are taken of x / scale
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Validation(String),
    Runtime(String),
}

type Outcome = std::result::Result<(), Failure>;

fn flag(name: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Validation(format!("--{name}: {e}"))
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BlowUp { .. } | Error::EulerInconsistency { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Parses `args` (including the program name) and writes the report to `out`.
/// Diagnostics go to stderr. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = e.print();
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Cumulants { moments, max, json } => {
            let m = parse_rat_list(&moments).map_err(|e| flag("moments", e))?;
            let k = max.unwrap_or(m.len());
            let kappa = cumulants_from_moments(&m, k).map_err(|e| flag("max", e))?;
            print_sequence(out, "k", &kappa, json)
        }
        Command::Moments { kappa, max, json } => {
            let mut kap = parse_rat_list(&kappa).map_err(|e| flag("kappa", e))?;
            let k = max.unwrap_or(kap.len());
            // unlisted cumulants are zero
            if kap.len() < k {
                kap.resize(k, Rat::zero());
            }
            let m = moments_from_cumulants(&kap, k).map_err(|e| flag("max", e))?;
            print_sequence(out, "m", &m, json)
        }
        Command::BesselExpand { input, deg, output } => {
            let poly = match &input.a {
                Some(_) => {
                    let (a, theta) = point_input(&input)?;
                    bessel_truncated(&a, &theta, deg)?
                }
                None => {
                    let (mu, theta) = measure_input(&input)?;
                    bgf_atomic(&mu, &theta, deg)?
                }
            };
            write_poly(&poly, &output, out)
        }
        Command::Corner { input, m, deg, output } => {
            let (mu, theta) = measure_input(&input)?;
            let g = bgf_atomic(&mu, &theta, deg)?;
            let c = corner_restrict(&g, m).map_err(|e| flag("m", e))?;
            write_poly(&c, &output, out)
        }
        Command::Dbm { input, t, deg, output } => {
            let (mu, theta) = measure_input(&input)?;
            let t = parse_rat(&t).map_err(|e| flag("t", e))?;
            let g = log_bgf_atomic(&mu, &theta, deg)?;
            write_coeffs(&dbm_factor(&g, &t)?, &output, out)
        }
        Command::ThetaAdd { measure, a, b, theta, deg, output } => {
            let (g1, g2) = match (a, b) {
                (Some(a), Some(b)) => {
                    let theta = required_theta(theta.as_deref())?;
                    let pa = parse_rat_list(&a).map_err(|e| flag("a", e))?;
                    let pb = parse_rat_list(&b).map_err(|e| flag("b", e))?;
                    (
                        log_bgf_atomic(&AtomicMeasure::point_mass(pa).map_err(|e| flag("a", e))?, &theta, deg)?,
                        log_bgf_atomic(&AtomicMeasure::point_mass(pb).map_err(|e| flag("b", e))?, &theta, deg)?,
                    )
                }
                (None, None) if measure.len() == 2 => {
                    let (m1, t1) = load_measure(&measure[0])?;
                    let (m2, t2) = load_measure(&measure[1])?;
                    let t1 = override_theta(t1, theta.as_deref())?;
                    let t2 = override_theta(t2, theta.as_deref())?;
                    (log_bgf_atomic(&m1, &t1, deg)?, log_bgf_atomic(&m2, &t2, deg)?)
                }
                _ => return Err(flag("measure", "give two --measure files or both --a and --b")),
            };
            write_coeffs(&theta_add(&g1, &g2)?, &output, out)
        }
        Command::LlnCheck { measure, profile, ns, theta, deg, tol, json } => {
            let (seq, theta) = lln_sequence(&measure, profile.as_deref(), &ns, theta.as_deref(), deg)?;
            let report = lln_check(&seq, &theta, tol)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
                return Ok(());
            }
            writeln!(out, "{:>2}  {:>12}  {:>12}  {:>12}", "d", "kappa", "limit", "slope")?;
            for k in &report.kappa_estimates {
                writeln!(out, "{:>2}  {:>12.6}  {:>12.6}  {:>12.6}", k.d, k.kappa, k.limit, k.slope)?;
            }
            let max_a = report.condition_a_residuals.iter().map(|r| r.value).fold(0.0, f64::max);
            let max_b = report.condition_b_limits.iter().map(|r| r.value.abs()).fold(0.0, f64::max);
            writeln!(out, "condition (a) max residual: {max_a:.3e}")?;
            writeln!(out, "condition (b) max limit: {max_b:.3e}")?;
            writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" })?;
            Ok(())
        }
        Command::SampleGbe { sampler, variance } => {
            let cfg = sampler_config(&sampler, sampler.n.ok_or_else(|| flag("n", "required"))?)?;
            let s = with_threads(sampler.threads, || sample_gbe(&cfg, variance))?;
            write_sample(&s, &sampler, out)
        }
        Command::SimulateDbm { sampler, a, measure, dt, t } => {
            let a0 = float_point(a.as_deref(), measure.as_deref(), sampler.n)?;
            let mut cfg = sampler_config(&sampler, a0.len())?;
            cfg.dt = dt;
            cfg.t_final = t;
            let s = with_threads(sampler.threads, || simulate_dbm(&cfg, &a0))?;
            write_sample(&s, &sampler, out)
        }
        Command::SampleCorner { sampler, a, measure, m, method, sweeps, thin, chains } => {
            if a.is_none() && measure.is_none() {
                return Err(flag("a", "required (or --measure)"));
            }
            let top = float_point(a.as_deref(), measure.as_deref(), sampler.n)?;
            let mut cfg = sampler_config(&sampler, top.len())?;
            cfg.mcmc_sweeps = sweeps;
            cfg.thin = thin;
            cfg.chains = chains;
            let s = match method.as_str() {
                "matrix" => with_threads(sampler.threads, || sample_corner_matrix(&top, m, &cfg))?,
                "mcmc" => with_threads(sampler.threads, || sample_corner_mcmc(&top, m, &cfg))?,
                other => return Err(flag("method", format!("expected `matrix` or `mcmc`, got `{other}`"))),
            };
            write_sample(&s, &sampler, out)
        }
        Command::EnumerateConstellations { d, k, json } => {
            let list = enumerate_orientable(d, k)?;
            let mut rows = Vec::new();
            for c in &list {
                rows.push((c, constellation_stats(c)?));
            }
            if json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(c, s)| json!({ "perms": c.perms(), "stats": s }))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
                return Ok(());
            }
            writeln!(out, "{:<4} {:<28} {:<10} {:<10} {:<10} {:>5} {:>6}", "#", "perms", "mu1", "mu2", "eta", "genus", "normal")?;
            for (i, (c, s)) in rows.iter().enumerate() {
                let perms: Vec<String> =
                    c.perms().iter().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")).collect();
                writeln!(
                    out,
                    "{:<4} {:<28} {:<10} {:<10} {:<10} {:>5} {:>6}",
                    i + 1,
                    perms.join(" "),
                    s.mu1.to_string(),
                    s.mu2.to_string(),
                    s.eta_partition().to_string(),
                    s.genus,
                    if s.normal { "yes" } else { "no" }
                )?;
            }
            writeln!(out, "total: {}", rows.len())?;
            Ok(())
        }
        Command::VerifyCumulantFormula { d, json } => {
            let ds: Vec<usize> = match d {
                Some(d) => vec![d],
                None => (1..=3).collect(),
            };
            let top = *ds.iter().max().expect("nonempty");
            let gens: Vec<FormalPoly> = (1..=top as u32).map(|k| FormalPoly::gen('m', k)).collect();
            let inverted = cumulants_from_moments(&gens, top).map_err(|e| flag("d", e))?;
            let mut all = true;
            let mut report = Vec::new();
            for d in ds {
                let poly = cumulant_polynomial(d).map_err(|e| flag("d", e))?;
                let ok = poly == inverted[d - 1].clone().with_symbol('m');
                all &= ok;
                report.push(json!({ "d": d, "formula": poly.to_string(), "match": ok }));
                if !json {
                    writeln!(out, "kappa_{d} = {poly} : {}", if ok { "MATCH" } else { "MISMATCH" })?;
                }
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
            }
            if all {
                Ok(())
            } else {
                Err(Failure::Runtime("constellation formula disagrees with moment-cumulant inversion".into()))
            }
        }
        Command::VerifyLeadingCoeff { d, theta, ns, json } => {
            let theta = parse_rat(&theta).map_err(|e| flag("theta", e))?;
            let ns = parse_usize_list(&ns).map_err(|e| flag("ns", e))?;
            let profile: Vec<Vec<Rat>> = ns.iter().map(|&n| (1..=n as i64).map(|i| rat(i, 1)).collect()).collect();
            // moments of the uniform law on [0, 1]
            let moments: Vec<Rat> = (1..=d as i64).map(|k| rat(1, k + 1)).collect();
            let r = leading_coeff_verify(d, &theta, &profile, &moments).map_err(|e| flag("d", e))?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializable"))?;
                return Ok(());
            }
            writeln!(out, "kappa_{d} = {}", r.cumulant_formula)?;
            writeln!(out, "{:>4}  {:>12}", "N", "a_(d)/N")?;
            for (n, v) in &r.values {
                writeln!(out, "{n:>4}  {v:>12.8}")?;
            }
            writeln!(out, "fitted limit: {:.8}", r.fitted_limit)?;
            writeln!(out, "prediction:   {:.8}", r.prediction)?;
            writeln!(out, "relative residual: {:.3e}", r.relative_residual)?;
            Ok(())
        }
    }
}

fn split_list(s: &str) -> Vec<String> {
    let t = s.trim();
    if t.starts_with('[') {
        if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(t) {
            return items
                .into_iter()
                .map(|v| match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                })
                .collect();
        }
    }
    t.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

fn parse_rat_list(s: &str) -> std::result::Result<Vec<Rat>, Error> {
    split_list(s).iter().map(|p| parse_rat(p)).collect()
}

fn parse_usize_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    split_list(s).iter().map(|p| p.parse::<usize>().map_err(|_| format!("not a non-negative integer: `{p}`"))).collect()
}

fn parse_f64_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    split_list(s)
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .or_else(|| parse_rat(p).ok().map(|r| crate::symcore::rational::to_f64(&r)))
                .ok_or_else(|| format!("not a number: `{p}`"))
        })
        .collect()
}

fn parse_theta_f64(s: &str) -> std::result::Result<f64, Failure> {
    parse_f64_list(s)
        .ok()
        .filter(|v| v.len() == 1)
        .map(|v| v[0])
        .ok_or_else(|| flag("theta", format!("not a number: `{s}`")))
}

fn required_theta(theta: Option<&str>) -> std::result::Result<Rat, Failure> {
    let t = theta.ok_or_else(|| flag("theta", "required"))?;
    parse_rat(t).map_err(|e| flag("theta", e))
}

fn override_theta(from_file: Rat, flag_value: Option<&str>) -> std::result::Result<Rat, Failure> {
    match flag_value {
        None => Ok(from_file),
        Some(t) => {
            let t = parse_rat(t).map_err(|e| flag("theta", e))?;
            if t != from_file {
                return Err(flag("theta", format!("{} disagrees with the measure file ({})", fmt_rat(&t), fmt_rat(&from_file))));
            }
            Ok(t)
        }
    }
}

fn load_measure(path: &str) -> std::result::Result<(AtomicMeasure, Rat), Failure> {
    let text = fs::read_to_string(path).map_err(|e| flag("measure", format!("{path}: {e}")))?;
    AtomicMeasure::from_json(&text).map_err(|e| flag("measure", format!("{path}: {e}")))
}

fn point_input(input: &ExactInput) -> std::result::Result<(Vec<Rat>, Rat), Failure> {
    let a = parse_rat_list(input.a.as_deref().unwrap_or_default()).map_err(|e| flag("a", e))?;
    if let Some(n) = input.n {
        if n != a.len() {
            return Err(flag("n", format!("{n} does not match the {} entries of --a", a.len())));
        }
    }
    Ok((a, required_theta(input.theta.as_deref())?))
}

fn measure_input(input: &ExactInput) -> std::result::Result<(AtomicMeasure, Rat), Failure> {
    match (&input.a, &input.measure) {
        (Some(_), None) => {
            let (a, theta) = point_input(input)?;
            Ok((AtomicMeasure::point_mass(a).map_err(|e| flag("a", e))?, theta))
        }
        (None, Some(path)) => {
            let (mu, theta) = load_measure(path)?;
            if let Some(n) = input.n {
                if n != mu.num_vars() {
                    return Err(flag("n", format!("{n} does not match N = {} in {path}", mu.num_vars())));
                }
            }
            Ok((mu, override_theta(theta, input.theta.as_deref())?))
        }
        (Some(_), Some(_)) => Err(flag("measure", "give either --a or --measure, not both")),
        (None, None) => Err(flag("a", "required (or --measure)")),
    }
}

fn float_point(a: Option<&str>, measure: Option<&str>, n: Option<usize>) -> std::result::Result<Vec<f64>, Failure> {
    let point = match (a, measure) {
        (Some(a), None) => parse_f64_list(a).map_err(|e| flag("a", e))?,
        (None, Some(path)) => {
            let (mu, _) = load_measure(path)?;
            if mu.atoms().len() != 1 {
                return Err(flag("measure", "a single-atom measure is required"));
            }
            mu.atoms()[0].point.iter().map(crate::symcore::rational::to_f64).collect()
        }
        (Some(_), Some(_)) => return Err(flag("measure", "give either --a or --measure, not both")),
        (None, None) => vec![0.0; n.ok_or_else(|| flag("n", "required when no starting point is given"))?],
    };
    if let Some(n) = n {
        if n != point.len() {
            return Err(flag("n", format!("{n} does not match the {} starting values", point.len())));
        }
    }
    Ok(point)
}

fn lln_sequence(
    files: &[String],
    profile: Option<&str>,
    ns: &str,
    theta: Option<&str>,
    deg: usize,
) -> std::result::Result<(Vec<BgfCoeffs>, Rat), Failure> {
    match profile {
        Some(name) => {
            if !files.is_empty() {
                return Err(flag("profile", "give either --profile or --measure files"));
            }
            let theta = required_theta(theta)?;
            let ns = parse_usize_list(ns).map_err(|e| flag("ns", e))?;
            let mut seq = Vec::new();
            for n in ns {
                seq.push(match name {
                    "uniform" => {
                        let point: Vec<Rat> = (1..=n as i64).map(|i| rat(i, 1)).collect();
                        log_bgf_atomic(&AtomicMeasure::point_mass(point)?, &theta, deg.min(n))?
                    }
                    "gaussian" => gaussian_coeffs(n, &theta, deg.min(n))?,
                    other => return Err(flag("profile", format!("unknown profile `{other}`"))),
                });
            }
            Ok((seq, theta))
        }
        None => {
            let mut seq = Vec::new();
            let mut common: Option<Rat> = None;
            for path in files {
                let (mu, t) = load_measure(path)?;
                let t = override_theta(t, theta)?;
                if let Some(c) = &common {
                    if *c != t {
                        return Err(flag("measure", format!("{path}: theta differs from the first file")));
                    }
                }
                seq.push(log_bgf_atomic(&mu, &t, deg.min(mu.num_vars()))?);
                common = Some(t);
            }
            let theta = common.ok_or_else(|| flag("measure", "at least three files (or --profile) required"))?;
            Ok((seq, theta))
        }
    }
}

/// log G = (N/2) p_1², the BGF of the rescaled GβE at zero temperature.
fn gaussian_coeffs(n: usize, theta: &Rat, deg: usize) -> crate::Result<BgfCoeffs> {
    use crate::symcore::{Basis, SymSeries};
    let series = SymSeries::from_terms(Basis::Power, deg, [(Partition::new(vec![1, 1])?, rat(n as i64, 2))]);
    BgfCoeffs::new(n, theta.clone(), series)
}

fn sampler_config(s: &Sampler, n: usize) -> std::result::Result<SimConfig, Failure> {
    Ok(SimConfig {
        n,
        theta: parse_theta_f64(&s.theta)?,
        seed: s.seed,
        trajectories: s.trajectories,
        ..SimConfig::default()
    })
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> crate::Result<T> + Send) -> std::result::Result<T, Failure> {
    match threads {
        None => Ok(f()?),
        Some(0) => Err(flag("threads", "must be at least 1")),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().map_err(|e| Failure::Runtime(e.to_string()))?;
            Ok(pool.install(f)?)
        }
    }
}

fn sink<'a>(path: &Option<String>, out: &'a mut dyn Write) -> std::result::Result<Box<dyn Write + 'a>, Failure> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(fs::File::create(p).map_err(|e| flag("out", format!("{p}: {e}")))?)),
        None => Box::new(out),
    })
}

fn write_sample(s: &EnsembleSample, opts: &Sampler, out: &mut dyn Write) -> Outcome {
    let mut w = sink(&opts.out, out)?;
    match &opts.moments {
        Some(ks) => {
            let ks: Vec<u32> =
                parse_usize_list(ks).map_err(|e| flag("moments", e))?.into_iter().map(|k| k as u32).collect();
            let est = empirical_moments(s, &ks, opts.scale).map_err(|e| flag("scale", e))?;
            if opts.json {
                writeln!(w, "{}", serde_json::to_string_pretty(&est).expect("serializable"))?;
            } else {
                est.write_csv(&mut w)?;
            }
        }
        None if opts.json => writeln!(w, "{}", serde_json::to_string(s).expect("serializable"))?,
        None => s.write_csv(&mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn print_sequence(out: &mut dyn Write, name: &str, v: &[Rat], json: bool) -> Outcome {
    if json {
        let map: serde_json::Map<String, Value> =
            v.iter().enumerate().map(|(i, x)| (format!("{name}{}", i + 1), Value::String(fmt_rat(x)))).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&map).expect("serializable"))?;
        return Ok(());
    }
    let nonzero: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| format!("{name}{}={}", i + 1, fmt_rat(x)))
        .collect();
    if nonzero.is_empty() {
        writeln!(out, "all zero")?;
    } else {
        writeln!(out, "{}", nonzero.join(", "))?;
    }
    Ok(())
}

/// Monomials by total degree, then exponent vectors in decreasing order.
fn ordered_terms(p: &MVPoly) -> Vec<(&Vec<u32>, &Rat)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then(b.cmp(a))
    });
    terms
}

fn write_poly(p: &MVPoly, opts: &Output, out: &mut dyn Write) -> Outcome {
    let mut w = sink(&opts.out, out)?;
    let terms = ordered_terms(p);
    if opts.json {
        let v: Vec<Value> =
            terms.iter().map(|(e, c)| json!({ "exponents": e, "coefficient": fmt_rat(c) })).collect();
        writeln!(w, "{}", serde_json::to_string_pretty(&json!({ "N": p.num_vars(), "terms": v })).expect("serializable"))?;
    } else {
        let header: Vec<String> = (1..=p.num_vars()).map(|i| format!("x{i}")).collect();
        writeln!(w, "{},coefficient", header.join(","))?;
        for (e, c) in terms {
            let cols: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{},{}", cols.join(","), fmt_rat(c))?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_coeffs(g: &BgfCoeffs, opts: &Output, out: &mut dyn Write) -> Outcome {
    let mut w = sink(&opts.out, out)?;
    let mut terms: Vec<(&Partition, &Rat)> = g.series().terms().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by(|(a, _), (b, _)| a.size().cmp(&b.size()).then(b.parts().cmp(a.parts())));
    if opts.json {
        let v: Vec<Value> = terms.iter().map(|(l, c)| json!({ "partition": l, "coefficient": fmt_rat(c) })).collect();
        let report = json!({ "N": g.num_vars(), "theta": fmt_rat(g.theta()), "coefficients": v });
        writeln!(w, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    } else {
        writeln!(w, "partition,coefficient")?;
        for (l, c) in terms {
            writeln!(w, "\"{l}\",{}", fmt_rat(c))?;
        }
    }
    w.flush()?;
    Ok(())
}
