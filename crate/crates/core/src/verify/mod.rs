//! Cross-checks between the simulation, the closed forms and the geometry.
//!
//! Every check yields a [`CheckReport`] whose `max_residual` is already
//! normalized so that it passes iff `max_residual <= tolerance`. A nonzero
//! `perturb` in [`SuiteOptions`] scales every reference value by
//! `1 + perturb`; with it, each check must fail.

mod geometry;

pub use geometry::check_geometry;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{
    self, g_nk, g_nk_series, laplace_mean_cosh_cm, ln_mean_cosh_cm, mean_cosh_all_deviating, mean_cosh_cm,
    mean_cosh_cm_derivative, mean_cosh_cm_derivative_integral, mean_cosh_cm_limit_3c, mean_cosh_cm_series,
    mean_cosh_cm_unguarded, mean_cosh_splinter, mean_cosh_splinter_k1, ode_rhs, splinter_stopping_density,
    stopping_density_product, LaplaceParams, RateSpeed, SplinterLaw,
};
use crate::cascade::{run_replications, CascadeRun, DirectionPolicy, ModelParams};
use crate::error::{Error, Result};
use crate::quadrature::integrate_truncated;

/// Half-width of the acceptance band in standard errors.
pub const Z_BAND: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub reps: u64,
}

impl McEstimate {
    /// Welford pass in the given order; identical samples give zero error
    /// and a mean equal to the common value.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Precondition("an estimate needs at least 2 samples".into()));
        }
        let (mut mean, mut m2) = (0.0, 0.0);
        for (i, &x) in samples.iter().enumerate() {
            let d = x - mean;
            mean += d / (i + 1) as f64;
            m2 += d * (x - mean);
        }
        let n = samples.len() as f64;
        let var = m2 / (n - 1.0);
        Ok(Self {
            mean,
            std_error: (var / n).sqrt(),
            reps: samples.len() as u64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        // NaN never passes
        let max_residual = if max_residual.is_nan() { f64::MAX } else { max_residual.min(f64::MAX) };
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            detail: detail.into(),
        }
    }
}

fn mc_estimate(params: &ModelParams, f: impl Fn(&CascadeRun) -> f64 + Sync) -> Result<McEstimate> {
    params.validate()?;
    if params.reps < 100 {
        return Err(Error::Precondition(format!("Monte Carlo needs reps >= 100, got {}", params.reps)));
    }
    McEstimate::from_samples(&run_replications(params, f))
}

/// Sample mean of `cosh eta_cm(t)`.
pub fn mc_mean_cosh_cm(params: &ModelParams) -> Result<McEstimate> {
    mc_estimate(params, |r| r.cosh_eta_cm)
}

/// Sample mean of `cosh eta_k(t) 1{N(t) >= k}`.
pub fn mc_mean_cosh_splinter(params: &ModelParams, k: usize) -> Result<McEstimate> {
    mc_estimate(params, |r| r.defective_cosh_eta(k))
}

/// Sample mean of the terminal splinter's `cosh eta`, i.e. of the particle
/// that deviated at every event.
pub fn mc_mean_cosh_terminal(params: &ModelParams) -> Result<McEstimate> {
    mc_estimate(params, |r| r.terminal().cosh_eta)
}

/// Passes iff the estimate is within [`Z_BAND`] standard errors.
pub fn compare(name: impl Into<String>, est: &McEstimate, reference: f64) -> CheckReport {
    let diff = (est.mean - reference).abs();
    let z = if diff == 0.0 {
        0.0
    } else if est.std_error > 0.0 {
        diff / est.std_error
    } else {
        f64::INFINITY
    };
    CheckReport::new(
        name,
        z,
        Z_BAND,
        format!(
            "mean {:.10} +- {:.3e} (n = {}), reference {:.10}, z = {z:.3}",
            est.mean, est.std_error, est.reps, reference
        ),
    )
}

fn d1(f: &impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h)
}

fn d2(f: &impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2.0 * h)) / (12.0 * h * h)
}

/// `max |u'' - c^2 u - rhs| / max(1, |u|)` over the grid, `u''` by a
/// five-point stencil.
pub fn check_ode(rs: &RateSpeed<f64>, t_grid: &[f64], fd_step: f64) -> Result<CheckReport> {
    check_ode_perturbed(rs, t_grid, fd_step, 0.0)
}

pub fn check_ode_perturbed(rs: &RateSpeed<f64>, t_grid: &[f64], fd_step: f64, perturb: f64) -> Result<CheckReport> {
    if !(fd_step > 0.0 && fd_step <= 1e-3) {
        return Err(Error::Precondition("fd_step must lie in (0, 1e-3]".into()));
    }
    if t_grid.iter().any(|&t| t < 2.0 * fd_step) {
        return Err(Error::Precondition("grid points must be >= 2 fd_step".into()));
    }
    let u = |t: f64| mean_cosh_cm(rs, t) * (1.0 + perturb);
    let (worst, at) = t_grid
        .iter()
        .map(|&t| {
            let ut = u(t);
            let res = (d2(&u, t, fd_step) - rs.c * rs.c * ut - ode_rhs(rs, t)).abs() / ut.abs().max(1.0);
            (res, t)
        })
        .fold((0.0, f64::NAN), |a, b| if b.0 > a.0 || b.0.is_nan() { b } else { a });
    Ok(CheckReport::new(
        format!("ode.residual[c={},lambda={}]", rs.c, rs.lambda),
        worst,
        1e-6,
        format!("{} grid points, worst at t = {at}", t_grid.len()),
    ))
}

/// `c^2 u - u'' = 2 lambda c^2 e^{-3 lambda t/4} sinh(tR/4) / R`, asserted
/// on its own.
pub fn check_remark_identity(rs: &RateSpeed<f64>, t_grid: &[f64], fd_step: f64, perturb: f64) -> CheckReport {
    let (c, l, r) = (rs.c, rs.lambda, rs.radical());
    let u = |t: f64| mean_cosh_cm(rs, t);
    let worst = t_grid
        .iter()
        .map(|&t| {
            let lhs = c * c * u(t) * (1.0 + perturb) - d2(&u, t, fd_step);
            let rhs = 2.0 * l * c * c * (-0.75 * l * t).exp() * (t * r / 4.0).sinh() / r;
            (lhs - rhs).abs() / u(t).max(1.0)
        })
        .fold(0.0, f64::max);
    CheckReport::new(format!("ode.identity[c={c},lambda={l}]"), worst, 1e-6, "c^2 u - u'' against the forcing")
}

pub fn check_initial_conditions(grid: &[(f64, f64)], perturb: f64) -> CheckReport {
    let worst = grid
        .iter()
        .map(|&(c, l)| {
            let rs = RateSpeed { c, lambda: l };
            let u0 = mean_cosh_cm(&rs, 0.0) * (1.0 + perturb);
            (u0 - 1.0).abs().max(mean_cosh_cm_derivative(&rs, 0.0).abs())
        })
        .fold(0.0, f64::max);
    CheckReport::new("ode.initial", worst, 1e-14, format!("u(0) = 1, u'(0) = 0 on {} pairs", grid.len()))
}

pub fn check_derivative_forms(rs: &RateSpeed<f64>, t_grid: &[f64], perturb: f64) -> CheckReport {
    let worst = t_grid
        .iter()
        .map(|&t| {
            let a = mean_cosh_cm_derivative(rs, t);
            let b = mean_cosh_cm_derivative_integral(rs, t) * (1.0 + perturb);
            (a - b).abs() / a.abs().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    CheckReport::new(
        format!("ode.derivative_forms[c={},lambda={}]", rs.c, rs.lambda),
        worst,
        1e-8,
        "closed-form derivative vs integral representation (relative)",
    )
}

/// Truncation point where the tail of the transform integral drops below
/// `1e-9`, from `u(t) <= K e^{ct}`.
pub fn laplace_truncation(rs: &RateSpeed<f64>, mu: f64) -> f64 {
    // (5/12 or (lambda+2c)/(2(lambda+3c))) e^{ct} dominates; the other terms
    // are bounded by their t = 0 size
    let k = 4.0 + mean_cosh_cm(rs, 1.0);
    let gap = mu - rs.c;
    (k / (gap * 1e-9)).ln().max(1.0) / gap
}

/// Numeric `int_0^T e^{-mu t} u(t) dt` against the closed-form transform.
pub fn check_laplace(rs: &RateSpeed<f64>, mu: f64, truncation: Option<f64>) -> Result<CheckReport> {
    check_laplace_perturbed(rs, mu, truncation, 0.0)
}

pub fn check_laplace_perturbed(rs: &RateSpeed<f64>, mu: f64, truncation: Option<f64>, perturb: f64) -> Result<CheckReport> {
    let exact = laplace_mean_cosh_cm(rs, &LaplaceParams::new(rs, mu))?;
    let upper = truncation.unwrap_or_else(|| laplace_truncation(rs, mu));
    let numeric = integrate_truncated(|t| (-mu * t).exp() * mean_cosh_cm(rs, t), upper, 1e-13, 1e-13) * (1.0 + perturb);
    let rel = (numeric - exact).abs() / exact.abs();
    Ok(CheckReport::new(
        format!("laplace[c={},lambda={},mu={mu}]", rs.c, rs.lambda),
        rel,
        1e-5,
        format!("numeric {numeric:.12} vs closed form {exact:.12}, truncated at {upper:.3}"),
    ))
}

/// Finite-difference residuals of the difference-differential system of the
/// `G_{n,k}`, relative to `max(1, |G''|)`.
pub fn check_gnk_system(n_max: usize, c: f64, t_grid: &[f64]) -> Result<CheckReport> {
    check_gnk_system_perturbed(n_max, c, t_grid, 0.0)
}

pub fn check_gnk_system_perturbed(n_max: usize, c: f64, t_grid: &[f64], perturb: f64) -> Result<CheckReport> {
    if n_max > 3 {
        return Err(Error::Precondition(format!("n_max <= 3 required, got {n_max}")));
    }
    const H: f64 = 1e-2;
    if t_grid.iter().any(|&t| t < 2.0 * H) {
        return Err(Error::Precondition("grid points must be >= 0.02".into()));
    }
    let g = |n: isize, k: isize, t: f64| -> f64 {
        if n < 0 || k < 0 {
            return 0.0;
        }
        let v = g_nk(n as usize, k as usize, t, c).expect("indices checked");
        if n as usize == n_max { v * (1.0 + perturb) } else { v }
    };
    let cases: Vec<(isize, isize, f64)> = (0..=n_max as isize)
        .flat_map(|n| (0..=n).flat_map(move |k| t_grid.iter().map(move |&t| (n, k, t))))
        .collect();
    let residuals: Vec<(f64, String)> = cases
        .par_iter()
        .map(|&(n, k, t)| {
            let gk = |s: f64| g(n, k, s);
            let lhs = d2(&gk, t, H);
            let rhs = if k <= n - 2 {
                2.0 * d1(&|s| g(n - 1, k, s), t, H) - g(n - 2, k, t) + c * c * g(n, k, t)
            } else if k == n - 1 {
                2.0 * d1(&|s| g(n - 1, n - 1, s), t, H) - g(n - 2, n - 2, t) + c * c * g(n, k, t)
            } else {
                d1(&|s| g(n - 1, n - 1, s), t, H) + c * c * g(n, n, t)
            };
            ((lhs - rhs).abs() / lhs.abs().max(1.0), format!("n={n} k={k} t={t}"))
        })
        .collect();
    let (worst, at) = residuals
        .into_iter()
        .fold((0.0, String::new()), |a, b| if b.0 > a.0 { b } else { a });
    Ok(CheckReport::new(
        format!("gnk.system[n<={n_max},c={c}]"),
        worst,
        1e-5,
        format!("{} cases, worst at {at}", cases.len()),
    ))
}

/// Nested quadrature against the Taylor series for every `n <= 4`.
pub fn check_gnk_routes(c: f64, t_grid: &[f64], perturb: f64) -> CheckReport {
    let mut worst: f64 = 0.0;
    for n in 0..=analytics::G_NK_MAX_N {
        for k in 0..=n {
            for &t in t_grid {
                let q = g_nk(n, k, t, c).expect("n <= 4") * (1.0 + perturb);
                let s = g_nk_series(n, k, t, c).expect("moderate ct");
                worst = worst.max((q - s).abs() / s.abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    CheckReport::new(format!("gnk.routes[c={c}]"), worst, 1e-8, "quadrature vs series (relative)")
}

/// Series of the `G_{n,k}` truncated at `n = 12` against the closed form,
/// where `lambda t <= 2`.
pub fn check_series_reconstruction(cases: &[(f64, f64, f64)], perturb: f64) -> Result<CheckReport> {
    let mut worst: f64 = 0.0;
    for &(c, l, t) in cases {
        if l * t > 2.0 {
            return Err(Error::Precondition("series reconstruction needs lambda t <= 2".into()));
        }
        let rs = RateSpeed { c, lambda: l };
        let s = mean_cosh_cm_series(&rs, t, 12)? * (1.0 + perturb);
        worst = worst.max((s - mean_cosh_cm(&rs, t)).abs());
    }
    Ok(CheckReport::new("gnk.series", worst, 1e-4, format!("{} cases, n <= 12", cases.len())))
}

/// Continuity of the closed form across `lambda = 3c` and the large-time
/// ratio to `(5/12) e^{ct}` at `ct = 20`. The residual is the larger of the
/// two deviations, each divided by its own tolerance (1e-4 and 1e-3).
pub fn check_limit_3c(c: f64, t_grid: &[f64]) -> CheckReport {
    check_limit_3c_perturbed(c, t_grid, 0.0)
}

pub fn check_limit_3c_perturbed(c: f64, t_grid: &[f64], perturb: f64) -> CheckReport {
    let mut continuity: f64 = 0.0;
    for &t in t_grid {
        let lim = mean_cosh_cm_limit_3c(c, t) * (1.0 + perturb);
        for side in [1.0 + 1e-8, 1.0 - 1e-8] {
            let v = mean_cosh_cm_unguarded(&RateSpeed { c, lambda: 3.0 * c * side }, t);
            continuity = continuity.max((v - lim).abs() / lim);
        }
    }
    let t20 = 20.0 / c;
    let ln_ratio = ln_mean_cosh_cm(&RateSpeed { c, lambda: 3.0 * c }, t20) - (5.0_f64 / 12.0).ln() - 20.0;
    let ratio = ln_ratio.exp() * (1.0 + perturb);
    let asym = (ratio - 1.0).abs();
    CheckReport::new(
        format!("limit3c[c={c}]"),
        (continuity / 1e-4).max(asym / 1e-3),
        1.0,
        format!("continuity {continuity:.3e} (tol 1e-4), ratio at ct=20 {ratio:.12} (tol 1e-3)"),
    )
}

/// The splinter law: `k = 1` against the direct integral and the two
/// stopping-density representations against each other.
pub fn check_splinter_law(perturb: f64) -> Result<Vec<CheckReport>> {
    let mut k1: f64 = 0.0;
    for (c, l, t) in [(1.0, 1.0, 1.0), (1.0, 2.0, 1.5), (0.5, 0.7, 3.0)] {
        let a = mean_cosh_splinter(&SplinterLaw::new(1, c, l)?, t)? * (1.0 + perturb);
        k1 = k1.max((a - mean_cosh_splinter_k1(c, l, t)).abs());
    }
    let mut density: f64 = 0.0;
    for k in 1..=5 {
        for (c, l) in [(1.0, 2.0), (0.5, 1.0), (2.0, 0.5)] {
            let law = SplinterLaw::new(k, c, l)?;
            for s in [0.1, 0.7, 1.5, 4.0] {
                let a = splinter_stopping_density(&law, s)? * (1.0 + perturb);
                let b = stopping_density_product(&law, s)?;
                density = density.max((a - b).abs() / b);
            }
        }
    }
    Ok(vec![
        CheckReport::new("splinter.k1", k1, 1e-10, "Beta/Gamma route vs direct integral, absolute"),
        CheckReport::new("splinter.density", density, 1e-9, "three-term f_k vs 2^-k h g, k <= 5, relative"),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Mc,
    Ode,
    Laplace,
    Gnk,
    Limit3c,
    Geometry,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["mc", "ode", "laplace", "gnk", "limit3c", "geometry", "all"];
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mc" => Suite::Mc,
            "ode" => Suite::Ode,
            "laplace" => Suite::Laplace,
            "gnk" => Suite::Gnk,
            "limit3c" => Suite::Limit3c,
            "geometry" => Suite::Geometry,
            "all" => Suite::All,
            other => return Err(Error::InvalidParams(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub mc_reps: u64,
    /// Random cascades for the frame cross-check.
    pub geometry_runs: u64,
    /// Relative perturbation of every reference value; 0 for a real run.
    pub perturb: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            mc_reps: 100_000,
            geometry_runs: 10_000,
            perturb: 0.0,
        }
    }
}

pub const MC_CASES: [(f64, f64, f64); 4] = [(1.0, 1.0, 1.0), (0.5, 2.0, 2.0), (1.0, 3.0, 1.0), (2.0, 0.5, 1.0)];
pub const ODE_SPEEDS: [f64; 3] = [0.5, 1.0, 2.0];
pub const ODE_RATES: [f64; 5] = [0.5, 1.0, 2.0, 3.0, 5.0];
pub const LAPLACE_CASES: [(f64, f64, f64); 3] = [(1.0, 1.0, 2.0), (1.0, 2.0, 3.0), (0.5, 1.0, 1.5)];

fn mc_params(o: &SuiteOptions, c: f64, lambda: f64, t: f64) -> ModelParams {
    ModelParams {
        c,
        lambda,
        horizon: t,
        seed: o.seed,
        reps: o.mc_reps,
        direction_policy: DirectionPolicy::Random,
        path_dt: 0.01,
    }
}

pub fn mc_suite(o: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let p = 1.0 + o.perturb;
    let mut out = Vec::new();
    for (c, l, t) in MC_CASES {
        let est = mc_mean_cosh_cm(&mc_params(o, c, l, t))?;
        let reference = mean_cosh_cm(&RateSpeed::new(c, l)?, t) * p;
        out.push(compare(format!("mc.cm[c={c},lambda={l},t={t}]"), &est, reference));
    }
    let (c, l, t) = (1.0, 2.0, 1.5);
    for k in 1..=3 {
        let est = mc_mean_cosh_splinter(&mc_params(o, c, l, t), k)?;
        let reference = mean_cosh_splinter(&SplinterLaw::new(k, c, l)?, t)? * p;
        out.push(compare(format!("mc.splinter[k={k},c={c},lambda={l},t={t}]"), &est, reference));
    }
    let est = mc_mean_cosh_terminal(&mc_params(o, 1.0, 1.0, 1.0))?;
    let reference = mean_cosh_all_deviating(&RateSpeed::new(1.0, 1.0)?, 1.0) * p;
    out.push(compare("mc.terminal[c=1,lambda=1,t=1]", &est, reference));
    Ok(out)
}

pub fn ode_suite(o: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let grid: Vec<f64> = (1..=50).map(|i| 0.1 * f64::from(i)).collect();
    let pairs: Vec<(f64, f64)> = ODE_SPEEDS
        .iter()
        .flat_map(|&c| ODE_RATES.iter().map(move |&l| (c, l)))
        .collect();
    let mut out = vec![check_initial_conditions(&pairs, o.perturb)];
    for &(c, l) in &pairs {
        let rs = RateSpeed::new(c, l)?;
        out.push(check_ode_perturbed(&rs, &grid, 1e-3, o.perturb)?);
        out.push(check_remark_identity(&rs, &grid, 1e-3, o.perturb));
    }
    let rs = RateSpeed::new(1.0, 2.0)?;
    out.push(check_derivative_forms(&rs, &[0.5, 1.0, 2.0, 4.0], o.perturb));
    Ok(out)
}

pub fn laplace_suite(o: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (c, l, mu) in LAPLACE_CASES {
        out.push(check_laplace_perturbed(&RateSpeed::new(c, l)?, mu, None, o.perturb)?);
    }
    let rs = RateSpeed::new(1.0, 0.0)?;
    let numeric = integrate_truncated(|t| (-2.0 * t).exp() * mean_cosh_cm(&rs, t), laplace_truncation(&rs, 2.0), 1e-14, 1e-14);
    let closed = laplace_mean_cosh_cm(&rs, &LaplaceParams::new(&rs, 2.0))? * (1.0 + o.perturb);
    let worst = (closed - 2.0 / 3.0).abs().max((numeric - 2.0 / 3.0).abs());
    out.push(CheckReport::new("laplace.no_branching", worst, 1e-10, format!("transform of cosh t at mu = 2: {closed}, numeric {numeric}")));
    out.extend(check_splinter_law(o.perturb)?);
    Ok(out)
}

pub fn gnk_suite(o: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let grid: Vec<f64> = (0..=10).map(|i| 0.5 + 0.25 * f64::from(i)).collect();
    let mut out = Vec::new();
    for c in [1.0, 0.7] {
        out.push(check_gnk_system_perturbed(3, c, &grid, o.perturb)?);
    }
    out.push(check_gnk_routes(1.0, &[0.5, 1.5, 3.0], o.perturb));
    let cases: Vec<(f64, f64, f64)> = [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (1.0, 3.0)]
        .iter()
        .flat_map(|&(c, l)| [0.25, 0.5].into_iter().chain((l <= 2.0).then_some(1.0)).map(move |t| (c, l, t)))
        .collect();
    out.push(check_series_reconstruction(&cases, o.perturb)?);
    Ok(out)
}

pub fn limit3c_suite(o: &SuiteOptions) -> Vec<CheckReport> {
    let grid: Vec<f64> = (0..=50).map(|i| 0.1 * f64::from(i)).collect();
    ODE_SPEEDS
        .iter()
        .map(|&c| check_limit_3c_perturbed(c, &grid, o.perturb))
        .collect()
}

/// Runs the selected checks in a fixed order.
pub fn run_suite(suite: Suite, o: &SuiteOptions) -> Result<Vec<CheckReport>> {
    Ok(match suite {
        Suite::Mc => mc_suite(o)?,
        Suite::Ode => ode_suite(o)?,
        Suite::Laplace => laplace_suite(o)?,
        Suite::Gnk => gnk_suite(o)?,
        Suite::Limit3c => limit3c_suite(o),
        Suite::Geometry => check_geometry(o)?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Mc, Suite::Ode, Suite::Laplace, Suite::Gnk, Suite::Limit3c, Suite::Geometry] {
                all.extend(run_suite(s, o)?);
            }
            all
        }
    })
}
