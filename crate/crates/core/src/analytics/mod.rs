//! Closed forms for the mean hyperbolic distance of the cascade.
//!
//! The mean `u(t) = E cosh eta_cm(t)` solves
//!
//! ```text
//! u'' - c^2 u = lambda c^2 e^{-3 lambda t/4} (e^{-tR/4} - e^{tR/4}) / R,   u(0) = 1, u'(0) = 0
//! ```
//!
//! with `R = sqrt(lambda^2 + 16 c^2)`. All of these are finite sums of
//! terms `(a + b t) e^{r t}`, kept as [`ExpTerm`] lists so the same
//! coefficients serve direct, derivative and log-space evaluation.

mod gnk;
mod splinter;

pub use gnk::{g_nk, g_nk_series, mean_cosh_cm_series, G_NK_MAX_N};
pub use splinter::{
    beta_exp_factor, gamma_density, mean_cosh_splinter, mean_cosh_splinter_k1, splinter_stopping_density,
    stopping_density_product, SplinterLaw,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::Adaptive;
use crate::scalar::{CompensatedSum, Field, Real};

/// Relative width of the window around `lambda = 3c` where the limit form
/// replaces the closed form.
pub const LIMIT_3C_WINDOW: f64 = 1e-6;

/// Above this `c t` closed forms are evaluated through logarithms.
pub const LOG_SPACE_THRESHOLD: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSpeed<T> {
    pub c: T,
    pub lambda: T,
}

impl<T: Real> RateSpeed<T> {
    pub fn new(c: T, lambda: T) -> Result<Self> {
        if !(c > T::zero() && c.is_finite()) {
            return Err(Error::InvalidParams(format!("speed must be > 0, got {c:?}")));
        }
        if !(lambda >= T::zero() && lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("rate must be >= 0, got {lambda:?}")));
        }
        Ok(Self { c, lambda })
    }

    /// `sqrt(lambda^2 + 16 c^2)`.
    pub fn radical(&self) -> T {
        (self.lambda * self.lambda + T::int(16) * self.c * self.c).sqrt()
    }

    /// Whether `lambda` is close enough to `3c` for the limit form.
    pub fn near_3c(&self) -> bool {
        ((self.lambda - T::int(3) * self.c) / self.c).abs() < T::lit(LIMIT_3C_WINDOW)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceParams<T> {
    pub mu: T,
    /// `lambda + mu`.
    pub gamma: T,
}

impl<T: Real> LaplaceParams<T> {
    pub fn new(rs: &RateSpeed<T>, mu: T) -> Self {
        Self { mu, gamma: rs.lambda + mu }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint<T> {
    pub t: T,
    pub value: T,
}

/// `(coef + slope t) e^{rate t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm<T> {
    pub coef: T,
    pub slope: T,
    pub rate: T,
}

impl<T: Field> ExpTerm<T> {
    pub fn exp(coef: T, rate: T) -> Self {
        Self { coef, slope: T::zero(), rate }
    }

    /// Term of the first derivative.
    pub fn derivative(&self) -> Self {
        Self {
            coef: self.coef * self.rate + self.slope,
            slope: self.slope * self.rate,
            rate: self.rate,
        }
    }
}

impl<T: Real> ExpTerm<T> {
    pub fn eval(&self, t: T) -> T {
        (self.coef + self.slope * t) * (self.rate * t).exp()
    }
}

pub fn eval_terms<T: Real>(terms: &[ExpTerm<T>], t: T) -> T {
    terms.iter().map(|x| x.eval(t)).collect::<CompensatedSum<T>>().value()
}

pub fn eval_derivative<T: Real>(terms: &[ExpTerm<T>], t: T) -> T {
    terms.iter().map(|x| x.derivative().eval(t)).collect::<CompensatedSum<T>>().value()
}

/// `ln` of a positive sum of terms, without overflow.
pub fn ln_eval_terms<T: Real>(terms: &[ExpTerm<T>], t: T) -> Result<T> {
    let parts: Vec<(T, T)> = terms
        .iter()
        .filter_map(|x| {
            let a = x.coef + x.slope * t;
            (a != T::zero()).then(|| (a.signum(), a.abs().ln() + x.rate * t))
        })
        .collect();
    let top = parts.iter().map(|p| p.1).fold(T::neg_infinity(), T::max);
    let s = parts
        .iter()
        .map(|&(sign, l)| sign * (l - top).exp())
        .collect::<CompensatedSum<T>>()
        .value();
    if s > T::zero() && top.is_finite() {
        Ok(top + s.ln())
    } else {
        Err(Error::Domain("sum of terms is not positive".into()))
    }
}

/// Terms of `u(t)` for `lambda != 3c`, given the radical `R`.
pub fn closed_form_terms<T: Field>(c: T, lambda: T, radical: T) -> [ExpTerm<T>; 4] {
    let r = radical;
    let (two, three, four, five, eight) = (T::int(2), T::int(3), T::int(4), T::int(5), T::int(8));
    let k = eight * c * c / r;
    [
        ExpTerm::exp(k / (three * r + five * lambda), -(three * lambda + r) / four),
        // 3R - 5 lambda without the cancellation near lambda = 3c
        ExpTerm::exp(
            k * (three * r + five * lambda) / (T::int(16) * (three * c - lambda) * (three * c + lambda)),
            (r - three * lambda) / four,
        ),
        ExpTerm::exp((lambda + two * c) / (two * (lambda + three * c)), c),
        ExpTerm::exp((lambda - two * c) / (two * (lambda - three * c)), -c),
    ]
}

/// Terms of `u(t)` at `lambda = 3c`:
/// `e^{-ct}(53/100 + 3ct/10) + (5/12) e^{ct} + (4/75) e^{-7ct/2}`.
pub fn limit_3c_terms<T: Field>(c: T) -> [ExpTerm<T>; 3] {
    [
        ExpTerm {
            coef: T::ratio(53, 100),
            slope: T::ratio(3, 10) * c,
            rate: -c,
        },
        ExpTerm::exp(T::ratio(5, 12), c),
        ExpTerm::exp(T::ratio(4, 75), -T::ratio(7, 2) * c),
    ]
}

fn mean_terms<T: Real>(rs: &RateSpeed<T>) -> Vec<ExpTerm<T>> {
    if rs.near_3c() {
        limit_3c_terms(rs.c).to_vec()
    } else {
        closed_form_terms(rs.c, rs.lambda, rs.radical()).to_vec()
    }
}

fn log_space<T: Real>(rs: &RateSpeed<T>, t: T) -> bool {
    rs.c * t > T::lit(LOG_SPACE_THRESHOLD)
}

/// `E cosh eta_cm(t)`.
pub fn mean_cosh_cm<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    let terms = mean_terms(rs);
    if log_space(rs, t) {
        ln_eval_terms(&terms, t).map_or(T::infinity(), T::exp)
    } else {
        eval_terms(&terms, t)
    }
}

/// `ln E cosh eta_cm(t)`, finite for every `t`.
pub fn ln_mean_cosh_cm<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    ln_eval_terms(&mean_terms(rs), t).expect("mean cosh distance is >= 1")
}

/// The closed form without the `lambda = 3c` guard.
pub fn mean_cosh_cm_unguarded<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    eval_terms(&closed_form_terms(rs.c, rs.lambda, rs.radical()), t)
}

pub fn mean_cosh_cm_limit_3c<T: Real>(c: T, t: T) -> T {
    eval_terms(&limit_3c_terms(c), t)
}

pub fn ln_mean_cosh_cm_limit_3c<T: Real>(c: T, t: T) -> T {
    ln_eval_terms(&limit_3c_terms(c), t).expect("limit form is >= 1")
}

/// `d/dt E cosh eta_cm(t)`.
pub fn mean_cosh_cm_derivative<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    eval_derivative(&mean_terms(rs), t)
}

/// The derivative as the sum of a boundary term and two convolution
/// integrals, every piece nonnegative:
///
/// ```text
/// u'(t) = 4c^2/R e^{-3 lambda t/4} sinh(tR/4)
///       + 2 c lambda^2/R  int_0^t e^{-3 lambda s/4} sinh c(t-s) sinh(sR/4) ds
///       + 4 c^2 lambda/R  int_0^t e^{-3 lambda s/4} cosh c(t-s) sinh(sR/4) ds
/// ```
pub fn mean_cosh_cm_derivative_integral<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    let (c, l, r) = (rs.c, rs.lambda, rs.radical());
    let four = T::int(4);
    let q = T::int(3) * l / four;
    let quad = Adaptive::new(20, T::lit(1e-14), T::lit(1e-13));
    let sinh_part = quad.integrate(|s| (-q * s).exp() * (c * (t - s)).sinh() * (s * r / four).sinh(), T::zero(), t);
    let cosh_part = quad.integrate(|s| (-q * s).exp() * (c * (t - s)).cosh() * (s * r / four).sinh(), T::zero(), t);
    four * c * c / r * (-q * t).exp() * (t * r / four).sinh()
        + T::int(2) * c * l * l / r * sinh_part
        + four * c * c * l / r * cosh_part
}

/// Terms of `E cosh eta(t)` for the particle that deviates at every event
/// of a rate-`rho` Poisson process.
pub fn all_deviating_terms<T: Real>(c: T, rho: T) -> [ExpTerm<T>; 2] {
    let two = T::int(2);
    let r = (rho * rho + T::int(4) * c * c).sqrt();
    let k = two * c * c / r;
    [
        ExpTerm::exp(k / (r + rho), -(rho + r) / two),
        ExpTerm::exp(k / (r - rho), (r - rho) / two),
    ]
}

/// Mean cosh-distance of the always-deviating particle, at rate `rs.lambda`.
/// Run at the cascade's rate this is the mean over terminal splinters; the
/// `(lambda/2)^n` series of the center of mass needs rate `lambda/2`.
pub fn mean_cosh_all_deviating<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    if log_space(rs, t) {
        let terms = all_deviating_terms(rs.c, rs.lambda);
        return ln_eval_terms(&terms, t).map_or(T::infinity(), T::exp);
    }
    // e^{-rho t/2} [cosh(rt/2) + (rho/r) sinh(rt/2)], exactly 1 at t = 0
    let (c, rho) = (rs.c, rs.lambda);
    let half = T::lit(0.5);
    let r = (rho * rho + T::int(4) * c * c).sqrt();
    (-half * rho * t).exp() * ((half * r * t).cosh() + rho / r * (half * r * t).sinh())
}

/// Terms of the forcing `u'' - c^2 u`.
pub fn ode_rhs_terms<T: Real>(rs: &RateSpeed<T>) -> [ExpTerm<T>; 2] {
    let (c, l, r) = (rs.c, rs.lambda, rs.radical());
    let four = T::int(4);
    let k = l * c * c / r;
    [
        ExpTerm::exp(k, -(T::int(3) * l + r) / four),
        ExpTerm::exp(-k, (r - T::int(3) * l) / four),
    ]
}

pub fn ode_rhs<T: Real>(rs: &RateSpeed<T>, t: T) -> T {
    let (c, l, r) = (rs.c, rs.lambda, rs.radical());
    let four = T::int(4);
    // 0 - x rather than -x: +0 at t = 0
    T::zero() - (T::int(2) * l * c * c / r) * (-T::int(3) * l * t / four).exp() * (t * r / four).sinh()
}

/// `int_0^inf e^{-mu t} E cosh eta_cm(t) dt`.
pub fn laplace_mean_cosh_cm<T: Real>(rs: &RateSpeed<T>, lp: &LaplaceParams<T>) -> Result<T> {
    let (c, l, mu) = (rs.c, rs.lambda, lp.mu);
    if !(mu > c) {
        return Err(Error::Precondition(format!("mu > c required (mu = {mu:?}, c = {c:?})")));
    }
    let two = T::int(2);
    let den = l * l + two * mu * mu + T::int(3) * l * mu - two * c * c;
    if !(den > T::zero()) {
        return Err(Error::Precondition("2c^2 < lambda^2 + 2mu^2 + 3 lambda mu required".into()));
    }
    let bracket = (l + mu + c) / (mu - c) + (l + mu - c) / (mu + c);
    Ok(l / two * bracket / den + (two * l + two * mu) / den)
}

/// `t = 0, dt, 2dt, ...` up to `t_max` (included when it falls on the grid
/// up to rounding).
pub fn time_grid<T: Real>(t_max: T, dt: T) -> Result<Vec<T>> {
    if !(dt > T::zero() && t_max >= T::zero() && t_max.is_finite()) {
        return Err(Error::InvalidParams("need dt > 0 and finite t_max >= 0".into()));
    }
    let steps = (t_max / dt + T::lit(1e-9)).floor().to_usize().unwrap_or(0);
    Ok((0..=steps).map(|i| T::from_usize(i).unwrap() * dt).collect())
}

pub fn curve<T: Real>(times: &[T], f: impl Fn(T) -> T) -> Vec<CurvePoint<T>> {
    times.iter().map(|&t| CurvePoint { t, value: f(t) }).collect()
}
