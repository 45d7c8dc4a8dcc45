//! The ordered integrals
//!
//! ```text
//! G_{n,k}(t) = int_{0<s_1<..<s_k<t} (t-s_k)^{n-k}/(n-k)! prod_{j<=k} cosh c(s_j-s_{j-1}) cosh c(t-s_k) ds
//! ```
//!
//! `e^{-lambda t} lambda^n G_{n,k}(t)` is the mean cosh-distance of splinter
//! `k` on the event `N(t) = n`.

use super::RateSpeed;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::scalar::{CompensatedSum, Real};

/// Largest `n` served by nested quadrature.
pub const G_NK_MAX_N: usize = 4;

const NODES: usize = 24;

fn check_indices(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::OutOfRange(format!("need k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_usize(i).unwrap())
}

/// `G_{n,k}(t)` by nested Gauss–Legendre quadrature, one dimension per
/// split time.
pub fn g_nk<T: Real>(n: usize, k: usize, t: T, c: T) -> Result<T> {
    check_indices(n, k)?;
    if n > G_NK_MAX_N {
        return Err(Error::Unsupported(format!(
            "nested quadrature limited to n <= {G_NK_MAX_N}, got {n}"
        )));
    }
    if t < T::zero() {
        return Err(Error::Domain("G_{n,k} needs t >= 0".into()));
    }
    let rule = GaussLegendre::<T>::new(NODES);
    let tail = |s: T| {
        let u = t - s;
        u.powi((n - k) as i32) / factorial::<T>(n - k) * (c * u).cosh()
    };
    Ok(nested(&rule, k, T::zero(), t, c, &tail))
}

fn nested<T: Real>(rule: &GaussLegendre<T>, depth: usize, from: T, t: T, c: T, tail: &dyn Fn(T) -> T) -> T {
    if depth == 0 {
        return tail(from);
    }
    rule.integrate(
        |s| (c * (s - from)).cosh() * nested(rule, depth - 1, s, t, c, tail),
        from,
        t,
    )
}

/// Exponential-generating coefficients `a_m` of `f(t) = sum a_m t^m / m!`.
type Egf<T> = Vec<T>;

fn cosh_egf<T: Real>(c: T, degree: usize) -> Egf<T> {
    let mut out = vec![T::zero(); degree + 1];
    let mut p = T::one();
    for (m, slot) in out.iter_mut().enumerate() {
        if m % 2 == 0 {
            *slot = p;
        }
        p = p * c;
    }
    out
}

// u^p / p! cosh(cu): coefficient C(m, p) c^{m-p} for even m - p
fn shifted_cosh_egf<T: Real>(c: T, p: usize, degree: usize) -> Egf<T> {
    let mut out = vec![T::zero(); degree + 1];
    let mut binom = T::one();
    let mut cp = T::one();
    for m in p..=degree {
        if m > p {
            binom = binom * T::from_usize(m).unwrap() / T::from_usize(m - p).unwrap();
            cp = cp * c;
        }
        if (m - p) % 2 == 0 {
            out[m] = binom * cp;
        }
    }
    out
}

// int_0^t f(s) g(t-s) ds
fn convolve<T: Real>(f: &[T], g: &[T]) -> Egf<T> {
    let degree = f.len() - 1;
    let mut out = vec![T::zero(); degree + 1];
    for m in 0..degree {
        let mut acc = CompensatedSum::new();
        for i in 0..=m {
            acc.add(f[i] * g[m - i]);
        }
        out[m + 1] = acc.value();
    }
    out
}

fn eval_egf<T: Real>(a: &[T], t: T) -> T {
    let mut power = T::one();
    let mut acc = CompensatedSum::new();
    for (m, &coef) in a.iter().enumerate() {
        if m > 0 {
            power = power * t / T::from_usize(m).unwrap();
        }
        acc.add(coef * power);
    }
    acc.value()
}

/// `G_{n,k}(t)` from its Taylor series; any `n`.
pub fn g_nk_series<T: Real>(n: usize, k: usize, t: T, c: T) -> Result<T> {
    check_indices(n, k)?;
    let x = (c * t).abs().to_f64().unwrap_or(f64::INFINITY);
    if !(x <= 300.0) {
        return Err(Error::Unsupported("series route needs c t <= 300".into()));
    }
    let degree = n + 40 + (2.0 * std::f64::consts::E * x).ceil() as usize;
    let cosh = cosh_egf(c, degree);
    let mut acc = shifted_cosh_egf(c, n - k, degree);
    for _ in 0..k {
        acc = convolve(&cosh, &acc);
    }
    Ok(eval_egf(&acc, t))
}

/// `E cosh eta_cm(t)` rebuilt from the `G_{n,k}`, summing `n <= n_max`:
///
/// ```text
/// e^{-lambda t} [ sum_{n>=1} lambda^n sum_{k<n} G_{n,k} / 2^{k+1} + sum_{n>=0} (lambda/2)^n G_{n,n} ]
/// ```
///
/// The neglected tail is below `e^{ct} P(N(t) > n_max)` at rate `lambda`.
pub fn mean_cosh_cm_series<T: Real>(rs: &RateSpeed<T>, t: T, n_max: usize) -> Result<T> {
    let (c, l) = (rs.c, rs.lambda);
    let half = T::lit(0.5);
    let mut acc = CompensatedSum::new();
    let mut ln = T::one();
    for n in 0..=n_max {
        let mut weight = half;
        for k in 0..n {
            acc.add(ln * weight * g_nk_series(n, k, t, c)?);
            weight = weight * half;
        }
        acc.add(ln * half.powi(n as i32) * g_nk_series(n, n, t, c)?);
        ln = ln * l;
    }
    Ok((-l * t).exp() * acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{mean_cosh_all_deviating, mean_cosh_cm};

    #[test]
    fn low_order_closed_forms() {
        let (c, t) = (1.3_f64, 0.9_f64);
        assert!((g_nk(0, 0, t, c).unwrap() - (c * t).cosh()).abs() < 1e-15);
        assert!((g_nk(1, 0, t, c).unwrap() - t * (c * t).cosh()).abs() < 1e-14);
        let g11 = 0.5 * t * (c * t).cosh() + (c * t).sinh() / (2.0 * c);
        assert!((g_nk(1, 1, t, c).unwrap() - g11).abs() < 1e-14);
        assert!((g_nk_series(1, 1, t, c).unwrap() - g11).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_series() {
        for n in 0..=4 {
            for k in 0..=n {
                for (t, c) in [(0.5_f64, 1.0_f64), (2.0, 0.7), (3.0, 1.0)] {
                    let q = g_nk(n, k, t, c).unwrap();
                    let s = g_nk_series(n, k, t, c).unwrap();
                    assert!((q - s).abs() <= 1e-10 * s, "n={n} k={k} t={t}: {q} vs {s}");
                }
            }
        }
    }

    #[test]
    fn size_and_index_errors() {
        assert!(matches!(g_nk(5, 0, 1.0, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(g_nk(2, 3, 1.0, 1.0), Err(Error::OutOfRange(_))));
        assert!(g_nk_series(9, 4, 1.0, 1.0).is_ok());
    }

    #[test]
    fn series_reconstruction_of_mean() {
        for (c, l) in [(1.0_f64, 1.0_f64), (0.5, 2.0), (2.0, 0.5), (1.0, 3.0)] {
            for t in [0.25, 0.5, 1.0] {
                if l * t > 2.0 {
                    continue;
                }
                let rs = RateSpeed::new(c, l).unwrap();
                let series = mean_cosh_cm_series(&rs, t, 12).unwrap();
                let closed = mean_cosh_cm(&rs, t);
                assert!((series - closed).abs() <= 1e-4, "c={c} l={l} t={t}: {series} vs {closed}");
            }
        }
    }

    #[test]
    fn terminal_series_is_all_deviating_mean() {
        // e^{-lambda t} sum lambda^n G_{n,n}
        let (c, l, t) = (1.0_f64, 1.0_f64, 1.0_f64);
        let s: f64 = (0..=25).map(|n| l.powi(n) * g_nk_series(n as usize, n as usize, t, c).unwrap()).sum();
        let v = (-l * t).exp() * s;
        let closed = mean_cosh_all_deviating(&RateSpeed::new(c, l).unwrap(), t);
        assert!((v - closed).abs() < 1e-12 * closed);
    }
}
