//! Law of the `k`-th splinter.
//!
//! The defective mean `E{cosh eta_k(t) 1{N(t) >= k}}` equals the mean
//! cosh-distance of a particle that runs along the main geodesic and is
//! stopped at a random time with density `f_k(s) = 2^{-k} h(k,c,s) g(s;k,lambda)`,
//! where `g` is the Gamma(k, lambda) density and
//! `h(k,c,s) = sum_r C(k,r) E{e^{cs(2Y_r - 1)}}`, `Y_r ~ Beta(r, k-r)`
//! (with `Y_0 = 1`, `Y_k = -1`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Adaptive, GaussLegendre};
use crate::scalar::{CompensatedSum, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplinterLaw<T> {
    pub k: usize,
    pub c: T,
    pub lambda: T,
    /// Starting node count of the Beta expectations.
    pub quadrature: usize,
}

impl<T: Real> SplinterLaw<T> {
    pub fn new(k: usize, c: T, lambda: T) -> Result<Self> {
        Self::with_nodes(k, c, lambda, 64)
    }

    pub fn with_nodes(k: usize, c: T, lambda: T, quadrature: usize) -> Result<Self> {
        if quadrature < 16 {
            return Err(Error::InvalidParams(format!("need at least 16 nodes, got {quadrature}")));
        }
        if !(c > T::zero()) || !(lambda >= T::zero()) {
            return Err(Error::InvalidParams("need c > 0 and lambda >= 0".into()));
        }
        Ok(Self { k, c, lambda, quadrature })
    }

    fn require_k(&self) -> Result<()> {
        if self.k == 0 {
            Err(Error::OutOfRange("the stopping law is a point mass for k = 0".into()))
        } else {
            Ok(())
        }
    }
}

fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_usize(i).unwrap())
}

fn binomial<T: Real>(n: usize, r: usize) -> T {
    factorial::<T>(n) / (factorial::<T>(r) * factorial::<T>(n - r))
}

/// Gamma(k, lambda) density.
pub fn gamma_density<T: Real>(k: usize, lambda: T, s: T) -> T {
    if s < T::zero() || k == 0 {
        return T::zero();
    }
    let k_minus_1 = i32::try_from(k - 1).expect("shape fits in i32");
    (-lambda * s).exp() * lambda.powi(k_minus_1 + 1) * s.powi(k_minus_1) / factorial::<T>(k - 1)
}

/// `h(k, c, s)` with Beta expectations evaluated by Gauss–Legendre rules of
/// increasing size.
struct BetaExp<T> {
    k: usize,
    c: T,
    rules: Vec<GaussLegendre<T>>,
    /// `C(k, r) / B(r, k - r)` for `r = 1..k-1`.
    weights: Vec<T>,
}

const MAX_DOUBLINGS: usize = 4;

impl<T: Real> BetaExp<T> {
    fn new(law: &SplinterLaw<T>) -> Self {
        let k = law.k;
        let rules = if k >= 2 {
            (0..=MAX_DOUBLINGS).map(|i| GaussLegendre::new(law.quadrature << i)).collect()
        } else {
            Vec::new()
        };
        let weights = (1..k)
            .map(|r| binomial::<T>(k, r) * factorial::<T>(k - 1) / (factorial::<T>(r - 1) * factorial::<T>(k - r - 1)))
            .collect();
        Self { k, c: law.c, rules, weights }
    }

    fn interior(&self, rule: &GaussLegendre<T>, s: T) -> T {
        let half = T::lit(0.5);
        let z = self.c * s;
        let mut acc = CompensatedSum::new();
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let y = half * (x + T::one());
            let e = (z * (y + y - T::one())).exp();
            for (i, &wr) in self.weights.iter().enumerate() {
                let r = i + 1;
                let dens = y.powi(r as i32 - 1) * (T::one() - y).powi((self.k - r) as i32 - 1);
                acc.add(half * w * wr * dens * e);
            }
        }
        acc.value()
    }

    fn eval(&self, s: T) -> T {
        let z = self.c * s;
        let ends = z.exp() + (-z).exp();
        if self.k < 2 {
            return ends;
        }
        let tol = T::lit(1e-12);
        let mut prev = self.interior(&self.rules[0], s);
        for rule in &self.rules[1..] {
            let next = self.interior(rule, s);
            if (next - prev).abs() <= tol * next.abs() {
                return ends + next;
            }
            prev = next;
        }
        ends + prev
    }
}

/// `h(k, c, s)`.
pub fn beta_exp_factor<T: Real>(law: &SplinterLaw<T>, s: T) -> Result<T> {
    law.require_k()?;
    Ok(BetaExp::new(law).eval(s))
}

/// `2^{-k} h(k,c,s) g(s;k,lambda)`.
pub fn stopping_density_product<T: Real>(law: &SplinterLaw<T>, s: T) -> Result<T> {
    let h = beta_exp_factor(law, s)?;
    Ok(h * gamma_density(law.k, law.lambda, s) / T::int(2).powi(law.k as i32))
}

/// `1F1(a; b; z)` for `z >= 0` by its power series.
fn kummer<T: Real>(a: usize, b: usize, z: T) -> T {
    let (a, b) = (T::from_usize(a).unwrap(), T::from_usize(b).unwrap());
    let mut term = T::one();
    let mut sum = T::one();
    let mut m = T::zero();
    loop {
        term = term * (a + m) / (b + m) * z / (m + T::one());
        sum = sum + term;
        m = m + T::one();
        if m > z && term <= T::epsilon() * sum {
            return sum;
        }
    }
}

/// `f_k(s)`: the two endpoint terms plus the convolution sum, the latter in
/// closed form through Kummer's function.
pub fn splinter_stopping_density<T: Real>(law: &SplinterLaw<T>, s: T) -> Result<T> {
    law.require_k()?;
    if s < T::zero() {
        return Ok(T::zero());
    }
    let (k, c, l) = (law.k, law.c, law.lambda);
    let pre = l.powi(k as i32) / T::int(2).powi(k as i32) * s.powi(k as i32 - 1) / factorial::<T>(k - 1);
    let mut acc = CompensatedSum::new();
    acc.add((s * (c - l)).exp());
    // int_0^s w^{r-1}/(r-1)! (s-w)^{k-r-1}/(k-r-1)! e^{2cw} dw = s^{k-1}/(k-1)! 1F1(r; k; 2cs)
    for r in 1..k {
        acc.add(binomial::<T>(k, r) * (-s * (l + c)).exp() * kummer(r, k, T::int(2) * c * s));
    }
    acc.add((-s * (c + l)).exp());
    Ok(pre * acc.value())
}

/// `E{cosh eta_k(t) 1{N(t) >= k}}`.
pub fn mean_cosh_splinter<T: Real>(law: &SplinterLaw<T>, t: T) -> Result<T> {
    let c = law.c;
    if law.k == 0 {
        return Ok((c * t).cosh());
    }
    if t <= T::zero() {
        return Ok(T::zero());
    }
    let h = BetaExp::new(law);
    let scale = T::int(2).powi(law.k as i32);
    let mut f = |s: T| (c * (t - s)).cosh() * h.eval(s) * gamma_density(law.k, law.lambda, s) / scale;
    let mode = T::from_usize(law.k - 1).unwrap() / law.lambda;
    let quad = Adaptive::new(20, T::lit(1e-10), T::lit(1e-13));
    Ok(quad.integrate_with_breaks(&mut f, T::zero(), t, &[mode]))
}

/// First splinter by direct quadrature of
/// `int_0^t cosh c(t-s) cosh(cs) lambda e^{-lambda s} ds`.
pub fn mean_cosh_splinter_k1<T: Real>(c: T, lambda: T, t: T) -> T {
    let quad = Adaptive::new(20, T::lit(1e-13), T::lit(1e-14));
    quad.integrate(|s| (c * (t - s)).cosh() * (c * s).cosh() * lambda * (-lambda * s).exp(), T::zero(), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(k: usize, c: f64, lambda: f64) -> SplinterLaw<f64> {
        SplinterLaw::new(k, c, lambda).unwrap()
    }

    // closed form of the k = 1 defective mean
    fn k1_closed(c: f64, l: f64, t: f64) -> f64 {
        let a = 0.5 * (c * t).cosh() * (1.0 - (-l * t).exp());
        let b = (c * t).exp() * (1.0 - (-(2.0 * c + l) * t).exp()) / (2.0 * c + l);
        let d = (-c * t).exp() * (((2.0 * c - l) * t).exp() - 1.0) / (2.0 * c - l);
        a + 0.25 * l * (b + d)
    }

    #[test]
    fn gamma_density_values() {
        assert!((gamma_density(1, 2.0, 0.3) - 2.0 * (-0.6_f64).exp()).abs() < 1e-15);
        assert!((gamma_density(2, 1.0, 1.0) - (-1.0_f64).exp()).abs() < 1e-15);
        assert_eq!(gamma_density(3, 1.0, 0.0), 0.0);
        assert_eq!(gamma_density(1, 1.0, -1.0), 0.0);
    }

    #[test]
    fn gamma_density_normalized() {
        for k in 1..=10 {
            for l in [0.5, 2.0] {
                let upper = (k as f64 + 60.0) / l;
                let total = Adaptive::new(20, 1e-13, 1e-14).integrate_with_breaks(
                    &mut |s| gamma_density(k, l, s),
                    0.0,
                    upper,
                    &[(k as f64 - 1.0) / l],
                );
                assert!((total - 1.0).abs() < 1e-10, "k={k} l={l}: {total}");
            }
        }
    }

    #[test]
    fn beta_factor_special_cases() {
        for k in 1..=8 {
            let h = beta_exp_factor(&law(k, 1.3, 1.0), 0.0).unwrap();
            assert!((h - 2f64.powi(k as i32)).abs() < 1e-12 * h, "k={k}");
        }
        let s = 0.9;
        let c = 1.3;
        let h1 = beta_exp_factor(&law(1, c, 1.0), s).unwrap();
        assert!((h1 - 2.0 * (c * s).cosh()).abs() < 1e-14);
        let h2 = beta_exp_factor(&law(2, c, 1.0), s).unwrap();
        let z = c * s;
        let expected = z.exp() + (z.exp() - (-z).exp()) / z + (-z).exp();
        assert!((h2 - expected).abs() < 1e-13 * expected);
        assert!(beta_exp_factor(&law(0, c, 1.0), s).is_err());
    }

    #[test]
    fn beta_factor_is_even_in_speed() {
        let a = beta_exp_factor(&law(5, 0.7, 1.0), 2.0).unwrap();
        let mut neg = law(5, 0.7, 1.0);
        neg.c = -0.7;
        let b = BetaExp::new(&neg).eval(2.0);
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn density_k1_closed_form() {
        let (c, l) = (0.8, 1.7);
        for s in [0.0, 0.4, 2.5] {
            let f = splinter_stopping_density(&law(1, c, l), s).unwrap();
            let expected = 0.5 * l * (-l * s).exp() * ((c * s).exp() + (-c * s).exp());
            assert!((f - expected).abs() < 1e-14 * expected.max(1e-300));
        }
    }

    #[test]
    fn two_representations_of_stopping_density_agree() {
        let p = law(3, 1.0, 2.0);
        let a = splinter_stopping_density(&p, 0.7).unwrap();
        let b = stopping_density_product(&p, 0.7).unwrap();
        assert!((a - b).abs() <= 1e-9 * a, "{a} vs {b}");
        for k in 1..=5 {
            for s in [0.05, 0.5, 1.0, 3.0, 7.0] {
                for (c, l) in [(1.0, 2.0), (0.5, 0.3), (2.0, 1.0)] {
                    let p = law(k, c, l);
                    let a = splinter_stopping_density(&p, s).unwrap();
                    let b = stopping_density_product(&p, s).unwrap();
                    assert!((a - b).abs() <= 1e-9 * a, "k={k} s={s} c={c} l={l}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn first_splinter_three_ways() {
        for (c, l, t) in [(1.0, 1.0, 1.0), (0.5, 2.0, 3.0), (2.0, 0.7, 1.5)] {
            let law_route = mean_cosh_splinter(&law(1, c, l), t).unwrap();
            let direct = mean_cosh_splinter_k1(c, l, t);
            let closed = k1_closed(c, l, t);
            assert!((law_route - direct).abs() < 1e-10, "{law_route} vs {direct}");
            assert!((direct - closed).abs() < 1e-12 * closed);
        }
    }

    #[test]
    fn zeroth_splinter_is_straight_motion() {
        let v = mean_cosh_splinter(&law(0, 1.4, 2.0), 1.1).unwrap();
        assert_eq!(v, (1.4_f64 * 1.1).cosh());
    }

    #[test]
    fn defective_mean_vanishes_at_start_and_for_rare_k() {
        assert_eq!(mean_cosh_splinter(&law(3, 1.0, 1.0), 0.0).unwrap(), 0.0);
        let v = mean_cosh_splinter(&law(12, 1.0, 0.1), 1.0).unwrap();
        assert!(v > 0.0 && v < 1e-15);
    }

    #[test]
    fn rejects_too_few_nodes() {
        assert!(SplinterLaw::with_nodes(2, 1.0, 1.0, 8).is_err());
    }
}
