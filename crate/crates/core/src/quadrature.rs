//! Gauss–Legendre rules and adaptive bisection on top of them.

use crate::scalar::Real;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes by Newton iteration on `P_n`, started from the Tricomi
    /// approximation.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::from_usize(n).unwrap();
        let one = T::one();
        let two = T::int(2);
        let eps = T::epsilon() * T::int(4);
        for i in 0..(n + 1) / 2 {
            let k = T::from_usize(i).unwrap();
            let mut x = (T::PI() * (k + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
            let mut dp = one;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= eps {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = two / ((one - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        let half = (b - a) / T::int(2);
        let mid = (a + b) / T::int(2);
        let mut acc = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + w * f(mid + half * x);
        }
        acc * half
    }
}

// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::from_usize(k).unwrap();
        let p2 = ((kf + kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_usize(n).unwrap();
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Adaptive bisection driven by a fixed Gauss–Legendre rule: a panel is
/// accepted when its estimate agrees with the sum over its two halves.
#[derive(Debug, Clone)]
pub struct Adaptive<T> {
    rule: GaussLegendre<T>,
    abs_tol: T,
    rel_tol: T,
    max_depth: u32,
}

impl<T: Real> Adaptive<T> {
    pub fn new(nodes: usize, abs_tol: T, rel_tol: T) -> Self {
        Self {
            rule: GaussLegendre::new(nodes),
            abs_tol,
            rel_tol,
            max_depth: 40,
        }
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        self.integrate_with_breaks(&mut f, a, b, &[])
    }

    /// Splits `[a, b]` at the given interior points first (e.g. a peak of the
    /// integrand) and integrates each panel adaptively.
    pub fn integrate_with_breaks<F: FnMut(T) -> T>(&self, f: &mut F, a: T, b: T, breaks: &[T]) -> T {
        if a == b {
            return T::zero();
        }
        let mut pts = vec![a];
        pts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        pts.push(b);
        let mut total = T::zero();
        let panels = T::from_usize(pts.len() - 1).unwrap();
        for w in pts.windows(2) {
            let whole = self.rule.integrate(&mut *f, w[0], w[1]);
            total = total + self.refine(f, w[0], w[1], whole, self.abs_tol / panels, 0);
        }
        total
    }

    fn refine<F: FnMut(T) -> T>(&self, f: &mut F, a: T, b: T, whole: T, tol: T, depth: u32) -> T {
        let mid = (a + b) / T::int(2);
        let left = self.rule.integrate(&mut *f, a, mid);
        let right = self.rule.integrate(&mut *f, mid, b);
        let split = left + right;
        let err = (split - whole).abs();
        if err <= tol.max(self.rel_tol * split.abs()) || depth >= self.max_depth {
            return split;
        }
        let half_tol = tol / T::int(2);
        self.refine(f, a, mid, left, half_tol, depth + 1) + self.refine(f, mid, b, right, half_tol, depth + 1)
    }
}

/// `∫_0^∞ f` as `∫_0^T f` with an explicit truncation point, adaptively.
pub fn integrate_truncated<T: Real, F: FnMut(T) -> T>(f: F, upper: T, abs_tol: T, rel_tol: T) -> T {
    Adaptive::new(20, abs_tol, rel_tol).integrate(f, T::zero(), upper)
}
