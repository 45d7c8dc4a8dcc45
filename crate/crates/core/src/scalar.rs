//! Scalar abstractions.
//!
//! Geometry that only needs field operations (the conformal maps, the
//! cosh-distance from the origin, geodesic images) is written against
//! [`Field`], so it runs unchanged on `f32`, `f64` and exact rationals.
//! Anything touching `cosh`, `exp` or `sqrt` needs [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed};

/// Ordered field with exact small-integer constants.
pub trait Field: Num + Signed + Copy + PartialOrd + FromPrimitive + Debug {
    /// `num / den` built from integers; exact for rational types.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer constant") / Self::from_i64(den).expect("integer constant")
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer constant")
    }
}

impl<T> Field for T where T: Num + Signed + Copy + PartialOrd + FromPrimitive + Debug {}

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Field + Float + FloatConst + Send + Sync {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl<T> Real for T where T: Field + Float + FloatConst + Send + Sync {}

/// `ln cosh x` without overflow.
pub fn ln_cosh<T: Real>(x: T) -> T {
    let a = x.abs();
    a + (-(a + a)).exp().ln_1p() - T::LN_2()
}

/// `ln(e^a + e^b)`.
pub fn log_add_exp<T: Real>(a: T, b: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Neumaier compensated accumulator. Summation order is the push order.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
