//! Poincaré half-plane and disk primitives.
//!
//! Points of the upper half-plane are [`CartesianPoint`]s; the origin is
//! `O = (0, 1)`. Hyperbolic polar coordinates `(eta, alpha)` give the distance
//! from `O` and the Euclidean angle of the initial tangent at `O` of the
//! geodesic towards the point (`alpha = 0` points along `+x`, `alpha = pi/2`
//! straight up). The disk model is reached through `w = (iz + 1)/(z + i)`.

mod geodesic;
mod isometry;

pub use geodesic::{geodesic_image, sample_geodesic, GeodesicImage};
pub use isometry::{
    frame_translate, frame_turn_orthogonal, radial_frame, Isometry, TurnSide,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

/// Point of the upper half-plane `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianPoint<T> {
    pub x: T,
    pub y: T,
}

/// Point of the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint<T> {
    pub u: T,
    pub v: T,
}

/// Hyperbolic polar coordinates about `O`.
///
/// `alpha` lives in `(-pi, pi]`; on `x >= 0` this is the usual `[-pi/2, pi/2]`
/// chart and the extension covers the left half of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicPolar<T> {
    pub eta: T,
    pub alpha: T,
}

impl<T: Field> CartesianPoint<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if y > T::zero() {
            Ok(Self { x, y })
        } else {
            Err(Error::Domain(format!("half-plane point needs y > 0, got {y:?}")))
        }
    }

    pub fn origin() -> Self {
        Self {
            x: T::zero(),
            y: T::one(),
        }
    }

    /// Reflection in the imaginary axis, `x -> -x`.
    pub fn mirror(self) -> Self {
        Self { x: -self.x, y: self.y }
    }
}

impl<T: Field> DiskPoint<T> {
    pub fn norm_sq(&self) -> T {
        self.u * self.u + self.v * self.v
    }
}

impl<T: Real> HyperbolicPolar<T> {
    pub fn new(eta: T, alpha: T) -> Result<Self> {
        if !(eta.is_finite() && alpha.is_finite()) || eta < T::zero() {
            return Err(Error::Domain(format!(
                "polar coordinates need finite eta >= 0, got ({eta:?}, {alpha:?})"
            )));
        }
        Ok(Self { eta, alpha })
    }
}

/// `cosh` of the hyperbolic distance from `O`: `(x^2 + y^2 + 1) / (2y)`.
pub fn cosh_dist_origin<T: Field>(p: CartesianPoint<T>) -> Result<T> {
    if p.y <= T::zero() {
        return Err(Error::Domain(format!("y must be positive, got {:?}", p.y)));
    }
    Ok((p.x * p.x + p.y * p.y + T::one()) / (T::int(2) * p.y))
}

/// `cosh` of the hyperbolic distance between two half-plane points.
pub fn cosh_dist<T: Field>(p: CartesianPoint<T>, q: CartesianPoint<T>) -> Result<T> {
    if p.y <= T::zero() || q.y <= T::zero() {
        return Err(Error::Domain("points must lie in y > 0".into()));
    }
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    Ok(T::one() + (dx * dx + dy * dy) / (T::int(2) * p.y * q.y))
}

/// Hyperbolic distance from `O` (the `acosh` of [`cosh_dist_origin`]).
pub fn dist_origin<T: Real>(p: CartesianPoint<T>) -> Result<T> {
    Ok(cosh_dist_origin(p)?.max(T::one()).acosh())
}

pub fn to_polar<T: Real>(p: CartesianPoint<T>) -> Result<HyperbolicPolar<T>> {
    if !(p.x.is_finite() && p.y.is_finite()) {
        return Err(Error::Domain(format!("non-finite point ({:?}, {:?})", p.x, p.y)));
    }
    let ch = cosh_dist_origin(p)?;
    let r2m1 = p.x * p.x + p.y * p.y - T::one();
    let two_x = p.x + p.x;
    if r2m1 == T::zero() && two_x == T::zero() {
        // exactly the origin
        return Ok(HyperbolicPolar {
            eta: T::zero(),
            alpha: T::zero(),
        });
    }
    // atan2 keeps the sign information that tan(alpha) alone loses; on the
    // vertical axis it yields +pi/2 above O and -pi/2 below.
    let alpha = r2m1.atan2(two_x);
    let eta = eta_from_point(p, ch);
    Ok(HyperbolicPolar { eta, alpha })
}

// acosh(ch) loses half the digits near ch = 1; use the chordal form there.
fn eta_from_point<T: Real>(p: CartesianPoint<T>, ch: T) -> T {
    let two = T::int(2);
    // cosh(eta) - 1 = (x^2 + (y-1)^2) / (2y) = 2 sinh^2(eta/2)
    let dy = p.y - T::one();
    let half = ((p.x * p.x + dy * dy) / (two * two * p.y)).sqrt();
    if ch < two {
        two * half.asinh()
    } else {
        ch.acosh()
    }
}

pub fn from_polar<T: Real>(q: HyperbolicPolar<T>) -> Result<CartesianPoint<T>> {
    let (sh, ch) = (q.eta.sinh(), q.eta.cosh());
    let (sa, ca) = q.alpha.sin_cos();
    let den = ch - sh * sa;
    if !(den > T::min_positive_value()) || !den.is_finite() {
        return Err(Error::Overflow(format!(
            "cosh(eta) - sinh(eta) sin(alpha) = {den:?} at eta = {:?}, alpha = {:?}",
            q.eta, q.alpha
        )));
    }
    let p = CartesianPoint {
        x: sh * ca / den,
        y: den.recip(),
    };
    if !(p.x.is_finite() && p.y.is_finite() && p.y > T::zero()) {
        return Err(Error::Overflow(format!("point ({:?}, {:?}) not representable", p.x, p.y)));
    }
    Ok(p)
}

/// Hyperbolic Pythagoras: the hypotenuse of a right triangle with legs `eta1`, `eta2`.
pub fn pythagoras<T: Real>(eta1: T, eta2: T) -> Result<T> {
    check_leg(eta1)?;
    check_leg(eta2)?;
    Ok((eta1.cosh() * eta2.cosh()).acosh())
}

/// Hyperbolic law of cosines for sides `eta1`, `eta2` enclosing the angle
/// `alpha1 - alpha2`.
pub fn carnot<T: Real>(eta1: T, eta2: T, alpha1: T, alpha2: T) -> Result<T> {
    check_leg(eta1)?;
    check_leg(eta2)?;
    let ch = eta1.cosh() * eta2.cosh() - eta1.sinh() * eta2.sinh() * (alpha1 - alpha2).cos();
    Ok(ch.max(T::one()).acosh())
}

fn check_leg<T: Real>(eta: T) -> Result<()> {
    if eta.is_finite() && eta >= T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("triangle side must be finite and >= 0, got {eta:?}")))
    }
}

/// Conformal map onto the disk, `w = (iz + 1)/(z + i)`. Boundary points
/// `y = 0` are admitted and land on the unit circle.
pub fn halfplane_to_disk<T: Field>(p: CartesianPoint<T>) -> DiskPoint<T> {
    let yp1 = p.y + T::one();
    let den = p.x * p.x + yp1 * yp1;
    DiskPoint {
        u: T::int(2) * p.x / den,
        v: (p.x * p.x + p.y * p.y - T::one()) / den,
    }
}

pub fn disk_to_halfplane<T: Field>(q: DiskPoint<T>) -> Result<CartesianPoint<T>> {
    let n2 = q.norm_sq();
    if n2 >= T::one() {
        return Err(Error::Domain(format!("disk point must satisfy u^2 + v^2 < 1, got {n2:?}")));
    }
    let omv = T::one() - q.v;
    let den = q.u * q.u + omv * omv;
    Ok(CartesianPoint {
        x: T::int(2) * q.u / den,
        y: (T::one() - n2) / den,
    })
}

/// Which half-plane-to-disk map to use. Figures use [`DiskMap::Standard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DiskMap {
    /// `w = (iz + 1)/(z + i)`
    #[default]
    Standard,
    /// Cayley transform `w = (i - z)/(i + z)`
    Cayley,
}

pub fn to_disk<T: Field>(p: CartesianPoint<T>, map: DiskMap) -> DiskPoint<T> {
    match map {
        DiskMap::Standard => halfplane_to_disk(p),
        DiskMap::Cayley => {
            let yp1 = p.y + T::one();
            let den = p.x * p.x + yp1 * yp1;
            DiskPoint {
                u: (T::one() - p.x * p.x - p.y * p.y) / den,
                v: T::int(2) * p.x / den,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;
    use std::f64::consts::{E, FRAC_PI_2, PI};

    type Q = Ratio<i64>;

    fn pt(x: f64, y: f64) -> CartesianPoint<f64> {
        CartesianPoint::new(x, y).unwrap()
    }

    #[test]
    fn to_polar_examples() {
        let o = to_polar(pt(0.0, 1.0)).unwrap();
        assert_eq!((o.eta, o.alpha), (0.0, 0.0));

        let a = 1.0_f64;
        let q = to_polar(pt(a.tanh(), 1.0 / a.cosh())).unwrap();
        assert!((q.eta - 1.0).abs() < 1e-14);
        assert!(q.alpha.abs() < 1e-14);

        let q = to_polar(pt(0.0, E)).unwrap();
        assert!((q.eta - 1.0).abs() < 1e-14);
        assert_eq!(q.alpha, FRAC_PI_2);

        let q = to_polar(pt(0.0, 1.0 / E)).unwrap();
        assert!((q.eta - 1.0).abs() < 1e-14);
        assert_eq!(q.alpha, -FRAC_PI_2);
    }

    #[test]
    fn to_polar_rejects_bad_points() {
        assert!(CartesianPoint::new(0.0, 0.0).is_err());
        assert!(to_polar(CartesianPoint { x: 0.0, y: -1.0 }).is_err());
        assert!(to_polar(CartesianPoint { x: f64::NAN, y: 1.0 }).is_err());
        assert!(to_polar(CartesianPoint { x: 0.0, y: f64::INFINITY }).is_err());
    }

    #[test]
    fn from_polar_examples() {
        for alpha in [-1.0, 0.0, 0.7, 3.0] {
            let p = from_polar(HyperbolicPolar { eta: 0.0, alpha }).unwrap();
            assert_eq!((p.x, p.y), (0.0, 1.0));
        }
        let p = from_polar(HyperbolicPolar { eta: 1.0, alpha: 0.0 }).unwrap();
        assert!((p.x - 1.0_f64.tanh()).abs() < 1e-15);
        assert!((p.y - 1.0 / 1.0_f64.cosh()).abs() < 1e-15);
        // left half-plane, reachable with the extended angle
        let p = from_polar(HyperbolicPolar { eta: 1.0, alpha: PI }).unwrap();
        assert!((p.x + 1.0_f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn from_polar_overflow_near_ideal_point() {
        let r = from_polar(HyperbolicPolar {
            eta: 800.0,
            alpha: FRAC_PI_2,
        });
        assert!(matches!(r, Err(Error::Overflow(_))));
    }

    #[test]
    fn cosh_dist_origin_examples() {
        assert_eq!(cosh_dist_origin(pt(0.0, 1.0)).unwrap(), 1.0);
        assert_eq!(cosh_dist_origin(pt(1.0, 1.0)).unwrap(), 1.5);
        for a in [0.5_f64, 1.0, 2.0] {
            let v = cosh_dist_origin(pt(a.tanh(), 1.0 / a.cosh())).unwrap();
            assert!((v - a.cosh()).abs() < 1e-12 * a.cosh());
        }
    }

    #[test]
    fn cosh_dist_origin_is_exact_on_rationals() {
        let p = CartesianPoint::new(Q::new(1, 1), Q::new(1, 1)).unwrap();
        assert_eq!(cosh_dist_origin(p).unwrap(), Q::new(3, 2));
        let p = CartesianPoint::new(Q::new(3, 5), Q::new(4, 5)).unwrap();
        // (9/25 + 16/25 + 1) / (8/5) = 5/4
        assert_eq!(cosh_dist_origin(p).unwrap(), Q::new(5, 4));
    }

    #[test]
    fn pythagoras_examples() {
        assert!((pythagoras(0.0_f64, 1.3).unwrap() - 1.3).abs() < 1e-14);
        let expected = (1.0_f64.cosh().powi(2)).acosh();
        assert!((pythagoras(1.0_f64, 1.0).unwrap() - expected).abs() < 1e-15);
        assert!((pythagoras(1.0_f64, 1.0).unwrap() - 1.513374).abs() < 1e-6);
        assert!(pythagoras(-0.1, 1.0).is_err());
    }

    #[test]
    fn carnot_examples() {
        let (a, b) = (0.8_f64, 1.7);
        let right = carnot(a, b, 0.4 + FRAC_PI_2, 0.4).unwrap();
        assert!((right - pythagoras(a, b).unwrap()).abs() < 1e-12);
        assert!(carnot(a, a, 0.3, 0.3).unwrap().abs() < 1e-7);
        let straight = carnot(a, b, PI, 0.0).unwrap();
        assert!((straight - (a + b)).abs() < 1e-12);
    }

    #[test]
    fn disk_map_examples() {
        let o = halfplane_to_disk(pt(0.0, 1.0));
        assert_eq!((o.u, o.v), (0.0, 0.0));
        let b = halfplane_to_disk(CartesianPoint { x: 1.0, y: 0.0 });
        assert_eq!((b.u, b.v), (1.0, 0.0));
        let back = disk_to_halfplane(DiskPoint { u: 0.0, v: 0.0 }).unwrap();
        assert_eq!((back.x, back.y), (0.0, 1.0));
        for v in [0.1_f64, 0.5, 0.9] {
            let p = disk_to_halfplane(DiskPoint { u: 0.0, v }).unwrap();
            assert!(p.x.abs() < 1e-15);
            assert!((p.y - (1.0 + v) / (1.0 - v)).abs() < 1e-13);
        }
        assert!(disk_to_halfplane(DiskPoint { u: 0.6, v: 0.8 }).is_err());
    }

    #[test]
    fn disk_maps_are_exact_inverses_on_rationals() {
        let p = CartesianPoint::new(Q::new(-7, 3), Q::new(2, 9)).unwrap();
        let d = halfplane_to_disk(p);
        assert!(d.norm_sq() < Q::new(1, 1));
        assert_eq!(disk_to_halfplane(d).unwrap(), p);
    }

    #[test]
    fn cayley_map_sends_origin_to_center_and_preserves_interior() {
        let o = to_disk(pt(0.0, 1.0), DiskMap::Cayley);
        assert_eq!((o.u, o.v), (0.0, 0.0));
        let d = to_disk(pt(3.0, 0.2), DiskMap::Cayley);
        assert!(d.norm_sq() < 1.0);
        let s = to_disk(pt(3.0, 0.2), DiskMap::Standard);
        assert!((d.norm_sq() - s.norm_sq()).abs() < 1e-15);
    }

    fn halfplane_point() -> impl Strategy<Value = CartesianPoint<f64>> {
        (-5.0..5.0f64, -4.0..3.0f64).prop_map(|(x, ly)| CartesianPoint { x, y: ly.exp() })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn polar_round_trip(p in halfplane_point()) {
            let q = from_polar(to_polar(p).unwrap()).unwrap();
            prop_assert!((q.x - p.x).abs() <= 1e-12 * (1.0 + p.x.abs()));
            prop_assert!((q.y - p.y).abs() <= 1e-12 * (1.0 + p.y.abs()));
        }

        #[test]
        fn polar_cosh_matches_formula(p in halfplane_point()) {
            let q = to_polar(p).unwrap();
            let ch = cosh_dist_origin(p).unwrap();
            prop_assert!((q.eta.cosh() - ch).abs() <= 1e-12 * ch);
            prop_assert!(ch >= 1.0);
        }

        #[test]
        fn disk_round_trip(p in halfplane_point()) {
            let d = halfplane_to_disk(p);
            prop_assert!(d.norm_sq() < 1.0);
            let q = disk_to_halfplane(d).unwrap();
            prop_assert!((q.x - p.x).abs() <= 1e-12 * (1.0 + p.x.abs()));
            prop_assert!((q.y - p.y).abs() <= 1e-12 * (1.0 + p.y.abs()));
        }

        #[test]
        fn distance_survives_disk_round_trip(p in halfplane_point()) {
            let q = disk_to_halfplane(halfplane_to_disk(p)).unwrap();
            let (a, b) = (cosh_dist_origin(p).unwrap(), cosh_dist_origin(q).unwrap());
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }

        #[test]
        fn pythagoras_symmetric(a in 0.0..5.0f64, b in 0.0..5.0f64) {
            let (x, y) = (pythagoras(a, b).unwrap(), pythagoras(b, a).unwrap());
            prop_assert_eq!(x, y);
            prop_assert!(x >= a.max(b) - 1e-12);
        }

        #[test]
        fn carnot_reduces_to_pythagoras(a in 0.0..4.0f64, b in 0.0..4.0f64, base in -3.0..3.0f64) {
            let c = carnot(a, b, base + FRAC_PI_2, base).unwrap();
            let p = pythagoras(a, b).unwrap();
            prop_assert!((c - p).abs() <= 1e-12 * (1.0 + p));
        }
    }
}
