use serde::{Deserialize, Serialize};

use super::{to_polar, CartesianPoint};
use crate::error::Result;
use crate::scalar::Real;

/// Orientation-preserving isometry `z -> (a z + b) / (c z + d)` with
/// `ad - bc = 1`.
///
/// Used as a moving frame: the base point is the image of `O = i` and the
/// forward axis is the image of the `+x` tangent direction at `O`. The
/// identity frame therefore heads along the unit half-circle towards `+x`.
/// `M` and `-M` act identically; [`Isometry::approx_eq`] compares modulo sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Side of an orthogonal turn. `Left` rotates the heading by `+pi/2`
/// (counterclockwise in the tangent plane).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TurnSide {
    Left,
    Right,
}

impl TurnSide {
    pub fn sign<T: Real>(self) -> T {
        match self {
            TurnSide::Left => T::one(),
            TurnSide::Right => -T::one(),
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            TurnSide::Left => TurnSide::Right,
            TurnSide::Right => TurnSide::Left,
        }
    }
}

impl<T: Real> Isometry<T> {
    pub fn identity() -> Self {
        Self {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    /// Translation by hyperbolic distance `dist` along the unit half-circle
    /// (fixed points `-1` and `+1`).
    pub fn translation(dist: T) -> Self {
        let half = dist / T::int(2);
        let (sh, ch) = (half.sinh(), half.cosh());
        Self {
            a: ch,
            b: sh,
            c: sh,
            d: ch,
        }
    }

    /// Rotation about `O` turning tangent vectors at `O` by `angle`.
    pub fn rotation(angle: T) -> Self {
        let (s, c) = (angle / T::int(2)).sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    /// `self * rhs`: apply `rhs` first, then `self`. Renormalized to det 1.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
        .renormalized()
    }

    pub fn renormalized(self) -> Self {
        let s = self.det().sqrt().recip();
        Self {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, p: CartesianPoint<T>) -> CartesianPoint<T> {
        let re = self.c * p.x + self.d;
        let im = self.c * p.y;
        let den = re * re + im * im;
        CartesianPoint {
            x: ((self.a * p.x + self.b) * re + self.a * self.c * p.y * p.y) / den,
            y: p.y * self.det() / den,
        }
    }

    pub fn base_point(&self) -> CartesianPoint<T> {
        let den = self.c * self.c + self.d * self.d;
        CartesianPoint {
            x: (self.a * self.c + self.b * self.d) / den,
            y: den.recip(),
        }
    }

    /// Euclidean velocity of unit-speed motion along the forward axis, at
    /// the base point.
    pub fn forward_velocity(&self) -> (T, T) {
        let den = self.c * self.c + self.d * self.d;
        let den2 = den * den;
        (
            (self.d * self.d - self.c * self.c) / den2,
            -(self.c * self.d + self.c * self.d) / den2,
        )
    }

    /// Conjugation by the reflection `x -> -x`.
    pub fn mirror(&self) -> Self {
        Self {
            a: self.a,
            b: -self.b,
            c: -self.c,
            d: self.d,
        }
    }

    /// Entrywise comparison modulo the overall sign.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let same = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let flip = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        same.min(flip) <= tol
    }
}

/// Advance the frame by `distance` along its forward geodesic.
pub fn frame_translate<T: Real>(f: &Isometry<T>, distance: T) -> Isometry<T> {
    f.compose(&Isometry::translation(distance))
}

/// Rotate the forward axis by `±pi/2` about the base point.
pub fn frame_turn_orthogonal<T: Real>(f: &Isometry<T>, side: TurnSide) -> Isometry<T> {
    f.compose(&Isometry::rotation(side.sign::<T>() * T::FRAC_PI_2()))
}

/// Frame based at `p` whose forward axis points away from `O` along the
/// geodesic through `O` and `p`. At `p = O` this is the identity frame.
pub fn radial_frame<T: Real>(p: CartesianPoint<T>) -> Result<Isometry<T>> {
    let q = to_polar(p)?;
    Ok(Isometry::rotation(q.alpha).compose(&Isometry::translation(q.eta)))
}
