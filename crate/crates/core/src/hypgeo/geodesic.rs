use serde::{Deserialize, Serialize};

use super::{halfplane_to_disk, CartesianPoint, DiskPoint};
use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

/// Image in the disk of the half-circle geodesic with center `(x0, 0)` and
/// radius `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeodesicImage<T> {
    /// Circular arc orthogonal to the unit circle.
    Circle { center: DiskPoint<T>, radius_sq: T },
    /// Diameter of the disk, given by its two boundary endpoints. Occurs when
    /// `x0^2 - r^2 + 1 = 0`, i.e. the half-circle passes through `O`.
    Line { from: DiskPoint<T>, to: DiskPoint<T> },
}

impl<T: Real> GeodesicImage<T> {
    pub fn radius(&self) -> Option<T> {
        match self {
            GeodesicImage::Circle { radius_sq, .. } => Some(radius_sq.sqrt()),
            GeodesicImage::Line { .. } => None,
        }
    }

    /// Euclidean distance of `q` from the image curve (circle or line).
    pub fn deviation(&self, q: DiskPoint<T>) -> T {
        match self {
            GeodesicImage::Circle { center, radius_sq } => {
                let du = q.u - center.u;
                let dv = q.v - center.v;
                ((du * du + dv * dv).sqrt() - radius_sq.sqrt()).abs()
            }
            GeodesicImage::Line { from, to } => {
                let (eu, ev) = (to.u - from.u, to.v - from.v);
                let len = (eu * eu + ev * ev).sqrt();
                ((q.u - from.u) * ev - (q.v - from.v) * eu).abs() / len
            }
        }
    }
}

pub fn geodesic_image<T: Field>(x0: T, r: T) -> Result<GeodesicImage<T>> {
    if r <= T::zero() {
        return Err(Error::Domain(format!("geodesic radius must be positive, got {r:?}")));
    }
    // the image circle has center (2 x0 / s, (s - 2) / s) and radius 2r / |s|
    let s = x0 * x0 - r * r + T::one();
    if s == T::zero() {
        let end = |x| halfplane_to_disk(CartesianPoint { x, y: T::zero() });
        return Ok(GeodesicImage::Line {
            from: end(x0 - r),
            to: end(x0 + r),
        });
    }
    let two = T::int(2);
    Ok(GeodesicImage::Circle {
        center: DiskPoint {
            u: two * x0 / s,
            v: (s - two) / s,
        },
        radius_sq: two * two * r * r / (s * s),
    })
}

/// `n` interior points of the half-circle, evenly spaced in angle.
pub fn sample_geodesic<T: Real>(x0: T, r: T, n: usize) -> Vec<CartesianPoint<T>> {
    (1..=n)
        .map(|i| {
            let theta = T::PI() * T::from_usize(i).unwrap() / T::from_usize(n + 1).unwrap();
            CartesianPoint {
                x: x0 + r * theta.cos(),
                y: r * theta.sin(),
            }
        })
        .collect()
}
