use rand::Rng;
use rayon::prelude::*;

use super::{CheckReport, SuiteOptions};
use crate::cascade::{build_replication, DirectionPolicy, ModelParams};
use crate::error::Result;
use crate::hypgeo::{
    carnot, cosh_dist_origin, disk_to_halfplane, from_polar, geodesic_image, halfplane_to_disk, pythagoras,
    to_polar, CartesianPoint, GeodesicImage,
};
use crate::rng::replication_stream;

const SAMPLES: u64 = 10_000;

/// Round trips, Carnot at a right angle, geodesic images, and the
/// frame-vs-product cross-check over random cascades.
pub fn check_geometry(o: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let p = 1.0 + o.perturb;
    let mut rng = replication_stream(o.seed, u64::MAX);

    let (mut polar, mut disk): (f64, f64) = (0.0, 0.0);
    for _ in 0..SAMPLES {
        let q: CartesianPoint<f64> = CartesianPoint {
            x: rng.random_range(-3.0..3.0),
            y: rng.random_range(0.1..5.0),
        };
        let scale = 1.0 + q.x.abs() + q.y;
        let back = from_polar(to_polar(q)?)?;
        polar = polar.max(((back.x * p - q.x).abs() + (back.y - q.y).abs()) / scale);
        let back = disk_to_halfplane(halfplane_to_disk(q))?;
        disk = disk.max(((back.x * p - q.x).abs() + (back.y - q.y).abs()) / scale);
    }

    let mut right_angle: f64 = 0.0;
    for _ in 0..SAMPLES {
        let (a, b): (f64, f64) = (rng.random_range(0.0..4.0), rng.random_range(0.0..4.0));
        let alpha = rng.random_range(-3.0..3.0);
        let h = pythagoras(a, b)?;
        let via = carnot(a, b, alpha + std::f64::consts::FRAC_PI_2, alpha)? * p;
        right_angle = right_angle.max((via - h).abs() / h.max(1.0));
    }

    let mut orthogonal: f64 = 0.0;
    for _ in 0..SAMPLES {
        let (x0, r): (f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(0.1..3.0));
        if let GeodesicImage::Circle { center, radius_sq } = geodesic_image(x0, r)? {
            let res = (center.norm_sq() * p - radius_sq - 1.0).abs() / (1.0 + radius_sq);
            orthogonal = orthogonal.max(res);
        }
    }

    let runs = o.geometry_runs;
    let (frames, mass) = (0..runs)
        .into_par_iter()
        .map(|rep| {
            // parameters drawn per run from the run's own stream
            let mut draw = replication_stream(o.seed ^ 0x9e37_79b9_7f4a_7c15, rep);
            let params = ModelParams {
                c: draw.random_range(0.2..2.0),
                lambda: draw.random_range(0.0..4.0),
                horizon: draw.random_range(0.1..3.0),
                seed: o.seed,
                reps: runs,
                direction_policy: DirectionPolicy::ALL[draw.random_range(0..4)],
                path_dt: 0.01,
            };
            let run = build_replication(&params, rep);
            let frame = run
                .splinters
                .iter()
                .map(|s| {
                    let base = s.frame.expect("short horizon keeps frames").base_point();
                    let ch = cosh_dist_origin(base).unwrap_or(f64::INFINITY) * p;
                    (ch - s.cosh_eta).abs() / s.cosh_eta
                })
                .fold(0.0, f64::max);
            let total: f64 = run.splinters.iter().map(|s| s.mass).sum::<f64>() * p;
            (frame, (total - 1.0).abs())
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));

    Ok(vec![
        CheckReport::new("geometry.polar_round_trip", polar, 1e-12, "from_polar(to_polar(p)) vs p, relative to 1 + |x| + y"),
        CheckReport::new("geometry.disk_round_trip", disk, 1e-12, "disk_to_halfplane(halfplane_to_disk(p)) vs p"),
        CheckReport::new("geometry.carnot_right_angle", right_angle, 1e-12, "Carnot at pi/2 vs Pythagoras"),
        CheckReport::new(
            "geometry.geodesic_orthogonality",
            orthogonal,
            1e-10,
            "|center|^2 - radius^2 - 1, relative to 1 + radius^2",
        ),
        CheckReport::new(
            "geometry.frames",
            frames,
            1e-9,
            format!("frame base point vs product formula over {runs} cascades (relative)"),
        ),
        CheckReport::new("geometry.mass", mass, 1e-15, format!("|sum of masses - 1| over {runs} cascades")),
    ])
}
