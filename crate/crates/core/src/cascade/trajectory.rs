use serde::{Deserialize, Serialize};

use super::CascadeRun;
use crate::error::{Error, Result};
use crate::hypgeo::{frame_translate, halfplane_to_disk, CartesianPoint, DiskPoint};

/// Sampled path of one splinter, from `O` at time 0 to its position at the
/// horizon. The first `own_start` points are shared with its ancestors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub k: usize,
    pub mass: f64,
    pub times: Vec<f64>,
    pub halfplane: Vec<CartesianPoint<f64>>,
    pub disk: Vec<DiskPoint<f64>>,
    /// Index of the point where the splinter leaves its parent (its birth).
    pub own_start: usize,
}

/// Polylines for every splinter of `run`, sampled every `path_dt` and at
/// each split time on the way.
pub fn sample_trajectories(run: &CascadeRun) -> Result<Vec<Trajectory>> {
    let p = &run.params;
    if !(p.path_dt > 0.0) {
        return Err(Error::InvalidParams("path_dt must be > 0".into()));
    }
    if run.lineage.len() != run.events.len() + 1 {
        return Err(Error::Unsupported(
            "run carries no frames (log-scale horizon); trajectories unavailable".into(),
        ));
    }
    let steps = (p.horizon / p.path_dt).ceil() as usize;
    let grid: Vec<f64> = (0..steps)
        .map(|i| i as f64 * p.path_dt)
        .chain(std::iter::once(p.horizon))
        .collect();

    let out = run
        .splinters
        .iter()
        .map(|s| {
            let k = s.k;
            let mut times: Vec<f64> = grid
                .iter()
                .copied()
                .chain(run.events.times[..k].iter().copied())
                .collect();
            times.sort_by(f64::total_cmp);
            times.dedup();
            let own_start = times.partition_point(|&tau| tau < run.events.at(k));
            let halfplane: Vec<CartesianPoint<f64>> = times
                .iter()
                .map(|&tau| {
                    // generation reached by time tau along this splinter's history
                    let j = run.events.times[..k].partition_point(|&e| e <= tau);
                    frame_translate(&run.lineage[j], p.c * (tau - run.events.at(j))).base_point()
                })
                .collect();
            let disk = halfplane.iter().map(|&q| halfplane_to_disk(q)).collect();
            Trajectory {
                k,
                mass: s.mass,
                times,
                halfplane,
                disk,
                own_start,
            }
        })
        .collect();
    Ok(out)
}
