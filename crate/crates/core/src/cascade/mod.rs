//! The branching motion itself.
//!
//! A unit-mass particle leaves `O` along the main geodesic at hyperbolic
//! speed `c`. At each event of a rate-`lambda` Poisson process the currently
//! deviating particle splits in two halves: one keeps its geodesic, the other
//! turns onto the geodesic orthogonal to the one joining `O` with the split
//! point. Splinter `k` is the piece that deviated at events `1..=k` and then
//! went straight; its distance from `O` obeys
//!
//! ```text
//! cosh eta_k(t) = prod_{j=1..k} cosh c(S_j - S_{j-1}) * cosh c(t - S_k)
//! ```
//!
//! Positions are tracked independently through isometry frames so that the
//! product formula can be cross-checked against the geometry.

mod trajectory;

pub use trajectory::{sample_trajectories, Trajectory};

use rand::Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeo::{frame_translate, frame_turn_orthogonal, radial_frame, Isometry, TurnSide};
use crate::rng::{replication_stream, Stream};
use crate::scalar::{ln_cosh, log_add_exp, CompensatedSum};

/// Above this value of `c * horizon` distances are accumulated as logarithms
/// and frames are not tracked.
pub const LOG_SCALE_THRESHOLD: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionPolicy {
    /// Fair coin at every choice, including the root's initial heading.
    #[default]
    Random,
    /// Every splinter runs clockwise along its half-circle geodesic.
    Clockwise,
    Counterclockwise,
    /// Clockwise for even generations (root included), counterclockwise for odd ones.
    Alternating,
}

impl DirectionPolicy {
    pub const ALL: [DirectionPolicy; 4] = [
        DirectionPolicy::Random,
        DirectionPolicy::Clockwise,
        DirectionPolicy::Counterclockwise,
        DirectionPolicy::Alternating,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            DirectionPolicy::Random => "random",
            DirectionPolicy::Clockwise => "cw",
            DirectionPolicy::Counterclockwise => "ccw",
            DirectionPolicy::Alternating => "alt",
        }
    }
}

impl std::str::FromStr for DirectionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "cw" | "clockwise" => Ok(Self::Clockwise),
            "ccw" | "counterclockwise" => Ok(Self::Counterclockwise),
            "alt" | "alternating" => Ok(Self::Alternating),
            other => Err(Error::InvalidParams(format!("unknown direction policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Hyperbolic speed.
    pub c: f64,
    /// Poisson rate of splits.
    pub lambda: f64,
    pub horizon: f64,
    pub seed: u64,
    pub reps: u64,
    pub direction_policy: DirectionPolicy,
    /// Time step for trajectory sampling.
    pub path_dt: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            c: 1.0,
            lambda: 1.0,
            horizon: 1.0,
            seed: 0,
            reps: 1000,
            direction_policy: DirectionPolicy::Random,
            path_dt: 0.01,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParams(what.to_string()));
        if !(self.c.is_finite() && self.c > 0.0) {
            return bad("speed c must be finite and > 0");
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return bad("rate lambda must be finite and >= 0");
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return bad("horizon t must be finite and > 0");
        }
        if self.reps < 1 {
            return bad("reps must be >= 1");
        }
        if !(self.path_dt.is_finite() && self.path_dt > 0.0) {
            return bad("path_dt must be finite and > 0");
        }
        Ok(())
    }

    pub fn log_scale(&self) -> bool {
        self.c * self.horizon > LOG_SCALE_THRESHOLD
    }
}

/// Split times in `(0, horizon)`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EventTimes {
    pub times: Vec<f64>,
}

impl EventTimes {
    pub fn new(times: Vec<f64>, horizon: f64) -> Result<Self> {
        let increasing = times.windows(2).all(|w| w[0] < w[1]);
        let inside = times.iter().all(|&s| s > 0.0 && s < horizon);
        if increasing && inside {
            Ok(Self { times })
        } else {
            Err(Error::Domain("event times must be strictly increasing inside (0, horizon)".into()))
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `S_j` with `S_0 = 0`.
    pub fn at(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.times[j - 1]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplinterRecord {
    /// Number of deviations undergone.
    pub k: usize,
    pub mass: f64,
    /// Time at which the splinter entered its final geodesic, `S_k`.
    pub birth_time: f64,
    pub cosh_eta: f64,
    pub ln_cosh_eta: f64,
    /// Position-and-heading frame at the horizon; absent on log-scale runs.
    pub frame: Option<Isometry<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeRun {
    pub params: ModelParams,
    pub events: EventTimes,
    pub splinters: Vec<SplinterRecord>,
    pub cosh_eta_cm: f64,
    pub ln_cosh_eta_cm: f64,
    /// Frame of the deviating lineage right after each split (index 0 is the
    /// launch frame). Empty on log-scale runs.
    pub lineage: Vec<Isometry<f64>>,
}

impl CascadeRun {
    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    /// The splinter that deviated at every event.
    pub fn terminal(&self) -> &SplinterRecord {
        self.splinters.last().expect("a run always has at least one splinter")
    }

    /// `cosh eta_k * 1{N >= k}`.
    pub fn defective_cosh_eta(&self, k: usize) -> f64 {
        self.splinters.get(k).map_or(0.0, |s| s.cosh_eta)
    }
}

/// Poisson arrivals on `(0, horizon)` from exponential gaps.
pub fn sample_event_times<R: Rng + ?Sized>(lambda: f64, horizon: f64, rng: &mut R) -> EventTimes {
    let mut times = Vec::new();
    if lambda <= 0.0 {
        return EventTimes { times };
    }
    let gap = Exp::new(lambda).expect("positive rate");
    let mut s = 0.0;
    loop {
        s += gap.sample(rng);
        if s >= horizon {
            break;
        }
        // an exponential gap can round to zero next to a large s
        if times.last().is_some_and(|&last| s <= last) {
            continue;
        }
        times.push(s);
    }
    EventTimes { times }
}

/// `cosh eta_k(t)` for `0 <= k <= n`.
pub fn cosh_eta_splinter(times: &EventTimes, k: usize, t: f64, c: f64) -> Result<f64> {
    check_splinter_index(times, k)?;
    if c * t > LOG_SCALE_THRESHOLD {
        return Ok(ln_cosh_eta_splinter(times, k, t, c)?.exp());
    }
    let mut prod = 1.0;
    for j in 1..=k {
        prod *= (c * (times.at(j) - times.at(j - 1))).cosh();
    }
    Ok(prod * (c * (t - times.at(k))).cosh())
}

pub fn ln_cosh_eta_splinter(times: &EventTimes, k: usize, t: f64, c: f64) -> Result<f64> {
    check_splinter_index(times, k)?;
    let mut acc = CompensatedSum::new();
    for j in 1..=k {
        acc.add(ln_cosh(c * (times.at(j) - times.at(j - 1))));
    }
    acc.add(ln_cosh(c * (t - times.at(k))));
    Ok(acc.value())
}

fn check_splinter_index(times: &EventTimes, k: usize) -> Result<()> {
    if k > times.len() {
        return Err(Error::OutOfRange(format!(
            "splinter index {k} exceeds event count {}",
            times.len()
        )));
    }
    Ok(())
}

/// Mass of splinter `k` when `n` splits occurred.
pub fn splinter_mass(k: usize, n: usize) -> f64 {
    let e = if k < n { k + 1 } else { n };
    (-(e as f64)).exp2()
}

/// Mass-weighted cosh-distance of the cloud, summed in ascending `k`.
pub fn cosh_eta_cm(run: &CascadeRun) -> f64 {
    if run.params.log_scale() {
        ln_cosh_eta_cm(&run.splinters).exp()
    } else {
        run.splinters
            .iter()
            .map(|s| s.mass * s.cosh_eta)
            .collect::<CompensatedSum<f64>>()
            .value()
    }
}

fn ln_cosh_eta_cm(splinters: &[SplinterRecord]) -> f64 {
    splinters
        .iter()
        .map(|s| s.mass.ln() + s.ln_cosh_eta)
        .fold(f64::NEG_INFINITY, log_add_exp)
}

/// One realization of the cascade. Event times are drawn first, then any
/// direction coins, so runs that differ only in a deterministic policy share
/// their event times.
pub fn build_cascade(params: &ModelParams, rng: &mut Stream) -> CascadeRun {
    let events = sample_event_times(params.lambda, params.horizon, rng);
    build_cascade_with_events(params, events, rng)
}

/// [`build_cascade`] on the stream of replication `rep`.
pub fn build_replication(params: &ModelParams, rep: u64) -> CascadeRun {
    build_cascade(params, &mut replication_stream(params.seed, rep))
}

pub fn build_cascade_with_events<R: Rng + ?Sized>(
    params: &ModelParams,
    events: EventTimes,
    rng: &mut R,
) -> CascadeRun {
    let (c, t) = (params.c, params.horizon);
    let n = events.len();
    let log_scale = params.log_scale();

    let lineage = if log_scale {
        Vec::new()
    } else {
        lineage_frames(&events, c, params.direction_policy, rng)
    };

    let splinters: Vec<SplinterRecord> = (0..=n)
        .map(|k| {
            let ln_cosh_eta = ln_cosh_eta_splinter(&events, k, t, c).expect("k <= n");
            let cosh_eta = if log_scale {
                ln_cosh_eta.exp()
            } else {
                cosh_eta_splinter(&events, k, t, c).expect("k <= n")
            };
            let frame = lineage
                .get(k)
                .map(|d| frame_translate(d, c * (t - events.at(k))));
            SplinterRecord {
                k,
                mass: splinter_mass(k, n),
                birth_time: events.at(k),
                cosh_eta,
                ln_cosh_eta,
                frame,
            }
        })
        .collect();

    let mut run = CascadeRun {
        params: *params,
        events,
        splinters,
        cosh_eta_cm: 0.0,
        ln_cosh_eta_cm: 0.0,
        lineage,
    };
    run.ln_cosh_eta_cm = ln_cosh_eta_cm(&run.splinters);
    run.cosh_eta_cm = cosh_eta_cm(&run);
    run
}

fn lineage_frames<R: Rng + ?Sized>(
    events: &EventTimes,
    c: f64,
    policy: DirectionPolicy,
    rng: &mut R,
) -> Vec<Isometry<f64>> {
    let mut frames = Vec::with_capacity(events.len() + 1);
    let forward = Isometry::identity();
    let backward = Isometry::rotation(std::f64::consts::PI);
    frames.push(choose(policy, 0, forward, backward, rng));
    for j in 1..=events.len() {
        let prev = frames[j - 1];
        let at_split = frame_translate(&prev, c * (events.at(j) - events.at(j - 1)));
        // orthogonal to the geodesic through O and the split point
        let radial = radial_frame(at_split.base_point()).unwrap_or(at_split);
        let left = frame_turn_orthogonal(&radial, TurnSide::Left);
        let right = frame_turn_orthogonal(&radial, TurnSide::Right);
        frames.push(choose(policy, j, left, right, rng));
    }
    frames
}

// Pick between two opposite headings. Clockwise travel along a half-circle
// centered on the real axis is travel with positive Euclidean x-velocity.
fn choose<R: Rng + ?Sized>(
    policy: DirectionPolicy,
    generation: usize,
    a: Isometry<f64>,
    b: Isometry<f64>,
    rng: &mut R,
) -> Isometry<f64> {
    let clockwise = match policy {
        DirectionPolicy::Random => return if rng.random_bool(0.5) { a } else { b },
        DirectionPolicy::Clockwise => true,
        DirectionPolicy::Counterclockwise => false,
        DirectionPolicy::Alternating => generation % 2 == 0,
    };
    let (vx, vy) = a.forward_velocity();
    let a_is_cw = vx > 0.0 || (vx == 0.0 && vy > 0.0);
    if a_is_cw == clockwise {
        a
    } else {
        b
    }
}

/// Runs all `params.reps` replications (in parallel) and maps each run;
/// results come back in replication order.
pub fn run_replications<R, F>(params: &ModelParams, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&CascadeRun) -> R + Sync,
{
    (0..params.reps)
        .into_par_iter()
        .map(|rep| f(&build_replication(params, rep)))
        .collect()
}
