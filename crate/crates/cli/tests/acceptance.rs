//! Acceptance criteria 1 to 11, run in order with one verdict line each.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use hypcascade::analytics::{
    closed_form_terms, laplace_mean_cosh_cm, limit_3c_terms, ln_mean_cosh_cm, mean_cosh_all_deviating, mean_cosh_cm,
    mean_cosh_cm_limit_3c, mean_cosh_cm_unguarded, mean_cosh_splinter, ExpTerm, LaplaceParams, RateSpeed,
    SplinterLaw,
};
use hypcascade::cascade::{build_replication, sample_trajectories, DirectionPolicy, ModelParams};
use hypcascade::verify::{
    check_geometry, check_gnk_system, check_initial_conditions, check_laplace, check_ode, check_remark_identity,
    check_splinter_law, compare, mc_mean_cosh_cm, mc_mean_cosh_splinter, mc_mean_cosh_terminal, CheckReport,
    SuiteOptions, MC_CASES,
};
use num_rational::Ratio;

type Q = Ratio<i64>;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn from_reports(reports: &[CheckReport], elapsed: Duration, budget: Option<Duration>) -> Self {
        let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        let worst = reports
            .iter()
            .map(|r| r.max_residual / r.tolerance)
            .fold(0.0, f64::max);
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let mut detail = format!(
            "{} checks, worst residual/tolerance {worst:.3e}, {:.2}s",
            reports.len(),
            elapsed.as_secs_f64()
        );
        if let Some(b) = budget {
            detail.push_str(&format!(" (budget {}s)", b.as_secs()));
        }
        if !failed.is_empty() {
            detail.push_str(&format!("; failed: {}", failed.join(", ")));
        }
        Self { pass: failed.is_empty() && in_time, detail }
    }
}

fn mc_params(c: f64, lambda: f64, t: f64) -> ModelParams {
    ModelParams {
        c,
        lambda,
        horizon: t,
        seed: 7,
        reps: 100_000,
        direction_policy: DirectionPolicy::Random,
        path_dt: 0.01,
    }
}

fn grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step).round() as usize;
    (0..=n).map(|i| from + step * i as f64).collect()
}

fn c1_closed_form_vs_simulation() -> Verdict {
    let start = Instant::now();
    let reports: Vec<CheckReport> = MC_CASES
        .iter()
        .map(|&(c, l, t)| {
            let est = mc_mean_cosh_cm(&mc_params(c, l, t)).unwrap();
            compare(format!("c={c},lambda={l},t={t}"), &est, mean_cosh_cm(&RateSpeed::new(c, l).unwrap(), t))
        })
        .collect();
    Verdict::from_reports(&reports, start.elapsed(), Some(Duration::from_secs(30)))
}

fn sum_at_zero(terms: &[ExpTerm<Q>]) -> (Q, Q) {
    let u0 = terms.iter().fold(Q::from(0), |a, x| a + x.coef);
    let du0 = terms.iter().fold(Q::from(0), |a, x| a + x.derivative().coef);
    (u0, du0)
}

fn ode_pairs() -> Vec<(f64, f64)> {
    [0.5, 1.0, 2.0]
        .iter()
        .flat_map(|&c| [0.5, 1.0, 2.0, 3.0, 5.0].map(move |l| (c, l)))
        .collect()
}

fn c2_cauchy_problem() -> Verdict {
    let start = Instant::now();
    // rational (c, lambda, R) with R^2 = lambda^2 + 16 c^2
    let mut exact = true;
    for (c, l, r) in [(3, 16, 20), (3, 5, 13), (2, 15, 17), (1, 0, 4)] {
        let (u0, du0) = sum_at_zero(&closed_form_terms(Q::from(c), Q::from(l), Q::from(r)));
        exact &= u0 == Q::from(1) && du0 == Q::from(0);
    }
    let pairs = ode_pairs();
    let t = grid(0.1, 5.0, 0.05);
    let mut reports = vec![check_initial_conditions(&pairs, 0.0)];
    for &(c, l) in &pairs {
        reports.push(check_ode(&RateSpeed::new(c, l).unwrap(), &t, 1e-3).unwrap());
    }
    let mut v = Verdict::from_reports(&reports, start.elapsed(), Some(Duration::from_secs(5)));
    v.pass &= exact && pairs.len() >= 12;
    v.detail = format!("rational u(0)=1, u'(0)=0: {exact}; {} pairs; {}", pairs.len(), v.detail);
    v
}

fn c3_remark_identity() -> Verdict {
    let start = Instant::now();
    let t = grid(0.1, 5.0, 0.05);
    let reports: Vec<CheckReport> = ode_pairs()
        .iter()
        .map(|&(c, l)| check_remark_identity(&RateSpeed::new(c, l).unwrap(), &t, 1e-3, 0.0))
        .collect();
    Verdict::from_reports(&reports, start.elapsed(), None)
}

fn c4_limit_3c() -> Verdict {
    let start = Instant::now();
    let mut continuity: f64 = 0.0;
    let mut ratio_dev: f64 = 0.0;
    for c in [0.5, 1.0, 2.0] {
        for t in grid(0.0, 5.0, 0.05) {
            let lim = mean_cosh_cm_limit_3c(c, t);
            for side in [1.0 + 1e-8, 1.0 - 1e-8] {
                let v = mean_cosh_cm_unguarded(&RateSpeed::new(c, 3.0 * c * side).unwrap(), t);
                continuity = continuity.max((v - lim).abs() / lim);
            }
        }
        let ln_u = ln_mean_cosh_cm(&RateSpeed::new(c, 3.0 * c).unwrap(), 20.0 / c);
        ratio_dev = ratio_dev.max(((ln_u - (5.0_f64 / 12.0).ln() - 20.0).exp() - 1.0).abs());
    }
    let (u0, _) = sum_at_zero(&limit_3c_terms(Q::from(1)));
    let (u0_c, _) = sum_at_zero(&limit_3c_terms(Q::new(7, 3)));
    let exact = u0 == Q::from(1) && u0_c == Q::from(1);
    let reports = [
        CheckReport::new("continuity", continuity, 1e-4, ""),
        CheckReport::new("ratio at ct=20", ratio_dev, 1e-3, ""),
    ];
    let mut v = Verdict::from_reports(&reports, start.elapsed(), None);
    v.pass &= exact;
    v.detail = format!(
        "continuity {continuity:.3e}, ratio deviation {ratio_dev:.3e}, rational limit at t=0 equals 1: {exact}; {}",
        v.detail
    );
    v
}

fn c5_laplace() -> Verdict {
    let start = Instant::now();
    let mut reports: Vec<CheckReport> = [(1.0, 1.0, 2.0), (1.0, 2.0, 3.0), (0.5, 1.0, 1.5)]
        .iter()
        .map(|&(c, l, mu)| check_laplace(&RateSpeed::new(c, l).unwrap(), mu, None).unwrap())
        .collect();
    let mut no_branch: f64 = 0.0;
    for (c, mu) in [(1.0_f64, 2.0_f64), (0.5, 1.5), (2.0, 2.5)] {
        let rs = RateSpeed::new(c, 0.0).unwrap();
        let v = laplace_mean_cosh_cm(&rs, &LaplaceParams::new(&rs, mu)).unwrap();
        let want = mu / (mu * mu - c * c);
        no_branch = no_branch.max((v - want).abs() / want);
    }
    reports.push(CheckReport::new("lambda=0", no_branch, 1e-10, ""));
    Verdict::from_reports(&reports, start.elapsed(), None)
}

fn c6_gnk_system() -> Verdict {
    let start = Instant::now();
    let t = grid(0.5, 3.0, 0.25);
    let reports: Vec<CheckReport> = [1.0, 0.7, 1.5]
        .iter()
        .map(|&c| check_gnk_system(3, c, &t).unwrap())
        .collect();
    Verdict::from_reports(&reports, start.elapsed(), Some(Duration::from_secs(60)))
}

fn c7_splinter_law() -> Verdict {
    let start = Instant::now();
    let mut reports = check_splinter_law(0.0).unwrap();
    let (c, l, t) = (1.0, 2.0, 1.5);
    for k in 1..=3 {
        let est = mc_mean_cosh_splinter(&mc_params(c, l, t), k).unwrap();
        let reference = mean_cosh_splinter(&SplinterLaw::new(k, c, l).unwrap(), t).unwrap();
        reports.push(compare(format!("mc k={k}"), &est, reference));
    }
    Verdict::from_reports(&reports, start.elapsed(), None)
}

fn c8_all_deviating() -> Verdict {
    let start = Instant::now();
    let mut reduction: f64 = 0.0;
    for c in [0.5, 1.0, 2.0] {
        for t in grid(0.0, 5.0, 0.25) {
            let v = mean_cosh_all_deviating(&RateSpeed::new(c, 0.0).unwrap(), t);
            reduction = reduction.max((v - (c * t).cosh()).abs() / (c * t).cosh());
        }
    }
    let est = mc_mean_cosh_terminal(&mc_params(1.0, 1.0, 1.0)).unwrap();
    let reports = [
        CheckReport::new("lambda=0", reduction, 1e-12, ""),
        compare("mc terminal", &est, mean_cosh_all_deviating(&RateSpeed::new(1.0, 1.0).unwrap(), 1.0)),
    ];
    Verdict::from_reports(&reports, start.elapsed(), None)
}

fn c9_geometry() -> Verdict {
    let start = Instant::now();
    let o = SuiteOptions { geometry_runs: 10_000, ..SuiteOptions::default() };
    Verdict::from_reports(&check_geometry(&o).unwrap(), start.elapsed(), None)
}

fn c10_determinism() -> Verdict {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let base = ["simulate", "--c", "1", "--lambda", "1", "--t", "1", "--reps", "1000", "--seed", "7"];
    let mut outputs = Vec::new();
    for (i, threads) in [None, None, Some("1"), Some("4")].into_iter().enumerate() {
        let path = dir.path().join(format!("run{i}.json"));
        let mut cmd = common::bin();
        if let Some(n) = threads {
            cmd.args(["--threads", n]);
        }
        let o = cmd.args(base).arg("--out").arg(&path).output().unwrap();
        assert!(o.status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    Verdict {
        pass: same,
        detail: format!(
            "4 archives (default x2, 1 thread, 4 threads), {} bytes each, identical: {same}; {:.2}s",
            outputs[0].len(),
            start.elapsed().as_secs_f64()
        ),
    }
}

fn c11_figures() -> Verdict {
    let start = Instant::now();
    // mirror symmetry on the path coordinates
    let mut mirror: f64 = 0.0;
    let mut inside = true;
    for (seed, lambda, t) in [(3, 2.0, 2.0), (11, 3.0, 3.0), (5, 1.0, 4.0)] {
        let params = |p| ModelParams {
            c: 1.0,
            lambda,
            horizon: t,
            seed,
            reps: 1,
            direction_policy: p,
            path_dt: 0.01,
        };
        let cw = sample_trajectories(&build_replication(&params(DirectionPolicy::Clockwise), 0)).unwrap();
        let ccw = sample_trajectories(&build_replication(&params(DirectionPolicy::Counterclockwise), 0)).unwrap();
        for (a, b) in cw.iter().zip(&ccw) {
            for (p, q) in a.halfplane.iter().zip(&b.halfplane) {
                mirror = mirror.max((p.x + q.x).abs()).max((p.y - q.y).abs());
            }
            for (p, q) in a.disk.iter().zip(&b.disk) {
                mirror = mirror.max((p.u + q.u).abs()).max((p.v - q.v).abs());
                inside &= p.u * p.u + p.v * p.v < 1.0;
            }
        }
    }
    // golden plots for all four policies, both models
    let dir = tempfile::tempdir().unwrap();
    let mut mismatched = Vec::new();
    let mut plots = 0;
    for (name, args) in common::golden_cases().into_iter().filter(|(n, _)| n.ends_with(".svg")) {
        plots += 1;
        let got = common::produce(dir.path(), &name, &args);
        if std::fs::read(common::golden_dir().join(&name)).ok().as_deref() != Some(got.as_slice()) {
            mismatched.push(name);
        }
    }
    let pass = mirror <= 1e-9 && inside && mismatched.is_empty() && plots == 8;
    Verdict {
        pass,
        detail: format!(
            "cw/ccw mirror residual {mirror:.3e} (tol 1e-9), disk points inside: {inside}, {plots} golden plots, mismatched: {mismatched:?}; {:.2}s",
            start.elapsed().as_secs_f64()
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("closed form vs simulation", c1_closed_form_vs_simulation),
        ("Cauchy problem", c2_cauchy_problem),
        ("forcing identity", c3_remark_identity),
        ("lambda = 3c limit", c4_limit_3c),
        ("Laplace identity", c5_laplace),
        ("G_{n,k} system", c6_gnk_system),
        ("splinter law", c7_splinter_law),
        ("always-deviating particle", c8_all_deviating),
        ("geometry suite", c9_geometry),
        ("determinism", c10_determinism),
        ("figure reproduction", c11_figures),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        let line = format!(
            "criterion {:>2} {:<26} {}  {}\n",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        // straight to stderr so the verdicts show without --nocapture
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        if !v.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
