//! Curve tables for `analyze` and `splinter`.

use hypcascade::analytics::{
    mean_cosh_all_deviating, mean_cosh_cm, mean_cosh_cm_derivative, mean_cosh_splinter, ode_rhs, time_grid,
    RateSpeed, SplinterLaw,
};

use crate::CliError;

/// A CSV table: optional `#` comment lines, a header, rows of floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Floats use Rust's shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn analyze_table(c: f64, lambda: f64, t_max: f64, dt: f64) -> Result<Table, CliError> {
    let rs = RateSpeed::new(c, lambda)?;
    let grid = time_grid(t_max, dt)?;
    let mut comments = vec![format!("c = {c:?}, lambda = {lambda:?}")];
    if rs.near_3c() {
        comments.push("lambda is within the 3c window; mean_cosh_cm uses the limit form".into());
    }
    let rows = grid
        .iter()
        .map(|&t| {
            vec![
                t,
                mean_cosh_cm(&rs, t),
                mean_cosh_cm_derivative(&rs, t),
                ode_rhs(&rs, t),
                mean_cosh_all_deviating(&rs, t),
            ]
        })
        .collect();
    Ok(Table {
        comments,
        header: ["t", "mean_cosh_cm", "derivative", "ode_rhs", "mean_cosh_all_deviating"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

pub fn splinter_table(k: usize, c: f64, lambda: f64, t_max: f64, dt: f64) -> Result<Table, CliError> {
    let law = SplinterLaw::new(k, c, lambda)?;
    let grid = time_grid(t_max, dt)?;
    let rows = grid
        .iter()
        .map(|&t| Ok(vec![t, mean_cosh_splinter(&law, t)?]))
        .collect::<Result<Vec<_>, hypcascade::Error>>()?;
    Ok(Table {
        comments: vec![format!("k = {k}, c = {c:?}, lambda = {lambda:?}")],
        header: vec!["t".into(), format!("mean_cosh_splinter_{k}")],
        rows,
    })
}
