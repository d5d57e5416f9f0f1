//! Trajectory files: CSV with full-precision floats and a JSON variant.
//!
//! CSV layout: header `t,<coordinate names>` in the frozen ordering,
//! comma separated, `.` decimal point, LF line endings. Floats print
//! with 17 significant digits so a write/read round trip is exact.

use std::fmt::Write as _;
use std::io::Write as _;

use chiral_core::dynamics::Trajectory;

use crate::CliError;

/// 17 significant digits; enough to reproduce any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn trajectory_csv(names: &[&str], times: &[f64], states: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push('t');
    for n in names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for (t, state) in times.iter().zip(states) {
        let _ = write!(out, "{}", fmt_f64(*t));
        for v in state {
            let _ = write!(out, ",{}", fmt_f64(*v));
        }
        out.push('\n');
    }
    out
}

pub fn write_trajectory_csv(path: &str, traj: &Trajectory) -> Result<(), CliError> {
    let body = trajectory_csv(traj.formulation.coord_names(), &traj.times, &traj.states);
    write_file(path, body.as_bytes())
}

pub fn trajectory_json(traj: &Trajectory) -> String {
    let value = serde_json::json!({
        "formulation": crate::config::formulation_name(traj.formulation),
        "lambda": traj.params.lambda,
        "mass": traj.params.mass,
        "coords": traj.formulation.coord_names(),
        "times": traj.times,
        "states": traj.states,
    });
    serde_json::to_string_pretty(&value).expect("serializable by construction")
}

pub fn write_file(path: &str, bytes: &[u8]) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::usage(format!("out: cannot create {path}: {e}")))?;
    f.write_all(bytes)
        .map_err(|e| CliError::numeric(format!("out: write to {path} failed: {e}")))
}

/// A parsed trajectory file: column names (without `t`), times, rows.
pub struct TableData {
    pub columns: Vec<String>,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl TableData {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

pub fn read_trajectory_csv(path: &str) -> Result<TableData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("input: cannot read {path}: {e}")))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::usage(format!("input: {path} is empty")))?;
    let mut fields = header.split(',');
    if fields.next() != Some("t") {
        return Err(CliError::usage(format!(
            "input: {path} first column must be `t`"
        )));
    }
    let columns: Vec<String> = fields.map(|s| s.trim().to_string()).collect();
    let mut times = Vec::new();
    let mut states = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(columns.len() + 1);
        for field in line.split(',') {
            let v: f64 = field.trim().parse().map_err(|e| {
                CliError::usage(format!(
                    "input: {path} line {}: bad number {field:?}: {e}",
                    lineno + 2
                ))
            })?;
            row.push(v);
        }
        if row.len() != columns.len() + 1 {
            return Err(CliError::usage(format!(
                "input: {path} line {}: expected {} fields, got {}",
                lineno + 2,
                columns.len() + 1,
                row.len()
            )));
        }
        times.push(row[0]);
        states.push(row[1..].to_vec());
    }
    if times.is_empty() {
        return Err(CliError::usage(format!("input: {path} has no samples")));
    }
    Ok(TableData {
        columns,
        times,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_exact() {
        let names = ["jr", "jx", "jy", "lsq"];
        let times = vec![0.0, 1e-3, 2e-3];
        let states = vec![
            vec![std::f64::consts::PI, -1.0 / 3.0, 1e-17, 2.0],
            vec![0.1, 0.2, 0.3, 0.4],
            vec![-5.5, 6.25, f64::MIN_POSITIVE, 1e300],
        ];
        let csv = trajectory_csv(&names, &times, &states);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        std::fs::write(&path, csv).unwrap();
        let table = read_trajectory_csv(path.to_str().unwrap()).unwrap();
        assert_eq!(table.columns, names);
        for (a, b) in table.times.iter().zip(&times) {
            assert_eq!(a, b);
        }
        for (row, expect) in table.states.iter().zip(&states) {
            for (a, b) in row.iter().zip(expect) {
                assert_eq!(a, b, "round trip must be bit exact");
            }
        }
    }
}
