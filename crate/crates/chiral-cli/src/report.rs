//! Verification report output: one JSON object per line for machines,
//! then a summary table for people.

use chiral_core::verify::CheckResult;

pub fn json_line(r: &CheckResult) -> String {
    serde_json::json!({
        "name": r.name,
        "passed": r.passed,
        "residual": r.residual,
        "tolerance": r.tolerance,
        "n_samples": r.n_samples,
        "notes": r.notes,
        "control": r.control,
    })
    .to_string()
}

pub fn summary_table(results: &[CheckResult]) -> String {
    let name_w = results
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(5);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<name_w$}  {:>10}  {:>9}  {:>7}  status\n",
        "check", "residual", "tol", "samples"
    ));
    for r in results {
        let status = match (r.control, r.passed) {
            (false, true) => "pass",
            (false, false) => "FAIL",
            (true, false) => "expected-fail (control)",
            (true, true) => "UNEXPECTED PASS (control)",
        };
        out.push_str(&format!(
            "{:<name_w$}  {:>10.3e}  {:>9.1e}  {:>7}  {}\n",
            r.name, r.residual, r.tolerance, r.n_samples, status
        ));
    }
    let unexpected = results.iter().filter(|r| !r.as_expected()).count();
    let controls = results.iter().filter(|r| r.control).count();
    out.push_str(&format!(
        "{} checks ({} negative controls), {} unexpected\n",
        results.len(),
        controls,
        unexpected
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(name: &str, passed: bool, control: bool) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed,
            residual: if passed { 1e-12 } else { 2.5 },
            tolerance: 1e-9,
            n_samples: 100,
            notes: "notes".into(),
            control,
        }
    }

    #[test]
    fn json_lines_parse_back() {
        let line = json_line(&sample("alpha", true, false));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["name"], "alpha");
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn table_marks_controls() {
        let t = summary_table(&[sample("good", true, false), sample("ctrl", false, true)]);
        assert!(t.contains("expected-fail"));
        assert!(t.contains("0 unexpected"));
    }
}
