//! Full pipeline on one coefficient table, printed as the JSON report the
//! `analyze` subcommand writes.

use qutrit_distill::report::{analyze, AnalysisReport};
use qutrit_distill::simplex::CoefficientTable;

fn main() {
    let table: CoefficientTable = serde_json::from_str(r#"{"d": 3, "c": [[0.5, 0.1, 0.05], [0.1, 0.05, 0.05], [0.05, 0.05, 0.05]]}"#).unwrap();
    let report = analyze(&table, None).unwrap();
    let json = report.to_json();
    print!("{json}");
    assert_eq!(AnalysisReport::from_json(&json).unwrap(), report);
}
