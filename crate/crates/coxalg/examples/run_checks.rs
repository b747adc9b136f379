//! Run a few registry checks from library code and print their JSON reports.

use coxalg::checks::{run_all, RunConfig};

fn main() {
    let config = RunConfig::parse(
        r#"{"seed": 7, "checks": ["gars-sq", "chain-eval-i", {"id": "hurwitz-pair", "n": 20}]}"#,
    )
    .expect("valid config");
    let summary = run_all(&config).expect("registered checks");
    for r in &summary.reports {
        println!("{}", r.to_json());
    }
    println!("{}/{} passed", summary.passed, summary.total);
}
