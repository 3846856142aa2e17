//! A suite from JSON, run on several workers, reported as JSON in input order.
//!
//!     cargo run --release --example sweep -- paper

use qcongruence::report::to_json;
use qcongruence::suite::{exit_code, paper_preset, run_suite, SuiteConfig};

const CONFIG: &str = r#"{
  "tasks": [
    {"kind": "theorem1a", "params": {"n": 7, "m": 2}},
    {"kind": "guozu3", "params": {"n": 9}},
    {"kind": "classical", "id": "liu", "params": {"p": 11, "m": 2}},
    {"kind": "conjecture1", "params": {"p": 19, "r": 1}},
    {"kind": "watson", "params": {"seed": 1, "count": 3}}
  ],
  "jobs": 4
}"#;

fn main() {
    let config = match std::env::args().nth(1).as_deref() {
        Some("paper") => SuiteConfig { jobs: 8, ..paper_preset() },
        _ => SuiteConfig::from_json(CONFIG).unwrap(),
    };
    let reports = run_suite(&config).unwrap();
    println!("{}", to_json(&reports));
    eprintln!("{} reports, exit code {}", reports.len(), exit_code(&reports));
}
