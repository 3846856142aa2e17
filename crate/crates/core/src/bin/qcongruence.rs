use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcongruence::classical::ClassicalId;
use qcongruence::report::{to_json, Report};
use qcongruence::suite::{exit_code, paper_preset, run_jobs, build_all, SuiteConfig, TaskSpec, JOBS_ENV};

#[derive(Parser)]
#[command(name = "qcongruence", version, about = "Verify q-congruences modulo cyclotomic polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Worker threads.
    #[arg(long, global = true, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Proved statements.
    Verify {
        #[command(subcommand)]
        task: Verify,
        #[command(flatten)]
        output: Output,
    },
    /// Conjectures and the classical supercongruences.
    Check {
        #[command(subcommand)]
        task: Check,
        #[command(flatten)]
        output: Output,
    },
    /// Run a suite from a config file or a preset.
    Sweep {
        #[arg(long, required_unless_present = "preset")]
        config: Option<PathBuf>,
        #[arg(long, value_parser = ["paper"])]
        preset: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Verify {
    Theorem1 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        variant: Option<String>,
    },
    Theorem2 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        variant: Option<String>,
    },
    Theorem3 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        variant: Option<String>,
    },
    Guozu3 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Either `--n --m` for the T1 instance, `--seed --count` for random
    /// tuples, or explicit exponents `--a .. --e --n [--base]` (negate a
    /// parameter with `--b-sign -1` and so on).
    Watson {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        seed: Option<i64>,
        #[arg(long)]
        count: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b_sign: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c_sign: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        d_sign: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        e_sign: Option<i64>,
        #[arg(long)]
        base: Option<i64>,
    },
    Instance23 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
    },
    Proofchecks {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
    },
}

#[derive(Subcommand)]
enum Check {
    Conjecture1 {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        r: i64,
    },
    Conjecture2 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        variant: Option<String>,
    },
    Conjecture3 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        variant: Option<String>,
    },
    Classical {
        #[arg(long)]
        id: String,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
    },
}

fn params(pairs: &[(&str, Option<i64>)]) -> Vec<(String, i64)> {
    pairs.iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))).collect()
}

fn spec(kind: &str, variant: Option<String>, pairs: &[(&str, Option<i64>)]) -> Result<TaskSpec, String> {
    let suffix = match variant.as_deref() {
        None => "",
        Some("a") => "a",
        Some("b") => "b",
        Some(v) => return Err(format!("variant must be a or b, got {v:?}")),
    };
    let mut s = TaskSpec::new(&format!("{kind}{suffix}"), &[]);
    s.params = params(pairs).into_iter().collect();
    Ok(s)
}

fn verify_spec(task: Verify) -> Result<TaskSpec, String> {
    match task {
        Verify::Theorem1 { n, m, variant } => spec("theorem1", variant, &[("n", Some(n)), ("m", Some(m))]),
        Verify::Theorem2 { n, variant } => spec("theorem2", variant, &[("n", Some(n))]),
        Verify::Theorem3 { n, r, variant } => spec("theorem3", variant, &[("n", Some(n)), ("r", Some(r))]),
        Verify::Guozu3 { n, variant } => spec("guozu3", variant, &[("n", Some(n))]),
        Verify::Watson { n, m, seed, count, a, b, c, d, e, b_sign, c_sign, d_sign, e_sign, base } => spec(
            "watson",
            None,
            &[
                ("n", n),
                ("m", m),
                ("seed", seed),
                ("count", count),
                ("a", a),
                ("b", b),
                ("c", c),
                ("d", d),
                ("e", e),
                ("b_sign", b_sign),
                ("c_sign", c_sign),
                ("d_sign", d_sign),
                ("e_sign", e_sign),
                ("base", base),
            ],
        ),
        Verify::Instance23 { n, m } => spec("instance23", None, &[("n", Some(n)), ("m", Some(m))]),
        Verify::Proofchecks { n, m } => spec("proofchecks", None, &[("n", Some(n)), ("m", Some(m))]),
    }
}

fn check_spec(task: Check) -> Result<TaskSpec, String> {
    match task {
        Check::Conjecture1 { p, r } => spec("conjecture1", None, &[("p", Some(p)), ("r", Some(r))]),
        Check::Conjecture2 { n, m, variant } => spec("conjecture2", variant, &[("n", Some(n)), ("m", Some(m))]),
        Check::Conjecture3 { n, variant } => spec("conjecture3", variant, &[("n", Some(n))]),
        Check::Classical { id, p, m, r } => {
            let id: ClassicalId = id.parse().map_err(|e: qcongruence::Error| e.to_string())?;
            let mut s = spec("classical", None, &[("p", Some(p)), ("m", m), ("r", r)])?;
            s.id = Some(id);
            Ok(s)
        }
    }
}

fn config_for(command: Command) -> Result<(SuiteConfig, Output), String> {
    match command {
        Command::Verify { task, output } => Ok((SuiteConfig::new(vec![verify_spec(task)?]), output)),
        Command::Check { task, output } => Ok((SuiteConfig::new(vec![check_spec(task)?]), output)),
        Command::Sweep { config, preset, output } => {
            let config = match (config, preset) {
                (Some(path), _) => SuiteConfig::from_file(&path).map_err(|e| e.to_string())?,
                (None, _) => paper_preset(),
            };
            Ok((config, output))
        }
    }
}

fn run(cli: Cli) -> Result<Vec<Report>, (String, u8)> {
    let (mut config, output) = config_for(cli.command).map_err(|e| (e, 2))?;
    if let Some(jobs) = output.jobs {
        config.jobs = jobs;
    }
    if let Some(out) = output.out {
        config.output_path = Some(out.display().to_string());
    }
    let jobs = build_all(&config).map_err(|e| (e.to_string(), 2))?;
    let reports = run_jobs(&jobs, config.jobs);
    for r in &reports {
        println!("{r}");
    }
    if let Some(path) = &config.output_path {
        std::fs::write(path, to_json(&reports) + "\n").map_err(|e| (format!("{path}: {e}"), 2))?;
    }
    Ok(reports)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(reports) => ExitCode::from(exit_code(&reports) as u8),
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
