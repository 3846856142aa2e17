//! Batches of tasks: construction from a flat JSON config, parallel execution
//! in declaration order, and the exit-code policy.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{run_classical, ClassicalId, ClassicalTask};
use crate::congruence::{
    conjecture2, conjecture3, guozu3, proof_side_checks, theorem1, theorem2, theorem3, CongruenceTask, Variant,
};
use crate::error::{Error, Result};
use crate::factored::Sign;
use crate::hypergeometric::{
    instance_2_3_equals_2_4, paper_instance, random_watson_suite, watson_check, QMonomial, WatsonParams,
};
use crate::report::{Report, Status};

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "QCONG_JOBS";

/// One entry of a suite config.
///
/// `kind` is one of `theorem1a`, `theorem1b`, `theorem2a`, `theorem2b`,
/// `theorem3a`, `theorem3b`, `guozu3`, `watson`, `instance23`, `proofchecks`,
/// `conjecture1`, `conjecture2`, `conjecture3`, `classical`. Kinds with two
/// upper limits also take an `a`/`b` suffix; without one both are run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    /// Statement id for `classical` tasks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<ClassicalId>,
}

impl TaskSpec {
    pub fn new(kind: &str, params: &[(&str, i64)]) -> Self {
        TaskSpec {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            id: None,
        }
    }

    pub fn classical(id: ClassicalId, params: &[(&str, i64)]) -> Self {
        TaskSpec { id: Some(id), ..TaskSpec::new("classical", params) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub tasks: Vec<TaskSpec>,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default, alias = "outputPath", skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

fn default_jobs() -> usize {
    1
}

impl SuiteConfig {
    pub fn new(tasks: Vec<TaskSpec>) -> Self {
        SuiteConfig { tasks, jobs: default_jobs(), output_path: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// A validated task, ready to run.
#[derive(Debug, Clone)]
pub enum Job {
    Congruence(CongruenceTask),
    Watson(WatsonParams),
    RandomWatson { seed: u64, count: usize },
    Instance23 { n: u64, m: u64 },
    ProofChecks { n: u64, m: u64 },
    Classical(ClassicalTask),
}

impl Job {
    pub fn run(&self) -> Vec<Report> {
        match self {
            Job::Congruence(t) => vec![run_congruence(t)],
            Job::Watson(p) => vec![watson_check(p)],
            Job::RandomWatson { seed, count } => random_watson_suite(*seed, *count),
            Job::Instance23 { n, m } => vec![instance_2_3_equals_2_4(*n, *m)],
            Job::ProofChecks { n, m } => vec![proof_side_checks(*n, *m)],
            Job::Classical(t) => vec![run_classical(t)],
        }
    }
}

/// Exact verdict with the root-of-unity oracle noted alongside.
pub fn run_congruence(task: &CongruenceTask) -> Report {
    let mut report = task.verify();
    if report.status == Status::Error {
        return report;
    }
    match task.oracle() {
        Ok(checks) => {
            let agrees = checks.iter().all(|c| c.agrees());
            let claims = if report.holds() { agrees } else { !agrees };
            report.note(if claims { "oracle agrees" } else { "oracle disagrees" });
        }
        Err(e) => report.note(format!("oracle: {e}")),
    }
    report
}

fn get(spec: &TaskSpec, key: &str) -> Result<i64> {
    spec.params
        .get(key)
        .copied()
        .ok_or_else(|| Error::InvalidParameter(format!("{} needs parameter {key}", spec.kind)))
}

fn get_or(spec: &TaskSpec, key: &str, default: i64) -> i64 {
    spec.params.get(key).copied().unwrap_or(default)
}

fn unsigned(spec: &TaskSpec, key: &str) -> Result<u64> {
    let v = get(spec, key)?;
    u64::try_from(v).map_err(|_| Error::InvalidParameter(format!("{key} = {v} must be non-negative")))
}

fn small(spec: &TaskSpec, key: &str) -> Result<u32> {
    let v = unsigned(spec, key)?;
    u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("{key} = {v} is too large")))
}

fn monomial(spec: &TaskSpec, name: &str) -> Result<QMonomial> {
    let e = get(spec, name)?;
    match get_or(spec, &format!("{name}_sign"), 1) {
        1 => Ok(QMonomial::q(e)),
        -1 => Ok(QMonomial::neg_q(e)),
        s => Err(Error::InvalidParameter(format!("{name}_sign = {s} must be 1 or -1"))),
    }
}

fn split_variant(kind: &str) -> (&str, Vec<Variant>) {
    if let Some(base) = kind.strip_suffix('a') {
        (base, vec![Variant::A])
    } else if let Some(base) = kind.strip_suffix('b') {
        (base, vec![Variant::B])
    } else {
        (kind, vec![Variant::A, Variant::B])
    }
}

/// Validates one entry and builds its jobs.
pub fn build(spec: &TaskSpec) -> Result<Vec<Job>> {
    let (base, variants) = split_variant(&spec.kind);
    let each = |f: &dyn Fn(Variant) -> Result<CongruenceTask>| -> Result<Vec<Job>> {
        variants.iter().map(|&v| f(v).map(Job::Congruence)).collect()
    };
    match base {
        "theorem1" => {
            let (n, m) = (unsigned(spec, "n")?, unsigned(spec, "m")?);
            each(&|v| theorem1(n, m, v))
        }
        "theorem2" => {
            let n = unsigned(spec, "n")?;
            each(&|v| theorem2(n, v))
        }
        "theorem3" => {
            let (n, r) = (unsigned(spec, "n")?, small(spec, "r")?);
            each(&|v| theorem3(n, r, v))
        }
        "guozu3" => {
            let n = unsigned(spec, "n")?;
            each(&|v| guozu3(n, v))
        }
        "conjecture2" => {
            let (n, m) = (unsigned(spec, "n")?, unsigned(spec, "m")?);
            each(&|v| conjecture2(n, m, v))
        }
        "conjecture3" => {
            let n = unsigned(spec, "n")?;
            each(&|v| conjecture3(n, v))
        }
        _ => build_single(spec).map(|j| vec![j]),
    }
}

fn build_single(spec: &TaskSpec) -> Result<Job> {
    match spec.kind.as_str() {
        "watson" => {
            if spec.params.contains_key("seed") || spec.params.contains_key("count") {
                let seed = unsigned(spec, "seed")?;
                let count = unsigned(spec, "count")? as usize;
                return Ok(Job::RandomWatson { seed, count });
            }
            if spec.params.contains_key("m") {
                let (n, m) = (unsigned(spec, "n")?, unsigned(spec, "m")?);
                if n < 3 || n % 4 != 3 {
                    return Err(Error::InvalidParameter(format!("n = {n} must satisfy n ≡ 3 (mod 4)")));
                }
                return Ok(Job::Watson(paper_instance(n, m)));
            }
            let a = monomial(spec, "a")?;
            if a.sign != Sign::Plus || a.exponent % 2 != 0 {
                return Err(Error::InvalidParameter(format!("a = {a} must be an even power of q")));
            }
            let base = get_or(spec, "base", 1);
            if base < 1 {
                return Err(Error::InvalidParameter(format!("base = {base} must be positive")));
            }
            Ok(Job::Watson(WatsonParams {
                a,
                b: monomial(spec, "b")?,
                c: monomial(spec, "c")?,
                d: monomial(spec, "d")?,
                e: monomial(spec, "e")?,
                n: unsigned(spec, "n")?,
                base: base as u64,
            }))
        }
        "instance23" | "proofchecks" => {
            let (n, m) = (unsigned(spec, "n")?, unsigned(spec, "m")?);
            if n < 3 || n % 4 != 3 {
                return Err(Error::InvalidParameter(format!("n = {n} must satisfy n ≡ 3 (mod 4)")));
            }
            Ok(if spec.kind == "instance23" { Job::Instance23 { n, m } } else { Job::ProofChecks { n, m } })
        }
        "conjecture1" => {
            let task = ClassicalTask::new(ClassicalId::Conj1, unsigned(spec, "p")?, unsigned(spec, "r")?)?;
            Ok(Job::Classical(task))
        }
        "classical" => {
            let id = spec
                .id
                .ok_or_else(|| Error::InvalidParameter("classical task needs an id".into()))?;
            let extra = match id {
                ClassicalId::Liu => unsigned(spec, "m")?,
                ClassicalId::H2 | ClassicalId::CorHalf | ClassicalId::CorFull => 1,
                _ => unsigned(spec, "r")?,
            };
            Ok(Job::Classical(ClassicalTask::new(id, unsigned(spec, "p")?, extra)?))
        }
        other => Err(Error::InvalidParameter(format!("unknown task kind {other:?}"))),
    }
}

/// Validates every entry before anything runs.
pub fn build_all(config: &SuiteConfig) -> Result<Vec<Job>> {
    if config.jobs == 0 {
        return Err(Error::InvalidParameter("jobs must be positive".into()));
    }
    let mut jobs = Vec::new();
    for spec in &config.tasks {
        jobs.extend(build(spec)?);
    }
    Ok(jobs)
}

/// Runs the jobs on a pool of `workers` threads; reports come back in job order.
pub fn run_jobs(jobs: &[Job], workers: usize) -> Vec<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| jobs.par_iter().map(Job::run).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

pub fn run_suite(config: &SuiteConfig) -> Result<Vec<Report>> {
    let jobs = build_all(config)?;
    Ok(run_jobs(&jobs, config.jobs))
}

/// 0 when every theorem-level report holds, 1 otherwise.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(Report::is_theorem_failure) {
        1
    } else {
        0
    }
}

/// Seed of the randomized Watson tuples in the paper preset.
pub const PAPER_SEED: u64 = 2019;

/// Every task of the acceptance list.
pub fn paper_preset() -> SuiteConfig {
    let mut tasks = Vec::new();
    for n in [3, 7, 11] {
        for m in [1, 2] {
            tasks.push(TaskSpec::new("theorem1a", &[("n", n), ("m", m)]));
            tasks.push(TaskSpec::new("theorem1b", &[("n", n), ("m", m)]));
        }
    }
    for n in [3, 7, 11] {
        tasks.push(TaskSpec::new("theorem2a", &[("n", n)]));
        tasks.push(TaskSpec::new("theorem2b", &[("n", n)]));
    }
    for (n, r) in [(3, 1), (7, 1), (3, 2)] {
        tasks.push(TaskSpec::new("theorem3a", &[("n", n), ("r", r)]));
        tasks.push(TaskSpec::new("theorem3b", &[("n", n), ("r", r)]));
    }
    for n in [3, 5, 7, 9, 11, 15] {
        tasks.push(TaskSpec::new("guozu3", &[("n", n)]));
    }
    tasks.push(TaskSpec::new(
        "watson",
        &[("a", 2), ("b", 3), ("c", 1), ("d", -1), ("e", 5), ("n", 0), ("base", 1)],
    ));
    for (n, m) in [(3, 0), (3, 1), (7, 1)] {
        tasks.push(TaskSpec::new("watson", &[("n", n), ("m", m)]));
        tasks.push(TaskSpec::new("instance23", &[("n", n), ("m", m)]));
    }
    tasks.push(TaskSpec::new("watson", &[("seed", PAPER_SEED as i64), ("count", 20)]));
    for n in [3, 7, 11] {
        for m in [1, 2, 3] {
            tasks.push(TaskSpec::new("proofchecks", &[("n", n), ("m", m)]));
        }
    }
    for p in [3, 7, 11, 19, 23] {
        tasks.push(TaskSpec::classical(ClassicalId::H2, &[("p", p)]));
    }
    for p in [3, 7, 11] {
        for m in [1, 2, 3] {
            tasks.push(TaskSpec::classical(ClassicalId::Liu, &[("p", p), ("m", m)]));
        }
    }
    for p in [3, 7, 11] {
        tasks.push(TaskSpec::classical(ClassicalId::CorHalf, &[("p", p)]));
        tasks.push(TaskSpec::classical(ClassicalId::CorFull, &[("p", p)]));
    }
    for p in [3, 7] {
        tasks.push(TaskSpec::classical(ClassicalId::CorRHalf, &[("p", p), ("r", 2)]));
        tasks.push(TaskSpec::classical(ClassicalId::CorRFull, &[("p", p), ("r", 2)]));
    }
    for (p, r) in [(7, 1), (11, 1), (19, 1), (3, 2)] {
        tasks.push(TaskSpec::new("conjecture1", &[("p", p), ("r", r)]));
    }
    for p in [7, 11] {
        tasks.push(TaskSpec::classical(ClassicalId::Swisher, &[("p", p), ("r", 1)]));
    }
    for n in [3, 7, 11] {
        for m in [1, 2] {
            tasks.push(TaskSpec::new("conjecture2", &[("n", n), ("m", m)]));
        }
    }
    for n in [3, 7] {
        tasks.push(TaskSpec::new("conjecture3", &[("n", n)]));
    }
    SuiteConfig::new(tasks)
}
