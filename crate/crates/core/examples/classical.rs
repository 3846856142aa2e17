//! The q -> 1 statements: sums of (1/2)_k^3/k!^3 modulo prime powers.

use qcongruence::classical::{central_term, rising, run_classical, sum_mod, ClassicalId, ClassicalTask, SumPath};
use qcongruence::Rational;

fn main() {
    for k in 0..4 {
        println!("term {k} = {}", central_term(k));
    }
    let r = rising(&Rational::new(3.into(), 4.into()), 4);
    println!("(3/4)_4 = {r}");
    for path in [SumPath::Exact, SumPath::Modular] {
        println!("{path:?}: sum of 4 terms mod 49 = {}", sum_mod(4, 7, 2, path).unwrap());
    }

    let mut tasks = Vec::new();
    for p in [3, 7, 11, 19, 23] {
        tasks.push(ClassicalTask::new(ClassicalId::H2, p, 1).unwrap());
    }
    for p in [3, 7, 11] {
        for m in 1..=3 {
            tasks.push(ClassicalTask::new(ClassicalId::Liu, p, m).unwrap());
        }
        tasks.push(ClassicalTask::new(ClassicalId::CorHalf, p, 1).unwrap());
        tasks.push(ClassicalTask::new(ClassicalId::CorFull, p, 1).unwrap());
    }
    for p in [3, 7] {
        tasks.push(ClassicalTask::new(ClassicalId::CorRHalf, p, 2).unwrap());
        tasks.push(ClassicalTask::new(ClassicalId::CorRFull, p, 2).unwrap());
    }
    for t in &tasks {
        println!("{}", run_classical(t));
    }
}
