//! Evidence for the open statements. These print verdicts but never count as failures.

use qcongruence::classical::{conj1_product, run_classical, ClassicalId, ClassicalTask};
use qcongruence::congruence::{conjecture2, conjecture3, Variant};

fn main() {
    for (p, r) in [(7, 1), (11, 1), (19, 1), (3, 2), (23, 1), (7, 2)] {
        let (v, unit) = conj1_product(p, r).unwrap();
        println!("prod (4k-1)/(4k+1), p={p} r={r}: valuation {v}, unit {unit} mod {p}^2");
    }
    for p in [7, 11, 19] {
        println!("{}", run_classical(&ClassicalTask::new(ClassicalId::Swisher, p, 1).unwrap()));
    }
    for n in [3, 7, 11] {
        for m in [1, 2] {
            for v in [Variant::A, Variant::B] {
                println!("{}", conjecture2(n, m, v).unwrap().verify());
            }
        }
    }
    for n in [3, 7] {
        for v in [Variant::A, Variant::B] {
            println!("{}", conjecture3(n, v).unwrap().verify());
        }
    }
}
