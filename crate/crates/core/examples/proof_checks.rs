//! The counting arguments behind the Phi_n^2 factor of the transformed sum.

use qcongruence::congruence::{fn_least_index, fn_least_index_by_division, proof_side_checks};

fn main() {
    println!("  n  f(2) f(3) f(4) f(5) f(6)");
    for n in [3, 7, 11, 19] {
        let row: Vec<u64> = (2..=6).map(|x| fn_least_index(x, n)).collect();
        assert!((2..=6).all(|x| fn_least_index(x, n) == fn_least_index_by_division(x, n)));
        println!("{n:>3}  {:>4} {:>4} {:>4} {:>4} {:>4}", row[0], row[1], row[2], row[3], row[4]);
    }
    for n in [3, 7, 11] {
        for m in [1, 2, 3] {
            println!("{}", proof_side_checks(n, m));
        }
    }
}
