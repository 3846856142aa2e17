//! The T1 sums to mn-1 and mn+(n-1)/2 vanish modulo Phi_n^2.
//!
//!     cargo run --release --example theorem1 -- 19 3

use qcongruence::congruence::{theorem1, Variant};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let cases: Vec<(u64, u64)> = match args.as_slice() {
        [n, m] => vec![(*n, *m)],
        _ => [3, 7, 11].iter().flat_map(|&n| [(n, 1), (n, 2)]).collect(),
    };
    for (n, m) in cases {
        for v in [Variant::A, Variant::B] {
            let task = theorem1(n, m, v).unwrap();
            let report = task.verify();
            let oracle = task.oracle().unwrap();
            println!("{report}");
            println!("  oracle at zeta_{n}: |P| = {:.1e}, |P'| = {:.1e}", oracle[0].value, oracle[0].derivative);
        }
    }

    // one step past the second limit the congruence breaks
    let mut past = theorem1(3, 1, Variant::B).unwrap();
    past.upper_n += 1;
    println!("{}", past.verify());
}
