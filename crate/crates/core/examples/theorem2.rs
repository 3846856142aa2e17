//! Sums to (n^2-1)/2 and n^2-1 against [n^2]_{q^2} (q^3;q^4)_M/(q^5;q^4)_M q^{-M}
//! modulo Phi_n^2 Phi_{n^2}^2, plus the odd-n statement modulo Phi_n^2.

use qcongruence::congruence::{guozu3, theorem2, Variant};

fn main() {
    for n in [3, 7, 11] {
        for v in [Variant::A, Variant::B] {
            let task = theorem2(n, v).unwrap();
            println!("{}", task.verify());
        }
    }
    for n in [3, 5, 7, 9, 11, 15] {
        for v in [Variant::A, Variant::B] {
            println!("{}", guozu3(n, v).unwrap().verify());
        }
    }
}
