//! The n^{2r} generalization. (3, 2) runs modulo Phi_81^2 Phi_3^2 Phi_27^2.

use qcongruence::congruence::{theorem3, Variant};

fn main() {
    for (n, r) in [(3, 1), (7, 1), (3, 2)] {
        for v in [Variant::A, Variant::B] {
            let task = theorem3(n, r, v).unwrap();
            println!("modulus degree {}", task.modulus.degree());
            println!("{}", task.verify());
        }
    }
}
