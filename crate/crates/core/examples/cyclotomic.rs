//! Cyclotomic polynomials and the squared moduli the theorems use.

use qcongruence::cyclotomic::{build_modulus, cyclotomic, divisors, mobius, totient};
use qcongruence::Poly;

fn main() {
    for n in [1, 2, 3, 4, 6, 9, 12, 15] {
        println!("Phi_{n} = {}", cyclotomic(n));
    }

    // q^n - 1 is the product of Phi_d over d | n
    let n = 12;
    let product = divisors(n).iter().fold(Poly::one(), |acc, &d| &acc * &cyclotomic(d));
    let target = -Poly::one_minus_power(n as usize);
    assert_eq!(product, target);
    println!("prod_(d|{n}) Phi_d = q^{n} - 1");
    println!("phi(45) = {}, mu(30) = {}", totient(45), mobius(30));

    let m = build_modulus(&[(3, 2), (9, 2)]).unwrap();
    println!("{m} has degree {}", m.degree());
}
