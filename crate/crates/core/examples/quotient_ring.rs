//! Arithmetic in Q[q]/(Phi_n^2): inverses, reduction of rational functions, CRT.

use qcongruence::congruence::{crt, reduce_mod};
use qcongruence::cyclotomic::{build_modulus, cyclotomic};
use qcongruence::{Poly, RatFunc};

fn main() {
    let m = build_modulus(&[(3, 2)]).unwrap();
    let one_plus_q = Poly::from_ints(&[1, 1]);
    let inv = one_plus_q.quotient_inverse(m.expanded()).unwrap();
    println!("(1+q)^-1 mod {m} = {inv}");
    assert!(one_plus_q.mul_mod(&inv, m.expanded()).unwrap().is_one());

    // 1/(1-q^5) is fine modulo Phi_3^2; 1/(1-q^3) is not
    let f = RatFunc::new(Poly::one(), Poly::one_minus_power(5)).unwrap();
    println!("1/(1-q^5) = {} mod {m}", reduce_mod(&f, &m).unwrap());
    let g = RatFunc::new(Poly::one(), Poly::one_minus_power(3)).unwrap();
    println!("1/(1-q^3): {}", reduce_mod(&g, &m).unwrap_err());

    let a = cyclotomic(3).pow(2);
    let b = cyclotomic(5);
    let x = crt(&[(Poly::from_ints(&[2]), a.clone()), (Poly::q(), b.clone())]).unwrap();
    println!("x = 2 mod Phi_3^2, x = q mod Phi_5: x = {x}");
    assert_eq!(x.rem(&a).unwrap(), Poly::from_ints(&[2]));
    assert_eq!(x.rem(&b).unwrap(), Poly::q());
}
