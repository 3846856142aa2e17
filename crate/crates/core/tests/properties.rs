use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcongruence::classical::{central_binomial, rising, sum_mod, SumPath};
use qcongruence::congruence::{reduce_mod, theorem1, Variant};
use qcongruence::cyclotomic::{build_modulus, count_phi_factors, cyclotomic, divisors, totient};
use qcongruence::hypergeometric::{instance_2_3_equals_2_4, random_tuple, watson_check};
use qcongruence::qseries::{
    partial_sum, q_limit_one, qint, qpoch, rhs_ratio, summand, Family, FactorRatio, QLimit,
};
use qcongruence::rational::{padic_residue, padic_split, rat};
use qcongruence::report::Status;
use qcongruence::{Poly, RatFunc, Rational};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn small_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..=20, 0..=max_len).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    small_poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_map(|(a, b)| rat(a, b))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97])
}

proptest! {
    #![proptest_config(cases(500))]

    #[test]
    fn valuation_is_additive(x in nonzero_rational(), y in nonzero_rational(), p in prime()) {
        let vx = padic_split(&x, p).unwrap().valuation;
        let vy = padic_split(&y, p).unwrap().valuation;
        prop_assert_eq!(padic_split(&(&x * &y), p).unwrap().valuation, vx + vy);
    }

    #[test]
    fn residue_is_a_ring_homomorphism(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500,
                                       p in prime(), s in 1u32..5) {
        let (x, y) = (rat(a, b), rat(c, d));
        let modulus = BigInt::from(p).pow(s);
        let (Ok(rx), Ok(ry)) = (padic_residue(&x, p, s), padic_residue(&y, p, s)) else {
            return Err(TestCaseError::reject("not p-integral"));
        };
        let sum = padic_residue(&(&x + &y), p, s).unwrap();
        let prod = padic_residue(&(&x * &y), p, s).unwrap();
        prop_assert_eq!(sum, (&rx + &ry) % &modulus);
        prop_assert_eq!(prod, (&rx * &ry) % &modulus);
    }

    #[test]
    fn ring_axioms(a in small_poly(8), b in small_poly(8), c in small_poly(8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn divrem_round_trip(a in small_poly(12), b in nonzero_poly(6)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn xgcd_certificate(a in small_poly(8), b in small_poly(8)) {
        let (g, u, v) = Poly::xgcd(&a, &b);
        prop_assert!((&(&(&u * &a) + &(&v * &b)) - &g).is_zero());
        if !g.is_zero() {
            prop_assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_inverse_certificate(a in nonzero_poly(10), n in prop::sample::select(vec![3u64, 5, 7, 9, 12])) {
        let m = cyclotomic(n).pow(2);
        prop_assume!(a.gcd(&m).is_one());
        let inv = a.quotient_inverse(&m).unwrap();
        prop_assert!(a.mul_mod(&inv, &m).unwrap().is_one());
    }

    #[test]
    fn karatsuba_matches_schoolbook(a in small_poly(200), b in small_poly(200), t in 2usize..40) {
        prop_assert_eq!(a.mul_with_threshold(&b, t), a.mul_with_threshold(&b, usize::MAX));
    }

    #[test]
    fn qpoch_recurrence(x in -10i64..=10, d in 1u64..=5, k in 0u64..=8) {
        let next = qpoch(x, d, k + 1);
        let e = x + (d * k) as i64;
        let factor = qpoch(e, 1, 1);
        prop_assert_eq!(next, &qpoch(x, d, k) * &factor);
    }

    #[test]
    fn reduce_mod_is_linear(fa in small_poly(6), fb in small_poly(6),
                            ea in 1usize..12, eb in 1usize..12,
                            n in prop::sample::select(vec![3u64, 5, 7])) {
        prop_assume!(!(ea as u64).is_multiple_of(n) && !(eb as u64).is_multiple_of(n));
        let m = build_modulus(&[(n, 2)]).unwrap();
        let f = RatFunc::new(fa, Poly::one_minus_power(ea)).unwrap();
        let g = RatFunc::new(fb, Poly::one_minus_power(eb)).unwrap();
        let lhs = reduce_mod(&(&f + &g), &m).unwrap();
        let rhs = (&reduce_mod(&f, &m).unwrap() + &reduce_mod(&g, &m).unwrap()).rem(m.expanded()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_paths_agree(n in 0u64..=200, p in prop::sample::select(vec![3u64, 7, 11]), s in 1u32..=5) {
        prop_assert_eq!(sum_mod(n, p, s, SumPath::Exact).unwrap(), sum_mod(n, p, s, SumPath::Modular).unwrap());
    }

    #[test]
    fn watson_holds_on_random_tuples(seed in any::<u64>()) {
        let params = random_tuple(&mut ChaCha8Rng::seed_from_u64(seed));
        let report = watson_check(&params);
        prop_assume!(report.status != Status::Error);
        prop_assert!(report.holds(), "{}", report);
    }
}

#[test]
fn padic_reconstruction() {
    let mut runner = proptest::test_runner::TestRunner::new(cases(1000));
    runner
        .run(&(nonzero_rational(), prime()), |(x, p)| {
            let split = padic_split(&x, p).unwrap();
            let scale = Rational::from_integer(BigInt::from(p)).pow(split.valuation as i32);
            prop_assert_eq!(scale * split.unit, x);
            Ok(())
        })
        .unwrap();
}

#[test]
fn cyclotomic_structure_up_to_200() {
    for n in 1..=200u64 {
        let phi = cyclotomic(n);
        assert!(phi.is_integral(), "Phi_{n}");
        assert_eq!(phi.degree(), Some(totient(n) as usize), "Phi_{n}");
        let product = divisors(n).iter().fold(Poly::one(), |acc, &d| &acc * &cyclotomic(d));
        assert_eq!(product, -Poly::one_minus_power(n as usize), "n = {n}");
    }
}

#[test]
fn counting_claims() {
    for n in (3..=19u64).step_by(4) {
        for m in 1..=3u64 {
            let len = m * n + (n - 1) / 2;
            let e = ((4 * m + 2) * n) as i64;
            assert_eq!(count_phi_factors(6, 4, len, n), m + 1, "n={n} m={m}");
            assert_eq!(count_phi_factors(-e, 4, len, n), m + 1, "n={n} m={m}");
            assert_eq!(count_phi_factors(4, 4, len, n), m, "n={n} m={m}");
            assert_eq!(count_phi_factors(2 - e, 4, len, n), m, "n={n} m={m}");
        }
    }
}

#[test]
fn phi_divides_qint_for_odd_n() {
    for n in (3..=101u64).step_by(2) {
        assert!(qint(n, 2).rem(&cyclotomic(n)).unwrap().is_zero(), "n = {n}");
    }
}

/// `Σ T1` accumulated as one unreduced fraction, compared by cross-multiplication.
#[test]
fn partial_sums_match_unreduced_accumulation() {
    let one_plus = |e: usize| &Poly::one() + &Poly::monomial(Rational::one(), e);
    let (mut num, mut den) = (Poly::zero(), Poly::one());
    for n in 1..=6u64 {
        let k = n - 1;
        let mut tn = &one_plus(4 * k as usize + 1) * &Poly::monomial(Rational::one(), k as usize);
        let mut td = one_plus(1);
        for j in 0..k as usize {
            tn = &tn * &Poly::one_minus_power(4 * j + 2).pow(3);
            td = &td * &Poly::one_minus_power(4 * j + 4).pow(3);
        }
        num = &(&num * &td) + &(&tn * &den);
        den = &den * &td;
        let s = partial_sum(Family::T1, n);
        assert_eq!(&num * s.den(), &den * s.num(), "N = {n}");
    }
}

/// Past `mn + (n-1)/2` every T1 summand up to `(m+1)n - 1` carries `Φ_n^3`;
/// the first index of that window carries no `Φ_n` at all.
#[test]
fn summands_vanish_to_third_order() {
    for (n, mmax) in [(3u64, 3u64), (7, 2), (11, 1)] {
        let cube = cyclotomic(n).pow(3);
        for m in 0..=mmax {
            let edge = m * n + (n - 1) / 2;
            let at_edge = summand(Family::T1, edge);
            assert!(!at_edge.num().rem(&cyclotomic(n)).unwrap().is_zero(), "n={n} m={m}");
            for k in edge + 1..(m + 1) * n {
                let t = summand(Family::T1, k);
                assert!(t.num().rem(&cube).unwrap().is_zero(), "n={n} m={m} k={k}");
            }
        }
    }
}

#[test]
fn rhs_is_divisible_by_phi_squared() {
    for n in [3u64, 7, 11] {
        let m = build_modulus(&[(n, 2)]).unwrap();
        let rhs = rhs_ratio((n * n - 1) / 2, n * n).expand();
        assert!(reduce_mod(&rhs, &m).unwrap().is_zero(), "n = {n}");
    }
}

/// Near `q = 1` the expanded ratio approaches its limit linearly.
#[test]
fn expansion_approaches_q_limit() {
    let ratios = [
        rhs_ratio(4, 9),
        rhs_ratio(1, 3),
        FactorRatio {
            numerator_exponents: vec![2, 6, 9],
            denominator_exponents: vec![1, 5, 7],
            monomial_shift: 3,
            qint_factors: vec![(5, 3)],
        },
    ];
    for r in ratios {
        let QLimit::Finite(limit) = q_limit_one(&r) else { panic!("finite limit expected") };
        let f = r.expand();
        let limit = limit.to_f64().unwrap();
        for h in [rat(1, 1_000_000), rat(-1, 1_000_000)] {
            let value = f.eval(&(Rational::one() + h)).unwrap().to_f64().unwrap();
            assert!((value - limit).abs() <= 1e-3 * limit.abs().max(1.0), "{value} vs {limit}");
        }
    }
}

#[test]
fn half_rising_over_factorial_is_central_binomial() {
    let half = rat(1, 2);
    let mut lhs = Rational::one();
    let mut fact = Rational::one();
    for k in 0..=500u64 {
        if k > 0 {
            lhs *= &half + Rational::from_integer((k - 1).into());
            fact *= Rational::from_integer(k.into());
        }
        let rhs = Rational::new(central_binomial(k), BigInt::from(4).pow(k as u32));
        assert_eq!(&lhs / &fact, rhs, "k = {k}");
        assert!(!rhs.is_negative());
    }
    assert_eq!(rising(&half, 3), rat(15, 8));
}

#[test]
fn theorem1_as_a_property() {
    for n in [3, 7, 11] {
        for m in [1, 2] {
            for v in [Variant::A, Variant::B] {
                let task = theorem1(n, m, v).unwrap();
                assert!(task.residue().unwrap().is_zero(), "n={n} m={m} {v}");
                assert!(task.oracle().unwrap().iter().all(|c| c.agrees()));
            }
        }
    }
}

#[test]
fn eight_phi_seven_is_the_theorem_sum() {
    for n in [3, 7] {
        for m in [0, 1, 2] {
            let report = instance_2_3_equals_2_4(n, m);
            assert!(report.holds(), "{report}");
        }
    }
}
