//! Watson's 8phi7 transformation: the T1 instance, a hand-picked tuple,
//! and random tuples.

use qcongruence::hypergeometric::{
    eight_phi_seven, instance_2_3_equals_2_4, paper_instance, phi_eval, random_watson_suite, watson_check,
    QMonomial, WatsonParams,
};

fn main() {
    let p = WatsonParams {
        a: QMonomial::q(2),
        b: QMonomial::neg_q(5),
        c: QMonomial::q(1),
        d: QMonomial::q(7),
        e: QMonomial::q(9),
        n: 3,
        base: 1,
    };
    println!("{}", watson_check(&p));

    for (n, m) in [(3, 0), (3, 1), (7, 1)] {
        println!("{}", watson_check(&paper_instance(n, m)));
        println!("{}", instance_2_3_equals_2_4(n, m));
    }
    println!("8phi7 for n=3, m=0: {}", phi_eval(&eight_phi_seven(3, 0)).unwrap());

    let reports = random_watson_suite(7, 50);
    let held = reports.iter().filter(|r| r.holds()).count();
    println!("random tuples: {held}/{} hold", reports.len());
}
