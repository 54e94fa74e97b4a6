//! Non-constant monomial curves never lie in Z: every exponent vector gets a
//! nonzero Laurent coefficient, in floating point and in exact arithmetic.

use quaternionic_picard::picard::{build_problem, monomial_curve_check, monomial_curve_check_exact, Verdict};
use quaternionic_picard::Quaternion;

fn main() {
    let targets = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K, Quaternion::ZERO];
    let prob = build_problem(&targets).unwrap();
    let alpha = [1.0, -0.5, 2.0, 0.25, 1.5];
    for m in [[-1, 0, 0, 0, 0], [0, 0, 0, 0, 1], [2, 0, 1, 2, 0], [0; 5]] {
        let cert = monomial_curve_check(&prob, alpha, m).unwrap();
        println!("m = {m:?}: {:?}", cert.verdict);
    }

    // α_i = ‖c_i‖² cancels the constant term; the degree-2m₅ term takes over.
    let exact = monomial_curve_check_exact(&targets, [1.0, 1.0, 1.0, 1.0, 3.0], [0, 0, 0, 0, 2]).unwrap();
    println!("exact coefficients {:?}", exact.coefficients);

    let mut all_zero = 0;
    let mut total = 0;
    let range = -2..=2;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    for e in range.clone() {
                        let m = [a, b, c, d, e];
                        if m == [0; 5] {
                            continue;
                        }
                        total += 1;
                        if monomial_curve_check(&prob, alpha, m).unwrap().verdict == Verdict::AllZero {
                            all_zero += 1;
                        }
                    }
                }
            }
        }
    }
    println!("{total} exponent vectors in {{-2..2}}⁵, {all_zero} monomial curves inside Z");
}
