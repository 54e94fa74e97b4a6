//! A non-constant entire slice regular function omitting three given values.

use quaternionic_picard::constructions::avoid_three;
use quaternionic_picard::Quaternion;

fn main() {
    let c1 = Quaternion::new(1.0, 0.0, 2.0, 0.0);
    let c2 = Quaternion::new(-1.0, 1.0, 0.0, 1.0);
    let c3 = Quaternion::new(0.0, 0.0, 0.0, 3.0);
    let report = avoid_three(c1, c2, c3).unwrap();
    println!("g = aut(f)·λ + p with λ = {}, p = {}", report.lambda, report.p);
    for (c, t) in report.avoided.iter().zip(&report.transformed_targets) {
        println!("{c} pulls back to {t}, which lies in ℂ_I");
    }
    let other = Quaternion::new(0.5, 0.5, 0.5, 0.5);
    let q = report.preimage(other).unwrap();
    println!("g({q}) = {}", report.g.eval(q));
    println!("{}", serde_json::to_string(&report).unwrap());
}
