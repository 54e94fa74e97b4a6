//! Evaluates the trig example `f(q) = Σ q^k (J sin⁽ᵏ⁾(0) + K cos⁽ᵏ⁾(0))/k!`
//! through its stem function and checks the result against the power series.

use quaternionic_picard::constructions::trig_example;
use quaternionic_picard::slice::stem_pair_check;
use quaternionic_picard::{Complex64, ImaginaryUnit, Quaternion};

fn main() {
    let f = trig_example();
    let q = Quaternion::new(0.4, 0.3, -1.2, 0.5);
    let stem = f.eval(q);
    let series = f.eval_power_series(q);
    println!("f({q}) = {stem}");
    println!("power series differs by {:.2e}", (stem - series).norm());

    // ⟨F, F⟩ = sin² + cos² = 1 everywhere, so Q_0 never vanishes.
    for z in [Complex64::new(0.0, 0.0), Complex64::new(2.0, 3.0), Complex64::new(-7.0, 15.0)] {
        println!("Q_0({z}) = {}", f.qc(Quaternion::ZERO, z));
    }

    // The pair (F1, F2) reconstructed from values on the slice ℂ_J.
    let v = stem_pair_check(&f, 0.4, 1.3, ImaginaryUnit::J);
    println!("F1 = {}, F2 = {}", v.f1, v.f2);
}
