//! Closed-form preimages under the trig example, whose image is ℍ minus ℂ_I.

use quaternionic_picard::constructions::{trig_example, trig_preimage};
use quaternionic_picard::Quaternion;

fn main() {
    let f = trig_example();
    for c in [
        Quaternion::J,
        Quaternion::new(3.0, -1.0, 0.2, 0.7),
        Quaternion::new(0.0, 0.0, 1e-3, 0.0),
    ] {
        let q = trig_preimage(c).unwrap();
        println!("c = {c}\n  q = {q}\n  |f(q) − c| = {:.2e}", (f.eval(q) - c).norm());
    }
    let on_slice = Quaternion::new(1.0, 2.0, 0.0, 0.0);
    println!("{on_slice}: {}", trig_preimage(on_slice).unwrap_err());
}
