//! Lattice check that the trig example attains every point of a ball away
//! from the slice ℂ_I, while a polynomial is checked by root search.

use quaternionic_picard::constructions::trig_example;
use quaternionic_picard::density::{run_density_scan, Plane, DEFAULT_EXCLUSION_EPS};
use quaternionic_picard::{Quaternion, SliceFunction};

fn main() {
    let r = run_density_scan(&trig_example(), 3.0, 0.5, Some(Plane::SLICE_I), DEFAULT_EXCLUSION_EPS).unwrap();
    println!(
        "trig example: {} lattice points, {} near ℂ_I, {} attained ({:.1}%)",
        r.grid_points,
        r.excluded,
        r.attained,
        100.0 * r.fraction
    );

    let f = SliceFunction::polynomial(vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::K * 0.5]);
    let r = run_density_scan(&f, 1.0, 0.5, None, 0.0).unwrap();
    println!("q + q²K/2: {} of {} attained via {}", r.attained, r.grid_points, r.method);
}
