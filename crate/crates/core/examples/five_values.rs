//! The quadric Z ⊂ ℂ⁵ attached to five targets: φ maps ℂ⁴ into Z, μ inverts
//! it, and an entire function traces a curve in Z.

use quaternionic_picard::constructions::trig_example;
use quaternionic_picard::picard::{build_problem, five_value_harness, mu_inverse, phi_map, psi};
use quaternionic_picard::zeros::SearchRect;
use quaternionic_picard::{CQuaternion, Quaternion};

fn main() {
    let targets = [
        Quaternion::new(1.0, 0.0, 0.5, 0.0),
        Quaternion::new(0.0, 2.0, 0.0, 0.0),
        Quaternion::new(0.0, 0.0, 1.0, -1.0),
        Quaternion::new(0.3, 0.0, 0.0, 1.0),
        Quaternion::new(-0.5, -0.5, 0.0, 0.0),
    ];
    let prob = build_problem(&targets).unwrap();
    println!("M =\n{}", prob.m());
    println!("smallest eigenvalue of M: {:.4}", prob.min_eigenvalue());

    let z = CQuaternion::from_pair(Quaternion::new(0.2, -1.0, 0.4, 0.9), Quaternion::new(1.1, 0.0, -0.3, 0.2));
    let g = phi_map(&prob, &z);
    println!("ψ(φ(z)) = {:.2e}", psi(&prob, &[g[0], g[1], g[2], g[3]], g[4]).norm());
    println!("‖μ(φ(z)) − z‖ = {:.2e}", (mu_inverse(&prob, &g) - z).norm());

    let rect = SearchRect::new(-3.0, 3.0, 0.0, 3.0).unwrap();
    let report = five_value_harness(&prob, &trig_example(), &rect, 41).unwrap();
    println!(
        "trig example: max scaled |ψ∘g| = {:.2e}, vanishing samples {}, min |g_i| = {:?}",
        report.max_psi_residual,
        report.vanishing.len(),
        report.min_abs
    );
}
