//! Zero divisors of ℍ⊗ℂ: the quadric ⟨v, v⟩ = 0 and the imaginary unit
//! that annihilates each of its points.

use quaternionic_picard::complexified::{cq_mul, qq, zero_divisor_witness};
use quaternionic_picard::{CQuaternion, Complex64, ImaginaryUnit, Quaternion};

fn main() {
    let h = ImaginaryUnit::new(1.0, -2.0, 2.0).unwrap();
    let vp = Quaternion::new(0.5, 1.0, -1.0, 2.0);
    // (1⊗1 + H⊗i)(v′⊗1) has real part v′ and imaginary part H v′.
    let one_plus_hi = CQuaternion::from_pair(Quaternion::ONE, h.as_quaternion());
    let v = cq_mul(&one_plus_hi, &CQuaternion::from_quaternion(vp));
    println!("qq(v) = {}", qq(&v));

    let (witness, annihilator) = zero_divisor_witness(&v).unwrap();
    println!("witness H = {:?}", witness.components());
    println!("‖(1⊗1 − H⊗i)·v‖ = {:.2e}", cq_mul(&annihilator, &v).norm());

    let generic = CQuaternion::new([Complex64::new(1.0, 0.5), Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)]);
    match zero_divisor_witness(&generic) {
        Ok(_) => println!("unexpected witness"),
        Err(e) => println!("generic element: {e}"),
    }
}
