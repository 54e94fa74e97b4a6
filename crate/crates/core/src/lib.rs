//! Value distribution of entire slice regular functions on the quaternions.
//!
//! The crate covers the arithmetic of ℍ and ℍ⊗ℂ, the zero-divisor quadric
//! of ℍ⊗ℂ, evaluation of slice regular functions through their stem
//! functions, value attainment through the entire function
//! `Q_c(z) = ⟨F(z) − c, F(z) − c⟩`, explicit value-avoiding functions, and
//! the quadric/monomial-curve machinery behind the five-value obstruction.

pub mod cli;
pub mod complexified;
mod dd;
pub mod error;
pub mod quaternion;
pub mod slice;
pub mod zeros;
pub mod constructions;
pub mod density;
pub mod laurent;
pub mod picard;

pub use complexified::{bilinear, cq_conj, cq_mul, is_zero_divisor, qq, zero_divisor_witness, CQuaternion};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use quaternion::{automorphism_sending_i_to, qinv, qmul, slice_point, Automorphism, ImaginaryUnit, Quaternion};
pub use slice::{eval, stem_eval, stem_pair_check, transform, NamedSeries, SliceFunction, StemValue};
pub use zeros::{find_roots, find_roots_detailed, Fiber, Root, SearchRect};
pub use constructions::{avoid_three, plane_avoider, trig_example, trig_preimage, AvoidanceReport};
pub use picard::{build_problem, general_position, monomial_curve_check, FiveValueProblem, LaurentCertificate, Verdict};
pub use density::{run_density_scan, DensityReport, Plane};
