//! Explicit value-avoiding functions.
//!
//! The stem `J⊗sin z + K⊗cos z` defines an entire slice regular function
//! whose image is exactly ℍ∖ℂ_I, with a closed-form preimage for every
//! attained value. Pushing it through `g(q) = (Σ q^k aut(a_k))·λ + p` moves the
//! omitted slice onto any real 2-plane, which gives functions avoiding
//! three prescribed points or a prescribed affine plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{automorphism_sending_i_to, slice_point, Automorphism, ImaginaryUnit, Quaternion};
use crate::slice::{transform, NamedSeries, SliceFunction, StemValue};
use crate::zeros::{fiber, Fiber};

/// Membership tolerance for ℂ_I.
pub const SLICE_MEMBERSHIP_TOL: f64 = 1e-10;

/// The function with stem `J⊗sin z + K⊗cos z`.
pub fn trig_example() -> SliceFunction {
    SliceFunction::named(NamedSeries::SinJCosK).with_description("stem J⊗sin(z) + K⊗cos(z); image ℍ∖ℂ_I")
}

/// Whether `q` lies in ℂ_I within `tol` (its J and K components vanish).
pub fn in_slice_i(q: Quaternion, tol: f64) -> bool {
    q.y.abs() <= tol && q.z.abs() <= tol
}

/// A point `q` with `trig_example()(q) = c`, for any `c ∉ ℂ_I`.
///
/// With `r = √(c₃² + c₄²)`, `x = atan2(c₃, c₄)` gives `c₃cos x − c₄sin x = 0`
/// and `c₃sin x + c₄cos x = r > 0`, so `Q_c(x+iy)` is real and vanishes for
/// `cosh y = (1 + ‖c‖²)/(2r) ≥ 1`. The imaginary unit comes from the fiber.
pub fn trig_preimage(c: Quaternion) -> Result<Quaternion> {
    let r = c.y.hypot(c.z);
    if r == 0.0 {
        return Err(Error::Unreachable(c.to_string()));
    }
    let x = c.y.atan2(c.z);
    let t = (1.0 + c.norm_sqr()) / (2.0 * r);
    let y = t.max(1.0).acosh();
    let f = trig_example();
    if y == 0.0 {
        return Ok(Quaternion::real(x));
    }
    let h = match fiber(&f, c, x, y) {
        Fiber::Point { h } => h,
        _ => preimage_unit(&f, c, x, y)?,
    };
    Ok(slice_point(x, y, h))
}

/// `H = (c − F₁)F₂⁻¹`, renormalized onto 𝕊.
fn preimage_unit(f: &SliceFunction, c: Quaternion, x: f64, y: f64) -> Result<ImaginaryUnit> {
    let StemValue { f1, f2 } = f.stem_eval(Complex64::new(x, y)).into();
    let h = (c - f1) * f2.inv()?;
    ImaginaryUnit::direction_of(h).ok_or_else(|| Error::Unreachable(c.to_string()))
}

fn pulled_back_preimage(aut: &Automorphism, lambda: Quaternion, p: Quaternion, c: Quaternion) -> Result<Quaternion> {
    let t = aut.apply_inverse((c - p) * lambda.inv()?);
    // points on the avoided plane up to rounding have no meaningful preimage
    if in_slice_i(t, SLICE_MEMBERSHIP_TOL * (1.0 + t.norm())) {
        return Err(Error::Unreachable(c.to_string()));
    }
    let q = trig_preimage(t).map_err(|_| Error::Unreachable(c.to_string()))?;
    Ok(aut.apply(q))
}

/// Closed-form preimage under any function `aut(·)·λ + p` of the trig
/// example, such as the `g` of an [`AvoidanceReport`]. Returns `None` for
/// functions of any other shape.
pub fn transformed_trig_preimage(f: &SliceFunction, c: Quaternion) -> Option<Result<Quaternion>> {
    if f.named_kind() != Some(NamedSeries::SinJCosK) {
        return None;
    }
    let map = f.coeff_map();
    Some(pulled_back_preimage(&map.aut, map.scale, map.offset, c))
}

/// A function `g` obtained from [`trig_example`] by an automorphism, a right
/// scale and a translation, together with the points it provably avoids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AvoidanceReport {
    pub g: SliceFunction,
    pub avoided: Vec<Quaternion>,
    pub aut: Automorphism,
    #[serde(rename = "lambda")]
    pub lambda: Quaternion,
    pub p: Quaternion,
    /// `aut⁻¹((c − p)·λ⁻¹)` for each avoided `c`; all lie in ℂ_I.
    pub transformed_targets: Vec<Quaternion>,
}

impl AvoidanceReport {
    fn build(aut: Automorphism, lambda: Quaternion, p: Quaternion, avoided: Vec<Quaternion>) -> Result<Self> {
        let g = transform(&trig_example(), &aut, lambda, p)?;
        let mut report = AvoidanceReport {
            g,
            avoided,
            aut,
            lambda,
            p,
            transformed_targets: Vec::new(),
        };
        report.transformed_targets = report
            .avoided
            .iter()
            .map(|&c| report.pull_back(c))
            .collect::<Result<_>>()?;
        Ok(report)
    }

    /// `aut⁻¹((c − p)·λ⁻¹)`: `g(aut(q)) = c` iff `trig_example()(q)` equals it.
    pub fn pull_back(&self, c: Quaternion) -> Result<Quaternion> {
        Ok(self.aut.apply_inverse((c - self.p) * self.lambda.inv()?))
    }

    /// Whether every transformed target lies in ℂ_I within `tol`.
    pub fn certified(&self, tol: f64) -> bool {
        self.transformed_targets.iter().all(|&t| in_slice_i(t, tol))
    }

    /// A point `q` with `g(q) = c`, or `Unreachable` when `c` lies on the
    /// avoided plane.
    pub fn preimage(&self, c: Quaternion) -> Result<Quaternion> {
        pulled_back_preimage(&self.aut, self.lambda, self.p, c)
    }

    /// Euclidean distance from `c` to the avoided plane
    /// `p + span_ℝ{λ, aut(I)·λ}`.
    pub fn distance_to_avoided_plane(&self, c: Quaternion) -> f64 {
        // w ↦ aut(w)·λ + p scales distances by ‖λ‖ and maps ℂ_I onto the
        // plane; pull back, measure and scale.
        let s = self.aut.apply_inverse((c - self.p) * self.lambda.inv().expect("non-zero scale"));
        s.y.hypot(s.z) * self.lambda.norm()
    }
}

/// A non-constant entire slice regular function avoiding `c1, c2, c3`.
pub fn avoid_three(c1: Quaternion, c2: Quaternion, c3: Quaternion) -> Result<AvoidanceReport> {
    if c1 == c2 || c1 == c3 || c2 == c3 {
        return Err(Error::DuplicatePoints);
    }
    let lambda = c2 - c1;
    let d = (c3 - c1) * lambda.inv()?;
    let h = ImaginaryUnit::direction_of(d).unwrap_or(ImaginaryUnit::I);
    let aut = automorphism_sending_i_to(h);
    AvoidanceReport::build(aut, lambda, c1, vec![c1, c2, c3])
}

/// An entire slice regular function whose image is ℍ minus the affine plane
/// `p0 + span_ℝ{u, v}`.
///
/// With `s = v·u⁻¹ = Re s + ‖Im s‖H` we get `v = (Re s + ‖Im s‖H)·u`, so the
/// plane is `p0 + ℂ_H·u`, the image of ℂ_I under `q ↦ aut(q)·u + p0` for any
/// automorphism with `aut(I) = H`.
pub fn plane_avoider(p0: Quaternion, u: Quaternion, v: Quaternion) -> Result<AvoidanceReport> {
    if u.norm() == 0.0 {
        return Err(Error::DegeneratePlane);
    }
    let s = v * u.inv()?;
    if s.imag_norm() <= 1e-12 * s.norm().max(f64::MIN_POSITIVE) || v.norm() == 0.0 {
        return Err(Error::DegeneratePlane);
    }
    let h = ImaginaryUnit::direction_of(s).ok_or(Error::DegeneratePlane)?;
    let aut = automorphism_sending_i_to(h);
    AvoidanceReport::build(aut, u, p0, vec![p0, p0 + u, p0 + v])
}
