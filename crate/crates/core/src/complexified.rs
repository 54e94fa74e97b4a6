//! The algebra ℍ⊗ℂ, its complex bilinear form and the zero-divisor quadric.
//!
//! An element is stored by its complex coordinates
//! `v = 1⊗v₀ + I⊗v₁ + J⊗v₂ + K⊗v₃`; the pair form `v = v′⊗1 + v″⊗i`
//! is recovered by taking real and imaginary parts of the coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};

/// Default relative tolerance for the zero-divisor test.
pub const ZERO_DIVISOR_TOL: f64 = 1e-10;
/// Tolerance for accepting a recovered witness as an element of 𝕊.
pub const WITNESS_TOL: f64 = 1e-9;

#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct CQuaternion {
    pub coords: [Complex64; 4],
}

impl CQuaternion {
    pub const ZERO: CQuaternion = CQuaternion {
        coords: [Complex64::new(0.0, 0.0); 4],
    };
    pub const ONE: CQuaternion = CQuaternion {
        coords: [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    };

    pub fn new(coords: [Complex64; 4]) -> Self {
        CQuaternion { coords }
    }

    /// `vp⊗1 + vpp⊗i`.
    pub fn from_pair(vp: Quaternion, vpp: Quaternion) -> Self {
        let a = vp.to_array();
        let b = vpp.to_array();
        CQuaternion {
            coords: std::array::from_fn(|k| Complex64::new(a[k], b[k])),
        }
    }

    /// `q⊗1`.
    pub fn from_quaternion(q: Quaternion) -> Self {
        CQuaternion::from_pair(q, Quaternion::ZERO)
    }

    /// `q⊗z`.
    pub fn tensor(q: Quaternion, z: Complex64) -> Self {
        let a = q.to_array();
        CQuaternion {
            coords: std::array::from_fn(|k| z * a[k]),
        }
    }

    /// The quaternion `v′` with `v = v′⊗1 + v″⊗i`.
    pub fn vp(&self) -> Quaternion {
        let c = &self.coords;
        Quaternion::new(c[0].re, c[1].re, c[2].re, c[3].re)
    }

    /// The quaternion `v″` with `v = v′⊗1 + v″⊗i`.
    pub fn vpp(&self) -> Quaternion {
        let c = &self.coords;
        Quaternion::new(c[0].im, c[1].im, c[2].im, c[3].im)
    }

    pub fn pair(&self) -> (Quaternion, Quaternion) {
        (self.vp(), self.vpp())
    }

    /// Hermitian length `sqrt(Σ |v_i|²)`, used only for tolerances.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CQuaternion {
            coords: self.coords.map(|c| c * s),
        }
    }

    pub fn conj(&self) -> Self {
        cq_conj(self)
    }
}

/// Product in ℍ⊗ℂ, computed in pair form.
pub fn cq_mul(a: &CQuaternion, b: &CQuaternion) -> CQuaternion {
    let (ap, app) = a.pair();
    let (bp, bpp) = b.pair();
    CQuaternion::from_pair(ap * bp - app * bpp, ap * bpp + app * bp)
}

/// Complex bilinear (not Hermitian) extension of the euclidean product.
pub fn bilinear(v: &CQuaternion, w: &CQuaternion) -> Complex64 {
    v.coords
        .iter()
        .zip(w.coords.iter())
        .map(|(a, b)| a * b)
        .sum()
}

/// `⟨v, v⟩ = Σ v_i²`.
pub fn qq(v: &CQuaternion) -> Complex64 {
    bilinear(v, v)
}

/// Conjugation on the ℂ factor: `v′⊗1 + v″⊗i ↦ v′⊗1 − v″⊗i`.
pub fn cq_conj(v: &CQuaternion) -> CQuaternion {
    CQuaternion {
        coords: v.coords.map(|c| c.conj()),
    }
}

/// Zero-divisor test via the quadric `⟨v,v⟩ = 0`, with `tol` relative to
/// `1 + ‖v‖²`.
pub fn is_zero_divisor(v: &CQuaternion, tol: f64) -> bool {
    let n = v.norm();
    qq(v).norm() <= tol * (1.0 + n * n)
}

/// The imaginary unit `H` with `H v′ = v″` and the left annihilator
/// `1⊗1 − H⊗i` of a non-zero zero divisor `v`.
pub fn zero_divisor_witness(v: &CQuaternion) -> Result<(ImaginaryUnit, CQuaternion)> {
    zero_divisor_witness_with_tol(v, ZERO_DIVISOR_TOL)
}

pub fn zero_divisor_witness_with_tol(
    v: &CQuaternion,
    tol: f64,
) -> Result<(ImaginaryUnit, CQuaternion)> {
    let n = v.norm();
    if n == 0.0 {
        return Err(Error::ZeroInput);
    }
    let q = qq(v).norm();
    if q > tol * (1.0 + n * n) {
        return Err(Error::NotAZeroDivisor { qq_abs: q });
    }
    let (vp, vpp) = v.pair();
    let h = vpp * vp.inv()?;
    // H must square to -1; a mismatch means the input was not on the quadric.
    if (h * h + Quaternion::ONE).norm() > WITNESS_TOL {
        return Err(Error::WitnessOffSphere(h.to_string()));
    }
    let unit = ImaginaryUnit::from_quaternion(h, WITNESS_TOL)
        .map_err(|_| Error::WitnessOffSphere(h.to_string()))?;
    let annihilator = CQuaternion::from_pair(Quaternion::ONE, -unit.as_quaternion());
    Ok((unit, annihilator))
}

impl Add for CQuaternion {
    type Output = CQuaternion;
    fn add(self, o: CQuaternion) -> CQuaternion {
        CQuaternion {
            coords: std::array::from_fn(|k| self.coords[k] + o.coords[k]),
        }
    }
}

impl Sub for CQuaternion {
    type Output = CQuaternion;
    fn sub(self, o: CQuaternion) -> CQuaternion {
        CQuaternion {
            coords: std::array::from_fn(|k| self.coords[k] - o.coords[k]),
        }
    }
}

impl Neg for CQuaternion {
    type Output = CQuaternion;
    fn neg(self) -> CQuaternion {
        CQuaternion {
            coords: self.coords.map(|c| -c),
        }
    }
}

impl Mul for CQuaternion {
    type Output = CQuaternion;
    fn mul(self, o: CQuaternion) -> CQuaternion {
        cq_mul(&self, &o)
    }
}

impl Serialize for CQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: [[f64; 2]; 4] = self.coords.map(|c| [c.re, c.im]);
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CQuaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = <[[f64; 2]; 4]>::deserialize(d)?;
        Ok(CQuaternion {
            coords: pairs.map(|[re, im]| Complex64::new(re, im)),
        })
    }
}
