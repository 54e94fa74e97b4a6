//! Arithmetic of the quaternions, the sphere of imaginary units and the
//! inner automorphisms of the quaternion algebra.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default absolute tolerance for floating-point identities.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A quaternion `w + x I + y J + z K`.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Euclidean inner product on ℍ ≅ ℝ⁴.
    #[inline]
    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Imaginary part `xI + yJ + zK`.
    #[inline]
    pub fn imag(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse; fails for the zero quaternion.
    pub fn inv(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    /// Decomposes `q = x + yH` with `y ≥ 0` and `H ∈ 𝕊`; real inputs use `H = I`.
    pub fn slice_decompose(self) -> (f64, f64, ImaginaryUnit) {
        let y = self.imag_norm();
        if y == 0.0 {
            (self.w, 0.0, ImaginaryUnit::I)
        } else {
            let h = ImaginaryUnit {
                x: self.x / y,
                y: self.y / y,
                z: self.z / y,
            };
            (self.w, y, h)
        }
    }
}

/// Hamilton product.
pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

pub fn qinv(q: Quaternion) -> Result<Quaternion> {
    q.inv()
}

/// The point `x + yH` of the slice ℂ_H.
pub fn slice_point(x: f64, y: f64, h: ImaginaryUnit) -> Quaternion {
    Quaternion::new(x, y * h.x, y * h.y, y * h.z)
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        qmul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}I + {}J + {}K", self.w, self.x, self.y, self.z)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Quaternion::from_array)
    }
}

/// An element `xI + yJ + zK` of the unit sphere 𝕊 of imaginary units.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ImaginaryUnit {
    x: f64,
    y: f64,
    z: f64,
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit { x: 1.0, y: 0.0, z: 0.0 };
    pub const J: ImaginaryUnit = ImaginaryUnit { x: 0.0, y: 1.0, z: 0.0 };
    pub const K: ImaginaryUnit = ImaginaryUnit { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes a non-zero imaginary direction onto 𝕊.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidInput(
                "imaginary unit direction must be non-zero".into(),
            ));
        }
        Ok(ImaginaryUnit {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Accepts `q` only if it is a pure quaternion of norm one within `tol`,
    /// then renormalizes.
    pub fn from_quaternion(q: Quaternion, tol: f64) -> Result<Self> {
        if q.w.abs() > tol || (q.imag_norm() - 1.0).abs() > tol {
            return Err(Error::InvalidInput(format!(
                "{q} is not an imaginary unit"
            )));
        }
        ImaginaryUnit::new(q.x, q.y, q.z)
    }

    /// The unit direction of `Im q`, if the imaginary part is non-zero.
    pub fn direction_of(q: Quaternion) -> Option<Self> {
        ImaginaryUnit::new(q.x, q.y, q.z).ok()
    }

    pub fn components(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn neg(self) -> Self {
        ImaginaryUnit {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(h: ImaginaryUnit) -> Self {
        h.as_quaternion()
    }
}

impl Serialize for ImaginaryUnit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        ImaginaryUnit::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

/// Inner automorphism `q ↦ a q a⁻¹` of ℍ for a unit quaternion `a`.
///
/// Every orientation preserving orthogonal map of ℍ fixing ℝ has this form.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Automorphism {
    rotor: Quaternion,
}

impl Automorphism {
    pub const IDENTITY: Automorphism = Automorphism {
        rotor: Quaternion::ONE,
    };

    /// Conjugation by `a / ‖a‖`.
    pub fn from_rotor(a: Quaternion) -> Result<Self> {
        let n = a.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDivision);
        }
        Ok(Automorphism { rotor: a / n })
    }

    pub fn rotor(&self) -> Quaternion {
        self.rotor
    }

    /// Rotation axis of the induced map on the imaginary 3-space (`I` for
    /// the identity).
    pub fn axis(&self) -> ImaginaryUnit {
        ImaginaryUnit::direction_of(self.rotor).unwrap_or(ImaginaryUnit::I)
    }

    #[inline]
    pub fn apply(&self, q: Quaternion) -> Quaternion {
        self.rotor * q * self.rotor.conj()
    }

    #[inline]
    pub fn apply_inverse(&self, q: Quaternion) -> Quaternion {
        self.rotor.conj() * q * self.rotor
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            rotor: self.rotor.conj(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            rotor: self.rotor * other.rotor,
        }
    }
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rotor.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Automorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        Automorphism::from_rotor(q).map_err(serde::de::Error::custom)
    }
}

/// An automorphism of ℍ mapping `I` to `h`.
///
/// On the hemisphere `⟨h, I⟩ ≥ 0` this is conjugation by the shortest
/// rotation `(1 − hI)/‖1 − hI‖` taking `I` to `h` (the identity for `h = I`).
/// Otherwise it is `r·J`, with `r` the shortest rotation taking `-I` to `h`;
/// at `h = -I` this is conjugation by `J`. Both rotors have norm at least
/// `√2` before normalization.
pub fn automorphism_sending_i_to(h: ImaginaryUnit) -> Automorphism {
    let hq = h.as_quaternion();
    if h.x >= 0.0 {
        let r = Quaternion::ONE - hq * Quaternion::I;
        return Automorphism::from_rotor(r).expect("rotor is non-zero on this hemisphere");
    }
    let r = Quaternion::ONE + hq * Quaternion::I;
    let r = r / r.norm();
    Automorphism::from_rotor(r * Quaternion::J).expect("unit rotor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_q(rng: &mut impl Rng) -> Quaternion {
        Quaternion::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
    }

    fn random_unit(rng: &mut impl Rng) -> ImaginaryUnit {
        loop {
            let v: [f64; 3] = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let n = v.iter().map(|t| t * t).sum::<f64>();
            if n > 1e-4 && n <= 1.0 {
                return ImaginaryUnit::new(v[0], v[1], v[2]).unwrap();
            }
        }
    }

    #[test]
    fn multiplication_table() {
        use Quaternion as Q;
        let one = Q::ONE;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::J, -Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::I * Q::K, -Q::J);
        for u in [Q::I, Q::J, Q::K] {
            assert_eq!(u * u, -one);
            assert_eq!(one * u, u);
            assert_eq!(u * one, u);
        }
        let q = Q::new(1.0, -2.0, 0.5, 3.0);
        assert_eq!(one * q, q);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(qinv(Quaternion::I).unwrap(), -Quaternion::I);
        assert_eq!(qinv(Quaternion::real(2.0)).unwrap(), Quaternion::real(0.5));
        assert_eq!(qinv(Quaternion::ZERO), Err(Error::ZeroDivision));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let q = random_q(&mut rng);
            let r = qinv(q).unwrap();
            assert!((q * r - Quaternion::ONE).norm() <= 1e-12);
            assert!((r * q - Quaternion::ONE).norm() <= 1e-12);
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let p = random_q(&mut rng);
            let q = random_q(&mut rng);
            assert!(((p * q).norm() - p.norm() * q.norm()).abs() <= 1e-12);
        }
    }

    #[test]
    fn slice_points() {
        let h = ImaginaryUnit::I;
        assert_eq!(
            slice_point(std::f64::consts::FRAC_PI_2, 0.0, h),
            Quaternion::real(std::f64::consts::FRAC_PI_2)
        );
        assert_eq!(slice_point(0.0, 1.0, ImaginaryUnit::J), Quaternion::J);
        assert_eq!(
            slice_point(1.0, 2.0, ImaginaryUnit::K),
            Quaternion::new(1.0, 0.0, 0.0, 2.0)
        );
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let h = random_unit(&mut rng).as_quaternion();
            assert!((h * h + Quaternion::ONE).norm() <= 1e-12);
        }
    }

    #[test]
    fn automorphism_examples() {
        let id = automorphism_sending_i_to(ImaginaryUnit::I);
        let q = Quaternion::new(0.3, -1.0, 2.0, 0.7);
        assert!(id.apply(q).approx_eq(q, 1e-15));

        assert_eq!(id, Automorphism::IDENTITY);

        // conjugation by the bisector (I+J)/√2 also sends I to J
        let a = (Quaternion::I + Quaternion::J) / 2f64.sqrt();
        let direct = a * Quaternion::I * a.inv().unwrap();
        assert!(direct.approx_eq(Quaternion::J, 1e-15));
        let to_j = automorphism_sending_i_to(ImaginaryUnit::J);
        assert!(to_j.apply(Quaternion::I).approx_eq(Quaternion::J, 1e-15));
        // rotation by a quarter turn about K
        assert!(to_j.apply(Quaternion::K).approx_eq(Quaternion::K, 1e-15));

        let to_minus_i = automorphism_sending_i_to(ImaginaryUnit::I.neg());
        assert_eq!(to_minus_i.rotor(), Quaternion::J);
        let direct = Quaternion::J * Quaternion::I * Quaternion::J.inv().unwrap();
        assert_eq!(direct, -Quaternion::I);
        assert!(to_minus_i.apply(Quaternion::I).approx_eq(-Quaternion::I, 1e-15));
    }

    #[test]
    fn automorphism_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let h = random_unit(&mut rng);
            let aut = automorphism_sending_i_to(h);
            assert!(aut.apply(Quaternion::I).approx_eq(h.as_quaternion(), 1e-12));
            let p = random_q(&mut rng);
            let q = random_q(&mut rng);
            let ap = aut.apply(p);
            assert!((ap.w - p.w).abs() <= 1e-12);
            assert!((ap.norm() - p.norm()).abs() <= 1e-12);
            assert!(aut.apply(p * q).approx_eq(ap * aut.apply(q), 1e-12));
            assert!(aut.apply_inverse(ap).approx_eq(p, 1e-12));
            let r = Quaternion::real(p.w);
            assert!(aut.apply(r).approx_eq(r, 1e-12));
        }
    }

    #[test]
    fn automorphism_preserves_orientation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let aut = automorphism_sending_i_to(random_unit(&mut rng));
            let i = aut.apply(Quaternion::I);
            let j = aut.apply(Quaternion::J);
            let k = aut.apply(Quaternion::K);
            // det of the image frame equals +1 iff I' J' = K'.
            assert!((i * j).approx_eq(k, 1e-12));
        }
    }

    #[test]
    fn conjugation_by_unit_pure_quaternion() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let a = random_unit(&mut rng).as_quaternion();
            let q = random_q(&mut rng);
            let c = a * q * a.inv().unwrap();
            assert!((c.w - q.w).abs() <= 1e-12);
            assert!((c.norm() - q.norm()).abs() <= 1e-12);
        }
    }

    #[test]
    fn json_shapes() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,2.0,3.0,4.0]");
        let back: Quaternion = serde_json::from_str("[1,2,3,4]").unwrap();
        assert_eq!(back, q);
        assert_eq!(
            serde_json::to_string(&ImaginaryUnit::J).unwrap(),
            "[0.0,1.0,0.0]"
        );
    }
}
