//! Entire slice regular functions `f(q) = Σ q^k a_k` and their stem
//! functions `F(z) = Σ a_k ⊗ z^k`.
//!
//! Coefficients always multiply powers of `q` from the right. A function is
//! either a quaternionic polynomial or one of a few named entire series with
//! real scalar parts (`sin`, `cos`, `exp`), optionally pushed through a
//! coefficientwise affine map `a_k ↦ aut(a_k)·λ (+ p for k = 0)`.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexified::{bilinear, qq, CQuaternion};
use crate::dd::{horner_real_coeffs, inverse_factorials, Dd};
use crate::error::{Error, Result};
use crate::quaternion::{slice_point, Automorphism, ImaginaryUnit, Quaternion};

/// Scalar entire functions with real Taylor coefficients `±1/k!`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Scalar {
    Sin,
    Cos,
    Exp,
}

impl Scalar {
    fn eval(self, z: Complex64) -> Complex64 {
        match self {
            Scalar::Sin => z.sin(),
            Scalar::Cos => z.cos(),
            Scalar::Exp => z.exp(),
        }
    }

    fn derivative(self, z: Complex64) -> Complex64 {
        match self {
            Scalar::Sin => z.cos(),
            Scalar::Cos => -z.sin(),
            Scalar::Exp => z.exp(),
        }
    }

    /// Sign pattern of the Taylor coefficient `k` (times `k!`).
    fn taylor_sign(self, k: usize) -> f64 {
        match self {
            Scalar::Exp => 1.0,
            Scalar::Sin if k % 2 == 1 => {
                if (k / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            Scalar::Cos if k % 2 == 0 => {
                if (k / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            _ => 0.0,
        }
    }
}

/// Named entire series available as slice functions.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedSeries {
    /// Stem `J⊗sin z + K⊗cos z`; its image is ℍ minus the slice ℂ_I.
    #[serde(rename = "sinJcosK")]
    SinJCosK,
    #[serde(rename = "exp")]
    Exp,
    #[serde(rename = "sin")]
    Sin,
    #[serde(rename = "cos")]
    Cos,
}

impl NamedSeries {
    fn components(self) -> &'static [(Quaternion, Scalar)] {
        match self {
            NamedSeries::SinJCosK => &[(Quaternion::J, Scalar::Sin), (Quaternion::K, Scalar::Cos)],
            NamedSeries::Exp => &[(Quaternion::ONE, Scalar::Exp)],
            NamedSeries::Sin => &[(Quaternion::ONE, Scalar::Sin)],
            NamedSeries::Cos => &[(Quaternion::ONE, Scalar::Cos)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedSeries::SinJCosK => "sinJcosK",
            NamedSeries::Exp => "exp",
            NamedSeries::Sin => "sin",
            NamedSeries::Cos => "cos",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "sinJcosK" => Ok(NamedSeries::SinJCosK),
            "exp" => Ok(NamedSeries::Exp),
            "sin" => Ok(NamedSeries::Sin),
            "cos" => Ok(NamedSeries::Cos),
            other => Err(Error::InvalidInput(format!("unknown named series {other:?}"))),
        }
    }

    fn coefficient(self, k: usize) -> Quaternion {
        let inv = inv_factorial_f64(k);
        self.components()
            .iter()
            .fold(Quaternion::ZERO, |acc, &(e, s)| acc + e * (s.taylor_sign(k) * inv))
    }

    fn stem(self, z: Complex64) -> CQuaternion {
        self.components()
            .iter()
            .fold(CQuaternion::ZERO, |acc, &(e, s)| acc + CQuaternion::tensor(e, s.eval(z)))
    }

    fn stem_derivative(self, z: Complex64) -> CQuaternion {
        self.components().iter().fold(CQuaternion::ZERO, |acc, &(e, s)| {
            acc + CQuaternion::tensor(e, s.derivative(z))
        })
    }

    fn stem_truncated(self, z: Complex64) -> CQuaternion {
        let n = truncation_depth(z.norm());
        let table = dd_inverse_factorials();
        self.components().iter().fold(CQuaternion::ZERO, |acc, &(e, s)| {
            let coeffs: Vec<Dd> = (0..=n).map(|k| table[k].mul_f64(s.taylor_sign(k))).collect();
            acc + CQuaternion::tensor(e, horner_real_coeffs(&coeffs, z))
        })
    }

    /// `⟨F(z), F(z)⟩` and its derivative, in closed form.
    ///
    /// The components use distinct orthonormal basis units, so the form is
    /// the sum of squares of the scalar parts.
    fn norm_form(self, z: Complex64) -> (Complex64, Complex64) {
        if self == NamedSeries::SinJCosK {
            return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        }
        self.components().iter().fold(
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            |(v, d), &(_, s)| {
                let a = s.eval(z);
                (v + a * a, d + 2.0 * a * s.derivative(z))
            },
        )
    }
}

const MAX_TRUNCATION: usize = 400;

fn dd_inverse_factorials() -> &'static [Dd] {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| inverse_factorials(MAX_TRUNCATION))
}

fn inv_factorial_f64(k: usize) -> f64 {
    if k > MAX_TRUNCATION {
        return 0.0;
    }
    dd_inverse_factorials()[k].to_f64()
}

/// Smallest `N` with `r^N/N! · 1/(1 − r/(N+1)) ≤ 1e-20`, i.e. the Taylor tail
/// of any named series beyond degree `N` is below `1e-20` at radius `r`.
pub fn truncation_depth(r: f64) -> usize {
    let mut term = 1.0f64;
    for n in 1..=MAX_TRUNCATION {
        term *= r / n as f64;
        let ratio = r / (n as f64 + 1.0);
        if ratio < 0.5 && term / (1.0 - ratio) <= 1e-20 {
            return n;
        }
    }
    MAX_TRUNCATION
}

/// Coefficientwise affine map `a_k ↦ aut(a_k)·scale`, with `offset` added to
/// the constant coefficient.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffMap {
    #[serde(rename = "rotor")]
    pub aut: Automorphism,
    pub scale: Quaternion,
    pub offset: Quaternion,
}

impl CoeffMap {
    pub const IDENTITY: CoeffMap = CoeffMap {
        aut: Automorphism::IDENTITY,
        scale: Quaternion::ONE,
        offset: Quaternion::ZERO,
    };

    #[inline]
    fn linear(&self, q: Quaternion) -> Quaternion {
        self.aut.apply(q) * self.scale
    }

    /// Adjoint of the linear part for the euclidean product:
    /// `⟨aut(a)λ, d⟩ = ⟨a, aut⁻¹(d λ̄)⟩`.
    #[inline]
    fn linear_adjoint(&self, d: Quaternion) -> Quaternion {
        self.aut.apply_inverse(d * self.scale.conj())
    }

    fn linear_cq(&self, v: &CQuaternion) -> CQuaternion {
        let (a, b) = v.pair();
        CQuaternion::from_pair(self.linear(a), self.linear(b))
    }

    fn is_identity(&self) -> bool {
        *self == CoeffMap::IDENTITY
    }

    /// `outer ∘ self`.
    fn then(&self, outer: &CoeffMap) -> CoeffMap {
        CoeffMap {
            aut: outer.aut.compose(&self.aut),
            scale: outer.aut.apply(self.scale) * outer.scale,
            offset: outer.aut.apply(self.offset) * outer.scale + outer.offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Base {
    Poly(Vec<Quaternion>),
    Named(NamedSeries),
}

/// An entire slice regular function.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceFunction {
    base: Base,
    map: CoeffMap,
    description: String,
}

/// Stem value `F = F₁⊗1 + F₂⊗i` at a point.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StemValue {
    pub f1: Quaternion,
    pub f2: Quaternion,
}

impl From<CQuaternion> for StemValue {
    fn from(v: CQuaternion) -> Self {
        StemValue {
            f1: v.vp(),
            f2: v.vpp(),
        }
    }
}

impl SliceFunction {
    /// `f(q) = Σ q^k coeffs[k]`. Trailing zero coefficients are dropped.
    pub fn polynomial(coeffs: Vec<Quaternion>) -> Self {
        let description = format!("polynomial of degree {}", coeffs.len().saturating_sub(1));
        SliceFunction::polynomial_with_description(coeffs, description)
    }

    pub fn polynomial_with_description(mut coeffs: Vec<Quaternion>, description: impl Into<String>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == Quaternion::ZERO {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Quaternion::ZERO);
        }
        SliceFunction {
            base: Base::Poly(coeffs),
            map: CoeffMap::IDENTITY,
            description: description.into(),
        }
    }

    pub fn constant(c: Quaternion) -> Self {
        SliceFunction::polynomial_with_description(vec![c], "constant")
    }

    /// `f(q) = q`.
    pub fn identity() -> Self {
        SliceFunction::polynomial_with_description(vec![Quaternion::ZERO, Quaternion::ONE], "identity")
    }

    pub fn named(kind: NamedSeries) -> Self {
        SliceFunction {
            base: Base::Named(kind),
            map: CoeffMap::IDENTITY,
            description: format!("named series {}", kind.name()),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn named_kind(&self) -> Option<NamedSeries> {
        match self.base {
            Base::Named(k) => Some(k),
            Base::Poly(_) => None,
        }
    }

    /// Coefficient map applied on top of a named series (identity for
    /// polynomials, whose coefficients are transformed eagerly).
    pub fn coeff_map(&self) -> &CoeffMap {
        &self.map
    }

    /// Polynomial coefficients, if this is a polynomial.
    pub fn poly_coeffs(&self) -> Option<&[Quaternion]> {
        match &self.base {
            Base::Poly(c) => Some(c),
            Base::Named(_) => None,
        }
    }

    /// Degree of a polynomial; `None` for transcendental series.
    pub fn degree(&self) -> Option<usize> {
        self.poly_coeffs().map(|c| c.len() - 1)
    }

    pub fn is_constant(&self) -> bool {
        match &self.base {
            Base::Poly(c) => c.len() == 1,
            Base::Named(_) => false,
        }
    }

    /// The coefficient `a_k`.
    pub fn coefficient(&self, k: usize) -> Quaternion {
        match &self.base {
            Base::Poly(c) => c.get(k).copied().unwrap_or(Quaternion::ZERO),
            Base::Named(kind) => {
                let mut a = self.map.linear(kind.coefficient(k));
                if k == 0 {
                    a += self.map.offset;
                }
                a
            }
        }
    }

    /// `F(z) = Σ a_k ⊗ z^k`.
    pub fn stem_eval(&self, z: Complex64) -> CQuaternion {
        match &self.base {
            Base::Poly(c) => poly_stem(c, z),
            Base::Named(kind) => self.apply_map(kind.stem(z)),
        }
    }

    /// `F′(z) = Σ k a_k ⊗ z^{k−1}`.
    pub fn stem_derivative(&self, z: Complex64) -> CQuaternion {
        match &self.base {
            Base::Poly(c) => {
                let d: Vec<Quaternion> = c.iter().enumerate().skip(1).map(|(k, a)| *a * k as f64).collect();
                poly_stem(&d, z)
            }
            Base::Named(kind) => self.map.linear_cq(&kind.stem_derivative(z)),
        }
    }

    /// Stem value from the truncated Taylor polynomial, summed in
    /// double-double arithmetic. Agrees with [`Self::stem_eval`] up to
    /// rounding; used to cross-check the closed forms.
    pub fn stem_eval_truncated(&self, z: Complex64) -> CQuaternion {
        match &self.base {
            Base::Poly(c) => poly_stem(c, z),
            Base::Named(kind) => self.apply_map(kind.stem_truncated(z)),
        }
    }

    fn apply_map(&self, v: CQuaternion) -> CQuaternion {
        if self.map.is_identity() {
            return v;
        }
        let mut out = self.map.linear_cq(&v);
        out = out + CQuaternion::from_quaternion(self.map.offset);
        out
    }

    /// `f(q) = F₁(x+iy) + H F₂(x+iy)` for `q = x + yH`, `y ≥ 0`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        let (x, y, h) = q.slice_decompose();
        let f = self.stem_eval(Complex64::new(x, y));
        let (f1, f2) = f.pair();
        debug_assert!(
            y != 0.0 || f2.norm() <= 1e-12 * (1.0 + f1.norm()),
            "stem must be real on the real axis"
        );
        f1 + h.as_quaternion() * f2
    }

    /// Direct quaternionic evaluation `Σ q^k a_k` by Horner's rule, bypassing
    /// the stem function. Named series are truncated at
    /// [`truncation_depth`]`(‖q‖)`.
    pub fn eval_power_series(&self, q: Quaternion) -> Quaternion {
        let n = match &self.base {
            Base::Poly(c) => c.len() - 1,
            Base::Named(_) => truncation_depth(q.norm()),
        };
        let mut acc = Quaternion::ZERO;
        for k in (0..=n).rev() {
            acc = q * acc + self.coefficient(k);
        }
        acc
    }

    /// `Q_c(z) = ⟨F(z) − c, F(z) − c⟩` together with `Q_c′(z)`.
    ///
    /// Named series use `Q_c = ‖λ‖²⟨F,F⟩ − 2⟨F, L*(c − p)⟩ + ‖c − p‖²` with the
    /// closed form of `⟨F,F⟩`, which avoids squaring exponentially large
    /// components that cancel.
    pub fn qc_with_derivative(&self, c: Quaternion, z: Complex64) -> (Complex64, Complex64) {
        match &self.base {
            Base::Poly(_) => {
                let d = self.stem_eval(z) - CQuaternion::from_quaternion(c);
                let dp = self.stem_derivative(z);
                (qq(&d), 2.0 * bilinear(&dp, &d))
            }
            Base::Named(kind) => {
                let shift = c - self.map.offset;
                let e = CQuaternion::from_quaternion(self.map.linear_adjoint(shift));
                let s = self.map.scale.norm_sqr();
                let (n, dn) = kind.norm_form(z);
                let lin = bilinear(&kind.stem(z), &e);
                let dlin = bilinear(&kind.stem_derivative(z), &e);
                (
                    s * n - 2.0 * lin + shift.norm_sqr(),
                    s * dn - 2.0 * dlin,
                )
            }
        }
    }

    pub fn qc(&self, c: Quaternion, z: Complex64) -> Complex64 {
        self.qc_with_derivative(c, z).0
    }
}

fn poly_stem(coeffs: &[Quaternion], z: Complex64) -> CQuaternion {
    let mut acc = [Complex64::new(0.0, 0.0); 4];
    for a in coeffs.iter().rev() {
        let a = a.to_array();
        for i in 0..4 {
            acc[i] = acc[i] * z + a[i];
        }
    }
    CQuaternion::new(acc)
}

/// `F(z)`.
pub fn stem_eval(f: &SliceFunction, z: Complex64) -> CQuaternion {
    f.stem_eval(z)
}

/// `f(q)`.
pub fn eval(f: &SliceFunction, q: Quaternion) -> Quaternion {
    f.eval(q)
}

/// Recovers `(F₁, F₂)` at `x + iy` from the two point values `f(x ± yI)`.
pub fn stem_pair_check(f: &SliceFunction, x: f64, y: f64, i: ImaginaryUnit) -> StemValue {
    let plus = f.eval_power_series(slice_point(x, y, i));
    let minus = f.eval_power_series(slice_point(x, -y, i));
    StemValue {
        f1: (plus + minus) * 0.5,
        f2: -(i.as_quaternion() * (plus - minus)) * 0.5,
    }
}

/// `g(q) = (Σ q^k aut(a_k))·λ + p`.
pub fn transform(
    f: &SliceFunction,
    aut: &Automorphism,
    lambda: Quaternion,
    p: Quaternion,
) -> Result<SliceFunction> {
    if lambda.norm() == 0.0 {
        return Err(Error::InvalidScale);
    }
    let outer = CoeffMap {
        aut: *aut,
        scale: lambda,
        offset: p,
    };
    let description = format!("transform of ({})", f.description);
    Ok(match &f.base {
        Base::Poly(c) => {
            let mut coeffs: Vec<Quaternion> = c.iter().map(|a| outer.linear(*a)).collect();
            coeffs[0] += p;
            SliceFunction::polynomial_with_description(coeffs, description)
        }
        Base::Named(kind) => SliceFunction {
            base: Base::Named(*kind),
            map: f.map.then(&outer),
            description,
        },
    })
}

/// JSON form: `{"kind":"poly","coeffs":[[w,x,y,z],..]}` or
/// `{"kind":"named","name":"sinJcosK"}` with an optional `transform`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SliceFunctionRepr {
    Poly {
        coeffs: Vec<Quaternion>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        description: Option<String>,
    },
    Named {
        name: NamedSeries,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transform: Option<CoeffMap>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        description: Option<String>,
    },
}

impl Serialize for SliceFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.base {
            Base::Poly(c) => SliceFunctionRepr::Poly {
                coeffs: c.clone(),
                description: Some(self.description.clone()),
            },
            Base::Named(kind) => SliceFunctionRepr::Named {
                name: *kind,
                transform: (!self.map.is_identity()).then_some(self.map),
                description: Some(self.description.clone()),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SliceFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match SliceFunctionRepr::deserialize(d)? {
            SliceFunctionRepr::Poly { coeffs, description } => {
                if coeffs.is_empty() {
                    return Err(serde::de::Error::custom("polynomial needs at least one coefficient"));
                }
                let f = SliceFunction::polynomial(coeffs);
                match description {
                    Some(text) => f.with_description(text),
                    None => f,
                }
            }
            SliceFunctionRepr::Named {
                name,
                transform,
                description,
            } => {
                let map = transform.unwrap_or(CoeffMap::IDENTITY);
                if map.scale.norm() == 0.0 {
                    return Err(serde::de::Error::custom("transform scale must be non-zero"));
                }
                let mut f = SliceFunction::named(name);
                f.map = map;
                if let Some(text) = description {
                    f.description = text;
                }
                f
            }
        })
    }
}
