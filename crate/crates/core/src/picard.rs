//! The quadric machinery behind the five-value obstruction.
//!
//! For five targets in general position, translated so that `c₅ = 0`, the
//! map `φ(z) = (⟨z−c₁, z−c₁⟩, …, ⟨z−c₄, z−c₄⟩, ⟨z, z⟩)` from ℂ⁴ lands in the
//! hypersurface `Z = {ψ = 0}` of ℂ⁵, where
//! `ψ(w; p) = p − uᵗMu`, `u_i = −½(w_i − p − ⟨c_i, c_i⟩)` and `M = BᵗB` with
//! `B⁻¹` the matrix whose rows are the `c_i`. An entire slice function avoiding
//! all five targets gives a holomorphic curve `φ ∘ (F − c₅)` into `Z ∩ (ℂ*)⁵`.
//! Monomial curves `ζ(z) = (α₁z^{m₁}, …, α₅z^{m₅})` inside `Z` must be
//! constant; [`monomial_curve_check`] certifies this by computing the Laurent
//! coefficients of the composition explicitly.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexified::{bilinear, CQuaternion};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quaternion::Quaternion;
use crate::slice::SliceFunction;
use crate::zeros::SearchRect;

/// Relative singular-value threshold for general position.
pub const RANK_TOL: f64 = 1e-10;
/// Float certificates treat coefficients below this fraction of the largest
/// one as zero.
pub const CERTIFICATE_REL_TOL: f64 = 1e-12;
/// Residual bound `|ψ(g)| ≤ PSI_TOL·(1 + ‖F‖⁴)` checked by the harness.
pub const PSI_TOL: f64 = 1e-8;

fn rows_matrix(rows: &[Quaternion; 4]) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| rows[i].to_array()[j])
}

fn translated(c: &[Quaternion; 5]) -> [Quaternion; 4] {
    [c[0] - c[4], c[1] - c[4], c[2] - c[4], c[3] - c[4]]
}

/// Whether no real affine 3-space contains all five points.
pub fn general_position(c: &[Quaternion; 5]) -> bool {
    if c.iter().any(|q| !q.is_finite()) {
        return false;
    }
    let sv = rows_matrix(&translated(c)).singular_values();
    let max = sv.max();
    max > 0.0 && sv.min() > RANK_TOL * max
}

/// Five targets normalized to `c₅ = 0`, with `B`, `B⁻¹` and `M = BᵗB`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiveValueProblem {
    targets: [Quaternion; 5],
    c: [Quaternion; 4],
    norms: [f64; 4],
    b: Matrix4<f64>,
    b_inv: Matrix4<f64>,
    m: Matrix4<f64>,
}

pub fn build_problem(c: &[Quaternion; 5]) -> Result<FiveValueProblem> {
    if !general_position(c) {
        return Err(Error::NotGeneralPosition);
    }
    let shifted = translated(c);
    let b_inv = rows_matrix(&shifted);
    let b = b_inv.try_inverse().ok_or(Error::SingularBasis)?;
    let m = b.transpose() * b;
    if m.cholesky().is_none() {
        return Err(Error::SingularBasis);
    }
    Ok(FiveValueProblem {
        targets: *c,
        c: shifted,
        norms: shifted.map(|q| q.norm_sqr()),
        b,
        b_inv,
        m,
    })
}

impl FiveValueProblem {
    /// The targets as given, before translation.
    pub fn targets(&self) -> &[Quaternion; 5] {
        &self.targets
    }

    /// `c₁ − c₅, …, c₄ − c₅`.
    pub fn translated_targets(&self) -> &[Quaternion; 4] {
        &self.c
    }

    /// The translation `c₅` applied to functions and targets.
    pub fn shift(&self) -> Quaternion {
        self.targets[4]
    }

    /// `⟨c_i, c_i⟩` of the translated targets.
    pub fn target_norms(&self) -> [f64; 4] {
        self.norms
    }

    pub fn b(&self) -> &Matrix4<f64> {
        &self.b
    }

    pub fn b_inv(&self) -> &Matrix4<f64> {
        &self.b_inv
    }

    pub fn m(&self) -> &Matrix4<f64> {
        &self.m
    }

    /// Smallest eigenvalue of `M`.
    pub fn min_eigenvalue(&self) -> f64 {
        self.m.symmetric_eigenvalues().min()
    }

    pub fn phi(&self, z: &CQuaternion) -> [Complex64; 5] {
        phi_map(self, z)
    }

    pub fn psi(&self, w: &[Complex64; 4], p: Complex64) -> Complex64 {
        psi(self, w, p)
    }

    pub fn mu(&self, v: &[Complex64; 5]) -> CQuaternion {
        mu_inverse(self, v)
    }
}

/// `(⟨z,z⟩ − 2⟨z,c_i⟩ + ⟨c_i,c_i⟩)_{i≤4}` followed by `⟨z,z⟩`.
pub fn phi_map(prob: &FiveValueProblem, z: &CQuaternion) -> [Complex64; 5] {
    let zz = bilinear(z, z);
    let mut out = [zz; 5];
    for i in 0..4 {
        let zc = bilinear(z, &CQuaternion::from_quaternion(prob.c[i]));
        out[i] = zz - 2.0 * zc + prob.norms[i];
    }
    out
}

fn quadratic_form(m: &Matrix4<f64>, u: &[Complex64; 4]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += m[(i, j)] * u[i] * u[j];
        }
    }
    acc
}

pub fn psi(prob: &FiveValueProblem, w: &[Complex64; 4], p: Complex64) -> Complex64 {
    let u: [Complex64; 4] = std::array::from_fn(|i| -0.5 * (w[i] - p - prob.norms[i]));
    p - quadratic_form(&prob.m, &u)
}

/// `B·(−½(v_i − ⟨c_i,c_i⟩ − v₅))_i`; inverse to [`phi_map`] on `Z`.
pub fn mu_inverse(prob: &FiveValueProblem, v: &[Complex64; 5]) -> CQuaternion {
    let x: [Complex64; 4] = std::array::from_fn(|i| -0.5 * (v[i] - prob.norms[i] - v[4]));
    let re = prob.b * Vector4::from_fn(|i, _| x[i].re);
    let im = prob.b * Vector4::from_fn(|i, _| x[i].im);
    CQuaternion::new(std::array::from_fn(|i| Complex64::new(re[i], im[i])))
}

/// Outcome of a monomial-curve check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Verdict {
    /// `ψ∘ζ` has a nonzero Laurent coefficient; this is the lowest one.
    NonVanishing { degree: i64, coefficient: f64 },
    /// All exponents vanish, so ζ is a point.
    ConstantCurve,
    /// Every coefficient vanishes: a non-constant monomial curve inside Z.
    AllZero,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentCertificate {
    pub m: [i64; 5],
    pub alpha: [f64; 5],
    /// `(degree, coefficient)` of `ψ∘ζ` in increasing degree.
    pub coefficients: Vec<(i64, f64)>,
    pub verdict: Verdict,
    /// Whether coefficients were collected in exact rational arithmetic.
    #[serde(default)]
    pub exact: bool,
}

impl LaurentCertificate {
    pub fn coefficient(&self, degree: i64) -> f64 {
        self.coefficients
            .iter()
            .find(|(k, _)| *k == degree)
            .map_or(0.0, |&(_, c)| c)
    }
}

/// `ψ∘ζ` in the form `p − wᵗMw`, `w_i = α_i z^{m_i} − α₅z^{m₅} − n_i`.
fn compose<T>(mat: &[[T; 4]; 4], n: &[T; 4], alpha: &[T; 5], m: &[i64; 5]) -> LaurentPoly<T>
where
    T: Clone
        + Zero
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>
        + std::ops::Neg<Output = T>,
{
    let p = LaurentPoly::monomial(alpha[4].clone(), m[4]);
    let w: Vec<LaurentPoly<T>> = (0..4)
        .map(|i| {
            let t = &LaurentPoly::monomial(alpha[i].clone(), m[i]) - &p;
            &t - &LaurentPoly::constant(n[i].clone())
        })
        .collect();
    let mut quad = LaurentPoly::zero();
    for i in 0..4 {
        for j in 0..4 {
            quad = &quad + &(&w[i] * &w[j]).scale(&mat[i][j]);
        }
    }
    &p - &quad
}

fn check_alpha(alpha: &[f64; 5]) -> Result<()> {
    match alpha.iter().position(|a| *a == 0.0 || !a.is_finite()) {
        Some(i) => Err(Error::InvalidAlpha(i + 1)),
        None => Ok(()),
    }
}

/// Certificate for `ζ(z) = (α_i z^{m_i})` against `p − wᵗ·mat·w`.
///
/// With `mat = M/4` this is exactly `ψ∘ζ`; with `mat = M` it is the scaled
/// form used in the monomial-curve argument. Both are positive definite, so
/// the verdicts agree.
pub fn monomial_curve_check_with_matrix(
    mat: &Matrix4<f64>,
    norms: [f64; 4],
    alpha: [f64; 5],
    m: [i64; 5],
) -> Result<LaurentCertificate> {
    check_alpha(&alpha)?;
    let rows: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| mat[(i, j)]));
    let poly = compose(&rows, &norms, &alpha, &m);
    let coefficients: Vec<(i64, f64)> = poly.terms().map(|(k, &c)| (k, c)).collect();
    let scale = coefficients.iter().fold(0.0f64, |a, &(_, c)| a.max(c.abs()));
    let verdict = if m.iter().all(|&k| k == 0) {
        Verdict::ConstantCurve
    } else {
        coefficients
            .iter()
            .find(|(_, c)| c.abs() > CERTIFICATE_REL_TOL * scale)
            .map_or(Verdict::AllZero, |&(degree, coefficient)| Verdict::NonVanishing { degree, coefficient })
    };
    Ok(LaurentCertificate {
        m,
        alpha,
        coefficients,
        verdict,
        exact: false,
    })
}

/// Floating-point certificate with the problem's `M`.
pub fn monomial_curve_check(prob: &FiveValueProblem, alpha: [f64; 5], m: [i64; 5]) -> Result<LaurentCertificate> {
    monomial_curve_check_with_matrix(&prob.m, prob.norms, alpha, m)
}

fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("{x} is not finite")))
}

/// Gauss–Jordan inverse over ℚ.
fn rational_inverse(a: &[[BigRational; 4]; 4]) -> Option<[[BigRational; 4]; 4]> {
    let mut aug: Vec<Vec<BigRational>> = (0..4)
        .map(|i| {
            let mut row = a[i].to_vec();
            row.extend((0..4).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..4 {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for k in 0..8 {
                    let delta = &factor * &aug[col][k];
                    aug[r][k] = &aug[r][k] - delta;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| aug[i][4 + j].clone())))
}

/// Certificate with every step in exact rational arithmetic.
///
/// Targets and `α` are read as the rationals their binary expansions denote;
/// `B`, `M` and the Laurent coefficients are then exact, and the verdict
/// distinguishes zero from nonzero without a threshold.
pub fn monomial_curve_check_exact(targets: &[Quaternion; 5], alpha: [f64; 5], m: [i64; 5]) -> Result<LaurentCertificate> {
    check_alpha(&alpha)?;
    let mut rows: [[BigRational; 4]; 4] = Default::default();
    for i in 0..4 {
        let (ci, c5) = (targets[i].to_array(), targets[4].to_array());
        for j in 0..4 {
            rows[i][j] = rational(ci[j])? - rational(c5[j])?;
        }
    }
    let b = rational_inverse(&rows).ok_or(Error::NotGeneralPosition)?;
    let mat: [[BigRational; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(BigRational::zero(), |acc, k| acc + &b[k][i] * &b[k][j]))
    });
    let norms: [BigRational; 4] =
        std::array::from_fn(|i| rows[i].iter().fold(BigRational::zero(), |acc, x| acc + x * x));
    let alpha_q: [BigRational; 5] = {
        let mut out: [BigRational; 5] = Default::default();
        for (o, &a) in out.iter_mut().zip(&alpha) {
            *o = rational(a)?;
        }
        out
    };
    let poly = compose(&mat, &norms, &alpha_q, &m);
    let to_f64 = |q: &BigRational| q.to_f64().unwrap_or_else(|| if q.is_negative() { f64::MIN } else { f64::MAX });
    let coefficients: Vec<(i64, f64)> = poly.terms().map(|(k, c)| (k, to_f64(c))).collect();
    let verdict = if m.iter().all(|&k| k == 0) {
        Verdict::ConstantCurve
    } else {
        // exact zeros are never stored, so the first term is the lowest nonzero one
        poly.terms()
            .next()
            .map_or(Verdict::AllZero, |(degree, c)| Verdict::NonVanishing {
                degree,
                coefficient: to_f64(c),
            })
    };
    Ok(LaurentCertificate {
        m,
        alpha,
        coefficients,
        verdict,
        exact: true,
    })
}

/// A grid point where a component of `g = φ∘(F − c₅)` vanishes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingPoint {
    /// 1-based index of the target.
    pub component: usize,
    pub x: f64,
    pub y: f64,
    pub abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiveValueReport {
    pub grid_points: usize,
    /// Largest `|ψ(g(z))| / (1 + ‖F(z) − c₅‖⁴)` on the grid.
    pub max_psi_residual: f64,
    pub stays_in_z: bool,
    /// Smallest `|g_i|` per component.
    pub min_abs: [f64; 5],
    pub vanishing: Vec<VanishingPoint>,
    /// Components vanishing at every grid point.
    pub identically_zero: [bool; 5],
}

/// Traces `g = φ∘(F − c₅)` over a `grid_n × grid_n` grid of `rect`.
///
/// Component `i` vanishes at `z = x + iy` exactly when `f` attains `c_i` on
/// the sphere `x + y𝕊`.
pub fn five_value_harness(
    prob: &FiveValueProblem,
    f: &SliceFunction,
    rect: &SearchRect,
    grid_n: usize,
) -> Result<FiveValueReport> {
    rect.validate()?;
    if grid_n < 2 {
        return Err(Error::InvalidInput("grid needs at least 2 points per side".into()));
    }
    let shift = CQuaternion::from_quaternion(prob.shift());
    let step_x = (rect.x_max - rect.x_min) / (grid_n - 1) as f64;
    let step_y = (rect.y_max - rect.y_min) / (grid_n - 1) as f64;
    let samples: Vec<(f64, f64, [Complex64; 5], f64, f64)> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let x = rect.x_min + step_x * (idx % grid_n) as f64;
            let y = rect.y_min + step_y * (idx / grid_n) as f64;
            let fz = f.stem_eval(Complex64::new(x, y)) - shift;
            let g = phi_map(prob, &fz);
            let w = [g[0], g[1], g[2], g[3]];
            let r2 = fz.norm().powi(2);
            let residual = psi(prob, &w, g[4]).norm() / (1.0 + r2 * r2);
            (x, y, g, residual, r2)
        })
        .collect();

    let mut max_psi_residual = 0.0f64;
    let mut min_abs = [f64::INFINITY; 5];
    let mut identically_zero = [true; 5];
    let mut vanishing = Vec::new();
    let norms = [prob.norms[0], prob.norms[1], prob.norms[2], prob.norms[3], 0.0];
    for (x, y, g, residual, r2) in samples {
        max_psi_residual = max_psi_residual.max(residual);
        for i in 0..5 {
            let a = g[i].norm();
            min_abs[i] = min_abs[i].min(a);
            if a <= 1e-10 * (1.0 + r2 + norms[i]) {
                vanishing.push(VanishingPoint { component: i + 1, x, y, abs: a });
            } else {
                identically_zero[i] = false;
            }
        }
    }
    Ok(FiveValueReport {
        grid_points: grid_n * grid_n,
        max_psi_residual,
        stays_in_z: max_psi_residual <= PSI_TOL,
        min_abs,
        vanishing,
        identically_zero,
    })
}

/// JSON input `{"targets": [[w,x,y,z] × 5]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiveValueInput {
    pub targets: Vec<Quaternion>,
}

impl FiveValueInput {
    pub fn targets_array(&self) -> Result<[Quaternion; 5]> {
        <[Quaternion; 5]>::try_from(self.targets.as_slice())
            .map_err(|_| Error::InvalidInput(format!("expected 5 targets, got {}", self.targets.len())))
    }
}

/// JSON summary of a built problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub targets: Vec<Quaternion>,
    pub general_position: bool,
    #[serde(rename = "B")]
    pub b: [[f64; 4]; 4],
    #[serde(rename = "M")]
    pub m: [[f64; 4]; 4],
    pub min_eigenvalue: f64,
}

impl From<&FiveValueProblem> for ProblemSummary {
    fn from(p: &FiveValueProblem) -> Self {
        let arr = |a: &Matrix4<f64>| std::array::from_fn(|i| std::array::from_fn(|j| a[(i, j)]));
        ProblemSummary {
            targets: p.targets.to_vec(),
            general_position: true,
            b: arr(&p.b),
            m: arr(&p.m),
            min_eigenvalue: p.min_eigenvalue(),
        }
    }
}
