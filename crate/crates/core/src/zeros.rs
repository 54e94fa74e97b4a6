//! Value attainment through `Q_c(z) = ⟨F(z) − c, F(z) − c⟩`.
//!
//! `f` attains `c` on the sphere `x + y𝕊` exactly when `Q_c(x + iy) = 0`.
//! Zeros of `Q_c` in a rectangle of the closed upper half-plane are located
//! with the argument principle (phase-unwrapped boundary winding and
//! recursive quadrisection) and polished by Newton's method.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{slice_point, ImaginaryUnit, Quaternion};
use crate::slice::{SliceFunction, StemValue};

/// Default tolerance for fiber membership checks.
pub const FIBER_TOL: f64 = 1e-8;
/// Roots closer than this to the real axis are snapped onto it.
pub const REAL_AXIS_SNAP: f64 = 1e-7;
/// Leaves below this diameter are not subdivided further.
pub const CLUSTER_DIAMETER: f64 = 1e-6;
pub const MAX_NEWTON_ITERATIONS: usize = 100;

const SPLIT_FRACTIONS: [f64; 5] = [0.4937, 0.5411, 0.4523, 0.5873, 0.4189];
const PERTURBATION_ATTEMPTS: usize = 3;

/// Search rectangle `[x_min, x_max] × [y_min, y_max]` in the closed upper
/// half-plane.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl SearchRect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let r = SearchRect {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidRect("bounds must be finite".into()));
        }
        if self.y_min < 0.0 {
            return Err(Error::InvalidRect("y_min must be non-negative".into()));
        }
        if self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::InvalidRect("empty rectangle".into()));
        }
        Ok(())
    }

    pub fn diameter(&self) -> f64 {
        (self.x_max - self.x_min).hypot(self.y_max - self.y_min)
    }

    fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }

    fn expanded(&self, by: f64) -> SearchRect {
        SearchRect {
            x_min: self.x_min - by,
            x_max: self.x_max + by,
            y_min: self.y_min - by,
            y_max: self.y_max + by,
        }
    }

    fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.re >= self.x_min - slack
            && z.re <= self.x_max + slack
            && z.im >= self.y_min - slack
            && z.im <= self.y_max + slack
    }

    fn split(&self, fx: f64, fy: f64) -> [SearchRect; 4] {
        let xm = self.x_min + fx * (self.x_max - self.x_min);
        let ym = self.y_min + fy * (self.y_max - self.y_min);
        [
            SearchRect { x_max: xm, y_max: ym, ..*self },
            SearchRect { x_min: xm, y_max: ym, ..*self },
            SearchRect { x_max: xm, y_min: ym, ..*self },
            SearchRect { x_min: xm, y_min: ym, ..*self },
        ]
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x_min, self.y_min),
            Complex64::new(self.x_max, self.y_min),
            Complex64::new(self.x_max, self.y_max),
            Complex64::new(self.x_min, self.y_max),
        ]
    }
}

/// The set of `H ∈ 𝕊` with `f(x + yH) = c`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Fiber {
    Empty,
    /// A single imaginary unit. For real points (`y = 0`) the unit is the
    /// canonical `I` and carries no information.
    Point {
        #[serde(rename = "H")]
        h: ImaginaryUnit,
    },
    Sphere,
}

/// A zero of `Q_c` at `x + iy`, `y ≥ 0`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub x: f64,
    pub y: f64,
    /// Winding number of `Q_c` around the isolating leaf rectangle.
    pub winding: i32,
    pub fiber: Fiber,
    #[serde(skip)]
    pub residual: f64,
}

impl Root {
    /// The quaternion `x + yH` for a point fiber.
    pub fn point(&self) -> Option<Quaternion> {
        match self.fiber {
            Fiber::Point { h } => Some(slice_point(self.x, self.y, h)),
            _ => None,
        }
    }
}

/// `Q_c(z)`.
pub fn qc(f: &SliceFunction, c: Quaternion, z: Complex64) -> Complex64 {
    f.qc(c, z)
}

/// Whether `f` attains `c` on `x + y𝕊`.
pub fn attains(f: &SliceFunction, c: Quaternion, x: f64, y: f64, tol: f64) -> bool {
    qc(f, c, Complex64::new(x, y)).norm() <= tol
}

pub fn fiber(f: &SliceFunction, c: Quaternion, x: f64, y: f64) -> Fiber {
    fiber_with_tol(f, c, x, y, FIBER_TOL)
}

/// Solves `F₁ + H F₂ = c` for `H ∈ 𝕊` at `x + iy`. Tolerances are relative
/// to `1 + ‖c‖ + ‖F₁‖ + ‖F₂‖`.
pub fn fiber_with_tol(f: &SliceFunction, c: Quaternion, x: f64, y: f64, tol: f64) -> Fiber {
    if y == 0.0 {
        let v = f.eval(Quaternion::real(x));
        return if (v - c).norm() <= tol * (1.0 + c.norm() + v.norm()) {
            Fiber::Point { h: ImaginaryUnit::I }
        } else {
            Fiber::Empty
        };
    }
    let StemValue { f1, f2 } = f.stem_eval(Complex64::new(x, y)).into();
    let scale = 1.0 + c.norm() + f1.norm() + f2.norm();
    if f2.norm() <= tol * scale {
        return if (f1 - c).norm() <= tol * scale {
            Fiber::Sphere
        } else {
            Fiber::Empty
        };
    }
    let h = (c - f1) * f2.inv().expect("F2 is non-zero");
    let h_tol = tol * scale / f2.norm();
    if h.w.abs() <= h_tol && (h.imag_norm() - 1.0).abs() <= h_tol {
        match ImaginaryUnit::direction_of(h) {
            Some(h) => Fiber::Point { h },
            None => Fiber::Empty,
        }
    } else {
        Fiber::Empty
    }
}

/// Counters collected while searching.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Rectangles that were split into four children.
    pub subdivisions: usize,
    /// Candidate splits whose children were all well resolved but whose
    /// winding numbers did not add up to the parent's.
    pub additivity_violations: usize,
    /// Candidate splits rejected because a child boundary met a zero.
    pub rejected_splits: usize,
    /// Outward perturbations of the top-level rectangle.
    pub perturbations: usize,
    pub newton_runs: usize,
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSearch {
    pub roots: Vec<Root>,
    /// Winding number of the (possibly perturbed) top-level boundary.
    pub total_winding: i32,
    pub stats: SearchStats,
}

#[derive(Debug)]
struct BoundaryHit(&'static str);

struct Searcher<'a> {
    f: &'a SliceFunction,
    c: Quaternion,
    tol: f64,
    min_segment: f64,
    stats: SearchStats,
}

impl<'a> Searcher<'a> {
    fn eval(&mut self, z: Complex64) -> (Complex64, Complex64) {
        self.stats.evaluations += 1;
        self.f.qc_with_derivative(self.c, z)
    }

    /// Phase change of `Q_c` along the segment `[za, zb]`.
    fn segment_phase(
        &mut self,
        za: Complex64,
        qa: Complex64,
        zb: Complex64,
        qb: Complex64,
        depth: usize,
    ) -> std::result::Result<f64, BoundaryHit> {
        let zm = 0.5 * (za + zb);
        let (qm, dm) = self.eval(zm);
        if !qm.is_finite() || !dm.is_finite() {
            return Err(BoundaryHit("non-finite Q_c on boundary"));
        }
        if qm.norm() <= self.tol {
            return Err(BoundaryHit("|Q_c| below tolerance on boundary"));
        }
        let d1 = (qm / qa).arg();
        let d2 = (qb / qm).arg();
        let len = (zb - za).norm();
        // Phase steps below π/2 and a linearization that cannot reach the
        // origin within the half-segment.
        if d1.abs() + d2.abs() < 0.5 * PI && dm.norm() * len <= qm.norm() {
            return Ok(d1 + d2);
        }
        if len < self.min_segment || depth > 60 {
            return Err(BoundaryHit("boundary phase unresolved near a zero"));
        }
        Ok(self.segment_phase(za, qa, zm, qm, depth + 1)?
            + self.segment_phase(zm, qm, zb, qb, depth + 1)?)
    }

    fn winding(&mut self, rect: &SearchRect) -> std::result::Result<i32, BoundaryHit> {
        let corners = rect.corners();
        let mut total = 0.0;
        for k in 0..4 {
            let a = corners[k];
            let b = corners[(k + 1) % 4];
            // four initial pieces per edge
            let pts: Vec<Complex64> = (0..=4).map(|j| a + (b - a) * (j as f64 / 4.0)).collect();
            let mut prev = pts[0];
            let (mut qprev, _) = self.eval(prev);
            if qprev.norm() <= self.tol || !qprev.is_finite() {
                return Err(BoundaryHit("|Q_c| below tolerance at a corner"));
            }
            for &p in &pts[1..] {
                let (qp, _) = self.eval(p);
                if qp.norm() <= self.tol || !qp.is_finite() {
                    return Err(BoundaryHit("|Q_c| below tolerance on boundary"));
                }
                total += self.segment_phase(prev, qprev, p, qp, 0)?;
                prev = p;
                qprev = qp;
            }
        }
        let turns = total / (2.0 * PI);
        let w = turns.round();
        if (turns - w).abs() > 0.25 {
            return Err(BoundaryHit("winding number not close to an integer"));
        }
        Ok(w as i32)
    }

    /// Newton iteration `z ← z − m Q/Q′` from `start`.
    fn newton(&mut self, start: Complex64, multiplicity: i32, escape: f64) -> Option<(Complex64, f64)> {
        self.stats.newton_runs += 1;
        let m = multiplicity as f64;
        let mut z = start;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let (q, dq) = self.eval(z);
            if q.norm() == 0.0 {
                return Some((z, 0.0));
            }
            if dq.norm() == 0.0 || !dq.is_finite() {
                return None;
            }
            let step = m * q / dq;
            z -= step;
            if !z.is_finite() || (z - start).norm() > escape {
                return None;
            }
            if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
                let (q, _) = self.eval(z);
                return Some((z, q.norm()));
            }
        }
        None
    }

    /// Records a cluster of total multiplicity `w`, polished as a `w`-fold root.
    fn polish_cluster(&mut self, center: Complex64, w: i32, diam: f64, out: &mut Vec<(Complex64, i32, f64)>) {
        let (z, res) = match self.newton(center, w, 10.0 * diam) {
            Some(found) => found,
            None => (center, self.eval(center).0.norm()),
        };
        out.push((z, w, res));
    }

    fn search(&mut self, rect: SearchRect, w: i32, out: &mut Vec<(Complex64, i32, f64)>) -> Result<()> {
        if w <= 0 {
            return Ok(());
        }
        let diam = rect.diameter();
        let center = rect.center();
        if w == 1 {
            if let Some((z, res)) = self.newton(center, 1, 2.0 * diam) {
                if rect.contains(z, 1e-9 * diam) {
                    out.push((z, 1, res));
                    return Ok(());
                }
            }
        }
        if diam <= CLUSTER_DIAMETER {
            if w == 1 {
                return Err(Error::NonConvergence {
                    iterations: MAX_NEWTON_ITERATIONS,
                    x: center.re,
                    y: center.im,
                });
            }
            self.polish_cluster(center, w, diam, out);
            return Ok(());
        }
        for &fx in &SPLIT_FRACTIONS {
            let fy = 1.0 - fx;
            let children = rect.split(fx, fy);
            let mut windings = [0i32; 4];
            let mut hit = false;
            for (k, child) in children.iter().enumerate() {
                match self.winding(child) {
                    Ok(cw) => windings[k] = cw,
                    Err(_) => {
                        hit = true;
                        break;
                    }
                }
            }
            if hit {
                self.stats.rejected_splits += 1;
                continue;
            }
            if windings.iter().sum::<i32>() != w || windings.iter().any(|&c| c < 0) {
                self.stats.additivity_violations += 1;
                continue;
            }
            self.stats.subdivisions += 1;
            for (child, cw) in children.iter().zip(windings) {
                self.search(*child, cw, out)?;
            }
            return Ok(());
        }
        // Near a multiple zero |Q_c| drops below tolerance on every split
        // line well before the cluster threshold is reached.
        if w >= 2 {
            self.polish_cluster(center, w, diam, out);
            return Ok(());
        }
        Err(Error::IllConditioned(format!(
            "no admissible split of [{}, {}] x [{}, {}] with winding {w}",
            rect.x_min, rect.x_max, rect.y_min, rect.y_max
        )))
    }
}

/// All zeros of `Q_c` in `rect`.
pub fn find_roots(f: &SliceFunction, c: Quaternion, rect: SearchRect, tol: f64) -> Result<Vec<Root>> {
    find_roots_detailed(f, c, rect, tol).map(|s| s.roots)
}

/// [`find_roots`] with search statistics.
pub fn find_roots_detailed(f: &SliceFunction, c: Quaternion, rect: SearchRect, tol: f64) -> Result<RootSearch> {
    rect.validate()?;
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidInput("tolerance must be non-negative".into()));
    }
    if is_identically_zero(f, c, &rect, tol) {
        return Err(Error::BoundaryZero(
            "Q_c vanishes identically: f attains c on every sphere (degenerate)".into(),
        ));
    }
    let mut searcher = Searcher {
        f,
        c,
        tol,
        min_segment: 1e-13 * (1.0 + rect.diameter()),
        stats: SearchStats::default(),
    };
    let diam = rect.diameter();
    let mut attempt = rect;
    let mut total = Err("");
    for k in 0..=PERTURBATION_ATTEMPTS {
        if k > 0 {
            searcher.stats.perturbations += 1;
            attempt = rect.expanded(k as f64 * 1e-6 * diam);
        }
        match searcher.winding(&attempt) {
            Ok(w) => {
                total = Ok(w);
                break;
            }
            Err(BoundaryHit(reason)) => total = Err(reason),
        }
    }
    let total = total.map_err(|reason| {
        Error::BoundaryZero(format!(
            "{reason} after {PERTURBATION_ATTEMPTS} outward perturbations of the rectangle"
        ))
    })?;

    let mut raw = Vec::new();
    searcher.search(attempt, total, &mut raw)?;
    let stats = searcher.stats;

    let mut roots: Vec<Root> = Vec::with_capacity(raw.len());
    for (z, w, residual) in raw {
        let (x, mut y) = (z.re, z.im);
        if y < -REAL_AXIS_SNAP {
            continue;
        }
        if y.abs() <= REAL_AXIS_SNAP {
            y = 0.0;
        }
        if let Some(prev) = roots
            .iter_mut()
            .find(|r| (r.x - x).hypot(r.y - y) <= 1e-9 * (1.0 + x.abs()))
        {
            prev.winding += w;
            continue;
        }
        roots.push(Root {
            x,
            y,
            winding: w,
            fiber: fiber(f, c, x, y),
            residual,
        });
    }
    roots.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    Ok(RootSearch {
        roots,
        total_winding: total,
        stats,
    })
}

fn is_identically_zero(f: &SliceFunction, c: Quaternion, rect: &SearchRect, tol: f64) -> bool {
    let fracs = [0.0, 0.317, 0.5, 0.781, 1.0];
    fracs.iter().all(|&a| {
        fracs.iter().all(|&b| {
            let z = Complex64::new(
                rect.x_min + a * (rect.x_max - rect.x_min),
                rect.y_min + b * (rect.y_max - rect.y_min),
            );
            f.qc(c, z).norm() <= tol
        })
    })
}

/// Grid samples `(x, y, |Q_c(x+iy)|)` on a `grid_n × grid_n` lattice.
pub fn qc_grid(f: &SliceFunction, c: Quaternion, rect: &SearchRect, grid_n: usize) -> Vec<(f64, f64, f64)> {
    let n = grid_n.max(2);
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        let y = rect.y_min + (rect.y_max - rect.y_min) * j as f64 / (n - 1) as f64;
        for i in 0..n {
            let x = rect.x_min + (rect.x_max - rect.x_min) * i as f64 / (n - 1) as f64;
            out.push((x, y, f.qc(c, Complex64::new(x, y)).norm()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AvoidanceScan {
    pub min_abs_q: f64,
    /// Grid point where the minimum is attained.
    pub argmin: (f64, f64),
    pub roots: Vec<Root>,
}

/// Root search plus the minimum of `|Q_c|` on a grid. An empty root list
/// certifies avoidance only inside `rect`.
pub fn avoidance_scan(
    f: &SliceFunction,
    c: Quaternion,
    rect: SearchRect,
    grid_n: usize,
    tol: f64,
) -> Result<AvoidanceScan> {
    if grid_n < 2 {
        return Err(Error::InvalidInput("grid_n must be at least 2".into()));
    }
    let roots = find_roots(f, c, rect, tol)?;
    let (mut min, mut argmin) = (f64::INFINITY, (rect.x_min, rect.y_min));
    for (x, y, v) in qc_grid(f, c, &rect, grid_n) {
        if v < min {
            min = v;
            argmin = (x, y);
        }
    }
    Ok(AvoidanceScan {
        min_abs_q: min,
        argmin,
        roots,
    })
}
