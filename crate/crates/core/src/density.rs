//! Lattice scans of the image of a slice function inside a ball of ℍ.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::transformed_trig_preimage;
use crate::error::{Error, Result};
use crate::quaternion::{slice_point, ImaginaryUnit, Quaternion};
use crate::slice::{NamedSeries, SliceFunction};
use crate::zeros::{find_roots, Fiber, SearchRect};

/// Default half-width of the slab removed around an excluded plane.
pub const DEFAULT_EXCLUSION_EPS: f64 = 1e-3;

/// The real affine plane `point + span_ℝ{u, v}`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub point: Quaternion,
    pub u: Quaternion,
    pub v: Quaternion,
}

impl Plane {
    /// The slice ℂ_I.
    pub const SLICE_I: Plane = Plane {
        point: Quaternion::ZERO,
        u: Quaternion::ONE,
        v: Quaternion::I,
    };

    pub fn distance(&self, c: Quaternion) -> f64 {
        let e1 = self.u / self.u.norm();
        let v = self.v - e1 * self.v.dot(e1);
        let e2 = v / v.norm();
        let d = c - self.point;
        (d - e1 * d.dot(e1) - e2 * d.dot(e2)).norm()
    }

    fn validate(&self) -> Result<()> {
        let e1 = self.u / self.u.norm();
        let v = self.v - e1 * self.v.dot(e1);
        if !(self.u.norm() > 0.0) || !(v.norm() > 1e-12 * self.v.norm().max(1.0)) {
            return Err(Error::DegeneratePlane);
        }
        Ok(())
    }
}

/// The plane a trig-derived function `aut(·)·λ + p` of the `sinJcosK` series
/// provably omits.
pub fn known_avoided_plane(f: &SliceFunction) -> Option<Plane> {
    if f.named_kind() != Some(NamedSeries::SinJCosK) {
        return None;
    }
    let map = f.coeff_map();
    Some(Plane {
        point: map.offset,
        u: map.scale,
        v: map.aut.apply(Quaternion::I) * map.scale,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub radius: f64,
    pub step: f64,
    pub eps: f64,
    pub exclusion: Option<Plane>,
    pub method: String,
    /// Lattice points in the closed ball.
    pub grid_points: usize,
    pub excluded: usize,
    pub attained: usize,
    /// `attained / (grid_points − excluded)`; 1 when nothing is left.
    pub fraction: f64,
    /// Largest distance from an unattained point to the attained set;
    /// `None` when every point is attained or none is.
    pub max_gap: Option<f64>,
    /// Up to 100 unattained points.
    pub unattained_sample: Vec<Quaternion>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Method {
    ClosedForm,
    RootSearch,
}

/// A preimage of `c` under `f`, confirmed by evaluation.
fn attain(f: &SliceFunction, c: Quaternion, method: Method, rect: &SearchRect) -> Option<Quaternion> {
    let tol = 1e-8 * (1.0 + c.norm());
    let candidate = match method {
        Method::ClosedForm => transformed_trig_preimage(f, c)?.ok(),
        Method::RootSearch => match find_roots(f, c, *rect, 1e-14) {
            Ok(roots) => roots.iter().find_map(|r| match r.fiber {
                Fiber::Point { h } => Some(slice_point(r.x, r.y, h)),
                Fiber::Sphere => Some(slice_point(r.x, r.y, ImaginaryUnit::I)),
                Fiber::Empty => None,
            }),
            // Q_c vanishing identically means f attains c on whole spheres
            Err(Error::BoundaryZero(_)) => Some(Quaternion::ZERO),
            Err(_) => None,
        },
    }?;
    ((f.eval(candidate) - c).norm() <= tol).then_some(candidate)
}

fn lattice(radius: f64, step: f64) -> Vec<[i64; 4]> {
    let n = (radius / step).floor() as i64;
    let r2 = (radius / step) * (radius / step) * (1.0 + 1e-12);
    let mut out = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                for d in -n..=n {
                    if ((a * a + b * b + c * c + d * d) as f64) <= r2 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn to_point(k: [i64; 4], step: f64) -> Quaternion {
    Quaternion::new(k[0] as f64 * step, k[1] as f64 * step, k[2] as f64 * step, k[3] as f64 * step)
}

/// Smallest euclidean lattice distance from `k` to `attained`, scanning
/// shells of growing sup-radius until no closer point can remain.
fn nearest_attained(k: [i64; 4], attained: &HashSet<[i64; 4]>, max_shell: i64) -> Option<f64> {
    let mut best: Option<i64> = None;
    for s in 1..=max_shell {
        if let Some(b) = best {
            if s * s > b {
                break;
            }
        }
        for a in -s..=s {
            for b in -s..=s {
                for c in -s..=s {
                    for d in -s..=s {
                        if a.abs().max(b.abs()).max(c.abs()).max(d.abs()) != s {
                            continue;
                        }
                        let q = [k[0] + a, k[1] + b, k[2] + c, k[3] + d];
                        if attained.contains(&q) {
                            let d2 = a * a + b * b + c * c + d * d;
                            best = Some(best.map_or(d2, |x| x.min(d2)));
                        }
                    }
                }
            }
        }
    }
    best.map(|d2| (d2 as f64).sqrt())
}

/// Attempts to attain every lattice point `step·ℤ⁴` of the closed ball of
/// `radius`, skipping points within `eps` of `exclusion`.
pub fn run_density_scan(
    f: &SliceFunction,
    radius: f64,
    step: f64,
    exclusion: Option<Plane>,
    eps: f64,
) -> Result<DensityReport> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidInput("grid step must be positive".into()));
    }
    if !(radius >= 0.0) || !radius.is_finite() {
        return Err(Error::InvalidInput("radius must be non-negative".into()));
    }
    if !(eps >= 0.0) {
        return Err(Error::InvalidInput("exclusion width must be non-negative".into()));
    }
    if let Some(plane) = &exclusion {
        plane.validate()?;
    }
    let method = if known_avoided_plane(f).is_some() {
        Method::ClosedForm
    } else {
        Method::RootSearch
    };
    let reach = radius + 1.0;
    let rect = SearchRect::new(-reach, reach, 0.0, reach)?;

    let points = lattice(radius, step);
    let status: Vec<Option<bool>> = points
        .par_iter()
        .map(|&k| {
            let c = to_point(k, step);
            if exclusion.is_some_and(|p| p.distance(c) <= eps) {
                return None;
            }
            Some(attain(f, c, method, &rect).is_some())
        })
        .collect();

    let excluded = status.iter().filter(|s| s.is_none()).count();
    let attained_set: HashSet<[i64; 4]> = points
        .iter()
        .zip(&status)
        .filter(|(_, s)| **s == Some(true))
        .map(|(k, _)| *k)
        .collect();
    let unattained: Vec<[i64; 4]> = points
        .iter()
        .zip(&status)
        .filter(|(_, s)| **s == Some(false))
        .map(|(k, _)| *k)
        .collect();

    let max_shell = 2 * (radius / step).floor() as i64 + 1;
    let max_gap = if attained_set.is_empty() || unattained.is_empty() {
        None
    } else {
        unattained
            .par_iter()
            .filter_map(|&k| nearest_attained(k, &attained_set, max_shell))
            .map(|d| d * step)
            .reduce_with(f64::max)
    };
    let considered = points.len() - excluded;
    Ok(DensityReport {
        radius,
        step,
        eps,
        exclusion,
        method: match method {
            Method::ClosedForm => "closed_form",
            Method::RootSearch => "root_search",
        }
        .into(),
        grid_points: points.len(),
        excluded,
        attained: attained_set.len(),
        fraction: if considered == 0 {
            1.0
        } else {
            attained_set.len() as f64 / considered as f64
        },
        max_gap,
        unattained_sample: unattained.iter().take(100).map(|&k| to_point(k, step)).collect(),
    })
}
