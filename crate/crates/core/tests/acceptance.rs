//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use quaternionic_picard::complexified::{cq_mul, qq, zero_divisor_witness};
use quaternionic_picard::constructions::{avoid_three, trig_example, trig_preimage};
use quaternionic_picard::density::{run_density_scan, Plane};
use quaternionic_picard::picard::{build_problem, monomial_curve_check, mu_inverse, phi_map, psi, FiveValueProblem, Verdict};
use quaternionic_picard::slice::stem_pair_check;
use quaternionic_picard::zeros::{find_roots_detailed, SearchRect};
use quaternionic_picard::{CQuaternion, Complex64, ImaginaryUnit, Quaternion, SliceFunction};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_q(rng: &mut ChaCha8Rng, r: f64) -> Quaternion {
    Quaternion::new(
        rng.random_range(-r..r),
        rng.random_range(-r..r),
        rng.random_range(-r..r),
        rng.random_range(-r..r),
    )
}

fn random_unit(rng: &mut ChaCha8Rng) -> ImaginaryUnit {
    loop {
        let (x, y, z) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let n2: f64 = x * x + y * y + z * z;
        if n2 > 1e-4 && n2 <= 1.0 {
            return ImaginaryUnit::new(x, y, z).unwrap();
        }
    }
}

fn random_problem(rng: &mut ChaCha8Rng) -> FiveValueProblem {
    loop {
        let c: [Quaternion; 5] = std::array::from_fn(|_| random_q(rng, 1.0));
        if let Ok(p) = build_problem(&c) {
            return p;
        }
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

/// Zero divisors `(1⊗1 + H⊗i)(v′⊗1)` and generic elements.
fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst_qq = 0.0f64;
    let mut worst_h = 0.0f64;
    let mut worst_ann = 0.0f64;
    let mut failures = 0;
    for _ in 0..10_000 {
        let h = random_unit(&mut rng);
        let vp = random_q(&mut rng, 1.0);
        if vp.norm() < 0.05 {
            continue;
        }
        let lift = CQuaternion::from_pair(Quaternion::ONE, h.as_quaternion());
        let v = cq_mul(&lift, &CQuaternion::from_quaternion(vp));
        worst_qq = worst_qq.max(qq(&v).norm());
        match zero_divisor_witness(&v) {
            Ok((w, ann)) => {
                worst_h = worst_h.max((w.as_quaternion() - h.as_quaternion()).norm());
                worst_ann = worst_ann.max(cq_mul(&ann, &v).norm());
            }
            Err(_) => failures += 1,
        }
    }
    let mut wrongly_accepted = 0;
    let mut generic = 0;
    while generic < 10_000 {
        let v = CQuaternion::from_pair(random_q(&mut rng, 1.0), random_q(&mut rng, 1.0));
        if qq(&v).norm() < 1e-3 {
            continue;
        }
        generic += 1;
        if zero_divisor_witness(&v).is_ok() {
            wrongly_accepted += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        failures == 0 && wrongly_accepted == 0 && worst_qq <= 1e-10 && worst_h <= 1e-9 && worst_ann <= 1e-10 && within(t, 5.0),
        format!(
            "max|qq|={worst_qq:.1e} max H err={worst_h:.1e} max annihilated={worst_ann:.1e} \
             missed={failures} false witnesses={wrongly_accepted} in {:.2}s",
            t.as_secs_f64()
        ),
    )
}

/// `stem_pair_check` on two random slices against `stem_eval`.
fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let deg = rng.random_range(0..=8);
        let f = SliceFunction::polynomial((0..=deg).map(|_| random_q(&mut rng, 1.0)).collect());
        for _ in 0..10 {
            let (x, y) = (rng.random_range(-1.0..1.0), rng.random_range(0.0..1.0));
            let (f1, f2) = f.stem_eval(Complex64::new(x, y)).pair();
            for i in [random_unit(&mut rng), random_unit(&mut rng)] {
                let v = stem_pair_check(&f, x, y, i);
                worst = worst.max((v.f1 - f1).norm()).max((v.f2 - f2).norm());
            }
        }
    }
    outcome(worst <= 1e-10, format!("max pair deviation {worst:.1e} over 1000 polynomials x 10 points x 2 slices"))
}

/// Preimages off ℂ_I and the lower bound for Re Q_c on ℂ_I.
fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = trig_example();
    let start = Instant::now();
    let mut worst_rt = 0.0f64;
    let mut errors = 0;
    let mut n = 0;
    while n < 10_000 {
        let c = random_q(&mut rng, 3.0);
        if c.y == 0.0 && c.z == 0.0 {
            continue;
        }
        n += 1;
        match trig_preimage(c) {
            Ok(q) => worst_rt = worst_rt.max((f.eval(q) - c).norm()),
            Err(_) => errors += 1,
        }
    }
    let targets: Vec<Quaternion> = (0..100)
        .map(|_| Quaternion::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), 0.0, 0.0))
        .collect();
    let (min_re, worst_dev) = targets
        .par_iter()
        .map(|&c| {
            let mut min_re = f64::INFINITY;
            let mut dev = 0.0f64;
            let bound = 1.0 + c.norm_sqr();
            for i in 0..200 {
                for j in 0..200 {
                    let z = Complex64::new(-20.0 + 40.0 * i as f64 / 199.0, 20.0 * j as f64 / 199.0);
                    let re = f.qc(c, z).re;
                    min_re = min_re.min(re);
                    dev = dev.max((re - bound).abs() / bound);
                }
            }
            (min_re, dev)
        })
        .reduce(|| (f64::INFINITY, 0.0), |a, b| (a.0.min(b.0), a.1.max(b.1)));
    let t = start.elapsed();
    outcome(
        errors == 0 && worst_rt <= 1e-9 && min_re >= 1.0 - 1e-12 && within(t, 30.0),
        format!(
            "max round trip {worst_rt:.1e}, min Re Q {min_re:.6}, max |Re Q/(1+|c|^2) - 1| {worst_dev:.1e} in {:.2}s",
            t.as_secs_f64()
        ),
    )
}

/// Three-point avoidance: certificates and sampled distances.
fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let mut worst_slice = 0.0f64;
    let mut reports = Vec::new();
    for _ in 0..1000 {
        let (a, b, c) = (random_q(&mut rng, 2.0), random_q(&mut rng, 2.0), random_q(&mut rng, 2.0));
        let r = avoid_three(a, b, c).expect("distinct triple");
        for t in &r.transformed_targets {
            worst_slice = worst_slice.max(t.y.abs()).max(t.z.abs());
        }
        reports.push(r);
    }
    let samples: Vec<(usize, Vec<Quaternion>)> = (0..20)
        .map(|k| (k, (0..10_000).map(|_| random_q(&mut rng, 3.0)).collect()))
        .collect();
    let min_dist = samples
        .par_iter()
        .map(|(k, qs)| {
            let r = &reports[*k];
            qs.iter()
                .map(|&q| {
                    let v = r.g.eval(q);
                    r.avoided.iter().map(|&c| (v - c).norm()).fold(f64::INFINITY, f64::min)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let t = start.elapsed();
    outcome(
        worst_slice <= 1e-10 && min_dist > 1e-6 && within(t, 60.0),
        format!(
            "max off-slice component {worst_slice:.1e}, min sampled distance {min_dist:.2e} in {:.2}s",
            t.as_secs_f64()
        ),
    )
}

/// `ψ∘φ = 0` and `μ∘φ = id`.
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_psi = 0.0f64;
    let mut worst_mu = 0.0f64;
    for _ in 0..20 {
        let p = random_problem(&mut rng);
        for _ in 0..1000 {
            let z = CQuaternion::from_pair(random_q(&mut rng, 2.0), random_q(&mut rng, 2.0));
            let g = phi_map(&p, &z);
            let r = psi(&p, &[g[0], g[1], g[2], g[3]], g[4]).norm() / (1.0 + z.norm().powi(4));
            worst_psi = worst_psi.max(r);
            worst_mu = worst_mu.max((mu_inverse(&p, &g) - z).norm());
        }
    }
    outcome(
        worst_psi <= 1e-10 && worst_mu <= 1e-9,
        format!("max scaled |psi(phi(z))| {worst_psi:.1e}, max |mu(phi(z)) - z| {worst_mu:.1e}"),
    )
}

/// The coefficient the case analysis singles out, as `(degree, value)`.
fn predicted_coefficient(m: &Matrix4<f64>, n: [f64; 4], alpha: [f64; 5], e: [i64; 5]) -> (i64, f64) {
    // z ↦ 1/z reflects degrees, so normalize to e₅ ≥ 0
    let flip = e[4] < 0;
    let e = if flip { e.map(|k| -k) } else { e };
    let form = |u: [f64; 4]| -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += m[(i, j)] * u[i] * u[j];
            }
        }
        acc
    };
    let lo = e[..4].iter().copied().min().unwrap();
    let hi = e[..4].iter().copied().max().unwrap();
    let (degree, value) = if lo < 0 {
        let u = std::array::from_fn(|i| if e[i] == lo { alpha[i] } else { 0.0 });
        (2 * lo, -form(u))
    } else if e[4] > 0 {
        let u: [f64; 4] = std::array::from_fn(|i| if e[i] == 0 { alpha[i] - n[i] } else { -n[i] });
        if u.iter().all(|&x| x == 0.0) {
            let d = [alpha[4]; 4];
            (2 * e[4], -form(d))
        } else {
            (0, -form(u))
        }
    } else {
        let u = std::array::from_fn(|i| if e[i] == hi { alpha[i] } else { 0.0 });
        (2 * hi, -form(u))
    };
    (if flip { -degree } else { degree }, value)
}

/// Monomial curves in {−3..3}⁵ ∖ {0} are never contained in Z.
fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let start = Instant::now();
    let exponents: Vec<[i64; 5]> = (0..7i64.pow(5))
        .map(|mut k| {
            std::array::from_fn(|_| {
                let d = k % 7 - 3;
                k /= 7;
                d
            })
        })
        .filter(|m: &[i64; 5]| *m != [0; 5])
        .collect();
    assert_eq!(exponents.len(), 16806);
    let mut all_zero = 0usize;
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for _ in 0..20 {
        let prob = random_problem(&mut rng);
        let alphas: Vec<[[f64; 5]; 2]> = exponents
            .iter()
            .map(|_| {
                std::array::from_fn(|_| {
                    std::array::from_fn(|_| {
                        let a: f64 = rng.random_range(0.1..2.0);
                        if rng.random::<bool>() { a } else { -a }
                    })
                })
            })
            .collect();
        let (z, w, c) = exponents
            .par_iter()
            .zip(&alphas)
            .map(|(&m, pair)| {
                let mut zeros = 0usize;
                let mut worst = 0.0f64;
                for &alpha in pair {
                    let cert = monomial_curve_check(&prob, alpha, m).expect("nonzero alpha");
                    if cert.verdict == Verdict::AllZero {
                        zeros += 1;
                    }
                    let (deg, value) = predicted_coefficient(prob.m(), prob.target_norms(), alpha, m);
                    worst = worst.max((cert.coefficient(deg) - value).abs() / (1.0 + value.abs()));
                }
                (zeros, worst, pair.len())
            })
            .reduce(|| (0, 0.0, 0), |a, b| (a.0 + b.0, a.1.max(b.1), a.2 + b.2));
        all_zero += z;
        worst = worst.max(w);
        checked += c;
    }
    let t = start.elapsed();
    outcome(
        all_zero == 0 && worst <= 1e-10 && within(t, 600.0),
        format!(
            "{checked} certificates, {all_zero} all-zero, max predicted-coefficient deviation {worst:.1e} in {:.1}s",
            t.as_secs_f64()
        ),
    )
}

/// Coefficients of the star product `(Σ qⁿaₙ) * (Σ qᵐbₘ) = Σ qⁿ⁺ᵐ aₙbₘ`.
fn star(a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    let mut out = vec![Quaternion::ZERO; a.len() + b.len() - 1];
    for (n, &an) in a.iter().enumerate() {
        for (m, &bm) in b.iter().enumerate() {
            out[n + m] += an * bm;
        }
    }
    out
}

/// Products of linear factors `q − r_k`: `Q_0` vanishes exactly at
/// `Re r_k ± i|Im r_k|`.
fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rect = SearchRect::new(-3.0, 3.0, 0.0, 3.0).unwrap();
    let mut worst = 0.0f64;
    let mut count_mismatch = 0;
    let mut violations = 0;
    let mut errors = Vec::new();
    for case in 0..100 {
        let deg = rng.random_range(1..=4);
        let mut planted: Vec<Complex64> = Vec::new();
        let mut roots = Vec::new();
        while roots.len() < deg {
            let h = random_unit(&mut rng);
            let (x, y) = (rng.random_range(-2.0..2.0), rng.random_range(0.3..2.5));
            let z = Complex64::new(x, y);
            if planted.iter().all(|p| (p - z).norm() >= 0.1) {
                planted.push(z);
                roots.push(Quaternion::new(x, 0.0, 0.0, 0.0) + h.as_quaternion() * y);
            }
        }
        let mut coeffs = vec![Quaternion::ONE];
        for r in &roots {
            coeffs = star(&coeffs, &[-*r, Quaternion::ONE]);
        }
        // half the cases shift f and the target by the same constant
        let c = if case % 2 == 0 { Quaternion::ZERO } else { random_q(&mut rng, 1.0) };
        coeffs[0] += c;
        let f = SliceFunction::polynomial(coeffs);
        match find_roots_detailed(&f, c, rect, 1e-14) {
            Ok(search) => {
                violations += search.stats.additivity_violations;
                if search.roots.len() != planted.len() || search.roots.iter().any(|r| r.winding != 1) {
                    count_mismatch += 1;
                }
                for p in &planted {
                    let d = search
                        .roots
                        .iter()
                        .map(|r| (Complex64::new(r.x, r.y) - p).norm())
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(d);
                }
            }
            Err(e) => errors.push(format!("case {case}: {e}")),
        }
    }
    outcome(
        errors.is_empty() && count_mismatch == 0 && violations == 0 && worst <= 1e-8,
        format!(
            "max planted-root error {worst:.1e}, count mismatches {count_mismatch}, additivity violations {violations}, errors {errors:?}"
        ),
    )
}

/// Lattice density of the trig example off ℂ_I.
fn criterion_8() -> Outcome {
    let r = run_density_scan(&trig_example(), 3.0, 0.25, Some(Plane::SLICE_I), 1e-3).unwrap();
    outcome(
        r.fraction == 1.0,
        format!(
            "{} of {} lattice points off the slab attained ({} excluded)",
            r.attained,
            r.grid_points - r.excluded,
            r.excluded
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("zero-divisor equivalence", criterion_1),
        ("representation formula", criterion_2),
        ("surjectivity onto H minus C_I", criterion_3),
        ("three-point avoidance", criterion_4),
        ("phi/psi/mu identities", criterion_5),
        ("monomial-curve certificate", criterion_6),
        ("root finder against planted zeros", criterion_7),
        ("density of the trig example", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {} ({name}): {}", k + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
