//! Minimal double-double arithmetic for evaluating truncated power series
//! with heavy cancellation (e.g. `sin` at `|z| ≈ 20`).

use num_complex::Complex64;

#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub(crate) fn from_f64(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub(crate) fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub(crate) fn mul_f64(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub(crate) fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self.add(Dd::from_f64(q1).mul_f64(b).neg());
        let q2 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Copy, Clone, Debug, Default)]
pub(crate) struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    pub(crate) fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `self · z + c` for an exact complex `z` and real double-double `c`.
    fn mul_add_real(self, z: Complex64, c: Dd) -> CDd {
        let re = self
            .re
            .mul_f64(z.re)
            .add(self.im.mul_f64(z.im).neg())
            .add(c);
        let im = self.re.mul_f64(z.im).add(self.im.mul_f64(z.re));
        CDd { re, im }
    }
}

/// Horner evaluation of `Σ c_k z^k` with double-double accumulation.
pub(crate) fn horner_real_coeffs(coeffs: &[Dd], z: Complex64) -> Complex64 {
    let mut acc = CDd::default();
    for &c in coeffs.iter().rev() {
        acc = acc.mul_add_real(z, c);
    }
    acc.to_complex()
}

/// `1/k!` for `k = 0..n` as double-doubles.
pub(crate) fn inverse_factorials(n: usize) -> Vec<Dd> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = Dd::from_f64(1.0);
    out.push(cur);
    for k in 1..=n {
        cur = cur.div_f64(k as f64);
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_factorials_are_accurate() {
        let f = inverse_factorials(30);
        // 1/20! in double-double agrees with the f64 value to full precision
        let direct = 1.0 / 2432902008176640000.0f64;
        assert!((f[20].to_f64() - direct).abs() <= 1e-16 * direct);
        // k!·(1/k!) = 1 to double-double accuracy
        let mut prod = f[25];
        for k in 1..=25 {
            prod = prod.mul_f64(k as f64);
        }
        assert!((prod.to_f64() - 1.0).abs() < 1e-15);
        assert!((prod.add(Dd::from_f64(-1.0))).to_f64().abs() < 1e-28);
    }

    #[test]
    fn horner_with_cancellation() {
        // exp(-20) from its Taylor series suffers cancellation ~1e17 in f64.
        let inv = inverse_factorials(120);
        let v = horner_real_coeffs(&inv, Complex64::new(-20.0, 0.0));
        let expected = (-20.0f64).exp();
        assert!((v.re - expected).abs() <= 1e-10 * expected, "{} vs {}", v.re, expected);
    }
}
