//! Sparse Laurent polynomials `Σ b_k z^k`, `k ∈ ℤ`, over any ring-like
//! coefficient type. Used with `f64` and with exact `BigRational`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i64, T>,
}

impl<T> Default for LaurentPoly<T> {
    fn default() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
}

impl<T> LaurentPoly<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·z^k`.
    pub fn monomial(c: T, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    fn add_term(&mut self, k: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn coefficient(&self, k: i64) -> T {
        self.terms.get(&k).cloned().unwrap_or_else(T::zero)
    }

    /// Stored `(degree, coefficient)` pairs in increasing degree. Exact zeros
    /// are never stored.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term(k, c.clone() * s.clone());
        }
        out
    }

    pub fn map<U, F>(&self, mut f: F) -> LaurentPoly<U>
    where
        U: Clone + Zero + Add<Output = U> + Sub<Output = U> + Mul<Output = U> + Neg<Output = U>,
        F: FnMut(&T) -> U,
    {
        let mut out = LaurentPoly::zero();
        for (&k, c) in &self.terms {
            out.add_term(k, f(c));
        }
        out
    }
}

impl<T> Add for &LaurentPoly<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = LaurentPoly<T>;
    fn add(self, o: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl<T> Sub for &LaurentPoly<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = LaurentPoly<T>;
    fn sub(self, o: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl<T> Mul for &LaurentPoly<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = LaurentPoly<T>;
    fn mul(self, o: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}
