use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Finite Laurent polynomial in one variable, exponent -> coefficient.
/// Exact zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn from_terms<I: IntoIterator<Item = (i32, T)>>(it: I) -> Self {
        let mut p = Self { terms: BTreeMap::new() };
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: T, e: i32) -> Self {
        Self::from_terms([(e, c)])
    }

    /// Coefficients c_0 + c_1 x + ... of an ordinary polynomial.
    pub fn from_coeffs(cs: &[T]) -> Self {
        Self::from_terms(cs.iter().cloned().enumerate().map(|(i, c)| (i as i32, c)))
    }

    fn add_term(&mut self, e: i32, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())))
    }

    /// Multiply by x^n.
    pub fn shift(&self, n: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + n, c.clone())).collect() }
    }

    pub fn eval(&self, x: &T) -> T {
        let inv = T::one() / x.clone();
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let base = if *e < 0 { &inv } else { x };
            acc + c.clone() * pow(base, e.unsigned_abs())
        })
    }

    /// Drop coefficients below `rel` times the largest one. No-op in exact mode.
    pub fn normalized(&self, rel: f64) -> Self {
        if T::EXACT {
            return self.clone();
        }
        let max = self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max);
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.magnitude() >= rel * max && c.magnitude() > 0.0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

pub(crate) fn pow<T: Scalar>(x: &T, n: u32) -> T {
    let mut r = T::one();
    for _ in 0..n {
        r = r * x.clone();
    }
    r
}

impl<T: Scalar> Add<&LaurentPoly<T>> for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub<&LaurentPoly<T>> for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul<&LaurentPoly<T>> for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = LaurentPoly { terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($ty:ident, $($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr<$ty<T>> for $ty<T> {
            type Output = $ty<T>;
            fn $m(self, rhs: $ty<T>) -> $ty<T> { (&self).$m(&rhs) }
        }
    )*
        impl<T: Scalar> Neg for $ty<T> {
            type Output = $ty<T>;
            fn neg(self) -> $ty<T> { -(&self) }
        }
        impl<T: Scalar> Zero for $ty<T> {
            fn zero() -> Self { Self { terms: Default::default() } }
            fn is_zero(&self) -> bool { self.terms.is_empty() }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

impl<T: Scalar> One for LaurentPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}
