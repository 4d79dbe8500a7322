use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type C64 = Complex64;
pub type Q = BigRational;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Rational n/d.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Anything that can sit in a matrix: commutative ring with unit.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// A field backend: exact rationals or complex doubles.
pub trait Scalar: Ring + Div<Output = Self> + 'static {
    const EXACT: bool;
    fn from_i64(n: i64) -> Self;
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> C64;

    /// Zero test: exact in rational mode, `|x| <= tol` otherwise.
    fn negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

impl Scalar for Q {
    const EXACT: bool = true;
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}
