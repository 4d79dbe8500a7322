use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::matrix::Matrix;
use super::scalar::{Scalar, C64};
use crate::{Error, Result};

/// A(xi) = A0 + A1 xi + ... + A4 xi^4 with k x k coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPencil<T> {
    a: [Matrix<T>; 5],
}

impl<T: Scalar> MatrixPencil<T> {
    pub fn new(a: [Matrix<T>; 5]) -> Result<Self> {
        let k = a[0].rows();
        if k == 0 {
            return Err(Error::Dimension("empty pencil".into()));
        }
        for m in &a {
            if m.rows() != k || m.cols() != k {
                return Err(Error::Dimension(format!(
                    "pencil coefficient is {}x{}, expected {k}x{k}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { a })
    }

    pub fn zero(k: usize) -> Self {
        Self { a: std::array::from_fn(|_| Matrix::zeros(k, k)) }
    }

    pub fn k(&self) -> usize {
        self.a[0].rows()
    }

    pub fn coeffs(&self) -> &[Matrix<T>; 5] {
        &self.a
    }

    pub fn coeff(&self, j: usize) -> &Matrix<T> {
        &self.a[j]
    }

    pub fn into_coeffs(self) -> [Matrix<T>; 5] {
        self.a
    }

    /// Horner evaluation of A(xi).
    pub fn eval(&self, xi: &T) -> Matrix<T> {
        self.a.iter().rev().fold(Matrix::zeros(self.k(), self.k()), |acc, m| &acc.scale(xi) + m)
    }

    /// Entries of A(xi) as polynomials in xi.
    pub fn to_laurent(&self) -> Matrix<LaurentPoly<T>> {
        Matrix::from_fn(self.k(), self.k(), |i, l| {
            LaurentPoly::from_coeffs(&self.a.iter().map(|m| m[(i, l)].clone()).collect::<Vec<_>>())
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&Matrix<T>) -> Matrix<U>) -> MatrixPencil<U> {
        MatrixPencil { a: std::array::from_fn(|j| f(&self.a[j])) }
    }

    pub fn to_c64(&self) -> MatrixPencil<C64> {
        self.map(|m| m.to_c64())
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(Matrix::max_abs).fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct PencilJson {
    k: usize,
    a: Vec<Matrix<C64>>,
}

impl Serialize for MatrixPencil<C64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PencilJson { k: self.k(), a: self.a.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixPencil<C64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let p = PencilJson::deserialize(d)?;
        let a: [Matrix<C64>; 5] =
            p.a.try_into().map_err(|_| D::Error::custom("pencil needs exactly five matrices"))?;
        let pencil = MatrixPencil::new(a).map_err(D::Error::custom)?;
        if pencil.k() != p.k {
            return Err(D::Error::custom(format!("k = {} but matrices are {}x{}", p.k, pencil.k(), pencil.k())));
        }
        Ok(pencil)
    }
}
