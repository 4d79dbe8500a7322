//! det(eta I - A(xi)) for a matrix pencil.
//!
//! Exact mode: Faddeev-LeVerrier over Laurent-polynomial entries, with a
//! cofactor expansion available for k <= 4 as an independent cross-check.
//! Numeric mode: evaluate on 4k+1 roots of unity, take the characteristic
//! polynomial of each Hessenberg form, interpolate back by inverse DFT.

use std::f64::consts::PI;

use num_traits::{One, Zero};

use super::bivar::BivarPoly;
use super::laurent::LaurentPoly;
use super::matrix::Matrix;
use super::pencil::MatrixPencil;
use super::scalar::{Ring, Scalar, C64, Q};
use super::ZERO_REL_TOL;
use crate::{Error, Result};

pub trait CharPoly {
    type Scalar;
    fn char_poly(&self) -> BivarPoly<Self::Scalar>;
}

impl CharPoly for MatrixPencil<Q> {
    type Scalar = Q;
    fn char_poly(&self) -> BivarPoly<Q> {
        let p = char_poly_faddeev(self);
        let k = self.k() as u32;
        assert!(p.is_monic(k), "characteristic polynomial must be monic");
        assert_eq!(p.degree_violations(k), 0, "deg a_j <= 4j violated");
        p
    }
}

impl CharPoly for MatrixPencil<C64> {
    type Scalar = C64;
    fn char_poly(&self) -> BivarPoly<C64> {
        char_poly_numeric(self)
    }
}

pub fn char_poly_faddeev<T: Scalar>(p: &MatrixPencil<T>) -> BivarPoly<T> {
    let a = p.to_laurent();
    let n = p.k();
    let mut c = vec![LaurentPoly::<T>::zero(); n + 1];
    c[n] = LaurentPoly::one();
    let mut m = Matrix::<LaurentPoly<T>>::zeros(n, n);
    let id = Matrix::<LaurentPoly<T>>::identity(n);
    for step in 1..=n {
        m = &(&a * &m) + &id.scale(&c[n - step + 1]);
        let tr = (&a * &m).trace();
        c[n - step] = -tr.scale(&(T::one() / T::from_i64(step as i64)));
    }
    let mut out = BivarPoly::zero();
    for (e, ce) in c.iter().enumerate() {
        out = &out + &BivarPoly::eta_pow_times(e as u32, ce);
    }
    out
}

/// Laplace expansion along the first row; any commutative ring.
pub fn det_cofactor<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows();
    match n {
        0 => R::one(),
        1 => m[(0, 0)].clone(),
        _ => {
            let mut acc = R::zero();
            for col in 0..n {
                if m[(0, col)].is_zero() {
                    continue;
                }
                let minor = Matrix::from_fn(n - 1, n - 1, |i, j| {
                    m[(i + 1, if j < col { j } else { j + 1 })].clone()
                });
                let term = m[(0, col)].clone() * det_cofactor(&minor);
                acc = if col % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Cofactor-expansion characteristic polynomial; only for k <= 4.
pub fn char_poly_cofactor<T: Scalar>(p: &MatrixPencil<T>) -> Result<BivarPoly<T>> {
    let k = p.k();
    if k > 4 {
        return Err(Error::OutOfRange(format!("cofactor expansion limited to k <= 4, got {k}")));
    }
    let a = p.to_laurent();
    let m = Matrix::from_fn(k, k, |i, j| {
        let entry = -BivarPoly::eta_pow_times(0, &a[(i, j)]);
        if i == j {
            &entry + &BivarPoly::eta()
        } else {
            entry
        }
    });
    Ok(det_cofactor(&m))
}

/// Coefficients (constant first) of det(eta I - H) for upper Hessenberg H.
fn hessenberg_char_poly(h: &nalgebra::DMatrix<C64>) -> Vec<C64> {
    let n = h.nrows();
    let mut p: Vec<Vec<C64>> = vec![vec![C64::one()]];
    for i in 1..=n {
        let prev = &p[i - 1];
        let mut next = vec![C64::zero(); i + 1];
        for (e, c) in prev.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= h[(i - 1, i - 1)] * c;
        }
        let mut sub = C64::one();
        for j in (1..i).rev() {
            sub *= h[(j, j - 1)];
            let coef = h[(j - 1, i - 1)] * sub;
            for (e, c) in p[j - 1].iter().enumerate() {
                next[e] -= coef * c;
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

pub fn char_poly_numeric(p: &MatrixPencil<C64>) -> BivarPoly<C64> {
    let k = p.k();
    let nodes = 4 * k + 1;
    let w = |n: usize| C64::from_polar(1.0, 2.0 * PI * n as f64 / nodes as f64);
    let vals: Vec<Vec<C64>> = (0..nodes)
        .map(|n| {
            let a = p.eval(&w(n)).to_nalgebra();
            hessenberg_char_poly(&a.hessenberg().h())
        })
        .collect();
    let mut terms = Vec::new();
    for e in 0..=k {
        for m in 0..nodes {
            let s: C64 = (0..nodes).map(|n| vals[n][e] * w((n * m) % nodes).conj()).sum();
            terms.push(((e as u32, m as u32), s / nodes as f64));
        }
    }
    let mut out = BivarPoly::from_terms(terms).normalized(ZERO_REL_TOL);
    // The leading coefficient is 1 by construction; remove interpolation dust.
    out = &(&out - &BivarPoly::eta_pow_times(k as u32, &out.eta_coeff(k as u32)))
        + &BivarPoly::eta_pow_times(k as u32, &LaurentPoly::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c64, q};

    #[test]
    fn hessenberg_recurrence_on_companion() {
        // companion of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let h = nalgebra::DMatrix::from_row_slice(
            3,
            3,
            &[c64(6.0, 0.0), c64(-11.0, 0.0), c64(6.0, 0.0), c64(1.0, 0.0), C64::zero(), C64::zero(), C64::zero(), c64(1.0, 0.0), C64::zero()],
        );
        let c = hessenberg_char_poly(&h);
        let want = [-6.0, 11.0, -6.0, 1.0];
        for (a, b) in c.iter().zip(want) {
            assert!((a - c64(b, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn cofactor_rejects_large_k() {
        assert!(char_poly_cofactor(&MatrixPencil::<Q>::zero(5)).is_err());
    }

    #[test]
    fn faddeev_scalar_case() {
        let a: [Matrix<Q>; 5] = std::array::from_fn(|j| Matrix::diag(&[q(j as i64 + 1, 1)]));
        let p = MatrixPencil::new(a).unwrap().char_poly();
        assert_eq!(p.coeff(1, 0), q(1, 1));
        for j in 0..5u32 {
            assert_eq!(p.coeff(0, j), q(-(j as i64) - 1, 1));
        }
    }
}
