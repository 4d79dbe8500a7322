use nalgebra::DMatrix;

use super::state::NahmState;
use crate::algebra::{BivarPoly, CharPoly, Matrix, MatrixPencil, C64};
use crate::{Error, Result};

/// det(eta - A(xi)) of the state's pencil; numerically monic.
pub fn spectral_curve(s: &NahmState) -> BivarPoly<C64> {
    let c = s.pencil.char_poly();
    debug_assert_eq!(c.degree_violations(s.k() as u32), 0);
    c
}

const REALITY_TOL: f64 = 1e-9;

/// Invariance of P(xi, eta) = 0 under (eta, xi) -> (conj eta / conj xi^4, -1 / conj xi):
/// the xi^n coefficient of a_j equals (-1)^n conj of the xi^(4j-n) one.
pub fn reality_check_curve(c: &BivarPoly<C64>) -> Result<bool> {
    let k = c.eta_degree().ok_or(Error::NotMonic(0))?;
    let lead = c.eta_coeff(k);
    let lead_ok = lead.len() == 1 && (lead.coeff(0) - C64::new(1.0, 0.0)).norm() <= REALITY_TOL;
    if !lead_ok {
        return Err(Error::NotMonic(k as usize));
    }
    let scale = 1.0 + c.max_abs();
    for ((e, x), _) in c.terms() {
        if e > k || x > 4 * (k - e) {
            return Ok(false);
        }
    }
    for j in 1..=k {
        for n in 0..=4 * j {
            let lhs = c.coeff(k - j, n);
            let rhs = c.coeff(k - j, 4 * j - n).conj() * if n % 2 == 0 { 1.0 } else { -1.0 };
            if (lhs - rhs).norm() > REALITY_TOL * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const REGULAR_TOL: f64 = 1e-8;

/// sigma_min / sigma_max of the columns vec(I), vec(M), ..., vec(M^(k-1)),
/// M the value A(xi) shifted to trace zero and scaled to unit norm.
/// Positive exactly when A(xi) has one Jordan block per eigenvalue.
fn krylov_ratio(a: &Matrix<C64>) -> f64 {
    let k = a.rows();
    if k == 1 {
        return 1.0;
    }
    let shift = a.trace() / k as f64;
    let mut m = a - &Matrix::identity(k).scale(&shift);
    let norm = m.frobenius();
    if norm > 0.0 {
        m = m.scale(&C64::new(1.0 / norm, 0.0));
    }
    let mut cols = DMatrix::<C64>::zeros(k * k, k);
    let mut p = Matrix::identity(k);
    for c in 0..k {
        let pn = p.frobenius();
        for (i, v) in p.iter().enumerate() {
            cols[(i, c)] = if pn > 0.0 { *v / pn } else { *v };
        }
        p = &p * &m;
    }
    let sv = cols.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0.0;
    }
    sv.min() / max
}

/// Smallest Krylov ratio over the samples.
pub fn regularity_margin(p: &MatrixPencil<C64>, xi_samples: &[C64]) -> f64 {
    xi_samples.iter().map(|xi| krylov_ratio(&p.eval(xi))).fold(f64::INFINITY, f64::min)
}

pub fn regularity_check(p: &MatrixPencil<C64>, xi_samples: &[C64]) -> bool {
    regularity_margin(p, xi_samples) > REGULAR_TOL
}
