use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::C64;
use crate::{Error, Result};

/// p(xi) = a0 + a1 xi + a2 xi^2 + a3 xi^3 + a4 xi^4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticSection(pub [C64; 5]);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPoint5(pub [f64; 5]);

impl QuarticSection {
    pub fn zero() -> Self {
        Self([C64::new(0.0, 0.0); 5])
    }

    /// The monomial xi^j.
    pub fn monomial(j: usize) -> Self {
        let mut a = [C64::new(0.0, 0.0); 5];
        a[j] = C64::new(1.0, 0.0);
        Self(a)
    }

    pub fn eval(&self, xi: C64) -> C64 {
        self.0.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * xi + c)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest |a_j - (-1)^j conj(a_{4-j})|.
    pub fn reality_defect(&self) -> f64 {
        (self.0.iter().zip(tau_section(self).0.iter())).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Add for QuarticSection {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|j| self.0[j] + o.0[j]))
    }
}

impl Sub for QuarticSection {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|j| self.0[j] - o.0[j]))
    }
}

/// b_j = (-1)^j conj(a_{4-j}).
pub fn tau_section(p: &QuarticSection) -> QuarticSection {
    QuarticSection(std::array::from_fn(|j| {
        let c = p.0[4 - j].conj();
        if j % 2 == 0 {
            c
        } else {
            -c
        }
    }))
}

/// (x0 + i x4) + (x1 + i x3) xi + x2 xi^2 - (x1 - i x3) xi^3 + (x0 - i x4) xi^4.
pub fn point_to_section(x: &RealPoint5) -> QuarticSection {
    let [x0, x1, x2, x3, x4] = x.0;
    QuarticSection([
        C64::new(x0, x4),
        C64::new(x1, x3),
        C64::new(x2, 0.0),
        -C64::new(x1, -x3),
        C64::new(x0, -x4),
    ])
}

/// Inverse of [`point_to_section`]; rejects sections that are not tau-fixed.
pub fn section_to_point(p: &QuarticSection) -> Result<RealPoint5> {
    let tol = 1e-12 * (1.0 + p.max_abs());
    let t = tau_section(p);
    for j in 0..5 {
        if (p.0[j] - t.0[j]).norm() > tol {
            return Err(Error::NotReal(format!(
                "a{j} = {} but (-1)^{j} conj(a{}) = {}",
                p.0[j],
                4 - j,
                t.0[j]
            )));
        }
    }
    let a = p.0;
    Ok(RealPoint5([a[0].re, a[1].re, a[2].re, a[1].im, a[0].im]))
}

/// N(p) = a2^2 - 3 a1 a3 + 12 a0 a4, the SL(2,C)-invariant quadratic form.
pub fn invariant_norm(p: &QuarticSection) -> C64 {
    let a = p.0;
    a[2] * a[2] - 3.0 * a[1] * a[3] + 12.0 * a[0] * a[4]
}

/// Symmetric bilinear form obtained by polarizing N.
pub fn metric(v: &QuarticSection, w: &QuarticSection) -> C64 {
    (invariant_norm(&(*v + *w)) - invariant_norm(v) - invariant_norm(w)) * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_reports_violated_relation() {
        let err = section_to_point(&QuarticSection::monomial(1)).unwrap_err();
        assert!(err.to_string().contains("a1"), "{err}");
    }

    #[test]
    fn norm_of_basis_vectors() {
        assert_eq!(invariant_norm(&QuarticSection::monomial(2)), C64::new(1.0, 0.0));
        let e0 = point_to_section(&RealPoint5([1.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(invariant_norm(&e0), C64::new(12.0, 0.0));
    }
}
