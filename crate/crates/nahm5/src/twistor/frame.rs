use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use super::mobius::g_lambda;
use super::section::{metric, point_to_section, QuarticSection, RealPoint5};
use crate::algebra::C64;
use crate::{Error, Result};

/// A (1,0)-form on C^5 written over da_0..da_4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coform(pub [C64; 5]);

impl Coform {
    pub fn zero() -> Self {
        Self([C64::new(0.0, 0.0); 5])
    }

    /// g(v, .) for the polarized invariant form.
    pub fn dual_of(v: &QuarticSection) -> Self {
        Self(std::array::from_fn(|i| metric(v, &QuarticSection::monomial(i))))
    }

    pub fn eval(&self, v: &QuarticSection) -> C64 {
        self.0.iter().zip(v.0.iter()).map(|(c, a)| c * a).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for Coform {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|j| self.0[j] + o.0[j]))
    }
}

impl Sub for Coform {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|j| self.0[j] - o.0[j]))
    }
}

/// v_0..v_4 at lambda: g_lambda^{-1} applied to the real weight basis
/// 1 + xi^4, xi - xi^3, xi^2, i(xi + xi^3), i(1 - xi^4).
/// v_1, v_2, v_3 vanish at xi = lambda and span the alpha-surface directions.
pub fn alpha_frame(lambda: C64) -> [QuarticSection; 5] {
    let g = g_lambda(lambda).inverse();
    std::array::from_fn(|j| {
        let mut x = [0.0; 5];
        x[j] = 1.0;
        g.act_on_section(&point_to_section(&RealPoint5(x)))
    })
}

/// Sign and phase conventions for the coframe.
///
/// `Phased` (default): omega_3 = -g(v_3, .), W_1 = i(omega_1 + i omega_3),
/// W_2 = omega_2, W_3 = -i(omega_1 - i omega_3). Under it the coframe flips
/// sign at the antipode, pairs diagonally with (v_1, v_2, v_3) and the
/// pullbacks satisfy theta_3 = i theta_1.
///
/// `Literal`: omega_j = g(v_j, .) and W_1 = omega_1 + i omega_3,
/// W_3 = omega_1 - i omega_3 with no phases. Kept for comparison; the
/// antipodal flip fails by O(1) under it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoframeConvention {
    #[default]
    Phased,
    Literal,
}

/// omega_1, omega_2, omega_3 at lambda.
pub fn natural_forms(lambda: C64, conv: CoframeConvention) -> [Coform; 3] {
    let v = alpha_frame(lambda);
    let w3 = Coform::dual_of(&v[3]);
    [
        Coform::dual_of(&v[1]),
        Coform::dual_of(&v[2]),
        match conv {
            CoframeConvention::Phased => w3.scale(C64::new(-1.0, 0.0)),
            CoframeConvention::Literal => w3,
        },
    ]
}

/// W_1, W_2, W_3 at lambda.
pub fn weight_forms(lambda: C64, conv: CoframeConvention) -> [Coform; 3] {
    let [o1, o2, o3] = natural_forms(lambda, conv);
    let i = C64::i();
    let w1 = o1 + o3.scale(i);
    let w3 = o1 - o3.scale(i);
    match conv {
        CoframeConvention::Phased => [w1.scale(i), o2, w3.scale(-i)],
        CoframeConvention::Literal => [w1, o2, w3],
    }
}

/// F_1, F_2, F_3: g_lambda^{-1} acting on quadratics, applied to (W_1, W_2, W_3).
pub fn f_frame(lambda: C64, conv: CoframeConvention) -> [Coform; 3] {
    let [w1, w2, w3] = weight_forms(lambda, conv);
    let lb = lambda.conj();
    let s = 1.0 / (1.0 + lambda.norm_sqr());
    let one = C64::new(1.0, 0.0);
    let row = |a: C64, b: C64, c: C64| (w1.scale(a) + w2.scale(b) + w3.scale(c)).scale(C64::new(s, 0.0));
    [
        row(one, 2.0 * lb, lb * lb),
        row(-lambda, one - lambda * lb, lb),
        row(lambda * lambda, -2.0 * lambda, one),
    ]
}

/// h_1 = F_1 - F_3, h_2 = F_2, h_3 = i (F_1 + F_3).
pub fn weight_coframe(lambda: C64, conv: CoframeConvention) -> [Coform; 3] {
    let [f1, f2, f3] = f_frame(lambda, conv);
    [f1 - f3, f2, (f1 + f3).scale(C64::i())]
}

/// Matrix M with frame(-1/conj(lambda))_i = sum_j M_ij frame(lambda)_j,
/// in terms of x + i y = conj(lambda) / lambda.
pub fn change_of_basis(lambda: C64) -> Result<[[f64; 5]; 5]> {
    if lambda.norm() == 0.0 || !lambda.norm().is_finite() {
        return Err(Error::OutsideOverlap);
    }
    let r = lambda.conj() / lambda;
    let (x, y) = (r.re, r.im);
    let c = x * x - y * y;
    Ok([
        [c, 0.0, 0.0, 0.0, -2.0 * x * y],
        [0.0, x, 0.0, -y, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, -y, 0.0, -x, 0.0],
        [-2.0 * x * y, 0.0, 0.0, 0.0, -c],
    ])
}

/// The real section of the alpha-surface through (eta, lambda) with
/// parameters (x1, x2, x3):
/// [eta A^4 + conj(eta) B^4 + x1 (A^3 B - A B^3) + x2 A^2 B^2 + i x3 (A^3 B + A B^3)] / (1 + |lambda|^2)^4
/// where A = 1 + conj(lambda) xi and B = xi - lambda.
pub fn alpha_surface_section(eta: C64, lambda: C64, x: [f64; 3]) -> QuarticSection {
    let lb = lambda.conj();
    let a = [C64::new(1.0, 0.0), lb];
    let b = [-lambda, C64::new(1.0, 0.0)];
    let prod = |na: usize, nb: usize| -> QuarticSection {
        let mut p = vec![C64::new(1.0, 0.0)];
        for _ in 0..na {
            p = mul_lin(&p, &a);
        }
        for _ in 0..nb {
            p = mul_lin(&p, &b);
        }
        QuarticSection(std::array::from_fn(|j| p[j]))
    };
    let s = 1.0 / (1.0 + lambda.norm_sqr()).powi(4);
    let i = C64::i();
    let p = prod(4, 0).scale(eta)
        + prod(0, 4).scale(eta.conj())
        + (prod(3, 1) - prod(1, 3)).scale(C64::new(x[0], 0.0))
        + prod(2, 2).scale(C64::new(x[1], 0.0))
        + (prod(3, 1) + prod(1, 3)).scale(i * x[2]);
    p.scale(C64::new(s, 0.0))
}

fn mul_lin(p: &[C64], l: &[C64; 2]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * l[0];
        out[i + 1] += c * l[1];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_at_origin() {
        let v = alpha_frame(C64::new(0.0, 0.0));
        let i = C64::i();
        let want = [
            [1.0.into(), 0.0.into(), 0.0.into(), 0.0.into(), 1.0.into()],
            [0.0.into(), 1.0.into(), 0.0.into(), (-1.0).into(), 0.0.into()],
            [0.0.into(), 0.0.into(), 1.0.into(), 0.0.into(), 0.0.into()],
            [0.0.into(), i, 0.0.into(), i, 0.0.into()],
            [i, 0.0.into(), 0.0.into(), 0.0.into(), -i],
        ];
        for (vj, wj) in v.iter().zip(want.iter()) {
            for (a, b) in vj.0.iter().zip(wj.iter()) {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn h2_is_omega2_at_origin() {
        let z = C64::new(0.0, 0.0);
        let h = weight_coframe(z, CoframeConvention::Phased);
        let o = natural_forms(z, CoframeConvention::Phased);
        assert_eq!(h[1], o[1]);
    }
}
