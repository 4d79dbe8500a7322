use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, MatrixPencil, C64};
use crate::rng;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NahmState {
    pub z: f64,
    pub pencil: MatrixPencil<C64>,
}

/// T_1..T_5 with A_0 = T_1 + iT_2, A_1 = T_3 + iT_4, A_2 = 2iT_5,
/// A_3 = T_3 - iT_4, A_4 = -T_1 + iT_2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealNahmState {
    pub z: f64,
    pub t: [Matrix<C64>; 5],
}

impl NahmState {
    pub fn new(z: f64, pencil: MatrixPencil<C64>) -> Self {
        Self { z, pencil }
    }

    pub fn k(&self) -> usize {
        self.pencil.k()
    }

    pub fn random<R: Rng>(r: &mut R, z: f64, k: usize) -> Self {
        Self { z, pencil: rng::pencil(r, k) }
    }

    pub fn to_real(&self) -> RealNahmState {
        RealNahmState { z: self.z, t: a_to_t(self.pencil.coeffs()) }
    }
}

impl RealNahmState {
    pub fn to_complex(&self) -> Result<NahmState> {
        Ok(NahmState { z: self.z, pencil: MatrixPencil::new(t_to_a(&self.t))? })
    }

    pub fn random<R: Rng>(r: &mut R, z: f64, k: usize) -> Self {
        Self { z, t: std::array::from_fn(|_| rng::matrix(r, k)) }
    }

    /// T_j in u(k): the pencil then gives a tau-real spectral curve, and the
    /// flow preserves the condition.
    pub fn random_skew_hermitian<R: Rng>(r: &mut R, z: f64, k: usize) -> Self {
        Self { z, t: std::array::from_fn(|_| rng::skew_hermitian(r, k)) }
    }
}

pub(crate) fn t_to_a(t: &[Matrix<C64>; 5]) -> [Matrix<C64>; 5] {
    let i = C64::i();
    [
        &t[0] + &t[1].scale(&i),
        &t[2] + &t[3].scale(&i),
        t[4].scale(&(2.0 * i)),
        &t[2] - &t[3].scale(&i),
        &(-&t[0]) + &t[1].scale(&i),
    ]
}

pub(crate) fn a_to_t(a: &[Matrix<C64>; 5]) -> [Matrix<C64>; 5] {
    let half = C64::new(0.5, 0.0);
    let inv2i = 1.0 / (2.0 * C64::i());
    [
        (&a[0] - &a[4]).scale(&half),
        (&a[0] + &a[4]).scale(&inv2i),
        (&a[1] + &a[3]).scale(&half),
        (&a[1] - &a[3]).scale(&inv2i),
        a[2].scale(&inv2i),
    ]
}
