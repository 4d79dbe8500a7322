//! Seeded, splittable randomness for every sampled check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Matrix, MatrixPencil, C64};

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Stable stream id for a check name (FNV-1a).
pub fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn named(seed: u64, name: &str) -> ChaCha8Rng {
    stream(seed, stream_id(name))
}

/// Complex number with independent uniform(-1,1) parts.
pub fn complex<R: Rng>(r: &mut R) -> C64 {
    C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

/// Complex number uniform in the annulus lo <= |z| <= hi.
pub fn annulus<R: Rng>(r: &mut R, lo: f64, hi: f64) -> C64 {
    C64::from_polar(r.gen_range(lo..hi), r.gen_range(0.0..std::f64::consts::TAU))
}

pub fn matrix<R: Rng>(r: &mut R, k: usize) -> Matrix<C64> {
    let v: Vec<C64> = (0..k * k).map(|_| complex(r)).collect();
    Matrix::from_fn(k, k, |i, j| v[i * k + j])
}

pub fn pencil<R: Rng>(r: &mut R, k: usize) -> MatrixPencil<C64> {
    MatrixPencil::new(std::array::from_fn(|_| matrix(r, k))).expect("square by construction")
}

/// Skew-Hermitian k x k matrix.
pub fn skew_hermitian<R: Rng>(r: &mut R, k: usize) -> Matrix<C64> {
    let m = matrix(r, k);
    (&m - &m.adjoint()).scale(&C64::new(0.5, 0.0))
}
