use serde::{Deserialize, Serialize};

use super::rhs::nahm_rhs_pencil;
use super::state::NahmState;
use crate::algebra::{BivarPoly, CharPoly, Matrix, MatrixPencil, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Method {
    /// Classical fourth-order Runge-Kutta with a fixed step.
    Rk4 { step: f64 },
    /// Dormand-Prince 5(4) with absolute tolerance on the largest entry.
    Rk45 { tol: f64, initial_step: f64 },
}

impl Default for Method {
    fn default() -> Self {
        Method::Rk4 { step: 1e-3 }
    }
}

/// Sampled states with the spectral polynomial at each sample.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<(f64, MatrixPencil<C64>)>,
    pub spectral: Vec<BivarPoly<C64>>,
}

impl Trajectory {
    pub fn from_samples(samples: Vec<(f64, MatrixPencil<C64>)>) -> Self {
        let spectral = samples.iter().map(|(_, p)| p.char_poly()).collect();
        Self { samples, spectral }
    }

    pub fn last(&self) -> NahmState {
        let (z, p) = self.samples.last().expect("non-empty trajectory").clone();
        NahmState { z, pencil: p }
    }

    /// Relative drift of the spectral coefficients at each sample.
    pub fn drift_series(&self) -> Vec<(f64, f64)> {
        let base = &self.spectral[0];
        self.samples.iter().zip(&self.spectral).map(|((z, _), c)| (*z, c.rel_distance(base))).collect()
    }

    pub fn degree_violations(&self) -> usize {
        let k = self.samples[0].1.k() as u32;
        self.spectral.iter().map(|c| c.degree_violations(k)).sum()
    }
}

/// max over samples of |coef(z) - coef(z_first)| / (1 + |coef(z_first)|).
pub fn lax_defect(t: &Trajectory) -> f64 {
    t.drift_series().into_iter().map(|(_, d)| d).fold(0.0, f64::max)
}

type State = [Matrix<C64>; 5];

fn axpy(y: &State, a: f64, x: &State) -> State {
    let a = C64::new(a, 0.0);
    std::array::from_fn(|j| &y[j] + &x[j].scale(&a))
}

fn combo(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    terms.iter().fold(y.clone(), |acc, (c, k)| axpy(&acc, h * c, k))
}

fn f(y: &State) -> Result<State> {
    nahm_rhs_pencil(&MatrixPencil::new(y.clone())?)
}

fn finite(y: &State) -> bool {
    y.iter().all(Matrix::is_finite)
}

fn rk4_step(y: &State, h: f64) -> Result<State> {
    let k1 = f(y)?;
    let k2 = f(&axpy(y, h / 2.0, &k1))?;
    let k3 = f(&axpy(y, h / 2.0, &k2))?;
    let k4 = f(&axpy(y, h, &k3))?;
    Ok(combo(y, h, &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)]))
}

// Dormand-Prince tableau.
const A: [&[f64]; 7] = [
    &[],
    &[0.2],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
    &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn dopri_step(y: &State, h: f64) -> Result<(State, f64)> {
    let mut ks: Vec<State> = Vec::with_capacity(7);
    for a in A.iter() {
        let yi = combo(y, h, &a.iter().zip(&ks).map(|(c, k)| (*c, k)).collect::<Vec<_>>());
        ks.push(f(&yi)?);
    }
    let y5 = combo(y, h, &B5.iter().zip(&ks).map(|(c, k)| (*c, k)).collect::<Vec<_>>());
    let y4 = combo(y, h, &B4.iter().zip(&ks).map(|(c, k)| (*c, k)).collect::<Vec<_>>());
    let err = y5.iter().zip(&y4).map(|(a, b)| (a - b).max_abs()).fold(0.0, f64::max);
    Ok((y5, err))
}

/// Integrate from s0.z to z_end (either direction) staying inside (0, 2).
/// Every accepted step is recorded when `sample_every` is 1.
pub fn integrate(s0: &NahmState, z_end: f64, method: Method, sample_every: usize) -> Result<Trajectory> {
    let z0 = s0.z;
    for z in [z0, z_end] {
        if !(z > 0.0 && z < 2.0) {
            return Err(Error::OutOfRange(format!("z = {z} outside (0, 2)")));
        }
    }
    if z0 == z_end {
        return Err(Error::OutOfRange("empty integration interval".into()));
    }
    let dir = (z_end - z0).signum();
    let every = sample_every.max(1);
    let mut y: State = s0.pencil.coeffs().clone();
    let mut z = z0;
    let mut samples = vec![(z, s0.pencil.clone())];
    let mut n = 0usize;
    let span = (z_end - z0).abs();
    match method {
        Method::Rk4 { step } => {
            if !(step > 0.0) {
                return Err(Error::OutOfRange(format!("step = {step}")));
            }
            let nsteps = (span / step).round().max(1.0) as usize;
            let h = dir * span / nsteps as f64;
            for i in 1..=nsteps {
                let next = rk4_step(&y, h)?;
                if !finite(&next) {
                    return Err(Error::NonFinite { last_z: z });
                }
                y = next;
                z = z0 + h * i as f64;
                n += 1;
                if n % every == 0 || i == nsteps {
                    samples.push((z, MatrixPencil::new(y.clone())?));
                }
            }
        }
        Method::Rk45 { tol, initial_step } => {
            if !(tol > 0.0 && initial_step > 0.0) {
                return Err(Error::OutOfRange("tol and initial step must be positive".into()));
            }
            let mut h = initial_step.min(span);
            while (z_end - z) * dir > 1e-15 {
                h = h.min((z_end - z).abs());
                let (next, err) = dopri_step(&y, dir * h)?;
                if !finite(&next) || !err.is_finite() {
                    if h < 1e-14 {
                        return Err(Error::NonFinite { last_z: z });
                    }
                    h *= 0.25;
                    continue;
                }
                if err <= tol {
                    y = next;
                    z += dir * h;
                    n += 1;
                    if n % every == 0 || (z_end - z) * dir <= 1e-15 {
                        samples.push((z, MatrixPencil::new(y.clone())?));
                    }
                }
                let factor = if err == 0.0 { 5.0 } else { (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0) };
                h *= factor;
                if h < 1e-14 {
                    return Err(Error::NonFinite { last_z: z });
                }
            }
        }
    }
    Ok(Trajectory::from_samples(samples))
}
