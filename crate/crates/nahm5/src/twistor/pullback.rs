use serde::{Deserialize, Serialize};

use super::frame::{alpha_frame, Coform};
use super::section::QuarticSection;
use crate::algebra::C64;
use crate::{Error, Result};

/// Central differences on real and imaginary parts, Richardson-extrapolated
/// from steps h and h/2. A second extrapolation from h/2 and h/4 must agree
/// within `tol * (1 + |value|)`; otherwise the step is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    pub h: f64,
    pub tol: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self { h: 1e-3, tol: 1e-7 }
    }
}

/// The (0,1) part of a pulled-back form at (mu, lambda).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PullbackForm {
    pub coef_dlambda_bar: C64,
    pub coef_dmu_bar: C64,
    /// Disagreement between the two Richardson estimates.
    pub fd_error: f64,
}

/// s(mu, lambda) = (Re mu v_0 + Im mu v_4) / (1 + |lambda|^2)^2, a real
/// section passing through mu at xi = lambda.
pub fn natural_section(mu: C64, lambda: C64) -> QuarticSection {
    let v = alpha_frame(lambda);
    let s = 1.0 / (1.0 + lambda.norm_sqr()).powi(2);
    (v[0].scale(C64::new(mu.re, 0.0)) + v[4].scale(C64::new(mu.im, 0.0))).scale(C64::new(s, 0.0))
}

/// d f / d conj(z) at z for f: C -> C^n, returning (value, error estimate).
pub fn wirtinger<const N: usize>(
    f: impl Fn(C64) -> [C64; N],
    z: C64,
    cfg: FdConfig,
) -> Result<([C64; N], f64)> {
    let central = |h: f64| -> [C64; N] {
        let (xp, xm) = (f(z + h), f(z - h));
        let (yp, ym) = (f(z + C64::new(0.0, h)), f(z - C64::new(0.0, h)));
        std::array::from_fn(|j| {
            let dx = (xp[j] - xm[j]) / (2.0 * h);
            let dy = (yp[j] - ym[j]) / (2.0 * h);
            0.5 * (dx + C64::i() * dy)
        })
    };
    let (d1, d2, d4) = (central(cfg.h), central(cfg.h / 2.0), central(cfg.h / 4.0));
    let rich = |a: &[C64; N], b: &[C64; N]| -> [C64; N] { std::array::from_fn(|j| (4.0 * b[j] - a[j]) / 3.0) };
    let (r1, r2) = (rich(&d1, &d2), rich(&d2, &d4));
    let mut worst = 0.0f64;
    let mut excess = false;
    for j in 0..N {
        let dis = (r1[j] - r2[j]).norm();
        worst = worst.max(dis);
        if !(dis <= cfg.tol * (1.0 + r2[j].norm())) {
            excess = true;
        }
    }
    if excess {
        return Err(Error::StepSize(worst));
    }
    Ok((r2, worst))
}

/// Pull back a lambda-dependent coform along `natural_section` and return its
/// (0,1) part. The coform's coefficients are frozen at lambda; only the
/// coordinates a_k(s(mu, lambda)) are differentiated.
pub fn pullback_01(
    form: impl Fn(C64) -> Coform,
    mu: C64,
    lambda: C64,
    cfg: FdConfig,
) -> Result<PullbackForm> {
    let w = form(lambda);
    let (dl, el) = wirtinger(|l| natural_section(mu, l).0, lambda, cfg)?;
    let (dm, em) = wirtinger(|m| natural_section(m, lambda).0, mu, cfg)?;
    Ok(PullbackForm {
        coef_dlambda_bar: w.eval(&QuarticSection(dl)),
        coef_dmu_bar: w.eval(&QuarticSection(dm)),
        fd_error: el.max(em) * w.max_abs(),
    })
}
