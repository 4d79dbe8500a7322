//! Line bundles on the twistor space given by explicit transition functions
//! on the overlap of the two standard charts.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::C64;
use crate::rng;
use crate::twistor::{
    pullback_01, tau_point, weight_coframe, wirtinger, CoframeConvention, FdConfig, TwistorPoint,
};
use crate::{Error, Result};

/// |exponent| above this is reported as overflow instead of returning inf.
pub const EXP_GUARD: f64 = 700.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LineBundleSpec {
    /// L_(a,b,c): exp(-a mu (1/l - 1/l^3) + b mu / l^2 - i c mu (1/l + 1/l^3)).
    Triple { a: f64, b: f64, c: f64 },
    /// L^z(twist): exp(z eta / xi^2) xi^twist.
    Flow { z: f64, twist: i32 },
}

impl LineBundleSpec {
    pub fn triple(a: f64, b: f64, c: f64) -> Result<Self> {
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::Config("(a, b, c) must not all vanish".into()));
        }
        Ok(Self::Triple { a, b, c })
    }

    /// Flow bundle for charge k: twist 2k - 2.
    pub fn flow(z: f64, k: usize) -> Self {
        Self::Flow { z, twist: 2 * k as i32 - 2 }
    }
}

fn overlap_u0(pt: &TwistorPoint) -> Result<(C64, C64)> {
    match pt.in_u0() {
        Some((eta, xi)) if xi.norm() > 0.0 && xi.norm().is_finite() => Ok((eta, xi)),
        _ => Err(Error::OutsideOverlap),
    }
}

fn overlap_u1(pt: &TwistorPoint) -> Result<(C64, C64)> {
    match pt.in_u1() {
        Some((eta, xi)) if xi.norm() > 0.0 && xi.norm().is_finite() => Ok((eta, xi)),
        _ => Err(Error::OutsideOverlap),
    }
}

fn guarded_exp(e: C64) -> Result<C64> {
    if !(e.norm() <= EXP_GUARD) {
        return Err(Error::Overflow(e.norm()));
    }
    Ok(e.exp())
}

/// Exponent of g_01 in U0 coordinates (mu, lambda) = (eta, xi).
fn triple_exponent(a: f64, b: f64, c: f64, mu: C64, l: C64) -> C64 {
    let (l1, l2, l3) = (1.0 / l, 1.0 / (l * l), 1.0 / (l * l * l));
    -a * mu * (l1 - l3) + b * mu * l2 - C64::i() * c * mu * (l1 + l3)
}

/// g_01 at a point of the overlap (f_0 = g_01 f_1).
pub fn transition(spec: &LineBundleSpec, pt: &TwistorPoint) -> Result<C64> {
    let (eta, xi) = overlap_u0(pt)?;
    match *spec {
        LineBundleSpec::Triple { a, b, c } => guarded_exp(triple_exponent(a, b, c, eta, xi)),
        LineBundleSpec::Flow { z, twist } => Ok(guarded_exp(z * eta / (xi * xi))? * xi.powi(twist)),
    }
}

/// g_10 computed from U1 coordinates only (eta', xi') = (eta/xi^4, 1/xi).
pub fn transition_inverse_chart(spec: &LineBundleSpec, pt: &TwistorPoint) -> Result<C64> {
    let (m, l) = overlap_u1(pt)?;
    match *spec {
        LineBundleSpec::Triple { a, b, c } => {
            let (l1, l2, l3) = (1.0 / l, 1.0 / (l * l), 1.0 / (l * l * l));
            let e = -a * (m * l3 - m * l1) + b * m * l2 - C64::i() * c * (m * l3 + m * l1);
            guarded_exp(-e)
        }
        LineBundleSpec::Flow { z, twist } => Ok(guarded_exp(-z * m / (l * l))? * l.powi(twist)),
    }
}

/// Random overlap points with |xi| in [0.5, 2] and |eta| <= 1.
pub fn overlap_samples<R: Rng>(r: &mut R, n: usize) -> Vec<TwistorPoint> {
    (0..n)
        .map(|_| TwistorPoint::u0(rng::complex(r), rng::annulus(r, 0.5, 2.0)))
        .collect()
}

/// Reality of a degree-0 bundle. tau swaps the charts, so the transition of
/// the conjugate pulled-back bundle in the (0,1) order is conj(g(tau p))^-1;
/// an antiholomorphic isomorphism with the dual (transition g^-1) means
/// g(tau p) = conj(g(p)). Returns max |g(tau p) / conj(g(p)) - 1|.
pub fn reality_check<F>(g: F, samples: &[TwistorPoint]) -> Result<f64>
where
    F: Fn(&TwistorPoint) -> Result<C64>,
{
    let mut worst = 0.0f64;
    for p in samples {
        let dev = (g(&tau_point(p))? / g(p)?.conj() - 1.0).norm();
        worst = worst.max(if dev.is_nan() { f64::INFINITY } else { dev });
    }
    Ok(worst)
}

pub fn reality_check_spec(spec: &LineBundleSpec, samples: &[TwistorPoint]) -> Result<f64> {
    if let LineBundleSpec::Flow { twist, .. } = spec {
        if *twist != 0 {
            return Err(Error::Config("reality check needs a degree-0 bundle".into()));
        }
    }
    reality_check(|p| transition(spec, p), samples)
}

/// (mu, lambda) -> (-conj(mu)/conj(lambda)^4, -1/conj(lambda)): the real
/// structure with eta negated. Under it g(sigma p) conj(g(p)) = 1 holds.
pub fn sigma_negated(pt: &TwistorPoint) -> TwistorPoint {
    let t = tau_point(pt);
    TwistorPoint { eta: -t.eta, ..t }
}

/// max |g(sigma p) conj(g(p)) - 1| for the eta-negated involution.
pub fn product_form_deviation(spec: &LineBundleSpec, samples: &[TwistorPoint]) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in samples {
        let dev = (transition(spec, &sigma_negated(p))? * transition(spec, p)?.conj() - 1.0).norm();
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// max |g_(a,b,c) g_(a',b',c') / g_(a+a',b+b',c+c') - 1| over samples.
pub fn additivity_deviation(
    s1: (f64, f64, f64),
    s2: (f64, f64, f64),
    samples: &[TwistorPoint],
) -> Result<f64> {
    let t = |s: (f64, f64, f64), p: &TwistorPoint| {
        transition(&LineBundleSpec::Triple { a: s.0, b: s.1, c: s.2 }, p)
    };
    let sum = (s1.0 + s2.0, s1.1 + s2.1, s1.2 + s2.2);
    let mut worst = 0.0f64;
    for p in samples {
        worst = worst.max((t(s1, p)? * t(s2, p)? / t(sum, p)? - 1.0).norm());
    }
    Ok(worst)
}

/// max |g_01 g_10 - 1|, each factor computed in its own chart.
pub fn cocycle_deviation(spec: &LineBundleSpec, samples: &[TwistorPoint]) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in samples {
        worst = worst.max((transition(spec, p)? * transition_inverse_chart(spec, p)? - 1.0).norm());
    }
    Ok(worst)
}

/// Winding number of xi -> g(eta, xi) around |xi| = radius at fixed U0 eta.
pub fn winding_number(spec: &LineBundleSpec, eta: C64, radius: f64, steps: usize) -> Result<i64> {
    let mut total = 0.0;
    let at = |t: f64| transition(spec, &TwistorPoint::u0(eta, C64::from_polar(radius, t)));
    let mut prev = at(0.0)?;
    for s in 1..=steps {
        let cur = at(std::f64::consts::TAU * s as f64 / steps as f64)?;
        total += (cur / prev).arg();
        prev = cur;
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}

/// d u / d conj(lambda) - beta at (mu, lambda), after checking that u is
/// holomorphic in mu there.
pub fn dbar_residual(
    u: impl Fn(C64, C64) -> C64,
    beta: impl Fn(C64, C64) -> C64,
    mu: C64,
    lambda: C64,
    cfg: FdConfig,
) -> Result<C64> {
    let (dm, _) = wirtinger(|m| [u(m, lambda)], mu, cfg)?;
    if dm[0].norm() > 1e-6 * (1.0 + u(mu, lambda).norm()) {
        return Err(Error::NotHolomorphic(dm[0].norm()));
    }
    let (dl, _) = wirtinger(|l| [u(mu, l)], lambda, cfg)?;
    Ok(dl[0] - beta(mu, lambda))
}

/// Coefficient of d(conj lambda) in Psi_j = s^* h_j, from the pullback engine.
pub fn fundamental_form(j: usize, mu: C64, lambda: C64, cfg: FdConfig) -> Result<C64> {
    assert!((1..=3).contains(&j), "fundamental forms are indexed 1..=3");
    let pf = pullback_01(|l| weight_coframe(l, CoframeConvention::Phased)[j - 1], mu, lambda, cfg)?;
    Ok(pf.coef_dlambda_bar)
}

/// Trivializing function for the (0,1,0) bundle in its uncorrected closed form, with
/// denominator (1 - |lambda|^2)^3.
pub fn u2_reference(mu: C64, l: C64) -> C64 {
    let lb = l.conj();
    mu / (1.0 - lb * l).powi(3) * (3.0 * lb / l + 1.0 / (l * l))
}

/// Same shape with denominator (1 + |lambda|^2)^3 and the constant fixed by
/// the pullback engine: d/d(conj lambda) of it equals Psi_2.
pub fn u2_corrected(mu: C64, l: C64) -> C64 {
    let lb = l.conj();
    2.0 * C64::i() * mu / (1.0 + lb * l).powi(3) * (3.0 * lb / l + 1.0 / (l * l))
}

/// Psi_2 coefficient in uncorrected closed form: -6 mu conj(lambda) / (1 - |lambda|^2)^4.
pub fn psi2_reference(mu: C64, l: C64) -> C64 {
    let lb = l.conj();
    -6.0 * mu * lb / (1.0 - lb * l).powi(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_triple_rejected() {
        assert!(LineBundleSpec::triple(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn outside_overlap_rejected() {
        let spec = LineBundleSpec::Triple { a: 0.0, b: 1.0, c: 0.0 };
        let p = TwistorPoint::u0(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        assert!(matches!(transition(&spec, &p), Err(Error::OutsideOverlap)));
    }

    #[test]
    fn overflow_is_loud() {
        let spec = LineBundleSpec::flow(1.0, 2);
        let p = TwistorPoint::u0(C64::new(1.0, 0.0), C64::new(0.01, 0.0));
        assert!(matches!(transition(&spec, &p), Err(Error::Overflow(_))));
    }
}
