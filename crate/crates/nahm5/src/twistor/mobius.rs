use rand::Rng;
use serde::{Deserialize, Serialize};

use super::point::{Chart, TwistorPoint};
use super::section::QuarticSection;
use crate::algebra::C64;
use crate::rng;

/// [[a, b], [c, d]] with ad - bc = 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusElement {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MobiusElement {
    pub fn identity() -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Self { a: o, b: z, c: z, d: o }
    }

    /// Rescales by 1/sqrt(det) so the determinant is 1.
    pub fn normalized(a: C64, b: C64, c: C64, d: C64) -> Self {
        let s = (a * d - b * c).sqrt();
        Self { a: a / s, b: b / s, c: c / s, d: d / s }
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self { a: self.d / det, b: -self.b / det, c: -self.c / det, d: self.a / det }
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn is_su2(&self, tol: f64) -> bool {
        (self.d - self.a.conj()).norm() <= tol
            && (self.c + self.b.conj()).norm() <= tol
            && (self.det() - 1.0).norm() <= tol
    }

    pub fn random_sl2<R: Rng>(r: &mut R) -> Self {
        loop {
            let (a, b, c, d) = (rng::complex(r), rng::complex(r), rng::complex(r), rng::complex(r));
            if (a * d - b * c).norm() > 0.1 {
                return Self::normalized(a, b, c, d);
            }
        }
    }

    pub fn random_su2<R: Rng>(r: &mut R) -> Self {
        loop {
            let (a, b) = (rng::complex(r), rng::complex(r));
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if n > 0.1 {
                let (a, b) = (a / n, b / n);
                return Self { a, b, c: -b.conj(), d: a.conj() };
            }
        }
    }

    /// (eta, xi) -> (eta / (c xi + d)^4, (a xi + b) / (c xi + d)), extended to
    /// both charts through homogeneous coordinates xi = u / v, eta = e / v^4.
    pub fn act_on_point(&self, pt: &TwistorPoint) -> TwistorPoint {
        let one = C64::new(1.0, 0.0);
        let (u, v) = match pt.chart {
            Chart::U0 => (pt.xi, one),
            Chart::U1 => (one, pt.xi),
        };
        let (nu, nv) = (self.a * u + self.b * v, self.c * u + self.d * v);
        if nu.norm() <= nv.norm() {
            TwistorPoint { chart: Chart::U0, eta: pt.eta / nv.powi(4), xi: nu / nv }
        } else {
            TwistorPoint { chart: Chart::U1, eta: pt.eta / nu.powi(4), xi: nv / nu }
        }
    }

    /// (g.p)(xi) = (c xi + d)^4 p((a xi + b) / (c xi + d)), expanded as
    /// sum_j a_j (a xi + b)^j (c xi + d)^(4-j).
    pub fn act_on_section(&self, p: &QuarticSection) -> QuarticSection {
        let lin_a = [self.b, self.a];
        let lin_c = [self.d, self.c];
        let mut out = [C64::new(0.0, 0.0); 5];
        for (j, coef) in p.0.iter().enumerate() {
            let mut poly = vec![*coef];
            for _ in 0..j {
                poly = polymul(&poly, &lin_a);
            }
            for _ in j..4 {
                poly = polymul(&poly, &lin_c);
            }
            for (o, c) in out.iter_mut().zip(poly) {
                *o += c;
            }
        }
        QuarticSection(out)
    }
}

pub fn act_on_point(g: &MobiusElement, pt: &TwistorPoint) -> TwistorPoint {
    g.act_on_point(pt)
}

pub fn act_on_section(g: &MobiusElement, p: &QuarticSection) -> QuarticSection {
    g.act_on_section(p)
}

fn polymul(p: &[C64], q: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// g_lambda = (1 + |lambda|^2)^(-1/2) [[1, lambda], [-conj(lambda), 1]].
/// It sends (0, 0) to (0, lambda) under the point action; its inverse moves
/// sections vanishing at 0 to sections vanishing at lambda.
pub fn g_lambda(lambda: C64) -> MobiusElement {
    let s = C64::new((1.0 + lambda.norm_sqr()).sqrt(), 0.0);
    let one = C64::new(1.0, 0.0);
    MobiusElement { a: one / s, b: lambda / s, c: -lambda.conj() / s, d: one / s }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_zero_is_identity() {
        assert_eq!(g_lambda(C64::new(0.0, 0.0)), MobiusElement::identity());
    }

    #[test]
    fn diagonal_element_scales_weights() {
        let t = C64::new(1.7, -0.3);
        let g = MobiusElement { a: t, b: C64::new(0.0, 0.0), c: C64::new(0.0, 0.0), d: 1.0 / t };
        let out = g.act_on_section(&QuarticSection::monomial(2));
        // t^2 * t^-2 = 1: xi^2 has weight zero
        assert!((out.0[2] - 1.0).norm() < 1e-14);
        let out = g.act_on_section(&QuarticSection::monomial(4));
        assert!((out.0[4] - t.powi(4)).norm() < 1e-12);
    }
}
