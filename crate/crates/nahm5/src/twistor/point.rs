use serde::{Deserialize, Serialize};

use crate::algebra::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    U0,
    U1,
}

/// A point of the twistor space in chart coordinates. On the overlap
/// (eta', xi') = (eta / xi^4, 1 / xi). Constructors keep |xi| <= 1 in the
/// stored chart; on |xi| = 1 either chart is accepted as is.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistorPoint {
    pub chart: Chart,
    pub eta: C64,
    pub xi: C64,
}

impl TwistorPoint {
    pub fn new(chart: Chart, eta: C64, xi: C64) -> Self {
        let p = Self { chart, eta, xi };
        if xi.norm() > 1.0 {
            p.switch_chart()
        } else {
            p
        }
    }

    pub fn u0(eta: C64, xi: C64) -> Self {
        Self::new(Chart::U0, eta, xi)
    }

    /// Same point in the other chart (requires xi != 0).
    pub fn switch_chart(&self) -> Self {
        let inv = 1.0 / self.xi;
        let other = match self.chart {
            Chart::U0 => Chart::U1,
            Chart::U1 => Chart::U0,
        };
        Self { chart: other, eta: self.eta * inv.powi(4), xi: inv }
    }

    /// (eta, xi) in U0, if the point is not over xi = infinity.
    pub fn in_u0(&self) -> Option<(C64, C64)> {
        match self.chart {
            Chart::U0 => Some((self.eta, self.xi)),
            Chart::U1 if self.xi != C64::new(0.0, 0.0) => {
                let s = self.switch_chart();
                Some((s.eta, s.xi))
            }
            Chart::U1 => None,
        }
    }

    pub fn in_u1(&self) -> Option<(C64, C64)> {
        match self.chart {
            Chart::U1 => Some((self.eta, self.xi)),
            Chart::U0 if self.xi != C64::new(0.0, 0.0) => {
                let s = self.switch_chart();
                Some((s.eta, s.xi))
            }
            Chart::U0 => None,
        }
    }

    /// Coordinate distance measured in a chart both points live in.
    pub fn distance(&self, o: &Self) -> f64 {
        let pick = |f: fn(&Self) -> Option<(C64, C64)>| match (f(self), f(o)) {
            (Some(a), Some(b)) => Some((a.0 - b.0).norm().max((a.1 - b.1).norm())),
            _ => None,
        };
        let near_u0 = self.xi.norm() <= 1.0 && self.chart == Chart::U0;
        let (first, second): (fn(&Self) -> _, fn(&Self) -> _) =
            if near_u0 { (Self::in_u0, Self::in_u1) } else { (Self::in_u1, Self::in_u0) };
        pick(first).or_else(|| pick(second)).unwrap_or(f64::INFINITY)
    }
}

/// tau(eta, xi) = (conj(eta)/conj(xi)^4, -1/conj(xi)). In chart terms the
/// image of U0 data (eta, xi) has U1 coordinates (conj(eta), -conj(xi)), so
/// tau swaps charts without any division and tau(tau(p)) == p bit for bit.
pub fn tau_point(pt: &TwistorPoint) -> TwistorPoint {
    let chart = match pt.chart {
        Chart::U0 => Chart::U1,
        Chart::U1 => Chart::U0,
    };
    TwistorPoint { chart, eta: pt.eta.conj(), xi: -pt.xi.conj() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c64;

    #[test]
    fn tau_on_unit_circle() {
        let p = TwistorPoint::u0(c64(1.0, 0.0), c64(1.0, 0.0));
        let (eta, xi) = tau_point(&p).in_u0().unwrap();
        assert!((eta - c64(1.0, 0.0)).norm() < 1e-15 && (xi - c64(-1.0, 0.0)).norm() < 1e-15);

        let p = TwistorPoint::u0(c64(0.0, 0.0), c64(0.0, 1.0));
        let (eta, xi) = tau_point(&p).in_u0().unwrap();
        assert!(eta.norm() < 1e-15 && (xi - c64(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn canonical_chart_keeps_xi_small() {
        let p = TwistorPoint::u0(c64(2.0, 1.0), c64(3.0, -1.0));
        assert_eq!(p.chart, Chart::U1);
        assert!(p.xi.norm() <= 1.0);
        let (eta, xi) = p.in_u0().unwrap();
        assert!((eta - c64(2.0, 1.0)).norm() < 1e-12 && (xi - c64(3.0, -1.0)).norm() < 1e-12);
    }
}
