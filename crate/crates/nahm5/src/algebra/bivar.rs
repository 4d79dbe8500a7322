use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{forward_owned, LaurentPoly};
use super::scalar::{Scalar, C64};
use crate::{Error, Result};

/// Polynomial in (eta, xi), keyed by (eta power, xi power).
#[derive(Clone, Debug, PartialEq)]
pub struct BivarPoly<T> {
    terms: BTreeMap<(u32, u32), T>,
}

/// One JSON record of a [`BivarPoly`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivarRecord {
    pub eta_pow: u32,
    pub xi_pow: u32,
    pub re: f64,
    pub im: f64,
}

impl<T: Scalar> BivarPoly<T> {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), T)>>(it: I) -> Self {
        let mut p = Self { terms: BTreeMap::new() };
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn eta() -> Self {
        Self::from_terms([((1, 0), T::one())])
    }

    /// eta^e * p(xi) for an ordinary polynomial p (negative powers rejected).
    pub fn eta_pow_times(e: u32, p: &LaurentPoly<T>) -> Self {
        assert!(p.min_exp().map_or(true, |m| m >= 0), "negative xi power");
        Self::from_terms(p.terms().map(|(x, c)| ((e, x as u32), c.clone())))
    }

    fn add_term(&mut self, k: (u32, u32), c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, eta_pow: u32, xi_pow: u32) -> T {
        self.terms.get(&(eta_pow, xi_pow)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &T)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn eta_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// The xi-polynomial multiplying eta^e.
    pub fn eta_coeff(&self, e: u32) -> LaurentPoly<T> {
        LaurentPoly::from_terms(
            self.terms.iter().filter(|(k, _)| k.0 == e).map(|(k, c)| (k.1 as i32, c.clone())),
        )
    }

    /// a_j(xi), the coefficient of eta^(k-j) in a degree-k polynomial.
    pub fn a_j(&self, k: u32, j: u32) -> LaurentPoly<T> {
        self.eta_coeff(k - j)
    }

    pub fn is_monic(&self, k: u32) -> bool {
        self.eta_degree() == Some(k) && self.eta_coeff(k) == LaurentPoly::one()
    }

    /// Number of terms breaking deg_xi a_j <= 4j for a charge-k curve.
    pub fn degree_violations(&self, k: u32) -> usize {
        self.terms.keys().filter(|(e, x)| *e > k || *x > 4 * (k - e)).count()
    }

    /// Drop coefficients below `rel` times the largest one. No-op in exact mode.
    pub fn normalized(&self, rel: f64) -> Self {
        if T::EXACT {
            return self.clone();
        }
        let max = self.max_abs();
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.magnitude() >= rel * max && c.magnitude() > 0.0)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn eval(&self, eta: &T, xi: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, ((e, x), c)| {
            acc + c.clone() * super::laurent::pow(eta, *e) * super::laurent::pow(xi, *x)
        })
    }

    pub fn to_c64(&self) -> BivarPoly<C64> {
        BivarPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, c.to_c64())))
    }

    pub fn to_records(&self) -> Vec<BivarRecord> {
        self.terms
            .iter()
            .map(|((e, x), c)| {
                let z = c.to_c64();
                BivarRecord { eta_pow: *e, xi_pow: *x, re: z.re, im: z.im }
            })
            .collect()
    }
}

impl BivarPoly<C64> {
    pub fn from_records(rs: &[BivarRecord]) -> Result<Self> {
        for r in rs {
            if !(r.re.is_finite() && r.im.is_finite()) {
                return Err(Error::Config(format!("non-finite coefficient at {:?}", r)));
            }
        }
        Ok(Self::from_terms(rs.iter().map(|r| ((r.eta_pow, r.xi_pow), C64::new(r.re, r.im)))))
    }

    /// max |c - c'| / (1 + |c'|) over the union of supports.
    pub fn rel_distance(&self, base: &Self) -> f64 {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(base.terms.keys()).copied().collect();
        keys.into_iter()
            .map(|(e, x)| {
                let b = base.coeff(e, x);
                (self.coeff(e, x) - b).norm() / (1.0 + b.norm())
            })
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add<&BivarPoly<T>> for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn add(self, rhs: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub<&BivarPoly<T>> for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn sub(self, rhs: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul<&BivarPoly<T>> for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn mul(self, rhs: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = BivarPoly { terms: BTreeMap::new() };
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &BivarPoly<T> {
    type Output = BivarPoly<T>;
    fn neg(self) -> BivarPoly<T> {
        BivarPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

forward_owned!(BivarPoly, Add add, Sub sub, Mul mul);

impl<T: Scalar> One for BivarPoly<T> {
    fn one() -> Self {
        Self::from_terms([((0, 0), T::one())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c64;

    #[test]
    fn records_round_trip() {
        let p = BivarPoly::from_terms([((2, 0), c64(1.0, 0.0)), ((0, 3), c64(0.5, -2.0))]);
        let back = BivarPoly::from_records(&p.to_records()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn degree_violation_counter() {
        let ok = BivarPoly::from_terms([((1, 0), c64(1.0, 0.0)), ((0, 4), c64(1.0, 0.0))]);
        assert_eq!(ok.degree_violations(1), 0);
        let bad = &ok + &BivarPoly::from_terms([((0, 5), c64(1.0, 0.0))]);
        assert_eq!(bad.degree_violations(1), 1);
    }
}
