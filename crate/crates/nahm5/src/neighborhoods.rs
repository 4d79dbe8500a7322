//! Exact identities on the formal neighborhood of the zero section.
//!
//! Everything here is rational. With t = z eta, a truncated series
//! P(t) = sum_l p_l t^l (l = 0..=m) is stored as its coefficient vector, each
//! p_l a Laurent polynomial in xi.
//!
//! Index table (0-based everywhere):
//!
//! | object                  | index          | range          |
//! |-------------------------|----------------|----------------|
//! | matrix row / column     | b / l          | 0..=m          |
//! | series coefficient      | l (power of t) | 0..=m          |
//! | extension label         | j              | 0..=m, m = k-1 |
//! | X matrix entry          | (row i, col j) | basis P^0..P^m |
//! | constraint unknown      | c_i            | 0..=(2m-l)/2   |

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPoly, Matrix, Scalar, Q};
use crate::nahm::residue_triple;
use crate::{Error, Result};

type L = LaurentPoly<Q>;

fn fact(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn binom(n: usize, r: usize) -> BigInt {
    if r > n {
        BigInt::zero()
    } else {
        fact(n) / (fact(r) * fact(n - r))
    }
}

fn rat(n: BigInt, d: BigInt) -> Q {
    Q::new(n, d)
}

fn xi_pow(c: Q, e: i64) -> L {
    L::monomial(c, e as i32)
}

/// Element of Gamma_m: c_0 + c_1 xi^2 + ... + c_m xi^(2m).
#[derive(Clone, Debug, PartialEq)]
pub struct GammaElement {
    pub coeffs: Vec<Q>,
}

impl GammaElement {
    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_laurent(&self) -> L {
        L::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| (2 * i as i32, c.clone())))
    }

    /// Some(element) iff p has only even, non-negative powers up to 2m.
    pub fn from_laurent(p: &L, m: usize) -> Option<Self> {
        if p.terms().any(|(e, _)| e < 0 || e % 2 != 0 || e as usize > 2 * m) {
            return None;
        }
        Some(Self { coeffs: (0..=m).map(|i| p.coeff(2 * i as i32)).collect() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    U0,
    U1,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionData {
    pub m: usize,
    pub j: usize,
    pub side: Side,
    /// t-coefficients p_0..p_m.
    pub series: Vec<L>,
}

/// Lower-triangular (m+1)x(m+1) matrix, entry (b, l) = xi^(2m-2b-2l) / (b-l)!.
pub fn neighborhood_matrix(m: usize) -> Matrix<L> {
    Matrix::from_fn(m + 1, m + 1, |b, l| {
        if l <= b {
            xi_pow(rat(BigInt::one(), fact(b - l)), 2 * m as i64 - 2 * b as i64 - 2 * l as i64)
        } else {
            L::zero()
        }
    })
}

/// (U1 side P'^j, U0 side P^j).
pub fn canonical_extension(m: usize, j: usize) -> Result<(ExtensionData, ExtensionData)> {
    if j > m {
        return Err(Error::OutOfRange(format!("j = {j} > m = {m}")));
    }
    let u1 = (0..=m)
        .map(|l| {
            if l > m - j {
                return L::zero();
            }
            let sign = if l % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let c = rat(sign * fact(m - l) * fact(m - j), fact(m - l - j) * fact(m) * fact(l));
            xi_pow(c, -2 * (m as i64 - j as i64 - l as i64))
        })
        .collect();
    let u0 = (0..=m)
        .map(|l| {
            if l > j {
                return L::zero();
            }
            let c = rat(fact(m - l) * fact(j), fact(j - l) * fact(m) * fact(l));
            xi_pow(c, 2 * (j as i64 - l as i64))
        })
        .collect();
    Ok((
        ExtensionData { m, j, side: Side::U1, series: u1 },
        ExtensionData { m, j, side: Side::U0, series: u0 },
    ))
}

fn apply(mat: &Matrix<L>, v: &[L]) -> Vec<L> {
    (0..mat.rows())
        .map(|b| (0..mat.cols()).fold(L::zero(), |acc, l| acc + &mat[(b, l)] * &v[l]))
        .collect()
}

/// neighborhood_matrix(m) * P'^j == P^j exactly.
pub fn verify_extension(m: usize, j: usize) -> Result<bool> {
    let (u1, u0) = canonical_extension(m, j)?;
    Ok(verify_extension_data(&u1, &u0))
}

/// Same check on caller-supplied data (used to feed corrupted extensions).
pub fn verify_extension_data(u1: &ExtensionData, u0: &ExtensionData) -> bool {
    if u1.m != u0.m || u1.series.len() != u1.m + 1 || u0.series.len() != u0.m + 1 {
        return false;
    }
    apply(&neighborhood_matrix(u1.m), &u1.series) == u0.series
}

/// sum_{l=0}^{min(b, m-j)} (-1)^l C(m-j, l) C(m-l, b-l) == C(j, b).
pub fn binomial_identity(m: usize, j: usize, b: usize) -> Result<bool> {
    if j > m || b > m {
        return Err(Error::OutOfRange(format!("need j, b <= m (m={m}, j={j}, b={b})")));
    }
    let lhs = (0..=b.min(m - j)).fold(BigInt::zero(), |acc, l| {
        let t = binom(m - j, l) * binom(m - l, b - l);
        if l % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    });
    Ok(lhs == binom(j, b))
}

/// Solve sum_{i=0}^{(2m-l)/2} c_i / (n-i)! = 0 for l/2+1 <= n <= m with c_0 = 1.
/// Terms with n < i are absent (1/(negative)! = 0).
pub fn solve_constraints(m: usize, l: usize) -> Result<Vec<Q>> {
    if l % 2 != 0 || l > 2 * m {
        return Err(Error::OutOfRange(format!("l = {l} must be even and <= 2m = {}", 2 * m)));
    }
    let d = (2 * m - l) / 2;
    let eqs: Vec<usize> = (l / 2 + 1..=m).collect();
    // unknowns c_1..c_d; rhs moves the c_0 column over
    let inv_fact = |n: usize, i: usize| if i <= n { rat(BigInt::one(), fact(n - i)) } else { Q::zero() };
    let mut a: Vec<Vec<Q>> = eqs
        .iter()
        .map(|&n| {
            let mut row: Vec<Q> = (1..=d).map(|i| inv_fact(n, i)).collect();
            row.push(-inv_fact(n, 0));
            row
        })
        .collect();
    if a.len() != d {
        return Err(Error::Singular(format!("{} equations for {d} unknowns", a.len())));
    }
    // Gaussian elimination with exact pivots
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r][col].is_zero()).ok_or_else(|| {
            Error::Singular(format!("no pivot in column {col} (m={m}, l={l})"))
        })?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() / p.clone();
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
    }
    let mut c = vec![Q::one()];
    c.extend(a.into_iter().map(|row| row[d].clone()));
    if c.last().map_or(true, |x| x.is_zero()) {
        return Err(Error::Singular(format!("last coefficient vanishes (m={m}, l={l})")));
    }
    Ok(c)
}

/// Coefficients (on t, on 1, on xi^2, on xi^4) of the kernel generator
/// t P^j - (m-j) P^(j+1) + (m-2j) xi^2 P^j + j xi^4 P^(j-1).
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorCoeffs {
    pub t: Q,
    pub next: Q,
    pub xi2: Q,
    pub prev: Q,
}

impl GeneratorCoeffs {
    pub fn standard(m: usize, j: usize) -> Self {
        Self {
            t: Q::one(),
            next: -Q::from_i64(m as i64 - j as i64),
            xi2: Q::from_i64(m as i64 - 2 * j as i64),
            prev: Q::from_i64(j as i64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelDefect {
    pub k: usize,
    pub j: usize,
    /// Largest |coefficient| left below t^(m+1) on each side.
    pub u0: f64,
    pub u1: f64,
}

impl KernelDefect {
    pub fn is_zero(&self) -> bool {
        self.u0 == 0.0 && self.u1 == 0.0
    }
}

fn series_of(m: usize, j: isize, side: Side) -> Vec<L> {
    if j < 0 || j as usize > m {
        return vec![L::zero(); m + 1];
    }
    let (u1, u0) = canonical_extension(m, j as usize).expect("in range");
    match side {
        Side::U0 => u0.series,
        Side::U1 => u1.series,
    }
}

fn combination(m: usize, j: usize, side: Side, g: &GeneratorCoeffs) -> Vec<L> {
    let pj = series_of(m, j as isize, side);
    let next = series_of(m, j as isize + 1, side);
    let prev = series_of(m, j as isize - 1, side);
    // On U1 the variable t' = t / xi^4 carries the chart weight xi^4.
    let t_weight = match side {
        Side::U0 => L::constant(g.t.clone()),
        Side::U1 => xi_pow(g.t.clone(), 4),
    };
    let x2 = xi_pow(g.xi2.clone(), 2);
    let x4 = xi_pow(g.prev.clone(), 4);
    (0..=m)
        .map(|l| {
            let shifted = if l == 0 { L::zero() } else { &t_weight * &pj[l - 1] };
            shifted + next[l].scale(&g.next) + &x2 * &pj[l] + &x4 * &prev[l]
        })
        .collect()
}

fn defect(v: &[L]) -> f64 {
    v.iter().map(|p| p.max_abs()).fold(0.0, f64::max)
}

/// The kernel generator for (k, j) vanishes mod t^k on both charts.
pub fn kernel_generator_check(k: usize, j: usize) -> Result<KernelDefect> {
    if k == 0 || j >= k {
        return Err(Error::OutOfRange(format!("need 0 <= j < k (k={k}, j={j})")));
    }
    kernel_generator_check_with(k, j, &GeneratorCoeffs::standard(k.saturating_sub(1), j))
}

pub fn kernel_generator_check_with(k: usize, j: usize, g: &GeneratorCoeffs) -> Result<KernelDefect> {
    if k == 0 || j >= k {
        return Err(Error::OutOfRange(format!("need 0 <= j < k (k={k}, j={j})")));
    }
    let m = k - 1;
    Ok(KernelDefect {
        k,
        j,
        u0: defect(&combination(m, j, Side::U0, g)),
        u1: defect(&combination(m, j, Side::U1, g)),
    })
}

/// Operators X0, X2, X4 multiplying 1, xi^2, xi^4 in the kernel generators:
/// t P^j == -sum_i (X0 + xi^2 X2 + xi^4 X4)[i, j] P^i.
#[derive(Clone, Debug, PartialEq)]
pub struct XMatrices {
    pub x0: Matrix<Q>,
    pub x2: Matrix<Q>,
    pub x4: Matrix<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XComparison {
    pub k: usize,
    /// X0 == R0 off the diagonal.
    pub x0_matches: bool,
    /// X4 == R4 off the diagonal.
    pub x4_matches: bool,
    /// max |X2 - R2| (the read-off diagonal has the opposite sign).
    pub diagonal_deviation: f64,
    /// X2 == -R2.
    pub diagonal_opposite_sign: bool,
}

pub fn x_matrices_from_extensions(k: usize) -> Result<XMatrices> {
    if k == 0 {
        return Err(Error::OutOfRange("k >= 1".into()));
    }
    let m = k - 1;
    let mut x0 = Matrix::zeros(k, k);
    let mut x2 = Matrix::zeros(k, k);
    let mut x4 = Matrix::zeros(k, k);
    for j in 0..k {
        let g = GeneratorCoeffs::standard(m, j);
        if j + 1 < k {
            x0[(j + 1, j)] = g.next.clone();
        }
        x2[(j, j)] = g.xi2.clone();
        if j >= 1 {
            x4[(j - 1, j)] = g.prev.clone();
        }
    }
    Ok(XMatrices { x0, x2, x4 })
}

pub fn compare_with_residues(k: usize) -> Result<XComparison> {
    let x = x_matrices_from_extensions(k)?;
    let r = residue_triple::<Q>(k);
    let dev = (&x.x2 - &r.r2).max_abs();
    Ok(XComparison {
        k,
        x0_matches: x.x0 == r.r0,
        x4_matches: x.x4 == r.r4,
        diagonal_deviation: dev,
        diagonal_opposite_sign: x.x2 == -&r.r2,
    })
}

/// The U0-side leading terms p^j_0, j = 0..=m, as elements of Gamma_m,
/// together with whether they are linearly independent.
pub fn fibre_at_zero(m: usize) -> (Vec<GammaElement>, bool) {
    let els: Vec<GammaElement> = (0..=m)
        .map(|j| {
            let (_, u0) = canonical_extension(m, j).expect("in range");
            GammaElement::from_laurent(&u0.series[0], m).expect("even powers")
        })
        .collect();
    // p^j_0 is a nonzero multiple of xi^(2j): independence is a nonzero diagonal.
    let independent = els.iter().enumerate().all(|(j, e)| {
        !e.coeffs[j].is_zero() && e.coeffs.iter().enumerate().all(|(i, c)| i == j || c.is_zero())
    });
    (els, independent)
}

/// Flip the sign of one coefficient of P'^j (fault injection).
pub fn corrupt(e: &ExtensionData, l: usize) -> ExtensionData {
    let mut out = e.clone();
    if let Some(p) = out.series.get_mut(l) {
        *p = -p.clone();
    }
    out
}
