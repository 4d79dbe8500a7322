use serde::{Deserialize, Serialize};

use crate::algebra::{commutator, Matrix, MatrixPencil, Scalar, C64};
use crate::{Error, Result};

/// Residues (R0, R2, R4) of A0, A2, A4 at a boundary pole.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueTriple<T> {
    pub r0: Matrix<T>,
    pub r2: Matrix<T>,
    pub r4: Matrix<T>,
}

impl<T: Scalar> ResidueTriple<T> {
    pub fn k(&self) -> usize {
        self.r0.rows()
    }

    /// R0 + xi^2 R2 + xi^4 R4 as a pencil.
    pub fn pencil(&self) -> MatrixPencil<T> {
        let z = Matrix::zeros(self.k(), self.k());
        MatrixPencil::new([self.r0.clone(), z.clone(), self.r2.clone(), z, self.r4.clone()])
            .expect("square residues")
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let (a, b) = (self.k(), o.k());
        let blk = |x: &Matrix<T>, y: &Matrix<T>| {
            Matrix::from_fn(a + b, a + b, |i, j| match (i < a, j < a) {
                (true, true) => x[(i, j)].clone(),
                (false, false) => y[(i - a, j - a)].clone(),
                _ => T::zero(),
            })
        };
        Self { r0: blk(&self.r0, &o.r0), r2: blk(&self.r2, &o.r2), r4: blk(&self.r4, &o.r4) }
    }

    pub fn to_c64(&self) -> ResidueTriple<C64> {
        ResidueTriple { r0: self.r0.to_c64(), r2: self.r2.to_c64(), r4: self.r4.to_c64() }
    }

    /// -(R0 R4 + R4 R0) + R2^2 / 2; equals (k^2 - 1)/2 times the identity on an
    /// irreducible triple.
    pub fn casimir(&self) -> Matrix<T> {
        let half = T::one() / T::from_i64(2);
        let anti = &(&self.r0 * &self.r4) + &(&self.r4 * &self.r0);
        &(&self.r2 * &self.r2).scale(&half) - &anti
    }
}

/// R0 subdiagonal -(k-1), ..., -1; R4 superdiagonal 1, ..., k-1;
/// R2 = diag(-(k-1), -(k-3), ..., k-1), the diagonal forced by
/// [R2, R0] = 2 R0, [R2, R4] = -2 R4, [R0, R4] = -R2.
pub fn residue_triple<T: Scalar>(k: usize) -> ResidueTriple<T> {
    assert!(k >= 1, "k >= 1");
    let n = |x: usize| T::from_i64(x as i64);
    ResidueTriple {
        r0: Matrix::from_fn(k, k, |i, j| if i == j + 1 { -n(k - 1 - j) } else { T::zero() }),
        r2: Matrix::from_fn(k, k, |i, j| {
            if i == j {
                T::from_i64(2 * i as i64 - (k as i64 - 1))
            } else {
                T::zero()
            }
        }),
        r4: Matrix::from_fn(k, k, |i, j| if j == i + 1 { n(j) } else { T::zero() }),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub k: usize,
    /// [R2,R0] - 2R0, [R2,R4] + 2R4, [R0,R4] + R2 (largest entry each).
    pub bracket_defects: [f64; 3],
    pub brackets_ok: bool,
    pub casimir_scalar: bool,
    pub casimir_value: Option<f64>,
    pub casimir_expected: f64,
    /// Smallest n with R4^n = 0 (None if not nilpotent within k steps).
    pub r4_chain_length: Option<usize>,
    pub irreducible: bool,
    /// Eigenvalue of R2/2 on the highest-weight vector.
    pub highest_weight: Option<f64>,
    /// The scalar (k-1)/2 of the connection residue.
    pub connection_residue: f64,
    pub connection_residue_consistent: bool,
    pub pass: bool,
}

fn tol_for<T: Scalar>() -> f64 {
    if T::EXACT {
        0.0
    } else {
        1e-9
    }
}

fn is_zero_mat<T: Scalar>(m: &Matrix<T>, tol: f64) -> bool {
    m.iter().all(|x| x.negligible(tol))
}

/// Bracket relations, irreducibility (Casimir scalar plus a cyclic R4-chain
/// of length exactly k) and the highest-weight scalar (k-1)/2.
pub fn certify_boundary<T: Scalar>(t: &ResidueTriple<T>) -> CertifyReport {
    let k = t.k();
    let tol = tol_for::<T>();
    let two = T::from_i64(2);
    let defect = |m: Result<Matrix<T>>| m.map(|m| m.max_abs()).unwrap_or(f64::INFINITY);
    let d = [
        defect(commutator(&t.r2, &t.r0).map(|c| &c - &t.r0.scale(&two))),
        defect(commutator(&t.r2, &t.r4).map(|c| &c + &t.r4.scale(&two))),
        defect(commutator(&t.r0, &t.r4).map(|c| &c + &t.r2)),
    ];
    let exact_ok = |m: Result<Matrix<T>>| m.map(|m| is_zero_mat(&m, tol)).unwrap_or(false);
    let brackets_ok = exact_ok(commutator(&t.r2, &t.r0).map(|c| &c - &t.r0.scale(&two)))
        && exact_ok(commutator(&t.r2, &t.r4).map(|c| &c + &t.r4.scale(&two)))
        && exact_ok(commutator(&t.r0, &t.r4).map(|c| &c + &t.r2));

    let cas = t.casimir();
    let c00 = cas[(0, 0)].clone();
    let casimir_scalar =
        is_zero_mat(&(&cas - &Matrix::identity(k).scale(&c00)), tol * (1.0 + c00.magnitude()));
    let expected = T::from_i64(k as i64 * k as i64 - 1) / two.clone();
    let casimir_matches = (c00.clone() - expected).negligible(tol);

    let mut power = Matrix::identity(k);
    let mut chain = None;
    for n in 1..=k {
        power = &power * &t.r4;
        if is_zero_mat(&power, tol) {
            chain = Some(n);
            break;
        }
    }
    let irreducible = casimir_scalar && casimir_matches && chain == Some(k);

    // Highest-weight vector: R0^(k-1) e_j for the first j where it is nonzero.
    let hw = if irreducible {
        let p = t.r0.pow(k as u32 - 1);
        (0..k).find_map(|j| {
            let col: Vec<T> = (0..k).map(|i| p[(i, j)].clone()).collect();
            let i = col.iter().position(|x| !x.negligible(tol))?;
            let r2v: T = (0..k).fold(T::zero(), |acc, l| acc + t.r2[(i, l)].clone() * col[l].clone());
            Some((r2v / col[i].clone() / two.clone()).to_c64().re)
        })
    } else {
        None
    };
    let connection_residue = (k as f64 - 1.0) / 2.0;
    let consistent = hw.map_or(false, |h| (h - connection_residue).abs() <= 1e-9);
    CertifyReport {
        k,
        bracket_defects: d,
        brackets_ok,
        casimir_scalar,
        casimir_value: casimir_scalar.then(|| c00.to_c64().re),
        casimir_expected: (k as f64 * k as f64 - 1.0) / 2.0,
        r4_chain_length: chain,
        irreducible,
        highest_weight: hw,
        connection_residue,
        connection_residue_consistent: consistent,
        pass: brackets_ok && irreducible && consistent,
    }
}

/// Kernel of a(xi) = R0 + xi^2 R2 + xi^4 R4 for the triple above:
/// w_i = C(k-1, i) xi^(2(k-1-i)). After rescaling the basis by
/// e_i -> C(k-1, i) e_i it reads (xi^(2k-2), ..., xi^2, 1).
pub fn kernel_vector<T: Scalar>(k: usize, xi: &T) -> Vec<T> {
    let x2 = xi.clone() * xi.clone();
    let mut v = vec![T::one(); k];
    for i in (0..k.saturating_sub(1)).rev() {
        v[i] = v[i + 1].clone() * x2.clone();
    }
    let mut binom = T::one();
    for (i, vi) in v.iter_mut().enumerate() {
        *vi = vi.clone() * binom.clone();
        binom = binom * T::from_i64((k - 1 - i) as i64) / T::from_i64(i as i64 + 1);
    }
    v
}

fn residual<T: Scalar>(k: usize, xi_samples: &[T], weighted: bool) -> f64 {
    let p = residue_triple::<T>(k).pencil();
    let mut worst = 0.0f64;
    for xi in xi_samples {
        let a = p.eval(xi);
        let mut v = kernel_vector(k, xi);
        if !weighted {
            let x2 = xi.clone() * xi.clone();
            v[k - 1] = T::one();
            for i in (0..k - 1).rev() {
                v[i] = v[i + 1].clone() * x2.clone();
            }
        }
        for r in 0..k {
            let s = (0..k).fold(T::zero(), |acc, c| acc + a[(r, c)].clone() * v[c].clone());
            let m = s.magnitude();
            worst = worst.max(if T::EXACT && !s.is_zero() { m.max(f64::MIN_POSITIVE) } else { m });
        }
    }
    worst
}

/// max over samples of |a(xi) w(xi)| with w = kernel_vector(k, xi), i.e. the
/// vector (xi^(2k-2), ..., 1) in the binomially rescaled basis. Exactly zero
/// in rational mode.
pub fn kernel_vector_check<T: Scalar>(k: usize, xi_samples: &[T]) -> f64 {
    residual(k, xi_samples, true)
}

/// Same with the unweighted vector v_i = xi^(2(k-i)) in the original basis.
/// Zero for k <= 2 only.
pub fn kernel_vector_residual_unweighted<T: Scalar>(k: usize, xi_samples: &[T]) -> f64 {
    residual(k, xi_samples, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Zero,
    Two,
}

/// Fitted A_j(z) ~ R_j / w + C_j with w the distance to the boundary.
#[derive(Clone, Debug)]
pub struct ResidueFit {
    pub residues: [Matrix<C64>; 5],
    pub analytic: [Matrix<C64>; 5],
    /// R1 and R3 vanish: A1, A3 are analytic at the boundary.
    pub odd_analytic: bool,
    pub disagreement: f64,
}

impl ResidueFit {
    pub fn triple(&self) -> ResidueTriple<C64> {
        ResidueTriple {
            r0: self.residues[0].clone(),
            r2: self.residues[2].clone(),
            r4: self.residues[4].clone(),
        }
    }
}

/// Neville extrapolation of samples (x_i, y_i) to x = 0.
fn neville(xs: &[f64], ys: &[Matrix<C64>]) -> Matrix<C64> {
    let mut p: Vec<Matrix<C64>> = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            // P(0) = (xj * P_i - xi * P_{i+1}) / (xj - xi) for nodes i..i+m
            let a = C64::new(xj / (xj - xi), 0.0);
            let b = C64::new(-xi / (xj - xi), 0.0);
            p[i] = &p[i].scale(&a) + &p[i + 1].scale(&b);
        }
    }
    p.swap_remove(0)
}

const FIT_TOL: f64 = 1e-6;

/// Fit a simple pole at z = 0 from samples at decreasing z in (0, 0.5).
pub fn extract_residues(
    sampler: impl Fn(f64) -> MatrixPencil<C64>,
    z_list: &[f64],
) -> Result<ResidueFit> {
    extract_residues_at(Boundary::Zero, sampler, z_list)
}

/// Same at either boundary; at z = 2 the distance w = 2 - z plays the role of z.
pub fn extract_residues_at(
    boundary: Boundary,
    sampler: impl Fn(f64) -> MatrixPencil<C64>,
    w_list: &[f64],
) -> Result<ResidueFit> {
    if w_list.len() < 3 {
        return Err(Error::OutOfRange("need at least 3 sample points".into()));
    }
    if w_list.iter().any(|w| !(*w > 0.0 && *w < 0.5)) || w_list.windows(2).any(|p| p[1] >= p[0]) {
        return Err(Error::OutOfRange("sample points must decrease inside (0, 0.5)".into()));
    }
    let z_of = |w: f64| match boundary {
        Boundary::Zero => w,
        Boundary::Two => 2.0 - w,
    };
    let pencils: Vec<MatrixPencil<C64>> = w_list.iter().map(|w| sampler(z_of(*w))).collect();
    let mut residues = Vec::with_capacity(5);
    let mut analytic = Vec::with_capacity(5);
    let mut worst = 0.0f64;
    for j in 0..5 {
        let f: Vec<Matrix<C64>> =
            pencils.iter().zip(w_list).map(|(p, w)| p.coeff(j).scale(&C64::new(*w, 0.0))).collect();
        let r_all = neville(w_list, &f);
        let r_sub = neville(&w_list[1..], &f[1..]);
        let dis = (&r_all - &r_sub).max_abs() / (1.0 + r_all.max_abs());
        worst = worst.max(if dis.is_nan() { f64::INFINITY } else { dis });
        let g: Vec<Matrix<C64>> =
            f.iter().zip(w_list).map(|(fi, w)| (fi - &r_all).scale(&C64::new(1.0 / w, 0.0))).collect();
        analytic.push(neville(w_list, &g));
        residues.push(r_all);
    }
    if worst > FIT_TOL {
        return Err(Error::NotSimplePole(worst));
    }
    let residues: [Matrix<C64>; 5] = residues.try_into().expect("five");
    let odd_analytic = residues[1].max_abs() <= 1e-8 && residues[3].max_abs() <= 1e-8;
    Ok(ResidueFit { residues, analytic: analytic.try_into().expect("five"), odd_analytic, disagreement: worst })
}
