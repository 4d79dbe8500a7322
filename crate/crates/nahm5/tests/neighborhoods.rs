mod common;

use common::{rank_q, rational_samples};
use nahm5::algebra::{q, LaurentPoly, Matrix, Q};
use nahm5::neighborhoods::{
    binomial_identity, canonical_extension, compare_with_residues, corrupt, fibre_at_zero, kernel_generator_check,
    kernel_generator_check_with, neighborhood_matrix, solve_constraints, verify_extension, verify_extension_data,
    x_matrices_from_extensions, GammaElement, GeneratorCoeffs,
};
use nahm5::nahm::residue_triple;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn fact(n: usize) -> Q {
    (1..=n).fold(Q::one(), |a, i| a * q(i as i64, 1))
}

/// Pascal's triangle, independent of any factorial code.
fn pascal(n: usize) -> Vec<Vec<i128>> {
    let mut rows = vec![vec![1i128]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1i128; i + 1];
        for j in 1..i {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

fn powq(x: &Q, e: i64) -> Q {
    let base = if e < 0 { Q::one() / x.clone() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Q::one(), |a, _| a * base.clone())
}

/// U0-side coefficient p^j_l evaluated at xi; zero outside 0 <= l <= j <= m.
fn p_u0(m: usize, j: isize, l: usize, xi: &Q) -> Q {
    if j < 0 || j as usize > m || l > j as usize {
        return Q::zero();
    }
    let j = j as usize;
    fact(m - l) * fact(j) / (fact(j - l) * fact(m) * fact(l)) * powq(xi, 2 * (j as i64 - l as i64))
}

fn mono(c: Q, e: i32) -> LaurentPoly<Q> {
    LaurentPoly::monomial(c, e)
}

#[test]
fn neighborhood_matrix_examples() {
    assert_eq!(neighborhood_matrix(0), Matrix::from_fn(1, 1, |_, _| LaurentPoly::one()));
    let m1 = neighborhood_matrix(1);
    assert_eq!(m1[(0, 0)], mono(Q::one(), 2));
    assert!(m1[(0, 1)].is_zero());
    assert_eq!(m1[(1, 0)], LaurentPoly::one());
    assert_eq!(m1[(1, 1)], mono(Q::one(), -2));
    let m2 = neighborhood_matrix(2);
    assert_eq!(m2[(2, 0)], mono(q(1, 2), 0));
    assert_eq!(m2[(2, 1)], mono(Q::one(), -2));
    assert_eq!(m2[(2, 2)], mono(Q::one(), -4));
}

#[test]
fn extension_examples() {
    let (u1, u0) = canonical_extension(1, 0).unwrap();
    assert_eq!(u1.series, vec![mono(Q::one(), -2), mono(q(-1, 1), 0)]);
    assert_eq!(u0.series, vec![LaurentPoly::one(), LaurentPoly::zero()]);
    for m in 0..=6 {
        let (u1, u0) = canonical_extension(m, m).unwrap();
        assert_eq!(u1.series[0], LaurentPoly::one());
        assert_eq!(u0.series[0], mono(Q::one(), 2 * m as i32));
        for j in 0..=m {
            let (u1, _) = canonical_extension(m, j).unwrap();
            assert_eq!(u1.series[0], mono(Q::one(), -2 * (m - j) as i32));
        }
    }
    assert!(canonical_extension(2, 3).is_err());
}

#[test]
fn extension_sweep_and_fault() {
    for m in 0..=10 {
        for j in 0..=m {
            assert!(verify_extension(m, j).unwrap(), "m={m} j={j}");
        }
    }
    for m in 1..=6 {
        for j in 0..=m {
            let (u1, u0) = canonical_extension(m, j).unwrap();
            assert!(verify_extension_data(&u1, &u0));
            assert!(!verify_extension_data(&corrupt(&u1, 0), &u0));
        }
    }
}

#[test]
fn binomial_identity_against_pascal() {
    let c = pascal(12);
    let b = |n: usize, r: usize| if r > n { 0 } else { c[n][r] };
    assert!(binomial_identity(2, 1, 1).unwrap());
    for m in 0..=12 {
        for j in 0..=m {
            for bb in 0..=m {
                let lhs: i128 = (0..=bb.min(m - j))
                    .map(|l| if l % 2 == 0 { 1 } else { -1 } * b(m - j, l) * b(m - l, bb - l))
                    .sum();
                assert_eq!(lhs, b(j, bb));
                assert!(binomial_identity(m, j, bb).unwrap());
            }
        }
    }
    assert!(binomial_identity(3, 4, 0).is_err());
}

#[test]
fn constraint_examples_and_substitution() {
    assert_eq!(solve_constraints(1, 0).unwrap(), vec![Q::one(), q(-1, 1)]);
    for m in 0..=10 {
        assert_eq!(solve_constraints(m, 2 * m).unwrap(), vec![Q::one()]);
        for h in 0..=m {
            let l = 2 * h;
            let c = solve_constraints(m, l).unwrap();
            assert_eq!(c.len(), (2 * m - l) / 2 + 1);
            assert!(!c[0].is_zero() && !c.last().unwrap().is_zero());
            for n in l / 2 + 1..=m {
                let s = c.iter().enumerate().filter(|(i, _)| *i <= n).fold(Q::zero(), |a, (i, ci)| a + ci.clone() / fact(n - i));
                assert!(s.is_zero(), "m={m} l={l} n={n}");
            }
        }
    }
    assert!(solve_constraints(2, 1).is_err());
    assert!(solve_constraints(2, 6).is_err());
}

#[test]
fn kernel_generator_by_direct_evaluation() {
    // t P^j - (m-j) P^(j+1) + (m-2j) xi^2 P^j + j xi^4 P^(j-1), coefficient of t^l for l <= m.
    for k in 1..=6usize {
        let m = k - 1;
        for j in 0..k {
            for xi in rational_samples() {
                for l in 0..=m {
                    let tp = if l == 0 { Q::zero() } else { p_u0(m, j as isize, l - 1, &xi) };
                    let v = tp - q((m - j) as i64, 1) * p_u0(m, j as isize + 1, l, &xi)
                        + q(m as i64 - 2 * j as i64, 1) * powq(&xi, 2) * p_u0(m, j as isize, l, &xi)
                        + q(j as i64, 1) * powq(&xi, 4) * p_u0(m, j as isize - 1, l, &xi);
                    assert!(v.is_zero(), "k={k} j={j} l={l}");
                }
            }
            assert!(kernel_generator_check(k, j).unwrap().is_zero());
        }
    }
    assert!(kernel_generator_check(3, 3).is_err());
}

#[test]
fn perturbed_generator_is_detected() {
    for k in 2..=6usize {
        for j in 0..k {
            let mut g = GeneratorCoeffs::standard(k - 1, j);
            g.xi2 = g.xi2 + Q::one();
            assert!(!kernel_generator_check_with(k, j, &g).unwrap().is_zero());
        }
    }
}

#[test]
fn x_matrices_against_residue_triple() {
    let x1 = x_matrices_from_extensions(1).unwrap();
    assert!(x1.x0.is_zero() && x1.x2.is_zero() && x1.x4.is_zero());
    let x = x_matrices_from_extensions(2).unwrap();
    let r = residue_triple::<Q>(2);
    assert_eq!(x.x0, r.r0);
    assert_eq!(x.x4, r.r4);
    for k in 1..=6 {
        let c = compare_with_residues(k).unwrap();
        assert!(c.x0_matches && c.x4_matches && c.diagonal_opposite_sign);
        assert_eq!(c.diagonal_deviation, 2.0 * (k as f64 - 1.0));
    }
}

#[test]
fn fibre_spans_gamma() {
    for m in 0..=10 {
        let (els, ok) = fibre_at_zero(m);
        assert!(ok);
        let mat = Matrix::from_fn(m + 1, m + 1, |i, j| els[i].coeffs[j].clone());
        assert_eq!(rank_q(&mat), m + 1);
    }
    let odd = mono(Q::one(), 3);
    assert!(GammaElement::from_laurent(&odd, 2).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn matrix_times_u1_series_at_a_point((m, j) in (0usize..=8).prop_flat_map(|m| (Just(m), 0..=m)), n in 1i64..9, d in 1i64..9) {
        // Evaluate both sides at xi = n/d, away from the library's Laurent arithmetic.
        let xi = q(n, d);
        let (u1, u0) = canonical_extension(m, j).unwrap();
        let mat = neighborhood_matrix(m);
        for b in 0..=m {
            let lhs = (0..=m).fold(Q::zero(), |a, l| a + mat[(b, l)].eval(&xi) * u1.series[l].eval(&xi));
            prop_assert_eq!(lhs, u0.series[b].eval(&xi));
            prop_assert_eq!(u0.series[b].eval(&xi), p_u0(m, j as isize, b, &xi));
        }
    }
}
