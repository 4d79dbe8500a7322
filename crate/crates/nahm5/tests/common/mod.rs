//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's own determinant, characteristic-polynomial or rank code.
#![allow(dead_code)]

use nahm5::algebra::{q, Matrix, Ring, C64, Q};
use num_traits::Zero;

/// Leibniz determinant over permutations; fine for k <= 6.
pub fn det_leibniz<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = T::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let prod = (0..n).fold(T::one(), |acc, i| acc * m[(i, p[i])].clone());
        total = if inversions % 2 == 0 { total.clone() + prod } else { total.clone() - prod };
    });
    total
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Rank over Q by plain row reduction.
pub fn rank_q(m: &Matrix<Q>) -> usize {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Q>> = (0..r).map(|i| (0..c).map(|j| m[(i, j)].clone()).collect()).collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, piv);
        for i in 0..r {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone() / a[rank][col].clone();
                for j in 0..c {
                    let v = a[rank][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A few rational sample points away from 0.
pub fn rational_samples() -> Vec<Q> {
    [(1, 1), (-2, 3), (5, 7), (3, 1), (-1, 2), (7, 5)].iter().map(|&(n, d)| q(n, d)).collect()
}

pub fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Matrix with entries given row by row as (re, im) pairs.
pub fn cmat(rows: &[&[(f64, f64)]]) -> Matrix<C64> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| C64::new(a, b)).collect()).collect()).unwrap()
}
