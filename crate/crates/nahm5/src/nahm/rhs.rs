use super::state::{a_to_t, t_to_a, NahmState, RealNahmState};
use crate::algebra::{commutator, Matrix, MatrixPencil, Scalar, C64};
use crate::Result;

/// (1/2[A0,A2], [A0,A3] + 1/2[A1,A2], [A1,A3] + [A0,A4], [A1,A4] + 1/2[A2,A3], 1/2[A2,A4]).
pub fn nahm_rhs_pencil<T: Scalar>(p: &MatrixPencil<T>) -> Result<[Matrix<T>; 5]> {
    let a = p.coeffs();
    let half = T::one() / T::from_i64(2);
    let c = |i: usize, j: usize| commutator(&a[i], &a[j]);
    Ok([
        c(0, 2)?.scale(&half),
        &c(0, 3)? + &c(1, 2)?.scale(&half),
        &c(1, 3)? + &c(0, 4)?,
        &c(1, 4)? + &c(2, 3)?.scale(&half),
        c(2, 4)?.scale(&half),
    ])
}

pub fn nahm_rhs(s: &NahmState) -> Result<[Matrix<C64>; 5]> {
    nahm_rhs_pencil(&s.pencil)
}

/// The five brackets of the real form:
/// T1' = [T5,T2], T2' = [T1,T5], T3' = [T1,T3] + [T2,T4] + [T5,T4],
/// T4' = -[T1,T4] + [T2,T3] - [T5,T3], T5' = [T1,T2] + [T4,T3].
pub fn nahm_rhs_real(s: &RealNahmState) -> Result<[Matrix<C64>; 5]> {
    let t = &s.t;
    let c = |i: usize, j: usize| commutator(&t[i - 1], &t[j - 1]);
    Ok([
        c(5, 2)?,
        c(1, 5)?,
        &(&c(1, 3)? + &c(2, 4)?) + &c(5, 4)?,
        &(&(-c(1, 4)?) + &c(2, 3)?) - &c(5, 3)?,
        &c(1, 2)? + &c(4, 3)?,
    ])
}

/// xi-coefficients 0..=4 of [A(xi), A_+(xi)] with A_+ = 1/2 A2 + A3 xi + A4 xi^2.
/// Degrees 5 and 6 cancel identically; they are returned separately so
/// callers can confirm it.
pub fn lax_rhs<T: Scalar>(p: &MatrixPencil<T>) -> Result<([Matrix<T>; 5], [Matrix<T>; 2])> {
    let a = p.coeffs();
    let half = T::one() / T::from_i64(2);
    let plus = [a[2].scale(&half), a[3].clone(), a[4].clone()];
    let k = p.k();
    let mut out: Vec<Matrix<T>> = vec![Matrix::zeros(k, k); 7];
    for (i, ai) in a.iter().enumerate() {
        for (j, pj) in plus.iter().enumerate() {
            out[i + j] = &out[i + j] + &commutator(ai, pj)?;
        }
    }
    let hi = [out[5].clone(), out[6].clone()];
    out.truncate(5);
    Ok((out.try_into().expect("five coefficients"), hi))
}

/// Real-form derivative obtained by mapping to A, applying the complex
/// right-hand side and mapping back.
pub fn real_rhs_via_complex(s: &RealNahmState) -> Result<[Matrix<C64>; 5]> {
    let p = MatrixPencil::new(t_to_a(&s.t))?;
    Ok(a_to_t(&nahm_rhs_pencil(&p)?))
}
