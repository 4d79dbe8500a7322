//! Skew-Hermitian T_j give real spectral curves; general T_j do not.

use nahm5::nahm::{integrate, real_rhs_via_complex, nahm_rhs_real, reality_check_curve, spectral_curve, Method,
    RealNahmState};

fn main() -> nahm5::Result<()> {
    let mut r = nahm5::rng::named(11, "real-form");
    let t = RealNahmState::random(&mut r, 1.0, 3);
    let lhs = nahm_rhs_real(&t)?;
    let rhs = real_rhs_via_complex(&t)?;
    let gap = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).max_abs()).fold(0.0, f64::max);
    println!("T equations vs complex form: {gap:.1e}");

    let general = t.to_complex()?;
    println!("general T_j, real curve: {}", reality_check_curve(&spectral_curve(&general))?);

    let skew = RealNahmState::random_skew_hermitian(&mut r, 0.9, 3).to_complex()?;
    let traj = integrate(&skew, 1.1, Method::default(), 50)?;
    for (z, p) in &traj.samples {
        let s = nahm5::nahm::NahmState::new(*z, p.clone());
        println!("z={z:.2}  real curve: {}", reality_check_curve(&spectral_curve(&s))?);
    }
    Ok(())
}
