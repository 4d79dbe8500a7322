//! Integrate a random pencil and watch the spectral curve stay put.

use nahm5::nahm::{integrate, lax_defect, Method, NahmState};

fn main() -> nahm5::Result<()> {
    let mut r = nahm5::rng::named(7, "flow-example");
    for k in 2..=4 {
        let s0 = NahmState::random(&mut r, 0.8, k);
        let t = integrate(&s0, 1.2, Method::Rk4 { step: 1e-3 }, 50)?;
        let adaptive = integrate(&s0, 1.2, Method::Rk45 { tol: 1e-11, initial_step: 1e-3 }, 1)?;
        println!("k={k}  rk4 drift {:.1e}  rk45 drift {:.1e}", lax_defect(&t), lax_defect(&adaptive));
    }

    let s0 = NahmState::random(&mut r, 0.8, 3);
    let t = integrate(&s0, 1.2, Method::default(), 100)?;
    println!("z,drift");
    for (z, d) in t.drift_series() {
        println!("{z:.3},{d:.3e}");
    }
    Ok(())
}
