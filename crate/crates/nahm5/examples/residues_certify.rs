//! The boundary residue triple, its certificate, and a numerical pole fit.

use nahm5::algebra::{MatrixPencil, C64};
use nahm5::nahm::{certify_boundary, extract_residues, kernel_vector_check, residue_triple, ResidueTriple};

fn main() -> nahm5::Result<()> {
    for k in 1..=5 {
        let t: ResidueTriple<nahm5::algebra::Q> = residue_triple(k);
        let rep = certify_boundary(&t);
        println!(
            "k={k}  pass {}  casimir {:?}  highest weight {:?}",
            rep.pass, rep.casimir_value, rep.highest_weight
        );
    }
    let t: ResidueTriple<C64> = residue_triple(3);
    println!("R0 = {}", serde_json::to_string(&t.r0).expect("json"));

    // A(z) = R/z + C, recovered from samples near z = 0
    let p = t.pencil();
    let shift = MatrixPencil::new(std::array::from_fn(|j| p.coeff(j).scale(&C64::new(0.1 * j as f64, 0.0))))?;
    let sampler = |z: f64| {
        MatrixPencil::new(std::array::from_fn(|j| p.coeff(j).scale(&C64::new(1.0 / z, 0.0)) + shift.coeff(j).clone()))
            .expect("shape")
    };
    let fit = extract_residues(sampler, &[0.2, 0.1, 0.05, 0.025, 0.0125])?;
    let err = (0..5).map(|j| (&fit.residues[j] - p.coeff(j)).max_abs()).fold(0.0, f64::max);
    println!("fitted residue error {err:.1e}, odd parts analytic: {}", fit.odd_analytic);

    let xs: Vec<nahm5::algebra::Q> = [1, 2, -3].iter().map(|n| nahm5::algebra::q(*n, 7)).collect();
    println!("kernel vector residual (k=6, exact): {}", kernel_vector_check(6, &xs));
    Ok(())
}
