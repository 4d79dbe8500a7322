//! Regular (nonderogatory) pencils versus scalar ones.

use nahm5::algebra::{c64, Matrix, MatrixPencil, C64};
use nahm5::nahm::{regularity_check, regularity_margin, residue_triple, ResidueTriple};

fn main() -> nahm5::Result<()> {
    let xs = [c64(0.3, 0.1), c64(-1.2, 0.4), c64(0.7, -0.9)];
    let t: ResidueTriple<C64> = residue_triple(4);
    let p = t.pencil();
    println!("residue pencil k=4: regular {}  margin {:.2e}", regularity_check(&p, &xs), regularity_margin(&p, &xs));

    let scalar = MatrixPencil::new(std::array::from_fn(|j| Matrix::<C64>::identity(3).scale(&c64(j as f64, 0.0))))?;
    println!("scalar pencil k=3:   regular {}  margin {:.2e}", regularity_check(&scalar, &xs), regularity_margin(&scalar, &xs));

    let mut r = nahm5::rng::named(5, "regular");
    let rand = nahm5::rng::pencil(&mut r, 4);
    println!("random pencil k=4:   regular {}", regularity_check(&rand, &xs));
    Ok(())
}
