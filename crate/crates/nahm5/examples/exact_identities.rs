//! Exact formal-neighborhood identities over the rationals.

use nahm5::algebra::{LaurentPoly, Q};
use nahm5::neighborhoods as nb;

fn show(p: &LaurentPoly<Q>) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.terms().map(|(e, c)| format!("{c} xi^{e}")).collect::<Vec<_>>().join(" + ")
}

fn main() -> nahm5::Result<()> {
    println!("neighborhood matrix m=2:");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| show(&nb::neighborhood_matrix(2)[(i, j)])).collect();
        println!("  {}", row.iter().map(|e| format!("{e:<10}")).collect::<String>());
    }
    for m in 0..=4 {
        let ok = (0..=m).all(|j| nb::verify_extension(m, j).unwrap_or(false));
        println!("m={m} extensions glue: {ok}");
    }
    for (m, l) in [(1, 0), (2, 2), (3, 4)] {
        let c = nb::solve_constraints(m, l)?;
        println!("constraints m={m} l={l}: {}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }
    for k in 2..=5 {
        let defects: Vec<bool> = (0..k).map(|j| nb::kernel_generator_check(k, j).map(|d| d.is_zero()).unwrap_or(false)).collect();
        let cmp = nb::compare_with_residues(k)?;
        println!(
            "k={k}  generators exact {:?}  X2 = -R2 {}  |X2 - R2| {}",
            defects, cmp.diagonal_opposite_sign, cmp.diagonal_deviation
        );
    }
    let (fibre, spans) = nb::fibre_at_zero(3);
    println!("fibre at zero, m=3: {} elements, spans: {spans}", fibre.len());
    Ok(())
}
