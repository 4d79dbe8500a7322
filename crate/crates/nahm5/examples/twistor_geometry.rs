//! Real structure, SU(2) action and the adapted frame on the twistor space.

use nahm5::algebra::c64;
use nahm5::twistor::{
    self, alpha_frame, change_of_basis, g_lambda, invariant_norm, point_to_section, MobiusElement, RealPoint5,
    TwistorPoint,
};

fn main() -> nahm5::Result<()> {
    let p = TwistorPoint::u0(c64(0.3, -1.2), c64(0.5, 0.25));
    let tp = twistor::tau_point(&p);
    println!("p        = {p:?}");
    println!("tau(p)   = {tp:?}");
    println!("involution exact: {}", twistor::tau_point(&tp) == p);

    // a real point of R^5 gives a tau-real section; its norm is invariant
    let x = RealPoint5([0.4, -0.1, 0.7, 0.2, -0.5]);
    let s = point_to_section(&x);
    let mut r = nahm5::rng::named(1, "example");
    let g = MobiusElement::random_su2(&mut r);
    let gs = g.act_on_section(&s);
    println!("reality defect of section: {:.1e}", s.reality_defect());
    println!("norm before {:.12}  after {:.12}", invariant_norm(&s).re, invariant_norm(&gs).re);

    let lambda = c64(0.6, 0.8);
    println!("g_lambda.(0,0) = {:?}", g_lambda(lambda).act_on_point(&TwistorPoint::u0(c64(0.0, 0.0), c64(0.0, 0.0))));
    for (j, v) in alpha_frame(lambda).iter().enumerate() {
        println!("v{j}(lambda) = {:.2e}", v.eval(lambda).norm());
    }
    let m = change_of_basis(lambda)?;
    println!("change of basis at lambda:");
    for row in m {
        println!("  {:?}", row.map(|v| (v * 1e6).round() / 1e6));
    }
    Ok(())
}
