//! Transition functions, their reality, and the dbar check for Psi_2.

use nahm5::algebra::c64;
use nahm5::bundles::{self, LineBundleSpec};
use nahm5::twistor::{FdConfig, TwistorPoint};

fn main() -> nahm5::Result<()> {
    let spec = LineBundleSpec::triple(0.0, 1.0, 0.0)?;
    let g = bundles::transition(&spec, &TwistorPoint::u0(c64(1.0, 0.0), c64(1.0, 0.0)))?;
    println!("g_01 for (0,1,0) at (1,1): {g}");

    let mut r = nahm5::rng::named(3, "bundles");
    let pts = bundles::overlap_samples(&mut r, 50);
    for (a, b, c) in [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (0.3, -0.7, 1.1)] {
        let s = LineBundleSpec::triple(a, b, c)?;
        println!(
            "({a:>4}, {b:>4}, {c:>4})  reality {:.1e}  cocycle {:.1e}",
            bundles::reality_check_spec(&s, &pts)?,
            bundles::cocycle_deviation(&s, &pts)?
        );
    }

    for k in 1..=4 {
        let w = bundles::winding_number(&LineBundleSpec::flow(1.0, k), c64(0.2, 0.1), 1.0, 400)?;
        println!("flow bundle k={k}: winding {w}");
    }

    let cfg = FdConfig::default();
    let (mu, l) = (c64(0.7, -0.2), c64(0.4, 0.3));
    let psi2 = |m, l| bundles::fundamental_form(2, m, l, cfg).unwrap();
    let fixed = bundles::dbar_residual(bundles::u2_corrected, psi2, mu, l, cfg)?;
    let reference = bundles::dbar_residual(bundles::u2_reference, bundles::psi2_reference, mu, l, cfg)?;
    println!("dbar residual, corrected u2: {:.1e}", fixed.norm());
    println!("dbar residual, uncorrected pair: {:.1e}", reference.norm());
    Ok(())
}
