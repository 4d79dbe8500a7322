mod common;

use common::close;
use nahm5::algebra::{c64, C64};
use nahm5::twistor::{
    alpha_frame, alpha_surface_section, change_of_basis, g_lambda, invariant_norm, metric, natural_forms,
    point_to_section, pullback_01, section_to_point, tau_point, tau_section, weight_coframe, weight_forms, Chart,
    CoframeConvention, FdConfig, MobiusElement, QuarticSection, RealPoint5, TwistorPoint,
};
use proptest::prelude::*;

const PHASED: CoframeConvention = CoframeConvention::Phased;

fn cplx() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c64(a, b))
}

fn nonzero() -> impl Strategy<Value = C64> {
    (0.2f64..3.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn sl2() -> impl Strategy<Value = MobiusElement> {
    (cplx(), cplx(), cplx(), cplx())
        .prop_filter("invertible", |(a, b, c, d)| (a * d - b * c).norm() > 0.2)
        .prop_map(|(a, b, c, d)| MobiusElement::normalized(a, b, c, d))
}

fn su2() -> impl Strategy<Value = MobiusElement> {
    (cplx(), cplx()).prop_filter("nonzero", |(a, b)| a.norm() + b.norm() > 0.2).prop_map(|(a, b)| {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / n, b / n);
        MobiusElement { a, b, c: -b.conj(), d: a.conj() }
    })
}

fn section() -> impl Strategy<Value = QuarticSection> {
    prop::array::uniform5(cplx()).prop_map(QuarticSection)
}

fn real_point() -> impl Strategy<Value = RealPoint5> {
    prop::array::uniform5(-2.0f64..2.0).prop_map(RealPoint5)
}

fn point() -> impl Strategy<Value = TwistorPoint> {
    (any::<bool>(), cplx(), nonzero())
        .prop_map(|(u0, eta, xi)| TwistorPoint::new(if u0 { Chart::U0 } else { Chart::U1 }, eta, xi))
}

/// Homogeneous oracle: (eta, xi) with xi = u/v, eta = e/v^4, in U0 terms.
fn u0_coords(p: &TwistorPoint) -> (C64, C64) {
    p.in_u0().expect("finite xi")
}

#[test]
fn tau_examples() {
    let (eta, xi) = u0_coords(&tau_point(&TwistorPoint::u0(c64(1.0, 0.0), c64(1.0, 0.0))));
    assert!(close(eta, c64(1.0, 0.0), 1e-15) && close(xi, c64(-1.0, 0.0), 1e-15));
    let (eta, xi) = u0_coords(&tau_point(&TwistorPoint::u0(c64(0.0, 0.0), c64(0.0, 1.0))));
    assert!(close(eta, c64(0.0, 0.0), 1e-15) && close(xi, c64(0.0, -1.0), 1e-15));
}

#[test]
fn tau_section_examples() {
    assert_eq!(tau_section(&QuarticSection::monomial(2)), QuarticSection::monomial(2));
    assert_eq!(tau_section(&QuarticSection::monomial(0)), QuarticSection::monomial(4));
    let p = point_to_section(&RealPoint5([1.0, 2.0, 3.0, 4.0, 5.0]));
    assert_eq!(tau_section(&p), p);
}

#[test]
fn coordinate_map_examples() {
    assert_eq!(point_to_section(&RealPoint5([0.0; 5])), QuarticSection::zero());
    assert_eq!(point_to_section(&RealPoint5([0.0, 0.0, 1.0, 0.0, 0.0])), QuarticSection::monomial(2));
    assert!(section_to_point(&QuarticSection::monomial(1)).is_err());
}

#[test]
fn norm_examples() {
    assert_eq!(invariant_norm(&QuarticSection::monomial(2)), c64(1.0, 0.0));
    let p = point_to_section(&RealPoint5([1.0, 0.0, 0.0, 0.0, 0.0]));
    assert_eq!(invariant_norm(&p), c64(12.0, 0.0));
}

#[test]
fn g_lambda_examples() {
    assert_eq!(g_lambda(c64(0.0, 0.0)), MobiusElement::identity());
    let origin = TwistorPoint::u0(c64(0.0, 0.0), c64(0.0, 0.0));
    for l in [c64(0.3, -0.4), c64(-0.7, 0.2), c64(0.1, 0.9)] {
        let g = g_lambda(l);
        assert!((g.det() - 1.0).norm() < 1e-12);
        assert!(g.is_su2(1e-12));
        // The point action of g_lambda moves the origin to lambda; its inverse moves it to -lambda.
        let (_, xi) = u0_coords(&g.act_on_point(&origin));
        assert!(close(xi, l, 1e-14));
        let (_, xi) = u0_coords(&g.inverse().act_on_point(&origin));
        assert!(close(xi, -l, 1e-14));
    }
}

#[test]
fn frame_at_zero_is_weight_basis() {
    let v = alpha_frame(c64(0.0, 0.0));
    let i = C64::i();
    let z = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    assert_eq!(v[1], QuarticSection([z, one, z, -one, z]));
    assert_eq!(v[2], QuarticSection::monomial(2));
    assert_eq!(v[3], QuarticSection([z, i, z, i, z]));
}

#[test]
fn frame_vanishing_pattern() {
    for l in [c64(0.4, 0.1), c64(-1.3, 0.8), c64(0.0, 2.0)] {
        let v = alpha_frame(l);
        for j in 1..=3 {
            assert!(v[j].eval(l).norm() < 1e-13, "v{j} at lambda");
        }
        // v0 and v4 give the transverse direction, so they do not vanish there.
        assert!(v[0].eval(l).norm() > 1e-3 && v[4].eval(l).norm() > 1e-3);
    }
}

#[test]
fn change_of_basis_real_lambda_and_minor() {
    let m = change_of_basis(c64(0.7, 0.0)).unwrap();
    let want = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -1.0],
    ];
    assert_eq!(m, want);
    for l in [c64(0.3, 0.8), c64(-2.0, 0.5)] {
        let m = change_of_basis(l).unwrap();
        let minor = |i: usize, j: usize| m[i + 1][j + 1];
        let det = minor(0, 0) * (minor(1, 1) * minor(2, 2) - minor(1, 2) * minor(2, 1))
            - minor(0, 1) * (minor(1, 0) * minor(2, 2) - minor(1, 2) * minor(2, 0))
            + minor(0, 2) * (minor(1, 0) * minor(2, 1) - minor(1, 1) * minor(2, 0));
        assert!((det + 1.0).abs() < 1e-12, "orientation reversing, det {det}");
    }
    assert!(change_of_basis(c64(0.0, 0.0)).is_err());
}

#[test]
fn coframe_duality_at_zero() {
    let h = weight_coframe(c64(0.0, 0.0), PHASED);
    let v = alpha_frame(c64(0.0, 0.0));
    for (a, hj) in h.iter().enumerate() {
        for b in 0..3 {
            let x = hj.eval(&v[b + 1]);
            if a == b {
                assert!(x.norm() > 0.5);
            } else {
                assert!(x.norm() < 1e-14, "h{} (v{}) = {x}", a + 1, b + 1);
            }
        }
    }
    assert_eq!(h[1], weight_forms(c64(0.0, 0.0), PHASED)[1]);
}

#[test]
fn literal_convention_breaks_the_flip() {
    let l = c64(0.6, -0.3);
    let a = weight_coframe(l, CoframeConvention::Literal);
    let b = weight_coframe(-1.0 / l.conj(), CoframeConvention::Literal);
    let worst = (0..3).map(|j| (a[j] + b[j]).max_abs()).fold(0.0, f64::max);
    assert!(worst > 1e-2);
}

#[test]
fn theta1_at_origin_by_hand() {
    // At lambda = 0 the natural section moves by 4 mu xi in conj(lambda), and
    // g(xi - xi^3, 4 mu xi) = -3/2 * (-1) * 4 mu = 6 mu.
    let pf = pullback_01(|l| natural_forms(l, PHASED)[0], c64(1.0, 0.0), c64(0.0, 0.0), FdConfig::default()).unwrap();
    assert!(close(pf.coef_dlambda_bar, c64(6.0, 0.0), 1e-8), "{}", pf.coef_dlambda_bar);
    assert!(pf.coef_dmu_bar.norm() < 1e-10);
}

#[test]
fn fd_step_too_small_is_reported() {
    let cfg = FdConfig { h: 1e-14, tol: 1e-9 };
    let r = pullback_01(|l| natural_forms(l, PHASED)[0], c64(0.7, 0.2), c64(0.3, 0.4), cfg);
    assert!(r.is_err());
}

#[test]
fn non_unitary_element_breaks_tau_equivariance() {
    let g = MobiusElement::normalized(c64(2.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.5, 0.0));
    let p = TwistorPoint::u0(c64(0.3, 0.1), c64(0.5, 0.2));
    let d = g.act_on_point(&tau_point(&p)).distance(&tau_point(&g.act_on_point(&p)));
    assert!(d > 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tau_is_an_involution(p in point()) {
        prop_assert_eq!(tau_point(&tau_point(&p)), p);
    }

    #[test]
    fn tau_matches_homogeneous_formula(eta in cplx(), xi in nonzero()) {
        let (e, x) = u0_coords(&tau_point(&TwistorPoint::u0(eta, xi)));
        let want_x = -1.0 / xi.conj();
        let want_e = eta.conj() / xi.conj().powi(4);
        prop_assert!(close(x, want_x, 1e-12 * (1.0 + want_x.norm())));
        prop_assert!(close(e, want_e, 1e-12 * (1.0 + want_e.norm())));
    }

    #[test]
    fn tau_section_is_an_involution(p in section()) {
        prop_assert_eq!(tau_section(&tau_section(&p)), p);
    }

    #[test]
    fn tau_commutes_with_su2(g in su2(), p in point()) {
        let d = g.act_on_point(&tau_point(&p)).distance(&tau_point(&g.act_on_point(&p)));
        prop_assert!(d < 1e-10, "distance {}", d);
    }

    #[test]
    fn point_action_composes(g in sl2(), h in sl2(), eta in cplx(), xi in nonzero()) {
        let p = TwistorPoint::u0(eta, xi);
        let lhs = g.act_on_point(&h.act_on_point(&p));
        let rhs = g.compose(&h).act_on_point(&p);
        let scale = 1.0 + u0_coords(&lhs).0.norm();
        prop_assume!(lhs.xi.norm() > 1e-3);
        prop_assert!(lhs.distance(&rhs) < 1e-9 * scale);
    }

    #[test]
    fn section_action_is_incidence_equivariant(g in sl2(), p in section(), x0 in cplx()) {
        // If p passes through (p(x0), x0), g.p passes through g^-1.(p(x0), x0).
        let img = g.inverse().act_on_point(&TwistorPoint::u0(p.eval(x0), x0));
        let gp = g.act_on_section(&p);
        let (eta, xi) = match img.in_u0() { Some(c) => c, None => return Ok(()) };
        prop_assume!(xi.norm() < 10.0);
        prop_assert!(close(gp.eval(xi), eta, 1e-9 * (1.0 + eta.norm())));
    }

    #[test]
    fn norm_is_sl2_invariant(g in sl2(), p in section()) {
        let (a, b) = (invariant_norm(&p), invariant_norm(&g.act_on_section(&p)));
        let scale = 1.0 + p.max_abs().powi(2) * g.a.norm().max(g.b.norm()).max(g.c.norm()).max(g.d.norm()).powi(8);
        prop_assert!((a - b).norm() < 1e-10 * scale);
    }

    #[test]
    fn norm_on_real_sections(x in real_point()) {
        let [x0, x1, x2, x3, x4] = x.0;
        let want = x2 * x2 + 3.0 * (x1 * x1 + x3 * x3) + 12.0 * (x0 * x0 + x4 * x4);
        let got = invariant_norm(&point_to_section(&x));
        prop_assert!(close(got, c64(want, 0.0), 1e-12 * (1.0 + want)));
    }

    #[test]
    fn real_sections_round_trip(x in real_point()) {
        prop_assert_eq!(section_to_point(&point_to_section(&x)).unwrap(), x);
    }

    #[test]
    fn frame_is_orthogonal(l in cplx()) {
        let v = alpha_frame(l);
        for i in 1..=3 {
            for j in 1..=3 {
                if i != j {
                    prop_assert!(metric(&v[i], &v[j]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn change_of_basis_maps_frames(l in nonzero()) {
        let m = change_of_basis(l).unwrap();
        let (v, w) = (alpha_frame(l), alpha_frame(-1.0 / l.conj()));
        for i in 0..5 {
            let comb = (0..5).fold(QuarticSection::zero(), |acc, j| acc + v[j].scale(c64(m[i][j], 0.0)));
            prop_assert!((w[i] - comb).max_abs() < 1e-9 * (1.0 + v[i].max_abs()));
        }
    }

    #[test]
    fn coframe_flips_at_antipode(l in nonzero()) {
        let (h, g) = (weight_coframe(l, PHASED), weight_coframe(-1.0 / l.conj(), PHASED));
        for j in 0..3 {
            prop_assert!((h[j] + g[j]).max_abs() < 1e-9 * (1.0 + h[j].max_abs()));
        }
    }

    #[test]
    fn alpha_surface_sections_are_real_and_incident(eta in cplx(), l in cplx(), x in prop::array::uniform3(-1.0f64..1.0)) {
        let s = alpha_surface_section(eta, l, x);
        prop_assert!(s.reality_defect() < 1e-12 * (1.0 + s.max_abs()));
        prop_assert!(close(s.eval(l), eta, 1e-12 * (1.0 + eta.norm())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(15))]

    #[test]
    fn theta_relations(mu in cplx(), l in cplx()) {
        let th = |j: usize| pullback_01(move |l| natural_forms(l, PHASED)[j], mu, l, FdConfig::default()).unwrap();
        let (t1, t2, t3) = (th(0), th(1), th(2));
        let scale = 1.0 + t1.coef_dlambda_bar.norm();
        prop_assert!(t2.coef_dlambda_bar.norm() < 1e-6 * scale);
        prop_assert!((t3.coef_dlambda_bar - C64::i() * t1.coef_dlambda_bar).norm() < 1e-6 * scale);
        // |theta_1| (1 + |lambda|^2)^3 = 6 |mu| everywhere, extending the hand value at the origin.
        let want = 6.0 * mu.norm() / (1.0 + l.norm_sqr()).powi(3);
        prop_assert!((t1.coef_dlambda_bar.norm() - want).abs() < 1e-6 * (1.0 + want));
    }
}
