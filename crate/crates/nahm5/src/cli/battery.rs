//! Check batteries. Each battery is a list of independent jobs; `run_jobs`
//! fans them out and keeps the listed order.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::report::{from_result, Report};
use crate::algebra::{BivarPoly, CharPoly, Matrix, MatrixPencil, C64, Q};
use crate::bundles::{self, LineBundleSpec};
use crate::nahm::{self, Boundary, Method, NahmState, RealNahmState};
use crate::neighborhoods as nb;
use crate::rng;
use crate::twistor::{self, Chart, CoframeConvention, FdConfig, MobiusElement, RealPoint5, TwistorPoint};
use crate::Result;

pub type Job = Box<dyn FnOnce() -> Report + Send>;

pub fn run_jobs(pool: &rayon::ThreadPool, jobs: Vec<Job>) -> Vec<Report> {
    pool.install(|| jobs.into_par_iter().map(|j| j()).collect())
}

fn job(f: impl FnOnce() -> Report + Send + 'static) -> Job {
    Box::new(f)
}

fn random_point<R: rand::Rng>(r: &mut R) -> TwistorPoint {
    let chart = if r.gen_bool(0.5) { Chart::U0 } else { Chart::U1 };
    TwistorPoint::new(chart, rng::complex(r), rng::annulus(r, 0.1, 3.0))
}

fn random_real<R: rand::Rng>(r: &mut R) -> RealPoint5 {
    RealPoint5(std::array::from_fn(|_| r.gen_range(-1.0..1.0)))
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
}

fn try_max(it: impl Iterator<Item = Result<f64>>) -> Result<f64> {
    let mut m = 0.0f64;
    for x in it {
        let x = x?;
        m = if x.is_nan() { f64::INFINITY } else { m.max(x) };
    }
    Ok(m)
}

// ---------------------------------------------------------------- twistor

pub fn twistor_battery(seed: u64, n: usize) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(job(move || {
        let mut r = rng::named(seed, "tau-involution");
        let bad = (0..n)
            .filter(|_| {
                let p = random_point(&mut r);
                twistor::tau_point(&twistor::tau_point(&p)) != p
            })
            .count();
        Report::exact("tau_involution", "tau(tau(p)) = p bit for bit", bad).seed(seed).samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "tau-equivariance");
        let e = max_of((0..n).map(|_| {
            let g = MobiusElement::random_su2(&mut r);
            let p = random_point(&mut r);
            let lhs = g.act_on_point(&twistor::tau_point(&p));
            let rhs = twistor::tau_point(&g.act_on_point(&p));
            lhs.distance(&rhs)
        }));
        Report::bound("tau_equivariance", "tau commutes with the SU(2) action", e, 1e-10)
            .seed(seed)
            .samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "norm-invariance");
        let e = max_of((0..n).map(|_| {
            let g = MobiusElement::random_sl2(&mut r);
            let p = twistor::QuarticSection(std::array::from_fn(|_| rng::complex(&mut r)));
            let (a, b) = (twistor::invariant_norm(&p), twistor::invariant_norm(&g.act_on_section(&p)));
            (a - b).norm() / (1.0 + a.norm())
        }));
        Report::bound(
            "norm_invariance",
            "a2^2 - 3 a1 a3 + 12 a0 a4 is SL(2,C)-invariant",
            e,
            1e-10,
        )
        .seed(seed)
        .samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "norm-real");
        let e = max_of((0..n).map(|_| {
            let x = random_real(&mut r);
            let [x0, x1, x2, x3, x4] = x.0;
            let want = x2 * x2 + 3.0 * (x1 * x1 + x3 * x3) + 12.0 * (x0 * x0 + x4 * x4);
            let got = twistor::invariant_norm(&twistor::point_to_section(&x));
            (got - want).norm().max(got.im.abs())
        }));
        Report::bound(
            "norm_on_real_sections",
            "N restricted to real sections is x2^2 + 3(x1^2 + x3^2) + 12(x0^2 + x4^2)",
            e,
            1e-12,
        )
        .seed(seed)
        .samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "section-roundtrip");
        let e = try_max((0..n).map(|_| {
            let x = random_real(&mut r);
            let y = twistor::section_to_point(&twistor::point_to_section(&x))?;
            Ok(max_of(x.0.iter().zip(y.0.iter()).map(|(a, b)| (a - b).abs())))
        }));
        from_result("real_section_roundtrip", "real sections are exactly the points of R^5", 1e-14, e)
            .seed(seed)
            .samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "change-of-basis");
        let e = try_max((0..n).map(|_| {
            let l = rng::annulus(&mut r, 0.3, 3.0);
            let m = twistor::change_of_basis(l)?;
            let (v, w) = (twistor::alpha_frame(l), twistor::alpha_frame(-1.0 / l.conj()));
            let scale = max_of(v.iter().map(|s| s.max_abs())).max(1.0);
            Ok(max_of((0..5).map(|i| {
                let comb = (0..5).fold(twistor::QuarticSection::zero(), |acc, j| {
                    acc + v[j].scale(C64::new(m[i][j], 0.0))
                });
                (w[i] - comb).max_abs() / scale
            })))
        }));
        from_result(
            "change_of_basis",
            "the frame at the antipode is a real orthogonal recombination with x + iy = conj(lambda)/lambda",
            1e-9,
            e,
        )
        .seed(seed)
        .samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "antipodal");
        let e = max_of((0..n).map(|_| {
            let l = rng::annulus(&mut r, 0.3, 3.0);
            let (h, g) = (
                twistor::weight_coframe(l, CoframeConvention::Phased),
                twistor::weight_coframe(-1.0 / l.conj(), CoframeConvention::Phased),
            );
            let scale = max_of(h.iter().map(|c| c.max_abs())).max(1.0);
            max_of((0..3).map(|j| (g[j] + h[j]).max_abs() / scale))
        }));
        Report::bound("coframe_antipodal_flip", "h_j(-1/conj(lambda)) = -h_j(lambda)", e, 1e-9)
            .seed(seed)
            .samples(n)
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "alpha-surface");
        let e = max_of((0..n).map(|_| {
            let (eta, l) = (rng::complex(&mut r), rng::annulus(&mut r, 0.1, 3.0));
            let x = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
            let s = twistor::alpha_surface_section(eta, l, x);
            let through = (s.eval(l) - eta).norm() / (1.0 + eta.norm());
            through.max(s.reality_defect() / (1.0 + s.max_abs()))
        }));
        Report::bound(
            "alpha_surface",
            "alpha-surface sections are real and pass through the twistor point",
            e,
            1e-12,
        )
        .seed(seed)
        .samples(n)
    }));
    jobs.push(job(move || theta_report(seed, n.min(25))));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "theta1");
        let cfg = FdConfig::default();
        let mut vals = Vec::new();
        for _ in 0..5 {
            let (mu, l) = (rng::complex(&mut r), rng::complex(&mut r));
            let om = |l| twistor::natural_forms(l, CoframeConvention::Phased)[0];
            match twistor::pullback_01(om, mu, l, cfg) {
                Ok(pf) => vals.push((pf.coef_dlambda_bar * (1.0 + l.norm_sqr()).powi(3) / mu).norm()),
                Err(e) => return Report::failed("theta1_constant", THETA1, e),
            }
        }
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        Report::measured("theta1_constant", THETA1, mean)
            .seed(seed)
            .note(format!("spread {:.2e}", max_of(vals.iter().map(|v| (v - mean).abs()))))
    }));
    jobs
}

use rand::Rng;

const THETA1: &str = "|theta_1| (1 + |lambda|^2)^3 / |mu| along the natural section";

fn theta_report(seed: u64, n: usize) -> Report {
    let anchor = "theta_2 has no (0,1) part and theta_3 = i theta_1";
    let mut r = rng::named(seed, "theta");
    let cfg = FdConfig::default();
    let e = try_max((0..n).map(|_| {
        let (mu, l) = (rng::complex(&mut r), rng::complex(&mut r));
        let th = |j: usize| {
            twistor::pullback_01(
                move |l| twistor::natural_forms(l, CoframeConvention::Phased)[j],
                mu,
                l,
                cfg,
            )
        };
        let (t1, t2, t3) = (th(0)?, th(1)?, th(2)?);
        let scale = 1.0 + t1.coef_dlambda_bar.norm();
        let d2 = t2.coef_dlambda_bar.norm().max(t2.coef_dmu_bar.norm());
        let d3 = (t3.coef_dlambda_bar - C64::i() * t1.coef_dlambda_bar).norm();
        Ok(d2.max(d3) / scale)
    }));
    from_result("theta_relations", anchor, 1e-6, e).seed(seed).samples(n)
}

// ---------------------------------------------------------------- bundles

pub const STANDARD_TRIPLES: [(f64, f64, f64); 4] =
    [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 1.0, 1.0)];

pub fn bundle_battery(triples: &[(f64, f64, f64)], seed: u64, n: usize) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &(a, b, c) in triples {
        let tag = format!("({a},{b},{c})");
        let t2 = tag.clone();
        jobs.push(job(move || {
            let name = format!("transition_reality{t2}");
            let anchor = "g(tau p) = conj(g(p)), the reality condition tau(g) = conj(g)^-1 in chart-swapped form";
            let spec = match LineBundleSpec::triple(a, b, c) {
                Ok(s) => s,
                Err(e) => return Report::failed(&name, anchor, e),
            };
            let mut r = rng::named(seed, &name);
            let samples = bundles::overlap_samples(&mut r, n);
            from_result(&name, anchor, 1e-10, bundles::reality_check_spec(&spec, &samples))
                .seed(seed)
                .samples(n)
        }));
        let t2 = tag.clone();
        jobs.push(job(move || {
            let name = format!("transition_cocycle{t2}");
            let anchor = "g_01 g_10 = 1 with each factor in its own chart";
            let spec = match LineBundleSpec::triple(a, b, c) {
                Ok(s) => s,
                Err(e) => return Report::failed(&name, anchor, e),
            };
            let mut r = rng::named(seed, &name);
            let samples = bundles::overlap_samples(&mut r, n);
            from_result(&name, anchor, 1e-10, bundles::cocycle_deviation(&spec, &samples)).seed(seed).samples(n)
        }));
    }
    let list = triples.to_vec();
    jobs.push(job(move || {
        let anchor = "g_(s1) g_(s2) = g_(s1 + s2)";
        let mut r = rng::named(seed, "additivity");
        let samples = bundles::overlap_samples(&mut r, n);
        let e = try_max(list.iter().flat_map(|s1| list.iter().map(move |s2| (*s1, *s2))).map(|(s1, s2)| {
            bundles::additivity_deviation(s1, s2, &samples)
        }));
        from_result("exponential_additivity", anchor, 1e-12, e).seed(seed).samples(n)
    }));
    jobs.push(job(move || {
        let anchor = "L^z O(2k-2) transition exp(z eta / xi^2) xi^(2k-2) has winding 2k-2 and real degree-0 part";
        let mut r = rng::named(seed, "flow-bundle");
        let samples = bundles::overlap_samples(&mut r, n);
        let mut bad = 0;
        let mut worst = 0.0f64;
        for k in 1..=4usize {
            let spec = LineBundleSpec::flow(0.7, k);
            match bundles::winding_number(&spec, C64::new(0.3, -0.2), 1.0, 512) {
                Ok(w) if w == 2 * k as i64 - 2 => {}
                _ => bad += 1,
            }
        }
        match bundles::reality_check_spec(&LineBundleSpec::flow(0.7, 1), &samples) {
            Ok(e) => worst = worst.max(e),
            Err(_) => bad += 1,
        }
        if bad > 0 {
            return Report::exact("flow_bundle", anchor, bad);
        }
        Report::bound("flow_bundle", anchor, worst, 1e-10).seed(seed).samples(n)
    }));
    jobs.push(job(move || {
        let anchor = "the corrected trivializing function u_2 solves dbar u = Psi_2 for the (0,1,0) bundle";
        let mut r = rng::named(seed, "dbar");
        let cfg = FdConfig::default();
        let e = try_max((0..10).map(|_| {
            let (mu, l) = (rng::complex(&mut r), rng::annulus(&mut r, 0.3, 1.5));
            let beta = |m: C64, l: C64| bundles::fundamental_form(2, m, l, cfg).unwrap_or(C64::new(f64::NAN, 0.0));
            let res = bundles::dbar_residual(bundles::u2_corrected, beta, mu, l, cfg)?;
            Ok(res.norm() / (1.0 + beta(mu, l).norm()))
        }));
        from_result("dbar_trivialization", anchor, 1e-6, e).seed(seed).samples(10)
    }));
    jobs
}

// ---------------------------------------------------------------- identities

pub fn identity_battery(max_m: usize) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(job(move || {
        let bad = (0..=max_m)
            .flat_map(|m| (0..=m).map(move |j| (m, j)))
            .filter(|&(m, j)| !nb::verify_extension(m, j).unwrap_or(false))
            .count();
        Report::exact("verify_extension", "the neighborhood matrix maps P'^j to P^j", bad)
    }));
    jobs.push(job(move || {
        let mm = max_m + 2;
        let bad = (0..=mm)
            .flat_map(|m| (0..=m).flat_map(move |j| (0..=m).map(move |b| (m, j, b))))
            .filter(|&(m, j, b)| !nb::binomial_identity(m, j, b).unwrap_or(false))
            .count();
        Report::exact(
            "binomial_identity",
            "sum_l (-1)^l C(m-j,l) C(m-l,b-l) = C(j,b)",
            bad,
        )
        .note(format!("m <= {mm}"))
    }));
    jobs.push(job(move || {
        let bad = (0..=max_m)
            .flat_map(|m| (0..=m).map(move |h| (m, 2 * h)))
            .filter(|&(m, l)| {
                nb::solve_constraints(m, l).map_or(true, |c| {
                    c.first().map_or(true, Q::is_zero) || c.last().map_or(true, Q::is_zero)
                })
            })
            .count();
        Report::exact(
            "solve_constraints",
            "sum_i c_i/(n-i)! = 0 has a unique solution with c_0 = 1 and nonzero last entry",
            bad,
        )
    }));
    let kmax = (max_m + 1).min(6).max(1);
    jobs.push(job(move || {
        let mut bad = 0;
        for k in 1..=kmax {
            for j in 0..k {
                if !nb::kernel_generator_check(k, j).map_or(false, |d| d.is_zero()) {
                    bad += 1;
                }
            }
        }
        Report::exact(
            "kernel_generator",
            "t P^j - (m-j) P^(j+1) + (m-2j) xi^2 P^j + j xi^4 P^(j-1) = 0 mod t^(m+1) on both charts",
            bad,
        )
        .note(format!("k <= {kmax}; U1 side carries the chart weight xi^4 on t"))
    }));
    jobs.push(job(move || {
        let mut bad = 0;
        let mut dev = 0.0f64;
        for k in 1..=kmax {
            match nb::compare_with_residues(k) {
                Ok(c) if c.x0_matches && c.x4_matches && c.diagonal_opposite_sign => {
                    dev = dev.max(c.diagonal_deviation)
                }
                _ => bad += 1,
            }
        }
        if bad > 0 {
            return Report::exact("x_matrices", X_ANCHOR, bad);
        }
        Report::measured("x_matrices", X_ANCHOR, dev)
            .note("off-diagonal parts equal R0, R4 exactly; diagonal equals -R2; value is max |X2 - R2|")
    }));
    jobs.push(job(move || {
        let bad = (0..=max_m).filter(|&m| !nb::fibre_at_zero(m).1).count();
        Report::exact("fibre_at_zero", "the leading terms p^j_0 span Gamma_m", bad)
    }));
    jobs
}

const X_ANCHOR: &str = "operators on 1, xi^2, xi^4 read off the kernel generators";

// ---------------------------------------------------------------- nahm

pub fn nahm_battery(max_k: usize, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for k in 2..=max_k.max(2) {
        jobs.push(job(move || lax_report(k, seed)));
    }
    jobs.push(job(move || {
        let mut bad = 0;
        let mut r = rng::named(seed, "degree");
        for k in 1..=max_k.max(1) {
            for _ in 0..5 {
                let s = NahmState::random(&mut r, 0.9, k);
                match nahm::integrate(&s, 1.1, Method::Rk4 { step: 1e-2 }, 1) {
                    Ok(t) => bad += t.degree_violations(),
                    Err(_) => bad += 1,
                }
            }
        }
        Report::exact("degree_bounds", "deg a_j <= 4j along every sampled state", bad).seed(seed)
    }));
    jobs.push(job(|| {
        let mut bad = 0;
        for k in 1..=10 {
            if !nahm::certify_boundary(&nahm::residue_triple::<Q>(k)).pass {
                bad += 1;
            }
        }
        let red = nahm::residue_triple::<Q>(1).direct_sum(&nahm::residue_triple::<Q>(2));
        if nahm::certify_boundary(&red).irreducible {
            bad += 1;
        }
        Report::exact(
            "residue_algebra",
            "[R2,R0] = 2R0, [R2,R4] = -2R4, [R0,R4] = -R2, irreducible, Casimir (k^2-1)/2",
            bad,
        )
        .note("k <= 10 exact; reducible 1+2 sum rejected")
    }));
    jobs.push(job(|| {
        let bad = (1..=6)
            .filter(|&k| {
                let p = nahm::residue_triple::<Q>(k).pencil().char_poly();
                p != BivarPoly::from_terms([((k as u32, 0), Q::one())])
            })
            .count();
        Report::exact("pole_degeneracy", "det(eta - R0 - xi^2 R2 - xi^4 R4) = eta^k", bad)
    }));
    jobs.push(job(|| {
        let xs: Vec<Q> = [(1, 1), (-2, 3), (5, 7), (3, 1), (-1, 2)]
            .iter()
            .map(|&(n, d)| crate::algebra::q(n, d))
            .collect();
        let bad = (1..=8).filter(|&k| nahm::kernel_vector_check(k, &xs) != 0.0).count();
        Report::exact("kernel_vector", "a(xi) (xi^(2k-2), ..., xi^2, 1) = 0 in the binomially rescaled basis", bad)
            .note("k <= 8 exact; in the original basis the kernel is C(k-1,i) xi^(2(k-1-i))")
    }));
    jobs.push(job(|| {
        let xs = [crate::algebra::q(1, 1), crate::algebra::q(-2, 3)];
        let v = (1..=8).map(|k| nahm::kernel_vector_residual_unweighted(k, &xs)).fold(0.0, f64::max);
        Report::measured("kernel_vector_unweighted", "a(xi) applied to unweighted (xi^(2k-2), ..., 1), k <= 8", v)
            .note("nonzero from k = 3 on: the monomial form needs the rescaled basis")
    }));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "real-form");
        let e = try_max((1..=max_k.max(1)).flat_map(|k| (0..100).map(move |_| k)).map(|k| {
            let s = RealNahmState::random(&mut r, 1.0, k);
            let (a, b) = (nahm::nahm_rhs_real(&s)?, nahm::real_rhs_via_complex(&s)?);
            Ok(max_of((0..5).map(|j| (&a[j] - &b[j]).max_abs())))
        }));
        from_result("real_form_equivalence", "the A <-> T substitution intertwines both right-hand sides", 1e-12, e)
            .seed(seed)
            .samples(100)
    }));
    jobs.push(job(move || charge_one_report(seed)));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "curve-reality");
        let mut bad = 0;
        for k in 2..=3 {
            let s = RealNahmState::random_skew_hermitian(&mut r, 0.9, k).to_complex().expect("square");
            match nahm::integrate(&s, 1.1, Method::default(), 50) {
                Ok(t) => {
                    for c in &t.spectral {
                        if !nahm::reality_check_curve(c).unwrap_or(false) {
                            bad += 1;
                        }
                    }
                }
                Err(_) => bad += 1,
            }
        }
        Report::exact("curve_reality", "skew-Hermitian T_j give tau-real spectral curves along the flow", bad)
            .seed(seed)
    }));
    jobs.push(job(|| residue_extraction_report()));
    jobs.push(job(move || {
        let mut r = rng::named(seed, "regularity");
        let xs: Vec<C64> = (0..20).map(|_| rng::complex(&mut r)).collect();
        let mut bad = 0;
        for k in 1..=5 {
            if !nahm::regularity_check(&nahm::residue_triple::<Q>(k).pencil().to_c64(), &xs) {
                bad += 1;
            }
        }
        if nahm::regularity_check(&MatrixPencil::zero(2), &xs) {
            bad += 1;
        }
        Report::exact("regularity", "the residue pencil has one Jordan block per eigenvalue", bad).seed(seed)
    }));
    jobs.extend(fault_injection(seed));
    jobs
}

fn lax_report(k: usize, seed: u64) -> Report {
    let name = format!("isospectrality_k{k}");
    let anchor = "dA/dz = [A, A_+] preserves det(eta - A(xi))";
    let mut r = rng::named(seed, &name);
    let e = try_max((0..20).map(|_| {
        let s = NahmState::random(&mut r, 0.8, k);
        let t = nahm::integrate(&s, 1.2, Method::Rk4 { step: 1e-3 }, 20)?;
        Ok(nahm::lax_defect(&t))
    }));
    from_result(&name, anchor, 1e-8, e).seed(seed).samples(20)
}

fn charge_one_report(seed: u64) -> Report {
    let anchor = "charge-1 flows are constant and their curves are tau-real";
    let mut r = rng::named(seed, "charge-one");
    let mut worst = 0.0f64;
    let mut bad = 0;
    for _ in 0..5 {
        let s = RealNahmState::random_skew_hermitian(&mut r, 0.1, 1).to_complex().expect("square");
        match nahm::integrate(&s, 1.9, Method::default(), 100) {
            Ok(t) => {
                for (_, p) in &t.samples {
                    worst = worst.max((0..5).map(|j| (p.coeff(j) - s.pencil.coeff(j)).max_abs()).fold(0.0, f64::max));
                }
                if !nahm::reality_check_curve(&nahm::spectral_curve(&t.last())).unwrap_or(false) {
                    bad += 1;
                }
            }
            Err(_) => bad += 1,
        }
        let x = random_real(&mut r);
        let sec = twistor::point_to_section(&x);
        let pencil = MatrixPencil::new(std::array::from_fn(|j| Matrix::from_fn(1, 1, |_, _| sec.0[j])))
            .expect("1x1");
        if !nahm::reality_check_curve(&pencil.char_poly()).unwrap_or(false) {
            bad += 1;
        }
    }
    if bad > 0 {
        return Report::exact("charge_one", anchor, bad);
    }
    Report::bound("charge_one", anchor, worst, 1e-15).seed(seed)
}

fn residue_extraction_report() -> Report {
    let anchor = "simple poles R/z + C are recovered; higher-order poles are rejected";
    let ws = [0.2, 0.1, 0.05, 0.025, 0.0125];
    let mut worst = 0.0f64;
    let mut bad = 0;
    for k in 1..=4 {
        let r = nahm::residue_triple::<Q>(k).pencil().to_c64();
        let mut g = rng::named(k as u64, "synthetic-residue");
        let c = rng::pencil(&mut g, k);
        let d = rng::pencil(&mut g, k);
        for boundary in [Boundary::Zero, Boundary::Two] {
            let sampler = |z: f64| {
                let w = if boundary == Boundary::Zero { z } else { 2.0 - z };
                MatrixPencil::new(std::array::from_fn(|j| {
                    &(&r.coeff(j).scale(&C64::new(1.0 / w, 0.0)) + c.coeff(j))
                        + &d.coeff(j).scale(&C64::new(w, 0.0))
                }))
                .expect("square")
            };
            match nahm::extract_residues_at(boundary, sampler, &ws) {
                Ok(fit) => {
                    for j in 0..5 {
                        worst = worst.max((&fit.residues[j] - r.coeff(j)).max_abs());
                        worst = worst.max((&fit.analytic[j] - c.coeff(j)).max_abs());
                    }
                    if !fit.odd_analytic || !nahm::certify_boundary(&fit.triple()).pass {
                        bad += 1;
                    }
                }
                Err(_) => bad += 1,
            }
            let second_order = |z: f64| {
                let w = if boundary == Boundary::Zero { z } else { 2.0 - z };
                MatrixPencil::new(std::array::from_fn(|j| r.coeff(j).scale(&C64::new(1.0 / (w * w), 0.0))))
                    .expect("square")
            };
            if nahm::extract_residues_at(boundary, second_order, &ws).is_ok() && k > 1 {
                bad += 1;
            }
        }
    }
    if bad > 0 {
        return Report::exact("residue_extraction", anchor, bad);
    }
    Report::bound("residue_extraction", anchor, worst, 1e-8)
}

pub fn fault_injection(seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(job(move || {
        let anchor = "a 1e-3 kick to A0 mid-flow is seen by the drift monitor";
        let mut r = rng::named(seed, "fault-drift");
        let s = NahmState::random(&mut r, 0.8, 3);
        let run = || -> Result<f64> {
            let first = nahm::integrate(&s, 1.0, Method::default(), 50)?;
            let mut mid = first.last();
            let mut a = mid.pencil.into_coeffs();
            a[0][(0, 0)] += C64::new(1e-3, 0.0);
            mid.pencil = MatrixPencil::new(a)?;
            let second = nahm::integrate(&mid, 1.2, Method::default(), 50)?;
            let mut samples = first.samples;
            samples.extend(second.samples);
            Ok(nahm::lax_defect(&nahm::Trajectory::from_samples(samples)))
        };
        match run() {
            Ok(d) if d > 1e-4 => Report::bound("fault_drift_monitor", anchor, 0.0, 1.0).note(format!("drift {d:.3e}")),
            Ok(d) => Report::failed("fault_drift_monitor", anchor, format!("drift {d:.3e} not flagged")),
            Err(e) => Report::failed("fault_drift_monitor", anchor, e),
        }
        .seed(seed)
    }));
    jobs.push(job(|| {
        let mut missed = 0;
        for m in 1..=6 {
            for j in 0..=m {
                let (u1, u0) = nb::canonical_extension(m, j).expect("in range");
                if nb::verify_extension_data(&nb::corrupt(&u1, 0), &u0) {
                    missed += 1;
                }
            }
        }
        Report::exact("fault_extension_verifier", "a sign flip in P'^j breaks the extension identity", missed)
    }));
    jobs.push(job(move || {
        let anchor = "a perturbed curve coefficient is not tau-real";
        let mut r = rng::named(seed, "fault-reality");
        let mut missed = 0;
        for k in 1..=3 {
            let s = RealNahmState::random_skew_hermitian(&mut r, 1.0, k).to_complex().expect("square");
            let c = nahm::spectral_curve(&s);
            let bumped = c.clone() + BivarPoly::from_terms([((k as u32 - 1, 1), C64::new(1e-3, 0.0))]);
            if !nahm::reality_check_curve(&c).unwrap_or(false)
                || nahm::reality_check_curve(&bumped).unwrap_or(true)
            {
                missed += 1;
            }
        }
        Report::exact("fault_reality_checker", anchor, missed).seed(seed)
    }));
    jobs
}
