use g2cohom::appendix_suite::{component_arguments, engine_value, ClosedFormId, CoefficientTable};
use g2cohom::lie_g2::PVector;
use g2cohom::lie_g2::idx;
use g2cohom::metric_engine::{CurvatureEngine, FSector, Jet, LieData, ReducedProfile};
use g2cohom::obstruction::*;
use g2cohom::sampling::{random_reduced_profile, rng_for};
use g2cohom::scalar::{Field, GammaCtx, QGam};

fn contexts() -> Vec<GammaCtx> {
    rational_alpha_samples(25).into_iter().map(|a| GammaCtx::new(a).unwrap()).collect()
}

#[test]
fn double_root_identities_hold_exactly() {
    for ctx in contexts() {
        let q = QuarticPsi::from_ctx(&ctx);
        let x = q.x_alpha();
        let [v, d1, d2] = q.psi_jet(&x);
        assert!(v.is_zero(), "Psi(x_alpha) at alpha={}", ctx.alpha_rational());
        assert!(d1.is_zero(), "Psi'(x_alpha) at alpha={}", ctx.alpha_rational());
        assert_eq!(d2, q.psi_second_at_x_alpha_closed());
        let (p1, p2, _) = q.eval(&x);
        assert_eq!(p2, q.psi2_at_x_alpha_closed());
        assert_eq!(p1, -QGam::ratio(4, 3) * p2);
        assert_eq!(q.factored_coefficients().to_vec(), q.psi().to_vec());
        assert_eq!(q.cofactor_discriminant(), q.cofactor_discriminant_closed());
        assert!(q.cofactor_discriminant().to_f64() < 0.0);
    }
}

#[test]
fn psi_is_nonnegative_and_psi2_positive_on_window() {
    for a in alpha_grid(1e-3).unwrap() {
        let q = QuarticPsi::from_alpha(a).unwrap();
        let x = q.x_alpha();
        assert!(q.eval(&x).1 > 0.0, "alpha={a}");
        assert!((q.eval(&x).1 - q.psi2_at_x_alpha_closed()).abs() < 1e-12);
        for j in -40..=40 {
            let t = j as f64 * 0.25;
            assert!(q.eval(&t).2 >= -1e-12, "alpha={a} x={t}");
        }
    }
}

#[test]
fn leading_coefficients_match_quartics() {
    let table = CoefficientTable::builtin();
    for ctx in contexts() {
        for c in leading_coefficients(&ctx, &table).unwrap() {
            assert!(c.pass(), "c{}: {}", c.i, c.detail);
        }
    }
}

#[test]
fn iq_numerators_reproduce_determinant() {
    let lie = LieData::<f64>::new(3).unwrap();
    let mut rng = rng_for(11, "iq", 0);
    for _ in 0..10 {
        let prof = random_reduced_profile(&mut rng, 3);
        let eng = CurvatureEngine::from_profile(lie.clone(), &prof.metric()).unwrap();
        let r: [f64; 10] = std::array::from_fn(|i| {
            let [a, b, c, d] = component_arguments::<f64>(i as u8 + 1);
            eng.curvature_full(&a, &b, &c, &d)
        });
        let c = iq_coefficients(&r, &1.0).unwrap();
        let x1 = PVector::<f64>::unit(idx::X1);
        let x2 = PVector::<f64>::unit(idx::X2);
        for q in [-2.0, -0.5, 0.0, 0.7, 1.9] {
            let b = PVector::unit(idx::e(1)).add(&PVector::unit(idx::f(1)).scale(&q));
            let a = eng.curvature_full(&x1, &b, &b, &x1);
            let cc = eng.curvature_full(&x2, &b, &b, &x2);
            let bb = eng.curvature_full(&x1, &b, &b, &x2);
            let want = a * cc - bb * bb;
            assert!((c.eval(&q) - want).abs() <= 1e-9 * (1.0 + want.abs()), "q={q}");
        }
        let f2 = prof.f.f2.value;
        let scaled = iq_coefficients(&r, &f2).unwrap();
        assert!((scaled.c[2] * f2.powi(4) - c.c[2]).abs() < 1e-9 * (1.0 + c.c[2].abs()));
    }
    assert!(iq_coefficients(&[1.0; 10], &0.0).is_err());
}

#[test]
fn iq_vanishes_without_xi() {
    let table = CoefficientTable::builtin();
    let ctx = GammaCtx::new(g2cohom::scalar::Rational::from_i64(1)).unwrap();
    for c in leading_coefficients(&ctx, &table).unwrap() {
        assert!(c.constant_part_vanishes);
    }
}

#[test]
fn verdicts() {
    for k in [3, 5, 7, 9] {
        let r = verdict(k, 1e-3).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible, "k={k}");
        assert!((r.chained_bound.k_bound - 2.0).abs() < 1e-12);
        assert!(r.min_psi2_at_q_alpha > 0.0);
        assert!(r.max_double_root_defect < 1e-12);
    }
    assert!(!verdict(3, 1e-3).unwrap().short_bound.rules_out_k);
    assert!(verdict(5, 1e-3).unwrap().short_bound.rules_out_k);
    assert_eq!(verdict(1, 1e-3).unwrap().verdict, Verdict::NoContradiction);
    assert!(verdict(4, 1e-3).is_err());
    let r = verdict(3, 1e-3).unwrap();
    assert_eq!(r.alpha_grid.start, 0.75);
    assert_eq!(r.alpha_grid.end, alpha_max());
}

#[test]
fn alpha_decreases_across_window() {
    let (b1, b2) = beta_window();
    let n = 500;
    let vals: Vec<f64> = (0..=n).map(|i| alpha_of_beta(&(b1 + (b2 - b1) * i as f64 / n as f64)).unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
    assert!((vals[0] - alpha_max()).abs() < 1e-10);
    assert!((vals[n] - 0.75).abs() < 1e-12);
}

#[test]
fn kxy_agrees_with_engine_sign() {
    let lie = LieData::<f64>::new(3).unwrap();
    let mut rng = rng_for(5, "kxy", 0);
    let mut both = [0, 0];
    for _ in 0..200 {
        let p = random_reduced_profile(&mut rng, 3);
        let v = engine_value(ClosedFormId::A2XY, &lie, &p).unwrap();
        if v.abs() < 1e-9 {
            continue;
        }
        assert_eq!(kxy_constraint(&p).unwrap(), v > 0.0);
        both[(v > 0.0) as usize] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0);
}

#[test]
fn kxy_implies_ell_bound_near_singular_orbit() {
    // With f12 = 0, K(X,Y) >= 0 reads (f1 xi'/xi)^2 <= (8/3)(f1^2 F), and f1^2 F -> 1.
    for f1 in [1e-1, 1e-2, 1e-3, 1e-4] {
        let f2: f64 = 1.3;
        let f1_sq_f = f1 * f1 * (f1 * f1 + f2 * f2) / (f1 * f1 * f2 * f2);
        assert!((f1_sq_f - 1.0).abs() <= 2.0 * f1 * f1);
        let ell = ell_max() * f1_sq_f.sqrt();
        let xi: f64 = 0.01;
        let on_edge = ell * xi / f1;
        let f = FSector::new(Jet::constant(f1), Jet::constant(f2), Jet::constant(0.0));
        let inside = ReducedProfile::from_beta(0.0, Jet::new(xi, on_edge * (1.0 - 1e-9)), f.clone(), Jet::constant(1.0), 3).unwrap();
        let outside = ReducedProfile::from_beta(0.0, Jet::new(xi, on_edge * (1.0 + 1e-9)), f, Jet::constant(1.0), 3).unwrap();
        assert!(kxy_constraint(&inside).unwrap());
        assert!(!kxy_constraint(&outside).unwrap());
    }
    assert!((ell_max() - (8.0f64 / 3.0).sqrt()).abs() < 1e-15);
}

#[test]
fn smoothness_examples() {
    let b = BoundaryData::from_reduced(0.0, 3, 1.0).unwrap();
    assert_eq!(smoothness_check(&b, 1e-12), vec![]);
    let (b1, _) = beta_window();
    for beta in [b1, -0.05, 0.3, 0.5] {
        assert!(smoothness_check(&BoundaryData::from_reduced(beta, 5, 0.7).unwrap(), 1e-12).is_empty());
    }
    let mut bad = b.clone();
    bad.at_zero.b12.value = 0.1;
    let v = smoothness_check(&bad, 1e-12);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].condition, "b12(0) = 0");
    let mut bad = b.clone();
    bad.at_zero.f1.deriv = 4.0 / (5.0 * 6f64.sqrt());
    assert_eq!(smoothness_check(&bad, 1e-12).len(), 1);
}

#[test]
fn reduce_profile_installs_relations() {
    let f = FSector::<f64>::unit();
    let p = reduce_profile(0.0, Jet::new(0.9, -0.2), f.clone(), Jet::constant(1.0), 3).unwrap();
    assert!((p.xi - 0.1).abs() < 1e-15);
    assert!((p.xi_prime - 0.2).abs() < 1e-15);
    assert!(reduce_profile(0.0, Jet::new(1.1, 0.0), f.clone(), Jet::constant(1.0), 3).is_err());
    assert!(reduce_profile(2.0, Jet::new(0.5, 0.0), f.clone(), Jet::constant(1.0), 3).is_err());
    let p = reduce_profile(0.3, Jet::new(0.7, -0.2), f, Jet::constant(1.0), 3).unwrap();
    let m = p.metric();
    assert!((m.a2_sq.deriv - 0.09 * -0.2).abs() < 1e-15);
    assert!((m.a12.deriv - -0.3 * -0.2).abs() < 1e-15);
}

#[test]
fn beta_scan_changes_sign_only_at_window_ends() {
    let rows = scan_beta(1e-3).unwrap();
    let changes = sign_changes(&rows);
    let (b1, b2) = beta_window();
    assert_eq!(changes.len(), 2, "{changes:?}");
    assert!((changes[0] - b1).abs() < 1e-3);
    assert!((changes[1] - b2).abs() < 1e-3);
    let alphas = scan_alpha(1e-3).unwrap();
    assert!(alphas.iter().all(|r| r.psi2_at_x_alpha > 0.0 && r.p_beta >= -1e-12));
}
