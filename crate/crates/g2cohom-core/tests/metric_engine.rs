use std::time::Instant;

use g2cohom::lie_g2::{idx, PVector};
use g2cohom::metric_engine::{BSign, CurvatureEngine, FSector, Jet, LieData, ReducedProfile};
use g2cohom::scalar::{Field, Q23};

fn e(i: usize) -> PVector<Q23> {
    PVector::unit(i)
}

#[test]
fn singular_orbit_values_at_beta_zero() {
    let t = Instant::now();
    let lie = LieData::<Q23>::new(3).unwrap();
    eprintln!("lie data: {:?}", t.elapsed());
    let prof = ReducedProfile::singular_orbit_reference(Q23::zero(), 3).unwrap();
    let eng = CurvatureEngine::from_profile(lie, &prof.metric()).unwrap();
    let t = Instant::now();
    assert_eq!(eng.curvature_special(&e(idx::Y1), &e(idx::E1), &e(idx::E1)), Q23::ratio(3, 4));
    assert_eq!(eng.curvature_special(&e(idx::Y1), &e(idx::F1), &e(idx::F1)), Q23::ratio(1, 12));
    assert!(eng.curvature_special(&e(idx::Y1), &e(idx::E1), &e(idx::F1)).is_zero());
    eprintln!("three curvatures: {:?}", t.elapsed());
    assert!(eng.b_bilinear(&e(idx::Y1), &e(idx::Y1), BSign::Plus).is_zero());
}

#[test]
fn b_plus_y1_e1_general_beta() {
    let lie = LieData::<f64>::new(3).unwrap();
    let beta = 0.3;
    let prof = ReducedProfile::singular_orbit_reference(beta, 3).unwrap();
    let a = prof.alpha;
    let eng = CurvatureEngine::from_profile(lie, &prof.metric()).unwrap();
    let b = eng.b_bilinear(&PVector::unit(idx::Y1), &PVector::unit(idx::E1), BSign::Plus).scale(&2.0);
    let r3 = 3f64.sqrt();
    let expect = PVector::from_terms(&[(idx::E2, r3 * (a - 1.0)), (idx::F2, a * beta / r3)]);
    assert!(b.p().approx_eq(&expect, 1e-12), "{:?}", b);
    assert!(b.h().iter().all(|x| x.abs() < 1e-12));
}

#[test]
fn xy_plane_vanishes_at_base_point() {
    let lie = LieData::<Q23>::new(3).unwrap();
    let f = FSector::new(Jet::new(Q23::ratio(1, 2), Q23::one()), Jet::constant(Q23::one()), Jet::zero());
    let prof = ReducedProfile::from_beta(Q23::zero(), Jet::zero(), f, Jet::constant(Q23::one()), 3).unwrap();
    let eng = CurvatureEngine::from_profile(lie, &prof.metric()).unwrap();
    let r3 = Q23::radical();
    let x = PVector::from_terms(&[(idx::E1, Q23::one()), (idx::F1, -r3.clone())]);
    let y = PVector::from_terms(&[(idx::E4, r3), (idx::F4, Q23::one())]);
    assert!(eng.sectional_numerator(&x, &y).is_zero());
}
