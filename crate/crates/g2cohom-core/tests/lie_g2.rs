use g2cohom::lie_g2::{
    ad_h_action, adjoint_weyl, bracket, g2_matrix, idx, inner_q, q0, u0, weyl_representative, G2Param, GBasis,
    HElement, PVector, WeylElement, P_DIM,
};
use g2cohom::linalg::Mat;
use g2cohom::scalar::{Field, Q23};

fn sqrt(n: i64) -> Q23 {
    match n {
        2 => Q23::from_base(g2cohom::scalar::QSqrt2::radical()),
        3 => Q23::radical(),
        6 => Q23::radical() * Q23::from_base(g2cohom::scalar::QSqrt2::radical()),
        _ => unreachable!(),
    }
}

fn p_bracket(b: &GBasis<Q23>, i: usize, j: usize) -> PVector<Q23> {
    b.project_p(&bracket(b.p_vector(i), b.p_vector(j)))
}

#[test]
fn printed_brackets() {
    let b = GBasis::<Q23>::new(3).unwrap();
    // these land in p without any h component
    let y1e1 = bracket(b.p_vector(idx::Y1), b.p_vector(idx::E1));
    assert_eq!(y1e1, b.expand_p(&PVector::from_terms(&[(idx::E2, sqrt(3))])));
    let y1f1 = bracket(b.p_vector(idx::Y1), b.p_vector(idx::F1));
    assert_eq!(y1f1, b.expand_p(&PVector::from_terms(&[(idx::F2, -Q23::one() / sqrt(3))])));
    let c = Q23::one() / sqrt(2);
    assert_eq!(p_bracket(&b, idx::E1, idx::F4), PVector::from_terms(&[(idx::X1, -c.clone()), (idx::X2, c)]));
    let d = sqrt(6) * Q23::ratio(1, 3);
    assert_eq!(p_bracket(&b, idx::F1, idx::F4), PVector::from_terms(&[(idx::X1, d.clone()), (idx::X2, -d)]));
}

#[test]
fn basis_orthonormal_for_small_k() {
    for k in [1, 3, 5, 7] {
        let b = GBasis::<Q23>::new(k).unwrap();
        let g = Mat::from_fn(P_DIM, P_DIM, |i, j| inner_q(b.p_vector(i), b.p_vector(j), k));
        assert_eq!(g, Mat::identity(P_DIM), "k = {k}");
    }
    assert!(GBasis::<f64>::new(4).is_err());
}

#[test]
fn u0_norm_and_projection_round_trip() {
    let u = u0::<Q23>();
    assert_eq!(q0(&u, &u), Q23::from_i64(3));
    let b = GBasis::<Q23>::new(5).unwrap();
    for i in 0..P_DIM {
        assert_eq!(b.project_p(b.p_vector(i)), PVector::unit(i));
    }
    for i in P_DIM..P_DIM + 3 {
        assert!(b.project_p(b.elem(i)).is_zero());
    }
}

#[test]
fn weyl_table_spot_checks() {
    let plus = adjoint_weyl::<Q23>(WeylElement::Plus, 3).unwrap();
    assert_eq!(plus.column(idx::X1), PVector::<Q23>::unit(idx::X2).to_vec());
    assert_eq!(plus.column(idx::X2), PVector::<Q23>::unit(idx::X1).to_vec());
    assert_eq!(plus.column(idx::Y2), PVector::<Q23>::unit(idx::Y2).scale(&-Q23::one()).to_vec());
    for k in [1, 3, 5, 7] {
        let minus = adjoint_weyl::<Q23>(WeylElement::Minus, k).unwrap();
        let expect = PVector::from_terms(&[(idx::E2, Q23::ratio(1, 2)), (idx::F2, sqrt(3) * Q23::ratio(1, 2))]);
        assert_eq!(minus.column(idx::E2), expect.to_vec(), "k = {k}");
        assert_eq!(&minus.transpose() * &minus, Mat::identity(P_DIM));
        let tau = HElement::<Q23>::Tau.group_element(0.0).unwrap();
        let b = GBasis::<Q23>::new(k).unwrap();
        assert_eq!(&minus * &minus, b.adjoint_on_p(&tau.a));
    }
    let w = weyl_representative::<Q23>(WeylElement::Minus, 3);
    assert_eq!(w.a[(0, 1)], -Q23::one());
}

#[test]
fn tau_action() {
    let b = GBasis::<Q23>::new(3).unwrap();
    let neg = [idx::Y1, idx::Y2, idx::E1, idx::E4, idx::F1, idx::F4];
    for i in 0..P_DIM {
        let img = ad_h_action(&b, &HElement::Tau, &PVector::unit(i), 0.0).unwrap();
        let sign = if neg.contains(&i) { -Q23::one() } else { Q23::one() };
        assert_eq!(img, PVector::unit(i).scale(&sign), "{i}");
    }
}

#[test]
fn su2_action_fixes_x_y_and_rotates_e_f_alike() {
    let b = GBasis::<f64>::new(5).unwrap();
    let (a1, a2, b1, b2) = (0.3f64, -0.5, 0.6, 0.0);
    let n = (a1 * a1 + a2 * a2 + b1 * b1 + b2 * b2).sqrt();
    let h = HElement::Su2 { alpha: (a1 / n, a2 / n), beta: (b1 / n, b2 / n) };
    for i in 0..4 {
        let v = PVector::<f64>::unit(i);
        assert!(ad_h_action(&b, &h, &v, 1e-12).unwrap().approx_eq(&v, 1e-12));
    }
    for j in 0..4 {
        let e = ad_h_action(&b, &h, &PVector::unit(idx::e(j)), 1e-12).unwrap();
        let f = ad_h_action(&b, &h, &PVector::unit(idx::f(j)), 1e-12).unwrap();
        for i in 0..4 {
            assert!((e.c[idx::e(i)] - f.c[idx::f(i)]).abs() < 1e-12);
            assert!(e.c[idx::f(i)].abs() < 1e-12 && f.c[idx::e(i)].abs() < 1e-12);
        }
    }
}

#[test]
fn q0_quadratic_form_matches_trace() {
    let p = G2Param::<Q23>::from_array(std::array::from_fn(|i| Q23::from_i64(i as i64 - 5)));
    let m = g2_matrix(&p);
    assert_eq!(q0(&m, &m), p.q0_quadratic());
}
