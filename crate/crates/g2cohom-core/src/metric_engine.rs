//! Invariant metrics `g_t(X*, Y*) = Q(P(t) X, Y)` on the principal orbits and
//! their curvature.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_g2::{idx, GBasis, GCoords, PVector, StructureConstants, P_DIM};
use crate::linalg::Mat;
use crate::scalar::{Field, Sqrt23Field, Sqrt3Field};

/// A value together with its first derivative in `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet<S> {
    pub value: S,
    pub deriv: S,
}

impl<S: Field> Jet<S> {
    pub fn new(value: S, deriv: S) -> Self {
        Jet { value, deriv }
    }

    pub fn constant(value: S) -> Self {
        Jet { value, deriv: S::zero() }
    }

    pub fn zero() -> Self {
        Jet::constant(S::zero())
    }

    /// `(f^2, 2 f f')`.
    pub fn square(&self) -> Self {
        Jet {
            value: self.value.square(),
            deriv: S::from_i64(2) * self.value.clone() * self.deriv.clone(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet { value: self.value.clone() * c.clone(), deriv: self.deriv.clone() * c.clone() }
    }
}

/// The ten metric functions at one parameter value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricProfile<S> {
    pub k: u32,
    pub f1_sq: Jet<S>,
    pub f2_sq: Jet<S>,
    pub f12: Jet<S>,
    pub h1_sq: Jet<S>,
    pub h2_sq: Jet<S>,
    pub h12: Jet<S>,
    pub a1_sq: Jet<S>,
    pub a2_sq: Jet<S>,
    pub a12: Jet<S>,
    pub b12: Jet<S>,
}

/// Signed positions of `b12` in the E/F block, as `(E index, F index, sign)`.
const B12_PATTERN: [(usize, usize, i64); 4] = [(0, 3, 1), (2, 1, 1), (1, 2, -1), (3, 0, -1)];

fn assemble<S: Field>(v: [&S; 10]) -> Mat<S> {
    let [f1s, f2s, f12, h1s, h2s, h12, a1s, a2s, a12, b12] = v;
    let mut m = Mat::zeros(P_DIM, P_DIM);
    let mut sym = |i: usize, j: usize, x: S| {
        m[(i, j)] = x.clone();
        m[(j, i)] = x;
    };
    sym(idx::X1, idx::X1, f1s.clone());
    sym(idx::X2, idx::X2, f2s.clone());
    sym(idx::X1, idx::X2, f12.clone());
    sym(idx::Y1, idx::Y1, h1s.clone());
    sym(idx::Y2, idx::Y2, h2s.clone());
    sym(idx::Y1, idx::Y2, h12.clone());
    for i in 0..4 {
        sym(idx::e(i), idx::e(i), a1s.clone());
        sym(idx::f(i), idx::f(i), a2s.clone());
        sym(idx::e(i), idx::f(i), a12.clone());
    }
    for (e, f, s) in B12_PATTERN {
        sym(idx::e(e), idx::f(f), b12.clone() * S::from_i64(s));
    }
    m
}

impl<S: Field> MetricProfile<S> {
    fn jets(&self) -> [&Jet<S>; 10] {
        [
            &self.f1_sq,
            &self.f2_sq,
            &self.f12,
            &self.h1_sq,
            &self.h2_sq,
            &self.h12,
            &self.a1_sq,
            &self.a2_sq,
            &self.a12,
            &self.b12,
        ]
    }

    /// `P` and `P'` without any admissibility check.
    pub fn endomorphisms(&self) -> (Mat<S>, Mat<S>) {
        let j = self.jets();
        (assemble(j.map(|x| &x.value)), assemble(j.map(|x| &x.deriv)))
    }

    pub fn scale(&self, c: &S) -> Self {
        let s = |j: &Jet<S>| j.scale(c);
        MetricProfile {
            k: self.k,
            f1_sq: s(&self.f1_sq),
            f2_sq: s(&self.f2_sq),
            f12: s(&self.f12),
            h1_sq: s(&self.h1_sq),
            h2_sq: s(&self.h2_sq),
            h12: s(&self.h12),
            a1_sq: s(&self.a1_sq),
            a2_sq: s(&self.a2_sq),
            a12: s(&self.a12),
            b12: s(&self.b12),
        }
    }
}

impl MetricProfile<f64> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `P` and `P'`; fails unless `P` is symmetric positive definite.
pub fn build_p<S: Field>(profile: &MetricProfile<S>) -> Result<(Mat<S>, Mat<S>)> {
    if profile.k % 2 == 0 {
        return Err(Error::Domain(format!("k = {} must be odd", profile.k)));
    }
    let (p, dp) = profile.endomorphisms();
    if !p.is_positive_definite() {
        return Err(Error::InadmissibleMetric("P is not positive definite".into()));
    }
    Ok((p, dp))
}

/// The X-sector functions `f1, f2, f12` (not squared) with derivatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FSector<S> {
    pub f1: Jet<S>,
    pub f2: Jet<S>,
    pub f12: Jet<S>,
}

impl<S: Field> FSector<S> {
    pub fn new(f1: Jet<S>, f2: Jet<S>, f12: Jet<S>) -> Self {
        FSector { f1, f2, f12 }
    }

    /// `f1 = f2 = 1`, `f12 = 0`, all derivatives zero.
    pub fn unit() -> Self {
        FSector { f1: Jet::constant(S::one()), f2: Jet::constant(S::one()), f12: Jet::zero() }
    }

    /// Exchange the roles of `f1` and `f2`.
    pub fn swapped(&self) -> Self {
        FSector { f1: self.f2.clone(), f2: self.f1.clone(), f12: self.f12.clone() }
    }
}

/// `sqrt 3 / (sqrt 3 (1 - beta^2) + 2 beta)`.
pub fn alpha_of_beta<S: Sqrt3Field>(beta: &S) -> Result<S> {
    let r3 = S::sqrt3();
    let den = r3.clone() * (S::one() - beta.square()) + S::from_i64(2) * beta.clone();
    if den.signum() <= 0 {
        return Err(Error::Domain(format!("denominator nonpositive at beta = {beta}")));
    }
    Ok(r3 / den)
}

/// A metric profile satisfying the parallel-Jacobi-field reductions:
/// `h2 = 1`, `h12 = b12 = 0`, `a1^2 = alpha - xi`, `a12 = -beta a1^2`,
/// `a2^2 = beta^2 a1^2 + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedProfile<S> {
    pub k: u32,
    pub beta: S,
    pub alpha: S,
    /// `alpha (1 - sqrt 3 beta)`; squares to `alpha (4 alpha - 3)`.
    pub gam: S,
    pub xi: S,
    pub xi_prime: S,
    pub f: FSector<S>,
    pub h1: Jet<S>,
}

impl<S: Sqrt3Field> ReducedProfile<S> {
    pub fn from_beta(beta: S, xi: Jet<S>, f: FSector<S>, h1: Jet<S>, k: u32) -> Result<Self> {
        let alpha = alpha_of_beta(&beta)?;
        let gam = alpha.clone() * (S::one() - S::sqrt3() * beta.clone());
        Self::checked(k, beta, alpha, gam, xi, f, h1)
    }

    /// `gam` must satisfy `gam^2 = alpha (4 alpha - 3)`; its sign selects
    /// the branch `beta < 1/sqrt 3` (positive) or `beta > 1/sqrt 3`.
    pub fn from_alpha_gam(alpha: S, gam: S, xi: Jet<S>, f: FSector<S>, h1: Jet<S>, k: u32) -> Result<Self> {
        let lhs = gam.square();
        let rhs = alpha.clone() * (S::from_i64(4) * alpha.clone() - S::from_i64(3));
        if !lhs.close(&rhs, 1e-12) {
            return Err(Error::Domain(format!("gam^2 = {lhs} but alpha (4 alpha - 3) = {rhs}")));
        }
        let inv = (S::sqrt3() * alpha.clone()).inv().ok_or(Error::Singular)?;
        let beta = (alpha.clone() - gam.clone()) * inv;
        Self::checked(k, beta, alpha, gam, xi, f, h1)
    }

    fn checked(k: u32, beta: S, alpha: S, gam: S, xi: Jet<S>, f: FSector<S>, h1: Jet<S>) -> Result<Self> {
        if k % 2 == 0 {
            return Err(Error::Domain(format!("k = {k} must be odd")));
        }
        if xi.value.signum() < 0 {
            return Err(Error::InadmissibleMetric(format!("xi = {} is negative", xi.value)));
        }
        if (alpha.clone() - xi.value.clone()).signum() < 0 {
            return Err(Error::InadmissibleMetric(format!("a1^2 = alpha - xi < 0 at xi = {}", xi.value)));
        }
        Ok(ReducedProfile { k, beta, alpha, gam, xi: xi.value, xi_prime: xi.deriv, f, h1 })
    }

    /// Reference profile on the singular orbit used for the `Y1`, `E1`, `F1`
    /// curvatures: `xi = 0`, `h1 = f1 = f2 = 1`, `f12 = 0`, derivatives zero.
    pub fn singular_orbit_reference(beta: S, k: u32) -> Result<Self> {
        Self::from_beta(beta, Jet::zero(), FSector::unit(), Jet::constant(S::one()), k)
    }
}

impl<S: Field> ReducedProfile<S> {
    pub fn a1_sq(&self) -> Jet<S> {
        Jet::new(self.alpha.clone() - self.xi.clone(), -self.xi_prime.clone())
    }

    pub fn metric(&self) -> MetricProfile<S> {
        let a1 = self.a1_sq();
        let b = &self.beta;
        MetricProfile {
            k: self.k,
            f1_sq: self.f.f1.square(),
            f2_sq: self.f.f2.square(),
            f12: self.f.f12.clone(),
            h1_sq: self.h1.square(),
            h2_sq: Jet::constant(S::one()),
            h12: Jet::zero(),
            a1_sq: a1.clone(),
            a2_sq: Jet::new(b.square() * a1.value.clone() + S::one(), b.square() * a1.deriv.clone()),
            a12: a1.scale(&-b.clone()),
            b12: Jet::zero(),
        }
    }
}

/// Basis and structure constants of `g` for one `k`; expensive in exact
/// arithmetic, so build once and share.
#[derive(Debug)]
pub struct LieData<S> {
    pub basis: GBasis<S>,
    pub sc: StructureConstants<S>,
}

impl<S: Sqrt23Field> LieData<S> {
    pub fn new(k: u32) -> Result<Arc<Self>> {
        let basis = GBasis::new(k)?;
        let sc = basis.structure_constants();
        Ok(Arc::new(LieData { basis, sc }))
    }
}

/// `B+` or `B-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BSign {
    Plus,
    Minus,
}

/// Curvature of `g_t` along the principal orbit through `P`, `P^{-1}`, `P'`.
#[derive(Clone, Debug)]
pub struct CurvatureEngine<S> {
    lie: Arc<LieData<S>>,
    p: Mat<S>,
    p_inv: Mat<S>,
    p_prime: Mat<S>,
}

fn mat_vec<S: Field>(m: &Mat<S>, v: &PVector<S>) -> PVector<S> {
    PVector::from_slice(&m.mul_vec(&v.c))
}

impl<S: Field> CurvatureEngine<S> {
    pub fn new(lie: Arc<LieData<S>>, p: Mat<S>, p_prime: Mat<S>) -> Result<Self> {
        let p_inv = p.inverse().map_err(|_| Error::Singular)?;
        Ok(CurvatureEngine { lie, p, p_inv, p_prime })
    }

    pub fn from_profile(lie: Arc<LieData<S>>, profile: &MetricProfile<S>) -> Result<Self> {
        if profile.k != lie.basis.k() {
            return Err(Error::Domain(format!("profile k = {} but algebra k = {}", profile.k, lie.basis.k())));
        }
        let (p, dp) = build_p(profile)?;
        Self::new(lie, p, dp)
    }

    pub fn p(&self) -> &Mat<S> {
        &self.p
    }

    pub fn p_prime(&self) -> &Mat<S> {
        &self.p_prime
    }

    pub fn lie(&self) -> &LieData<S> {
        &self.lie
    }

    fn br(&self, x: &PVector<S>, y: &PVector<S>) -> GCoords<S> {
        self.lie.sc.bracket(&x.to_g(), &y.to_g())
    }

    /// `B+- (X, Y) = ([X, PY] -+ [PX, Y]) / 2` in all of `g`.
    pub fn b_bilinear(&self, x: &PVector<S>, y: &PVector<S>, sign: BSign) -> GCoords<S> {
        let a = self.br(x, &mat_vec(&self.p, y));
        let b = self.br(&mat_vec(&self.p, x), y);
        let half = S::ratio(1, 2);
        match sign {
            BSign::Plus => a.sub(&b).scale(&half),
            BSign::Minus => a.add(&b).scale(&half),
        }
    }

    fn q_pp(&self, m: &Mat<S>, x: &PVector<S>, y: &PVector<S>) -> S {
        mat_vec(m, x).dot(y)
    }

    /// The eight summands of `R(X, Y, Z, X)` in order.
    pub fn curvature_terms(&self, x: &PVector<S>, y: &PVector<S>, z: &PVector<S>) -> [S; 8] {
        let half = S::ratio(1, 2);
        let quarter = S::ratio(1, 4);
        let xy = self.br(x, y);
        let xz = self.br(x, z);
        let bm_xy = self.b_bilinear(x, y, BSign::Minus);
        let bm_xz = self.b_bilinear(x, z, BSign::Minus);
        let bp_xy = self.b_bilinear(x, y, BSign::Plus).p();
        let bp_xz = self.b_bilinear(x, z, BSign::Plus).p();
        let bp_xx = self.b_bilinear(x, x, BSign::Plus).p();
        let bp_yz = self.b_bilinear(y, z, BSign::Plus).p();
        let (xy_p, xz_p) = (xy.p(), xz.p());
        [
            half.clone() * bm_xy.q(&xz),
            half.clone() * xy.q(&bm_xz),
            -half * self.q_pp(&self.p, &xy_p, &xz_p),
            -quarter.clone() * self.q_pp(&self.p, &xz_p, &xy_p),
            self.q_pp(&self.p_inv, &bp_xy, &bp_xz),
            -self.q_pp(&self.p_inv, &bp_yz, &bp_xx),
            quarter.clone() * self.q_pp(&self.p_prime, x, z) * self.q_pp(&self.p_prime, x, y),
            -quarter * self.q_pp(&self.p_prime, x, x) * self.q_pp(&self.p_prime, y, z),
        ]
    }

    /// `R(X, Y, Z, X)`.
    pub fn curvature_special(&self, x: &PVector<S>, y: &PVector<S>, z: &PVector<S>) -> S {
        self.curvature_terms(x, y, z).into_iter().fold(S::zero(), |a, b| a + b)
    }

    /// `R(X, Y, Z, W)` recovered from the special case by polarization.
    pub fn curvature_full(&self, x: &PVector<S>, y: &PVector<S>, z: &PVector<S>, w: &PVector<S>) -> S {
        let d = |x: &PVector<S>, y: &PVector<S>| {
            self.curvature_special(&x.add(w), y, z) - self.curvature_special(x, y, z) - self.curvature_special(w, y, z)
        };
        (d(x, y) - d(y, x)) * S::ratio(1, 3)
    }

    /// `R(X, Y, Y, X)`.
    pub fn sectional_numerator(&self, x: &PVector<S>, y: &PVector<S>) -> S {
        self.curvature_special(x, y, y)
    }
}

/// `R(V, T, T, V) = -f f''` for a Killing field of length `f` along the
/// unit normal `T`.
pub fn tangential_curvature<S: Field>(f: &S, f_second: &S) -> S {
    -(f.clone() * f_second.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Q23, Rational};

    #[test]
    fn singular_f_block_rejected() {
        let mut prof = ReducedProfile::<f64>::singular_orbit_reference(0.0, 3).unwrap().metric();
        prof.f12 = Jet::constant(1.0);
        assert!(matches!(build_p(&prof), Err(Error::InadmissibleMetric(_))));
    }

    #[test]
    fn reduced_beta_zero_is_diagonal() {
        let r = ReducedProfile::<Q23>::singular_orbit_reference(Q23::zero(), 3).unwrap();
        assert_eq!(r.alpha, Q23::one());
        assert_eq!(r.gam, Q23::one());
        let (p, _) = build_p(&r.metric()).unwrap();
        for i in 4..12 {
            assert_eq!(p[(i, i)], Q23::one());
        }
        assert_eq!(p[(idx::Y2, idx::Y2)], Q23::one());
        assert!(p[(idx::E1, idx::F1)].is_zero());
    }

    #[test]
    fn xi_outside_range_rejected() {
        let f = FSector::unit();
        let h = Jet::constant(1.0);
        assert!(ReducedProfile::from_beta(0.0, Jet::new(-0.1, 0.0), f.clone(), h.clone(), 3).is_err());
        assert!(ReducedProfile::from_beta(0.0, Jet::new(1.1, 0.0), f, h, 3).is_err());
    }

    #[test]
    fn alpha_of_beta_values() {
        assert_eq!(alpha_of_beta(&Q23::zero()).unwrap(), Q23::one());
        let b = Q23::one() / Q23::radical();
        assert_eq!(alpha_of_beta(&b).unwrap(), Q23::ratio(3, 4));
        assert!(alpha_of_beta(&2.0f64).is_err());
        assert!(alpha_of_beta(&-0.6f64).is_err());
    }

    #[test]
    fn tangential() {
        assert_eq!(tangential_curvature(&1.0, &0.0), -0.0);
        assert_eq!(tangential_curvature(&Rational::from_i64(1), &Rational::from_i64(-2)), Rational::from_i64(2));
    }

    #[test]
    fn profile_json_round_trip() {
        let r = ReducedProfile::<f64>::singular_orbit_reference(0.2, 5).unwrap().metric();
        assert_eq!(MetricProfile::from_json(&r.to_json()).unwrap(), r);
    }
}
