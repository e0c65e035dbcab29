//! The Brieskorn model `z0^d + z1^2 + ... + z7^2 = 0` on the unit sphere in
//! `C^8`, with `SO(2) x G2` acting by `(e^{-2i theta} z0, e^{-i d theta} A Z)`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_g2::{weyl_representative, GroupElement, WeylElement};
use crate::linalg::Mat;
use crate::octonion::{automorphism_defect, is_automorphism, Octonion};
use crate::sampling::{open_uniform, random_g2_element, random_unit_imaginary};
use crate::scalar::{Field, Rational};
use crate::shimada::frame_automorphism;

pub type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct BrieskornPoint {
    pub z: [C; 8],
    pub d: u32,
}

impl BrieskornPoint {
    /// Validates both defining equations to `tol`.
    pub fn new(z: [C; 8], d: u32, tol: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("d must be positive".into()));
        }
        let p = BrieskornPoint { z, d };
        let (eq, norm) = p.residuals();
        if eq > tol || norm > tol {
            return Err(Error::Domain(format!("not on the variety: |equation| = {eq:.3e}, |norm - 1| = {norm:.3e}")));
        }
        Ok(p)
    }

    /// `(|z0^d + sum z_i^2|, |sum |z_i|^2 - 1|)`.
    pub fn residuals(&self) -> (f64, f64) {
        let eq = self.z[0].powu(self.d) + self.z[1..].iter().map(|z| z * z).sum::<C>();
        let norm: f64 = self.z.iter().map(|z| z.norm_sqr()).sum();
        (eq.norm(), (norm - 1.0).abs())
    }

    pub fn max_residual(&self) -> f64 {
        let (a, b) = self.residuals();
        a.max(b)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.z.iter().zip(&other.z).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `(theta, A) . p`.
pub fn act(theta: f64, a: &Mat<f64>, p: &BrieskornPoint, tol: f64) -> Result<BrieskornPoint> {
    act_element(&GroupElement::new((theta.cos(), theta.sin()), a.clone()), p, tol)
}

/// Same as [`act`] with the circle factor given as `(cos theta, sin theta)`.
pub fn act_element(g: &GroupElement<f64>, p: &BrieskornPoint, tol: f64) -> Result<BrieskornPoint> {
    if !is_automorphism(&g.a, tol) {
        return Err(Error::NotAutomorphism(automorphism_defect(&g.a)));
    }
    let u = C::new(g.rot.0, g.rot.1);
    let w = u.conj().powu(p.d);
    let mut z = [C::new(0.0, 0.0); 8];
    z[0] = u.conj() * u.conj() * p.z[0];
    for (i, zi) in z.iter_mut().enumerate().skip(1) {
        *zi = w * (1..8).map(|j| p.z[j] * g.a[(i - 1, j - 1)]).sum::<C>();
    }
    Ok(BrieskornPoint { z, d: p.d })
}

/// `(z0, Z) -> (z0, -Z)`.
pub fn involution_i(p: &BrieskornPoint) -> BrieskornPoint {
    let mut q = p.clone();
    for z in &mut q.z[1..] {
        *z = -*z;
    }
    q
}

/// The positive root of `t^d + t^2 = 1`.
pub fn t0_solve(d: u32) -> f64 {
    let f = |t: f64| t.powi(d as i32) + t * t - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..4 {
        let df = d as f64 * t.powi(d as i32 - 1) + 2.0 * t;
        let next = t - f(t) / df;
        if f(next).abs() >= f(t).abs() {
            break;
        }
        t = next;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasePoint {
    Minus,
    Plus,
    Regular,
}

/// Base points of the three orbit types: `p- = (0, 1, i, 0, ...)/sqrt2`,
/// `p+ = (t0, i sqrt(t0^d), 0, ...)`, and the point at `s = t0/2` of the
/// curve `(s, a(s), i b(s), 0, ...)` joining `p-` to the orbit of `p+`.
pub fn base_point(tag: BasePoint, d: u32) -> BrieskornPoint {
    let zero = C::new(0.0, 0.0);
    let mut z = [zero; 8];
    match tag {
        BasePoint::Minus => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            z[1] = C::new(h, 0.0);
            z[2] = C::new(0.0, h);
        }
        BasePoint::Plus => {
            let t0 = t0_solve(d);
            z[0] = C::new(t0, 0.0);
            z[1] = C::new(0.0, t0.powi(d as i32).sqrt());
        }
        BasePoint::Regular => {
            let s = 0.5 * t0_solve(d);
            let sd = s.powi(d as i32);
            z[0] = C::new(s, 0.0);
            z[1] = C::new(((1.0 - s * s - sd) / 2.0).sqrt(), 0.0);
            z[2] = C::new(0.0, ((1.0 - s * s + sd) / 2.0).sqrt());
        }
    }
    BrieskornPoint { z, d }
}

/// Random point: random `(z0, Z)`, `Z` rescaled by a complex factor onto the
/// variety, then the weighted scaling `(l^2 z0, l^d Z)` onto the sphere.
pub fn random_point<R: Rng>(rng: &mut R, d: u32) -> BrieskornPoint {
    loop {
        let mut z: [C; 8] = std::array::from_fn(|_| C::new(open_uniform(rng, -1.0, 1.0), open_uniform(rng, -1.0, 1.0)));
        let q: C = z[1..].iter().map(|w| w * w).sum();
        if q.norm() < 1e-3 {
            continue;
        }
        let f = (-z[0].powu(d) / q).sqrt();
        for w in &mut z[1..] {
            *w *= f;
        }
        let a = z[0].norm_sqr();
        let b: f64 = z[1..].iter().map(|w| w.norm_sqr()).sum();
        if b < 1e-6 {
            continue;
        }
        let norm = |l: f64| l.powi(4) * a + l.powi(2 * d as i32) * b;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while norm(hi) < 1.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if norm(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let l = 0.5 * (lo + hi);
        z[0] *= l * l;
        let ld = l.powi(d as i32);
        for w in &mut z[1..] {
            *w *= ld;
        }
        let s: f64 = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        for w in &mut z {
            *w /= s;
        }
        return BrieskornPoint { z, d };
    }
}

/// Random element of `SO(2) x G2`.
pub fn random_group_element<R: Rng>(rng: &mut R) -> GroupElement<f64> {
    let t = open_uniform(rng, -std::f64::consts::PI, std::f64::consts::PI);
    GroupElement::new((t.cos(), t.sin()), random_g2_element(rng))
}

/// The `SU(2)` in `G2` fixing `e1, e2, e3`: `a + b e4 -> a + (q b) e4` for a
/// unit quaternion `q = q0 + q1 e1 + q2 e2 + q3 e3`.
pub fn su2_element(q: [f64; 4]) -> Mat<f64> {
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let q = Octonion::new([q[0] / n, q[1] / n, q[2] / n, q[3] / n, 0.0, 0.0, 0.0, 0.0]);
    let e4 = Octonion::<f64>::basis(4);
    let mut a = Mat::identity(7);
    for j in 0..4 {
        let b = Octonion::<f64>::basis(j);
        let image = q.mul(&b).mul(&e4);
        a.set_column(3 + j, &image.im_coords());
    }
    a
}

/// Rotation by `phi` in the `(e1, e2)` plane, extended to an automorphism
/// that fixes `e4`.
pub fn plane_rotation(phi: f64) -> Mat<f64> {
    let (c, s) = (phi.cos(), phi.sin());
    let x = Octonion::basis(1).scale(&c) - Octonion::basis(2).scale(&s);
    let y = Octonion::basis(1).scale(&s) + Octonion::basis(2).scale(&c);
    frame_automorphism(&x, &y, &Octonion::basis(4))
}

/// Random element of `G2 cap O(6)` (the stabilizer of the line through `e1`)
/// with `A e1 = sign e1`.
pub fn random_e1_stabilizer<R: Rng>(rng: &mut R, sign: f64) -> Mat<f64> {
    let x = Octonion::basis(1).scale(&sign);
    let y = orthogonal_random(rng, &[&x]);
    let xy = x.mul(&y);
    let z = orthogonal_random(rng, &[&x, &y, &xy]);
    frame_automorphism(&x, &y, &z)
}

fn orthogonal_random<R: Rng>(rng: &mut R, basis: &[&Octonion<f64>]) -> Octonion<f64> {
    loop {
        let mut w = random_unit_imaginary(rng);
        for b in basis {
            w = w.clone() - b.scale(&w.dot(b));
        }
        let n = w.norm();
        if n > 1e-2 {
            return w.scale(&(1.0 / n));
        }
    }
}

fn near<S: Field>(x: &S, y: &S, tol: f64) -> bool {
    x.close(y, tol)
}

fn block_zero<S: Field>(a: &Mat<S>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>, tol: f64) -> bool {
    rows.clone().all(|i| cols.clone().all(|j| near(&a[(i, j)], &S::zero(), tol)))
}

fn rot_pow<S: Field>(rot: &(S, S), n: u32) -> (S, S) {
    (0..n).fold((S::one(), S::zero()), |(c, s), _| {
        (c.clone() * rot.0.clone() - s.clone() * rot.1.clone(), c * rot.1.clone() + s * rot.0.clone())
    })
}

fn sign_of<S: Field>(x: &S, tol: f64) -> Option<S> {
    [S::one(), -S::one()].into_iter().find(|e| near(x, e, tol))
}

/// Principal isotropy pattern: `(eps, diag(eps, eps, 1, A4))` for odd `d`,
/// `(eps, diag(1, 1, 1, A4))` for even `d`, with `eps = +-1` and the matrix
/// in `G2`.
pub fn matches_h<S: Field>(g: &GroupElement<S>, d: u32, tol: f64) -> bool {
    let Some(eps) = sign_of(&g.rot.0, tol) else { return false };
    if !near(&g.rot.1, &S::zero(), tol) {
        return false;
    }
    let lead = if d % 2 == 1 { eps } else { S::one() };
    let a = &g.a;
    let diag_ok = near(&a[(0, 0)], &lead, tol) && near(&a[(1, 1)], &lead, tol) && near(&a[(2, 2)], &S::one(), tol);
    let off_ok = near(&a[(0, 1)], &S::zero(), tol)
        && near(&a[(1, 0)], &S::zero(), tol)
        && block_zero(a, 0..2, 2..3, tol)
        && block_zero(a, 2..3, 0..2, tol)
        && block_zero(a, 0..3, 3..7, tol)
        && block_zero(a, 3..7, 0..3, tol);
    diag_ok && off_ok && is_automorphism(a, tol)
}

/// `(e^{i theta}, diag(R(d theta), 1, A4))` with
/// `R(phi) = [[cos phi, sin phi], [-sin phi, cos phi]]`.
pub fn matches_kminus<S: Field>(g: &GroupElement<S>, d: u32, tol: f64) -> bool {
    let unit = g.rot.0.square() + g.rot.1.square();
    if !near(&unit, &S::one(), tol) {
        return false;
    }
    let (c, s) = rot_pow(&g.rot, d);
    let a = &g.a;
    near(&a[(0, 0)], &c, tol)
        && near(&a[(0, 1)], &s, tol)
        && near(&a[(1, 0)], &-s, tol)
        && near(&a[(1, 1)], &c, tol)
        && near(&a[(2, 2)], &S::one(), tol)
        && block_zero(a, 0..2, 2..7, tol)
        && block_zero(a, 2..7, 0..2, tol)
        && block_zero(a, 2..3, 3..7, tol)
        && block_zero(a, 3..7, 2..3, tol)
        && is_automorphism(a, tol)
}

/// `(det B, diag(det B, B))` with `B` in `O(6)`.
pub fn matches_kplus<S: Field>(g: &GroupElement<S>, tol: f64) -> bool {
    let Some(delta) = sign_of(&g.rot.0, tol) else { return false };
    if !near(&g.rot.1, &S::zero(), tol) {
        return false;
    }
    let a = &g.a;
    let b = Mat::from_fn(6, 6, |i, j| a[(i + 1, j + 1)].clone());
    near(&a[(0, 0)], &delta, tol)
        && block_zero(a, 0..1, 1..7, tol)
        && block_zero(a, 1..7, 0..1, tol)
        && near(&b.det(), &delta, tol)
        && is_automorphism(a, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotropyClass {
    InH,
    InKMinus,
    InKPlus,
    None,
}

pub fn fixes(g: &GroupElement<f64>, p: &BrieskornPoint, tol: f64) -> Result<bool> {
    Ok(act_element(g, p, tol)?.max_abs_diff(p) <= tol)
}

/// Finest isotropy group at `base` containing `g`: the element must fix the
/// base point and fit the block pattern.
pub fn isotropy_classify(g: &GroupElement<f64>, base: BasePoint, d: u32, tol: f64) -> IsotropyClass {
    if !is_automorphism(&g.a, tol) || !fixes(g, &base_point(base, d), tol).unwrap_or(false) {
        return IsotropyClass::None;
    }
    if matches_h(g, d, tol) {
        return IsotropyClass::InH;
    }
    match base {
        BasePoint::Minus if matches_kminus(g, d, tol) => IsotropyClass::InKMinus,
        BasePoint::Plus if matches_kplus(g, tol) => IsotropyClass::InKPlus,
        _ => IsotropyClass::None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    pub k: u32,
    pub epsilon: i64,
    pub checks: Vec<WeylCheck>,
}

impl WeylReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn to_f64(g: &GroupElement<Rational>) -> GroupElement<f64> {
    GroupElement::new((g.rot.0.to_f64(), g.rot.1.to_f64()), g.a.to_f64())
}

/// Exact Weyl group relations for odd `k`.
pub fn weyl_verify(k: u32) -> Result<WeylReport> {
    if k % 2 == 0 {
        return Err(Error::Domain(format!("k = {k} must be odd")));
    }
    let wm = weyl_representative::<Rational>(WeylElement::Minus, k);
    let wp = weyl_representative::<Rational>(WeylElement::Plus, k);
    let wpm = wp.compose(&wm);
    let sq = wpm.pow(2);
    let quad = wpm.pow(4);
    let fixes_base = |g: &GroupElement<Rational>, b| fixes(&to_f64(g), &base_point(b, k), 1e-14).unwrap_or(false);
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| checks.push(WeylCheck { name: name.into(), pass, detail });
    push("w- matrix is an automorphism", is_automorphism(&wm.a, 0.0), format!("defect {:e}", automorphism_defect(&wm.a)));
    push("w- in K-", matches_kminus(&wm, k, 0.0) && fixes_base(&wm, BasePoint::Minus), "pattern and fixes p-".into());
    push("w+ in K+", matches_kplus(&wp, 0.0) && fixes_base(&wp, BasePoint::Plus), "pattern and fixes p+".into());
    push("w- not in H", !matches_h(&wm, k, 0.0), String::new());
    push("w+ not in H", !matches_h(&wp, k, 0.0), String::new());
    push("w+^2 = (1, I7)", wp.pow(2) == GroupElement::identity(), String::new());
    push("w-^2 in H", matches_h(&wm.pow(2), k, 0.0), format!("rot {:?}", wm.pow(2).rot));
    push("(w+ w-)^2 = (-1, I7)", sq == GroupElement::minus_identity(), String::new());
    push("(w+ w-)^2 not in H", !matches_h(&sq, k, 0.0), String::new());
    push("(w+ w-)^4 in H", matches_h(&quad, k, 0.0), String::new());
    Ok(WeylReport { k, epsilon: crate::lie_g2::weyl_epsilon(k), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t0_examples() {
        assert!((t0_solve(2) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((t0_solve(1) - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((t0_solve(3) - 0.754877666).abs() < 1e-9);
    }

    #[test]
    fn base_points_lie_on_the_variety() {
        for d in 1..10 {
            for b in [BasePoint::Minus, BasePoint::Plus, BasePoint::Regular] {
                assert!(base_point(b, d).max_residual() < 1e-14, "{b:?} d={d}");
            }
        }
    }

    #[test]
    fn su2_and_plane_rotation_are_automorphisms() {
        assert!(is_automorphism(&su2_element([0.3, -0.5, 0.7, 0.2]), 1e-12));
        assert!(is_automorphism(&plane_rotation(0.8), 1e-12));
    }
}
