//! The curvature obstruction near the singular orbit `G/K-`: bounds on
//! `a1^2(0)`, the quartics `Psi1`, `Psi2`, the coefficients of `I_q`, and the
//! resulting bound on `k`.

use rayon::prelude::*;
use serde::Serialize;

use crate::appendix_suite::{singular_orbit_forms, CoefficientTable};
use crate::error::{Error, Result};
use crate::metric_engine::{FSector, Jet, ReducedProfile};
use crate::poly::{Monomial, Poly, Var};
use crate::scalar::{Field, GammaCtx, QGam, Rational, Sqrt3Field};

pub use crate::metric_engine::alpha_of_beta;

/// `(beta1, beta2) = (7 sqrt3/3 - 2 sqrt39/3, 1/sqrt3)`.
pub fn beta_window() -> (f64, f64) {
    let b1 = 7.0 * 3f64.sqrt() / 3.0 - 2.0 * 39f64.sqrt() / 3.0;
    (b1, 1.0 / 3f64.sqrt())
}

/// `7/12 + sqrt13/6`, the largest admissible `a1^2(0)`.
pub fn alpha_max() -> f64 {
    7.0 / 12.0 + 13f64.sqrt() / 6.0
}

/// `p(beta) = R_YE R_YF - R_YEF^2` from the singular-orbit closed forms.
pub fn p_of_beta<S: Sqrt3Field>(beta: &S) -> Result<S> {
    let [ye, yf, yef] = singular_orbit_forms(beta)?;
    Ok(ye * yf - yef.square())
}

/// The factored form of [`p_of_beta`].
pub fn p_of_beta_factored<S: Sqrt3Field>(beta: &S) -> Result<S> {
    let r3 = S::sqrt3();
    let b = beta.clone();
    let bp = |n: u32| b.powi(n);
    let i = S::from_i64;
    let d = r3.clone() * bp(2) - i(2) * b.clone() - r3.clone();
    if d.is_zero() {
        return Err(Error::Domain(format!("pole at beta = {beta}")));
    }
    let lin = r3.clone() * bp(2) + i(2) * b.clone() - r3.clone();
    let sext = -i(9) * bp(6) + i(30) * r3.clone() * bp(5) + i(183) * bp(4) - i(4) * r3.clone() * bp(3) - i(183) * bp(2)
        + i(30) * r3 * b.clone()
        + i(9);
    Ok(lin * sext / (i(48) * d.powi(3)))
}

/// `Psi1`, `Psi2` as coefficient lists, index = power of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticPsi<S> {
    pub alpha: S,
    pub gam: S,
    pub psi1: [S; 5],
    pub psi2: [S; 5],
}

fn horner<S: Field>(c: &[S], x: &S) -> S {
    c.iter().rev().fold(S::zero(), |acc, a| acc * x.clone() + a.clone())
}

fn derivative<S: Field>(c: &[S]) -> Vec<S> {
    c.iter().enumerate().skip(1).map(|(i, a)| a.clone() * S::from_i64(i as i64)).collect()
}

impl<S: Sqrt3Field> QuarticPsi<S> {
    /// `gam` must satisfy `gam^2 = alpha (4 alpha - 3)`.
    pub fn new(alpha: S, gam: S) -> Self {
        let i = S::from_i64;
        let r3 = S::sqrt3();
        let a = alpha.clone();
        let g = gam.clone();
        let a2 = a.square();
        let psi1 = [
            -S::one() / (i(16) * a.clone()),
            (i(2) * a.clone() + g.clone()) / (i(8) * r3.clone() * a2.clone()),
            -(a.clone() + g.clone()) / (i(8) * a2.clone()),
            (i(2) * a.clone() - g.clone()) / (i(24) * r3.clone() * a2.clone()),
            (i(5) * a.clone() + i(2) * g.clone()) / (i(48) * a2.clone()),
        ];
        let psi2 = [
            S::ratio(1, 16),
            -S::one() / (i(4) * r3.clone()),
            (i(9) - i(2) * a.clone()) / (i(48) * a.clone()),
            (i(2) * a2.clone() - i(3) * a.clone() + g.clone()) / (i(8) * r3 * a2.clone()),
            (i(3) * a2.clone() - a.clone() - i(2) * g) / (i(48) * a2),
        ];
        QuarticPsi { alpha, gam, psi1, psi2 }
    }

    /// `Psi = 3 Psi1 + 4 Psi2`.
    pub fn psi(&self) -> [S; 5] {
        std::array::from_fn(|i| S::from_i64(3) * self.psi1[i].clone() + S::from_i64(4) * self.psi2[i].clone())
    }

    /// `(Psi1(x), Psi2(x), Psi(x))`.
    pub fn eval(&self, x: &S) -> (S, S, S) {
        (horner(&self.psi1, x), horner(&self.psi2, x), horner(&self.psi(), x))
    }

    /// `Psi`, `Psi'`, `Psi''` at `x`.
    pub fn psi_jet(&self, x: &S) -> [S; 3] {
        let c = self.psi();
        let d1 = derivative(&c);
        let d2 = derivative(&d1);
        [horner(&c, x), horner(&d1, x), horner(&d2, x)]
    }

    /// The double root `sqrt3 (3 - 4 alpha - 4 gam) / (3 + 12 alpha)`.
    pub fn x_alpha(&self) -> S {
        let i = S::from_i64;
        S::sqrt3() * (i(3) - i(4) * self.alpha.clone() - i(4) * self.gam.clone()) / (i(3) + i(12) * self.alpha.clone())
    }

    /// `8/3 - 3/(2 alpha)`.
    pub fn psi_second_at_x_alpha_closed(&self) -> S {
        S::ratio(8, 3) - S::from_i64(3) / (S::from_i64(2) * self.alpha.clone())
    }

    /// `(16a - 9)(9 - 312a + 656a^2 - 48g + 320ag) / (36a (1 + 4a)^4)`.
    pub fn psi2_at_x_alpha_closed(&self) -> S {
        let i = S::from_i64;
        let a = self.alpha.clone();
        let g = self.gam.clone();
        let num = (i(16) * a.clone() - i(9))
            * (i(9) - i(312) * a.clone() + i(656) * a.square() - i(48) * g.clone() + i(320) * a.clone() * g);
        num / (i(36) * a.clone() * (S::one() + i(4) * a).powi(4))
    }

    /// Leading coefficient of `Psi` and the monic quadratic cofactor
    /// `x^2 + b x + c` with `Psi = lead (x - x_alpha)^2 (x^2 + b x + c)`.
    pub fn factorization(&self) -> (S, [S; 3]) {
        let i = S::from_i64;
        let a = self.alpha.clone();
        let g = self.gam.clone();
        let lead = (i(11) * a.clone() + i(12) * a.square() - i(2) * g.clone()) / (i(48) * a.square());
        let b = -(i(2) * S::sqrt3() * (i(2) - a.clone() + g.clone())) / (i(4) + i(3) * a.clone());
        let c = i(3) * a.clone() / (i(5) * a + i(2) * g);
        (lead, [c, b, S::one()])
    }

    /// Coefficients of `lead (x - x_alpha)^2 (x^2 + b x + c)`.
    pub fn factored_coefficients(&self) -> [S; 5] {
        let (lead, q) = self.factorization();
        let x0 = self.x_alpha();
        let sq = [x0.square(), -(S::from_i64(2) * x0), S::one()];
        let mut out: [S; 5] = std::array::from_fn(|_| S::zero());
        for (i, a) in sq.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] = out[i + j].clone() + lead.clone() * a.clone() * b.clone();
            }
        }
        out
    }

    /// Discriminant of the quadratic cofactor.
    pub fn cofactor_discriminant(&self) -> S {
        let (_, [c, b, _]) = self.factorization();
        b.square() - S::from_i64(4) * c
    }

    /// `36 / (12 - 41 alpha - 20 gam)`.
    pub fn cofactor_discriminant_closed(&self) -> S {
        let i = S::from_i64;
        i(36) / (i(12) - i(41) * self.alpha.clone() - i(20) * self.gam.clone())
    }
}

impl QuarticPsi<f64> {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        let d = alpha * (4.0 * alpha - 3.0);
        if alpha < 0.75 {
            return Err(Error::Domain(format!("alpha = {alpha} < 3/4 makes gam imaginary")));
        }
        Ok(QuarticPsi::new(alpha, d.max(0.0).sqrt()))
    }
}

impl QuarticPsi<QGam> {
    pub fn from_ctx(ctx: &GammaCtx) -> Self {
        QuarticPsi::new(ctx.alpha(), ctx.gam())
    }
}

/// Minimal ring operations shared by scalars and polynomials.
pub trait Ring: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn times(&self, n: i64) -> Self;
}

impl<S: Field> Ring for S {
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn times(&self, n: i64) -> Self {
        self.clone() * S::from_i64(n)
    }
}

impl<C: Field> Ring for Poly<C> {
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn times(&self, n: i64) -> Self {
        self.scale(&C::from_i64(n))
    }
}

/// `f2^4(0) c_i` for `i = 0..4` from `R1..R10` (zero-based slice).
pub fn iq_numerators<T: Ring>(r: &[T; 10]) -> [T; 5] {
    let r = |i: usize| &r[i - 1];
    let r89 = r(8).add(r(9));
    [
        r(1).mul(r(4)).sub(&r(7).mul(r(7))),
        r(2).mul(r(4)).add(&r(1).mul(r(5))).sub(&r(7).mul(&r89)).times(2),
        r(3).mul(r(4)).add(&r(2).mul(r(5)).times(4)).add(&r(1).mul(r(6))).sub(&r89.mul(&r89)).sub(&r(7).mul(r(10)).times(2)),
        r(2).mul(r(6)).add(&r(3).mul(r(5))).sub(&r89.mul(r(10))).times(2),
        r(3).mul(r(6)).sub(&r(10).mul(r(10))),
    ]
}

/// `I_q = c4 q^4 + ... + c0`.
#[derive(Clone, Debug, PartialEq)]
pub struct IqCoefficients<S> {
    pub c: [S; 5],
}

impl<S: Field> IqCoefficients<S> {
    pub fn eval(&self, q: &S) -> S {
        horner(&self.c, q)
    }
}

pub fn iq_coefficients<S: Field>(r: &[S; 10], f2_0: &S) -> Result<IqCoefficients<S>> {
    let inv = f2_0.powi(4).inv().ok_or_else(|| Error::Domain("f2(0) = 0".into()))?;
    Ok(IqCoefficients { c: iq_numerators(r).map(|x| x * inv.clone()) })
}

/// `K(X, Y) >= 0` for `X = E1 - sqrt3 F1`, `Y = sqrt3 E4 + F4`:
/// `xi'^2 <= (8/3) (f1^2 + f2^2 + 2 f12) / (f1^2 f2^2 - f12^2) xi^2`.
pub fn kxy_constraint<S: Field>(p: &ReducedProfile<S>) -> Result<bool> {
    let f1s = p.f.f1.value.square();
    let f2s = p.f.f2.value.square();
    let f12 = p.f.f12.value.clone();
    let den = f1s.clone() * f2s.clone() - f12.square();
    if den.signum() <= 0 {
        return Err(Error::Domain("degenerate f-block: f1^2 f2^2 <= f12^2".into()));
    }
    let rhs = S::ratio(8, 3) * (f1s + f2s + S::from_i64(2) * f12) / den * p.xi.square();
    Ok((rhs - p.xi_prime.square()).signum() >= 0)
}

/// `lim sup f1 xi' / xi <= sqrt(8/3) = 2 sqrt6 / 3`.
pub fn ell_max() -> f64 {
    2.0 * 6f64.sqrt() / 3.0
}

/// `f1'(0) = 4 / (k sqrt6)`.
pub fn f1_prime_at_zero(k: u32) -> f64 {
    4.0 / (k as f64 * 6f64.sqrt())
}

/// `k <= (8/3) alpha`, valid for the `q = 0` plane.
pub fn short_bound(alpha: f64) -> f64 {
    8.0 / 3.0 * alpha
}

/// `(8/(3k) - 4/3)`: the sign of the chained inequality per unit `Psi2(q_alpha)`.
pub fn chained_coefficient(k: u32) -> f64 {
    f1_prime_at_zero(k) * ell_max() - 4.0 / 3.0
}

/// The admissible `alpha` grid `[3/4, alpha_max]`, both endpoints included.
pub fn alpha_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!("grid step {step} must be positive")));
    }
    let (lo, hi) = (0.75, alpha_max());
    let n = ((hi - lo) / step).floor() as usize;
    let mut v: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
    if hi - v[n] > 1e-12 {
        v.push(hi);
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub alpha: f64,
    pub q_alpha: f64,
    pub psi1_at_q_alpha: f64,
    pub psi2_at_q_alpha: f64,
    pub chained_value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainedBound {
    pub ell_max: f64,
    pub f1_prime_at_zero: f64,
    pub coefficient: f64,
    pub max_chained_value: f64,
    /// The largest `k` compatible with the chain.
    pub k_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShortBound {
    pub max: f64,
    pub rules_out_k: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Infeasible,
    NoContradiction,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Infeasible => "infeasible",
            Verdict::NoContradiction => "no contradiction",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub k: u32,
    pub alpha_grid: AlphaGrid,
    pub min_psi2_at_q_alpha: f64,
    pub max_double_root_defect: f64,
    pub chained_bound: ChainedBound,
    pub short_bound: ShortBound,
    pub verdict: Verdict,
    pub grid: Vec<GridPoint>,
}

/// Runs the chain `0 <= Psi1(q) + Psi2(q) f1'(0) ell` at `q = x_alpha` over
/// the admissible `alpha` window.
pub fn verdict(k: u32, step: f64) -> Result<ObstructionReport> {
    if k % 2 == 0 {
        return Err(Error::Domain(format!("k = {k} must be odd")));
    }
    let alphas = alpha_grid(step)?;
    let coefficient = chained_coefficient(k);
    let grid: Vec<GridPoint> = alphas
        .par_iter()
        .map(|&a| {
            let q = QuarticPsi::from_alpha(a).expect("grid starts at 3/4");
            let x = q.x_alpha();
            let (p1, p2, _) = q.eval(&x);
            GridPoint { alpha: a, q_alpha: x, psi1_at_q_alpha: p1, psi2_at_q_alpha: p2, chained_value: coefficient * p2 }
        })
        .collect();
    let min_psi2 = grid.iter().map(|g| g.psi2_at_q_alpha).fold(f64::INFINITY, f64::min);
    let defect = grid
        .iter()
        .map(|g| (g.psi1_at_q_alpha + 4.0 / 3.0 * g.psi2_at_q_alpha).abs())
        .fold(0.0, f64::max);
    let max_chain = grid.iter().map(|g| g.chained_value).fold(f64::NEG_INFINITY, f64::max);
    let infeasible = min_psi2 > 0.0 && max_chain < 0.0;
    let short_max = short_bound(alpha_max());
    Ok(ObstructionReport {
        k,
        alpha_grid: AlphaGrid { start: alphas[0], end: *alphas.last().unwrap(), step, points: alphas.len() },
        min_psi2_at_q_alpha: min_psi2,
        max_double_root_defect: defect,
        chained_bound: ChainedBound {
            ell_max: ell_max(),
            f1_prime_at_zero: f1_prime_at_zero(k),
            coefficient,
            max_chained_value: max_chain,
            k_bound: 4.0 / 6f64.sqrt() * ell_max() * 3.0 / 4.0,
        },
        short_bound: ShortBound { max: short_max, rules_out_k: k as f64 > short_max },
        verdict: if infeasible { Verdict::Infeasible } else { Verdict::NoContradiction },
        grid,
    })
}

/// Values and first derivatives at `t = 0` or `t = L` of the ten metric
/// functions (the roots `f1`, `a1`, ..., not their squares).
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct BoundaryValues {
    pub f1: Jet<f64>,
    pub f2: Jet<f64>,
    pub f12: Jet<f64>,
    pub h1: Jet<f64>,
    pub h2: Jet<f64>,
    pub h12: Jet<f64>,
    pub a1: Jet<f64>,
    pub a2: Jet<f64>,
    pub a12: Jet<f64>,
    pub b12: Jet<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct BoundaryData {
    pub k: u32,
    pub at_zero: BoundaryValues,
    pub at_l: BoundaryValues,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub residual: f64,
}

/// Every smooth-extension condition at both singular orbits.
pub fn smoothness_check(b: &BoundaryData, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut eq = |name: &str, lhs: f64, rhs: f64| {
        let r = (lhs - rhs).abs();
        if !(r <= tol) {
            out.push(Violation { condition: name.to_string(), residual: r });
        }
    };
    let z = &b.at_zero;
    let l = &b.at_l;
    eq("f1(0) = 0", z.f1.value, 0.0);
    eq("f12(0) = 0", z.f12.value, 0.0);
    eq("h1(0) = h2(0)", z.h1.value, z.h2.value);
    eq("h12(0) = 0", z.h12.value, 0.0);
    let a1s = z.a1.value * z.a1.value;
    let a2s = z.a2.value * z.a2.value;
    eq("a12(0) = (sqrt3/2)(a1^2(0) - a2^2(0))", z.a12.value, 3f64.sqrt() / 2.0 * (a1s - a2s));
    eq("b12(0) = 0", z.b12.value, 0.0);
    eq("f1'(0) = 4/(k sqrt6)", z.f1.deriv, f1_prime_at_zero(b.k));
    for (name, j) in [
        ("f12'(0) = 0", &z.f12),
        ("f2'(0) = 0", &z.f2),
        ("h1'(0) = 0", &z.h1),
        ("h2'(0) = 0", &z.h2),
        ("h12'(0) = 0", &z.h12),
        ("a1'(0) = 0", &z.a1),
        ("a2'(0) = 0", &z.a2),
        ("a12'(0) = 0", &z.a12),
        ("b12'(0) = 0", &z.b12),
    ] {
        eq(name, j.deriv, 0.0);
    }
    eq("h2(L) = a2(L)", l.h2.value, l.a2.value);
    eq("h2'(L) = 0", l.h2.deriv, 0.0);
    eq("a2'(L) = 0", l.a2.deriv, 0.0);
    eq("h1(L) = 0", l.h1.value, 0.0);
    eq("a1(L) = 0", l.a1.value, 0.0);
    let mut pos = |name: &str, x: f64| {
        if !(x > 0.0) {
            out.push(Violation { condition: name.to_string(), residual: x });
        }
    };
    pos("h1(0) = h2(0) > 0", z.h2.value);
    pos("h2(L) = a2(L) > 0", l.h2.value);
    if b.k % 2 == 0 || b.k < 3 {
        out.push(Violation { condition: "k odd and at least 3".into(), residual: b.k as f64 });
    }
    out
}

impl BoundaryData {
    /// Boundary data of a reduced metric with `h2 = 1`: on the singular
    /// orbit `a1^2 = alpha`, `a12 = -beta alpha`, `a2^2 = beta^2 alpha + 1`;
    /// on the other end `a1 = h1 = 0` and `a2 = h2 = 1`.
    pub fn from_reduced(beta: f64, k: u32, f2_0: f64) -> Result<Self> {
        let alpha = alpha_of_beta(&beta)?;
        let c = Jet::constant;
        let at_zero = BoundaryValues {
            f1: Jet::new(0.0, f1_prime_at_zero(k)),
            f2: c(f2_0),
            f12: c(0.0),
            h1: c(1.0),
            h2: c(1.0),
            h12: c(0.0),
            a1: c(alpha.sqrt()),
            a2: c((beta * beta * alpha + 1.0).sqrt()),
            a12: c(-beta * alpha),
            b12: c(0.0),
        };
        let at_l = BoundaryValues {
            f1: c(1.0),
            f2: c(1.0),
            f12: c(0.0),
            h1: Jet::new(0.0, -1.0),
            h2: c(1.0),
            h12: c(0.0),
            a1: Jet::new(0.0, -1.0),
            a2: c(1.0),
            a12: c(0.0),
            b12: c(0.0),
        };
        Ok(BoundaryData { k, at_zero, at_l })
    }
}

/// Installs the reduced relations for given `beta`, `a1^2` jet and
/// X-sector data.
pub fn reduce_profile<S: Sqrt3Field>(beta: S, a1_sq: Jet<S>, f: FSector<S>, h1: Jet<S>, k: u32) -> Result<ReducedProfile<S>> {
    let alpha = alpha_of_beta(&beta)?;
    let xi = Jet::new(alpha - a1_sq.value, -a1_sq.deriv);
    ReducedProfile::from_beta(beta, xi, f, h1, k)
}

/// Outcome of the three leading-coefficient identities for one `c_i`.
#[derive(Clone, Debug, Serialize)]
pub struct LeadingCheck {
    pub i: usize,
    pub constant_part_vanishes: bool,
    pub xi_coefficient_matches: bool,
    pub xi_prime_coefficient_matches: bool,
    pub detail: String,
}

impl LeadingCheck {
    pub fn pass(&self) -> bool {
        self.constant_part_vanishes && self.xi_coefficient_matches && self.xi_prime_coefficient_matches
    }
}

/// For each `c_i` built from the coefficient tables modulo `xi^2`:
/// (a) no term free of `xi` and `xi'`;
/// (b) the `xi` term at `f1 = f12 = 0` is `[q^i]Psi1 * f2^4 xi`;
/// (c) the `f1 f1' xi'` terms are `[q^i]Psi2 * f2^4 f1 f1' xi'`.
pub fn leading_coefficients(ctx: &GammaCtx, table: &CoefficientTable) -> Result<Vec<LeadingCheck>> {
    let alpha = ctx.alpha();
    let gam = ctx.gam();
    let r: Vec<Poly<QGam>> = (1..=10)
        .map(|n| table.component(n, &alpha, &gam)?.series(2))
        .collect::<Result<_>>()?;
    let r: [Poly<QGam>; 10] = r.try_into().expect("ten components");
    let nums = iq_numerators(&r).map(|p| p.truncate(Var::Xi, 2));
    let psi = QuarticPsi::from_ctx(ctx);
    let f2_4 = Monomial::var(Var::F2).0.map(|e| e * 4);
    let xi_target = Monomial(f2_4).mul(&Monomial::var(Var::Xi));
    let xip_target = Monomial(f2_4).mul(&"f1*f1p*xip".parse::<Monomial>()?);
    let mut out = Vec::new();
    for (i, p) in nums.iter().enumerate() {
        let constant = p.filter(|m| m.exp(Var::Xi) == 0 && m.exp(Var::XiP) == 0);
        let xi_part = p.filter(|m| {
            m.exp(Var::Xi) == 1 && m.exp(Var::XiP) == 0 && m.exp(Var::F1) == 0 && m.exp(Var::F12) == 0
        });
        let xip_part = p.filter(|m| {
            m.exp(Var::Xi) == 0
                && m.exp(Var::XiP) == 1
                && m.exp(Var::F1) == 1
                && m.exp(Var::F1P) == 1
                && m.exp(Var::F12) == 0
                && m.exp(Var::F12P) == 0
                && m.exp(Var::F2P) == 0
        });
        let want_xi = Poly::term(xi_target, psi.psi1[i].clone());
        let want_xip = Poly::term(xip_target, psi.psi2[i].clone());
        out.push(LeadingCheck {
            i,
            constant_part_vanishes: constant.is_zero(),
            xi_coefficient_matches: xi_part == want_xi,
            xi_prime_coefficient_matches: xip_part == want_xip,
            detail: format!(
                "alpha={}: xi part {} (want {}), xi' part {} (want {})",
                ctx.alpha_rational(),
                xi_part,
                want_xi,
                xip_part,
                want_xip
            ),
        });
    }
    Ok(out)
}

/// Rational sample points `3/4 + j (43/100) / (n - 1)` in the admissible window.
pub fn rational_alpha_samples(n: usize) -> Vec<Rational> {
    let n = n.max(2);
    (0..n)
        .map(|j| {
            Rational::new(3.into(), 4.into())
                + Rational::new((43 * j as i64).into(), (100 * (n as i64 - 1)).into())
        })
        .collect()
}

/// One row of a `beta` or `alpha` scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub parameter: f64,
    pub alpha: f64,
    pub psi2_at_x_alpha: f64,
    pub p_beta: f64,
    pub bound: f64,
}

/// `beta` over the open interval `(-1/sqrt3, sqrt3)`.
pub fn scan_beta(step: f64) -> Result<Vec<ScanRow>> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!("grid step {step} must be positive")));
    }
    let r3 = 3f64.sqrt();
    let (lo, hi) = (-1.0 / r3, r3);
    let n = ((hi - lo) / step).ceil() as usize;
    (1..n)
        .map(|i| lo + i as f64 * step)
        .filter(|b| *b < hi)
        .map(|b| {
            let a = alpha_of_beta(&b)?;
            let q = QuarticPsi::from_alpha(a)?;
            Ok(ScanRow { parameter: b, alpha: a, psi2_at_x_alpha: q.eval(&q.x_alpha()).1, p_beta: p_of_beta(&b)?, bound: short_bound(a) })
        })
        .collect()
}

/// `alpha` over the admissible window, with `beta` on the branch
/// `beta <= 1/sqrt3`.
pub fn scan_alpha(step: f64) -> Result<Vec<ScanRow>> {
    alpha_grid(step)?
        .into_iter()
        .map(|a| {
            let q = QuarticPsi::from_alpha(a)?;
            let beta = (a - q.gam) / (3f64.sqrt() * a);
            Ok(ScanRow { parameter: a, alpha: a, psi2_at_x_alpha: q.eval(&q.x_alpha()).1, p_beta: p_of_beta(&beta)?, bound: short_bound(a) })
        })
        .collect()
}

/// Sign changes of `p(beta)` along a scan, as the midpoints of the
/// bracketing grid cells.
pub fn sign_changes(rows: &[ScanRow]) -> Vec<f64> {
    rows.windows(2)
        .filter(|w| w[0].p_beta.signum() * w[1].p_beta.signum() < 0.0 || w[1].p_beta == 0.0)
        .map(|w| 0.5 * (w[0].parameter + w[1].parameter))
        .collect()
}

/// CSV with columns `parameter, alpha, psi2_at_x_alpha, p_beta, bound`.
pub fn write_scan_csv<W: std::io::Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QSqrt3;

    #[test]
    fn window_and_bounds() {
        let (b1, b2) = beta_window();
        assert!((b1 + 0.121880).abs() < 1e-6);
        assert!((alpha_of_beta(&b1).unwrap() - alpha_max()).abs() < 1e-10);
        assert!((alpha_of_beta(&b2).unwrap() - 0.75).abs() < 1e-15);
        assert!(p_of_beta(&b1).unwrap().abs() < 1e-10);
        assert!(p_of_beta(&0.0).unwrap() > 0.0);
        assert_eq!(short_bound(0.75), 2.0);
        assert!((short_bound(alpha_max()) - 3.158023).abs() < 1e-6);
    }

    #[test]
    fn p_of_beta_forms_agree_exactly() {
        for (n, d) in [(0, 1), (1, 3), (-1, 10), (5, 4), (2, 7)] {
            let b = QSqrt3::from_base(Rational::new(n.into(), d.into()));
            assert_eq!(p_of_beta(&b).unwrap(), p_of_beta_factored(&b).unwrap());
        }
        let b2 = QSqrt3::one() / QSqrt3::sqrt3();
        assert!(p_of_beta(&b2).unwrap().is_zero());
    }

    #[test]
    fn x_alpha_at_rational_gam() {
        let q = QuarticPsi::<QSqrt3>::new(QSqrt3::ratio(3, 4), QSqrt3::zero());
        assert!(q.x_alpha().is_zero());
        let q = QuarticPsi::<QSqrt3>::new(QSqrt3::one(), QSqrt3::one());
        assert_eq!(q.x_alpha(), -QSqrt3::one() / QSqrt3::sqrt3());
        assert_eq!(q.psi_second_at_x_alpha_closed(), QSqrt3::ratio(7, 6));
    }

    #[test]
    fn kxy_edges() {
        let f = FSector::new(Jet::new(0.5, 0.0), Jet::new(1.0, 0.0), Jet::new(0.1, 0.0));
        let p = ReducedProfile::from_beta(0.0, Jet::new(0.3, 0.0), f.clone(), Jet::constant(1.0), 3).unwrap();
        assert!(kxy_constraint(&p).unwrap());
        let p = ReducedProfile::from_beta(0.0, Jet::new(0.0, 0.2), f, Jet::constant(1.0), 3).unwrap();
        assert!(!kxy_constraint(&p).unwrap());
    }

    #[test]
    fn chain_coefficient_sign() {
        assert!((chained_coefficient(3) - (8.0 / 9.0 - 4.0 / 3.0)).abs() < 1e-15);
        assert!(chained_coefficient(1) > 0.0);
        assert!(chained_coefficient(3) < 0.0);
    }
}

