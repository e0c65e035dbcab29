//! The Lie algebra `g = so(2) + g2` inside `so(2) + so(7)`, the inner
//! products `Q0` and `Q`, and the 12-dimensional complement `p` of the
//! principal isotropy algebra `h`.
//!
//! Matrices act on `Im O` with `X e_j = sum_i X_ij e_i`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Field, Sqrt23Field};

pub const P_DIM: usize = 12;
pub const H_DIM: usize = 3;
pub const G_DIM: usize = P_DIM + H_DIM;

/// Basis labels of `p` in the fixed global order.
pub const P_NAMES: [&str; P_DIM] = ["X1", "X2", "Y1", "Y2", "E1", "E2", "E3", "E4", "F1", "F2", "F3", "F4"];

pub mod idx {
    pub const X1: usize = 0;
    pub const X2: usize = 1;
    pub const Y1: usize = 2;
    pub const Y2: usize = 3;
    pub const E1: usize = 4;
    pub const E2: usize = 5;
    pub const E3: usize = 6;
    pub const E4: usize = 7;
    pub const F1: usize = 8;
    pub const F2: usize = 9;
    pub const F3: usize = 10;
    pub const F4: usize = 11;

    pub fn e(i: usize) -> usize {
        E1 + i
    }

    pub fn f(i: usize) -> usize {
        F1 + i
    }
}

/// The 14 coordinates `a, b, x1..x6, y1..y6` of `g2`.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Param<S> {
    pub a: S,
    pub b: S,
    pub x: [S; 6],
    pub y: [S; 6],
}

impl<S: Field> G2Param<S> {
    pub fn zero() -> Self {
        G2Param { a: S::zero(), b: S::zero(), x: std::array::from_fn(|_| S::zero()), y: std::array::from_fn(|_| S::zero()) }
    }

    /// Order `a, b, x1..x6, y1..y6`.
    pub fn from_array(p: [S; 14]) -> Self {
        let mut it = p.into_iter();
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        let x = std::array::from_fn(|_| it.next().unwrap());
        let y = std::array::from_fn(|_| it.next().unwrap());
        G2Param { a, b, x, y }
    }

    /// The `i`-th coordinate direction.
    pub fn coordinate(i: usize) -> Self {
        assert!(i < 14);
        Self::from_array(std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }))
    }

    /// `Q0(X, X)` written out in the coordinates.
    pub fn q0_quadratic(&self) -> S {
        let (a, b) = (self.a.clone(), self.b.clone());
        let x = &self.x;
        let y = &self.y;
        let mut s = a.square() + a * b.clone() + b.square();
        for i in 0..6 {
            s = s + x[i].square() + y[i].square();
        }
        let m = |i: usize| x[i].clone() * y[i].clone();
        s - m(0) + m(1) + m(2) - m(3) - m(4) + m(5)
    }
}

/// The 7x7 skew matrix of a `g2` element.
pub fn g2_matrix<S: Field>(p: &G2Param<S>) -> Mat<S> {
    let z = S::zero;
    let (a, b) = (p.a.clone(), p.b.clone());
    let x = |i: usize| p.x[i - 1].clone();
    let y = |i: usize| p.y[i - 1].clone();
    Mat::from_rows(vec![
        vec![z(), x(1) - y(1), x(2) + y(2), y(5) - x(5), -x(6) - y(6), x(3) + y(3), x(4) - y(4)],
        vec![y(1) - x(1), z(), b.clone(), y(4), y(3), y(6), y(5)],
        vec![-x(2) - y(2), -b.clone(), z(), x(3), x(4), x(5), x(6)],
        vec![x(5) - y(5), -y(4), -x(3), z(), a.clone(), y(2), y(1)],
        vec![x(6) + y(6), -y(3), -x(4), -a.clone(), z(), x(1), x(2)],
        vec![-x(3) - y(3), -y(6), -x(5), -y(2), -x(1), z(), a.clone() + b.clone()],
        vec![y(4) - x(4), -y(5), -x(6), -y(1), -x(2), -a - b, z()],
    ])
}

/// `Q0(X, Y) = -tr(XY)/4`.
pub fn q0<S: Field>(x: &Mat<S>, y: &Mat<S>) -> S {
    -(x.trace_of_product(y)) * S::ratio(1, 4)
}

/// An element `s E12 + X` of `so(2) + g2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GVector<S> {
    pub s: S,
    pub m: Mat<S>,
}

impl<S: Field> GVector<S> {
    pub fn new(s: S, m: Mat<S>) -> Self {
        assert_eq!((m.rows(), m.cols()), (7, 7));
        GVector { s, m }
    }

    pub fn zero() -> Self {
        GVector { s: S::zero(), m: Mat::zeros(7, 7) }
    }

    pub fn g2(m: Mat<S>) -> Self {
        GVector::new(S::zero(), m)
    }

    pub fn scale(&self, c: &S) -> Self {
        GVector { s: self.s.clone() * c.clone(), m: self.m.scale(c) }
    }

    pub fn add(&self, o: &Self) -> Self {
        GVector { s: self.s.clone() + o.s.clone(), m: &self.m + &o.m }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GVector { s: self.s.clone() - o.s.clone(), m: &self.m - &o.m }
    }

    /// `Ad_g` for `g = (e^{i theta}, A)`; the `so(2)` factor is abelian.
    pub fn conjugate(&self, a: &Mat<S>) -> Self {
        GVector { s: self.s.clone(), m: &(a * &self.m) * &a.transpose() }
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.s.close(&o.s, tol) && self.m.approx_eq(&o.m, tol)
    }
}

/// Matrix commutator on the `g2` part; `E12` is central.
pub fn bracket<S: Field>(x: &GVector<S>, y: &GVector<S>) -> GVector<S> {
    GVector { s: S::zero(), m: x.m.commutator(&y.m) }
}

/// `Q = (3k^2/4) s t + Q0`.
pub fn inner_q<S: Field>(x: &GVector<S>, y: &GVector<S>, k: u32) -> S {
    let k2 = S::from_i64(3 * (k as i64) * (k as i64)) * S::ratio(1, 4);
    k2 * x.s.clone() * y.s.clone() + q0(&x.m, &y.m)
}

fn block<S: Field>(a3: [[i64; 3]; 3], b4: [[i64; 4]; 4]) -> Mat<S> {
    Mat::from_fn(7, 7, |i, j| match (i < 3, j < 3) {
        (true, true) => S::from_i64(a3[i][j]),
        (false, false) => S::from_i64(b4[i - 3][j - 3]),
        _ => S::zero(),
    })
}

pub fn u0<S: Field>() -> Mat<S> {
    block([[0, -2, 0], [2, 0, 0], [0, 0, 0]], [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
}

pub fn u1<S: Field>() -> Mat<S> {
    block([[0, 0, 0], [0, 0, 2], [0, -2, 0]], [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
}

pub fn u2<S: Field>() -> Mat<S> {
    block([[0, 0, 2], [0, 0, 0], [-2, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
}

/// `x3 E1 + x4 E2 + x5 E3 + x6 E4`.
pub fn m1<S: Field>(x: [S; 4]) -> Mat<S> {
    let [x3, x4, x5, x6] = x;
    let z = S::zero;
    Mat::from_rows(vec![
        vec![z(), z(), z(), z(), z(), z(), z()],
        vec![z(), z(), z(), x4.clone(), -x3.clone(), -x6.clone(), x5.clone()],
        vec![z(), z(), z(), x3.clone(), x4.clone(), x5.clone(), x6.clone()],
        vec![z(), -x4.clone(), -x3.clone(), z(), z(), z(), z()],
        vec![z(), x3.clone(), -x4.clone(), z(), z(), z(), z()],
        vec![z(), x6.clone(), -x5.clone(), z(), z(), z(), z()],
        vec![z(), -x5, -x6, z(), z(), z(), z()],
    ])
}

/// `sqrt(3) (x3 F1 + x4 F2 + x5 F3 + x6 F4)`; the `1/sqrt 3` is applied by
/// the caller so that this stays rational.
pub fn m2_unscaled<S: Field>(x: [S; 4]) -> Mat<S> {
    let [x3, x4, x5, x6] = x;
    let z = S::zero;
    let two = || S::from_i64(2);
    Mat::from_rows(vec![
        vec![z(), z(), z(), -two() * x5.clone(), -two() * x6.clone(), two() * x3.clone(), two() * x4.clone()],
        vec![z(), z(), z(), -x4.clone(), x3.clone(), x6.clone(), -x5.clone()],
        vec![z(), z(), z(), x3.clone(), x4.clone(), x5.clone(), x6.clone()],
        vec![two() * x5.clone(), x4.clone(), -x3.clone(), z(), z(), z(), z()],
        vec![two() * x6.clone(), -x3.clone(), -x4.clone(), z(), z(), z(), z()],
        vec![-two() * x3.clone(), -x6.clone(), -x5.clone(), z(), z(), z(), z()],
        vec![-two() * x4, x5, -x6, z(), z(), z(), z()],
    ])
}

/// The principal isotropy algebra: lower 4x4 blocks in `a, x1, x2`.
pub fn h_matrix<S: Field>(a: S, x1: S, x2: S) -> Mat<S> {
    let z = S::zero;
    let rows4 = [
        [z(), a.clone(), -x2.clone(), x1.clone()],
        [-a.clone(), z(), x1.clone(), x2.clone()],
        [x2.clone(), -x1.clone(), z(), a.clone()],
        [-x1, -x2, -a, z()],
    ];
    Mat::from_fn(7, 7, |i, j| if i >= 3 && j >= 3 { rows4[i - 3][j - 3].clone() } else { S::zero() })
}

fn unit4<S: Field>(i: usize) -> [S; 4] {
    std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
}

/// Coordinates in `p`, basis order `X1, X2, Y1, Y2, E1..E4, F1..F4`.
#[derive(Clone, Debug, PartialEq)]
pub struct PVector<S> {
    pub c: [S; P_DIM],
}

impl<S: Field> PVector<S> {
    pub fn zero() -> Self {
        PVector { c: std::array::from_fn(|_| S::zero()) }
    }

    pub fn unit(i: usize) -> Self {
        PVector { c: std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }) }
    }

    /// Sparse constructor from `(index, coefficient)` pairs.
    pub fn from_terms(terms: &[(usize, S)]) -> Self {
        let mut v = Self::zero();
        for (i, x) in terms {
            v.c[*i] = v.c[*i].clone() + x.clone();
        }
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        PVector { c: std::array::from_fn(|i| self.c[i].clone() + o.c[i].clone()) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PVector { c: std::array::from_fn(|i| self.c[i].clone() - o.c[i].clone()) }
    }

    pub fn scale(&self, s: &S) -> Self {
        PVector { c: std::array::from_fn(|i| self.c[i].clone() * s.clone()) }
    }

    /// Euclidean dot product, which is `Q` in this orthonormal basis.
    pub fn dot(&self, o: &Self) -> S {
        let mut acc = S::zero();
        for i in 0..P_DIM {
            if !self.c[i].is_zero() && !o.c[i].is_zero() {
                acc = acc + self.c[i].clone() * o.c[i].clone();
            }
        }
        acc
    }

    pub fn to_g(&self) -> GCoords<S> {
        GCoords { c: std::array::from_fn(|i| if i < P_DIM { self.c[i].clone() } else { S::zero() }) }
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if S::EXACT {
            self == o
        } else {
            self.max_abs_diff(o) <= tol
        }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.c.iter().zip(&o.c).map(|(a, b)| a.dist(b)).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Field::is_zero)
    }

    pub fn to_vec(&self) -> Vec<S> {
        self.c.to_vec()
    }

    pub fn from_slice(v: &[S]) -> Self {
        assert_eq!(v.len(), P_DIM);
        PVector { c: std::array::from_fn(|i| v[i].clone()) }
    }
}

/// Coordinates in `g = p + h` with respect to [`GBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct GCoords<S> {
    pub c: [S; G_DIM],
}

impl<S: Field> GCoords<S> {
    pub fn zero() -> Self {
        GCoords { c: std::array::from_fn(|_| S::zero()) }
    }

    pub fn p(&self) -> PVector<S> {
        PVector { c: std::array::from_fn(|i| self.c[i].clone()) }
    }

    pub fn h(&self) -> [S; H_DIM] {
        std::array::from_fn(|i| self.c[P_DIM + i].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        GCoords { c: std::array::from_fn(|i| self.c[i].clone() + o.c[i].clone()) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GCoords { c: std::array::from_fn(|i| self.c[i].clone() - o.c[i].clone()) }
    }

    pub fn scale(&self, s: &S) -> Self {
        GCoords { c: std::array::from_fn(|i| self.c[i].clone() * s.clone()) }
    }

    /// `Q` on `g`; the basis is `Q`-orthonormal.
    pub fn q(&self, o: &Self) -> S {
        let mut acc = S::zero();
        for i in 0..G_DIM {
            if !self.c[i].is_zero() && !o.c[i].is_zero() {
                acc = acc + self.c[i].clone() * o.c[i].clone();
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Field::is_zero)
    }
}

/// A `Q`-orthonormal basis of `g`: the 12 vectors of `p` followed by three
/// vectors spanning `h`.
#[derive(Clone, Debug)]
pub struct GBasis<S> {
    k: u32,
    elems: Vec<GVector<S>>,
}

impl<S: Sqrt23Field> GBasis<S> {
    pub fn new(k: u32) -> Result<Self> {
        if k % 2 == 0 {
            return Err(Error::Domain(format!("k = {k} must be odd")));
        }
        let r3 = S::sqrt3();
        let r6 = S::sqrt6();
        let inv_r6 = S::one() / r6.clone();
        let inv_r3 = S::one() / r3;
        let s_x = S::from_i64(2) / (S::from_i64(k as i64) * r6);
        let mut elems = vec![
            GVector::new(s_x.clone(), u0::<S>().scale(&inv_r6)),
            GVector::new(s_x, u0::<S>().scale(&-inv_r6)),
            GVector::g2(u1::<S>().scale(&inv_r3)),
            GVector::g2(u2::<S>().scale(&inv_r3)),
        ];
        for i in 0..4 {
            elems.push(GVector::g2(m1(unit4(i))));
        }
        for i in 0..4 {
            elems.push(GVector::g2(m2_unscaled(unit4::<S>(i)).scale(&inv_r3)));
        }
        let (o, z) = (S::one, S::zero);
        elems.push(GVector::g2(h_matrix(o(), z(), z())));
        elems.push(GVector::g2(h_matrix(z(), o(), z())));
        elems.push(GVector::g2(h_matrix(z(), z(), o())));
        Ok(GBasis { k, elems })
    }
}

impl<S: Field> GBasis<S> {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn elem(&self, i: usize) -> &GVector<S> {
        &self.elems[i]
    }

    /// The `i`-th basis vector of `p`.
    pub fn p_vector(&self, i: usize) -> &GVector<S> {
        assert!(i < P_DIM);
        &self.elems[i]
    }

    pub fn q(&self, x: &GVector<S>, y: &GVector<S>) -> S {
        inner_q(x, y, self.k)
    }

    pub fn expand(&self, c: &GCoords<S>) -> GVector<S> {
        let mut out = GVector::zero();
        for (x, b) in c.c.iter().zip(&self.elems) {
            if !x.is_zero() {
                out = out.add(&b.scale(x));
            }
        }
        out
    }

    pub fn expand_p(&self, v: &PVector<S>) -> GVector<S> {
        self.expand(&v.to_g())
    }

    /// Coordinates of `x` in `g`. Meaningful when `x` lies in `so(2) + g2`;
    /// see [`GBasis::membership_residual`].
    pub fn coords(&self, x: &GVector<S>) -> GCoords<S> {
        GCoords { c: std::array::from_fn(|i| self.q(x, &self.elems[i])) }
    }

    /// `Q`-orthogonal projection onto `p`.
    pub fn project_p(&self, x: &GVector<S>) -> PVector<S> {
        PVector { c: std::array::from_fn(|i| self.q(x, &self.elems[i])) }
    }

    /// Distance between `x` and the span of the basis.
    pub fn membership_residual(&self, x: &GVector<S>) -> f64 {
        let back = self.expand(&self.coords(x));
        back.s.dist(&x.s).max(back.m.max_abs_diff(&x.m))
    }

    /// Gram matrix of the basis under `Q`.
    pub fn gram(&self) -> Mat<S> {
        Mat::from_fn(G_DIM, G_DIM, |i, j| self.q(&self.elems[i], &self.elems[j]))
    }

    /// Sparse structure constants computed from matrix commutators.
    pub fn structure_constants(&self) -> StructureConstants<S> {
        let mut table = vec![Vec::new(); G_DIM * G_DIM];
        for i in 0..G_DIM {
            for j in 0..G_DIM {
                let c = self.coords(&bracket(&self.elems[i], &self.elems[j]));
                table[i * G_DIM + j] =
                    c.c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>();
            }
        }
        StructureConstants { table }
    }

    /// `Ad_A` restricted to `p` and projected back, as a 12x12 matrix whose
    /// columns are the images of the basis vectors.
    pub fn adjoint_on_p(&self, a: &Mat<S>) -> Mat<S> {
        let mut out = Mat::zeros(P_DIM, P_DIM);
        for j in 0..P_DIM {
            let img = self.project_p(&self.elems[j].conjugate(a));
            out.set_column(j, &img.c);
        }
        out
    }

    /// Text dump of the `p` basis as 7x7 matrices plus `so(2)` coefficients.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, name) in P_NAMES.iter().enumerate() {
            let _ = writeln!(s, "{name}: s = {}", self.elems[i].s);
            let _ = write!(s, "{}", self.elems[i].m);
        }
        s
    }
}

/// `[b_i, b_j] = sum_k c_ij^k b_k`, stored sparsely.
#[derive(Clone, Debug)]
pub struct StructureConstants<S> {
    table: Vec<Vec<(usize, S)>>,
}

impl<S: Field> StructureConstants<S> {
    pub fn get(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * G_DIM + j]
    }

    pub fn bracket(&self, x: &GCoords<S>, y: &GCoords<S>) -> GCoords<S> {
        let mut out = GCoords::<S>::zero();
        for i in 0..G_DIM {
            if x.c[i].is_zero() {
                continue;
            }
            for j in 0..G_DIM {
                if y.c[j].is_zero() {
                    continue;
                }
                let entries = self.get(i, j);
                if entries.is_empty() {
                    continue;
                }
                let xy = x.c[i].clone() * y.c[j].clone();
                for (k, c) in entries {
                    out.c[*k] = out.c[*k].clone() + xy.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }
}

/// `e^{i theta}` as `(cos, sin)` together with a 7x7 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<S> {
    pub rot: (S, S),
    pub a: Mat<S>,
}

impl<S: Field> GroupElement<S> {
    pub fn new(rot: (S, S), a: Mat<S>) -> Self {
        GroupElement { rot, a }
    }

    pub fn identity() -> Self {
        GroupElement { rot: (S::one(), S::zero()), a: Mat::identity(7) }
    }

    pub fn compose(&self, o: &Self) -> Self {
        let (c1, s1) = self.rot.clone();
        let (c2, s2) = o.rot.clone();
        let rot = (c1.clone() * c2.clone() - s1.clone() * s2.clone(), c1 * s2 + s1 * c2);
        GroupElement { rot, a: &self.a * &o.a }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// `(-1, I7)`.
    pub fn minus_identity() -> Self {
        GroupElement { rot: (-S::one(), S::zero()), a: Mat::identity(7) }
    }
}

/// The two Weyl group generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylElement {
    Minus,
    Plus,
}

/// `+1` for `k = 1 mod 4`, `-1` for `k = 3 mod 4`.
pub fn weyl_epsilon(k: u32) -> i64 {
    if k % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Representative group elements of `w-` and `w+`.
pub fn weyl_representative<S: Field>(w: WeylElement, k: u32) -> GroupElement<S> {
    match w {
        WeylElement::Minus => {
            let e = weyl_epsilon(k);
            let mut a = Mat::zeros(7, 7);
            a[(0, 1)] = S::from_i64(e);
            a[(1, 0)] = S::from_i64(-e);
            a[(2, 2)] = S::one();
            a[(3, 6)] = S::from_i64(-e);
            a[(4, 4)] = S::one();
            a[(5, 5)] = S::one();
            a[(6, 3)] = S::from_i64(e);
            GroupElement::new((S::zero(), S::one()), a)
        }
        WeylElement::Plus => {
            let d: Vec<S> = [1, -1, -1, 1, 1, -1, -1].iter().map(|&x| S::from_i64(x)).collect();
            GroupElement::new((S::one(), S::zero()), Mat::diag(&d))
        }
    }
}

/// `Ad_w` on `p` in the 12-basis.
pub fn adjoint_weyl<S: Sqrt23Field>(w: WeylElement, k: u32) -> Result<Mat<S>> {
    let basis = GBasis::<S>::new(k)?;
    Ok(basis.adjoint_on_p(&weyl_representative::<S>(w, k).a))
}

/// Elements of the principal isotropy group used by [`ad_h_action`].
#[derive(Clone, Debug)]
pub enum HElement<S> {
    /// `(alpha, beta)` in SU(2) with `alpha = a1 + i a2`, `beta = b1 + i b2`.
    Su2 { alpha: (S, S), beta: (S, S) },
    Tau,
}

impl<S: Field> HElement<S> {
    pub fn group_element(&self, tol: f64) -> Result<GroupElement<S>> {
        match self {
            HElement::Su2 { alpha: (a1, a2), beta: (b1, b2) } => {
                let n = a1.square() + a2.square() + b1.square() + b2.square();
                if !n.close(&S::one(), tol) {
                    return Err(Error::Domain(format!("malformed SU(2) element: |alpha|^2 + |beta|^2 = {n}")));
                }
                let h1 = [[a1.clone(), b1.clone()], [-b1.clone(), a1.clone()]];
                let h2 = [[-b2.clone(), a2.clone()], [a2.clone(), b2.clone()]];
                let blk = |i: usize, j: usize| -> S {
                    match (i < 2, j < 2) {
                        (true, true) => h1[i][j].clone(),
                        (true, false) => -h2[i][j - 2].clone(),
                        (false, true) => h2[i - 2][j].clone(),
                        (false, false) => h1[i - 2][j - 2].clone(),
                    }
                };
                let a = Mat::from_fn(7, 7, |i, j| match (i < 3, j < 3) {
                    (true, true) => {
                        if i == j {
                            S::one()
                        } else {
                            S::zero()
                        }
                    }
                    (false, false) => blk(i - 3, j - 3),
                    _ => S::zero(),
                });
                Ok(GroupElement::new((S::one(), S::zero()), a))
            }
            HElement::Tau => {
                let d: Vec<S> = [-1, -1, 1, -1, 1, 1, -1].iter().map(|&x| S::from_i64(x)).collect();
                Ok(GroupElement::new((-S::one(), S::zero()), Mat::diag(&d)))
            }
        }
    }
}

/// `Ad_h V` for `h` in the principal isotropy group.
pub fn ad_h_action<S: Field>(basis: &GBasis<S>, h: &HElement<S>, v: &PVector<S>, tol: f64) -> Result<PVector<S>> {
    let g = h.group_element(tol)?;
    Ok(basis.project_p(&basis.expand_p(v).conjugate(&g.a)))
}
