//! Number backends.
//!
//! Every algebraic routine in the crate is generic over [`Field`]. Two
//! families of backends exist: plain `f64`, and exact arithmetic built from
//! [`Rational`] by adjoining square roots ([`Ext`]) or the obstruction
//! constant `gam` ([`QGam`]).

use std::fmt::{self, Debug, Display};
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Rational = BigRational;

pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when equality is decided exactly.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Exact sign for exact backends; `f64::signum` semantics with 0 for 0.
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    fn inv(&self) -> Option<Self>;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Equality for exact backends, relative closeness for floats.
    fn close(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let a = self.to_f64();
            let b = other.to_f64();
            (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
        }
    }

    /// `|self - other|` as a float, used for residual reporting.
    fn dist(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).to_f64().abs()
    }
}

/// Fields containing `sqrt(3)`.
pub trait Sqrt3Field: Field {
    fn sqrt3() -> Self;
}

/// Fields containing `sqrt(2)` and `sqrt(3)`.
pub trait Sqrt23Field: Sqrt3Field {
    fn sqrt2() -> Self;

    fn sqrt6() -> Self {
        Self::sqrt2() * Self::sqrt3()
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn signum(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl Sqrt3Field for f64 {
    fn sqrt3() -> Self {
        3f64.sqrt()
    }
}

impl Sqrt23Field for f64 {
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn sqrt6() -> Self {
        6f64.sqrt()
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn ratio(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// A positive squarefree integer adjoined as a square root.
pub trait Radicand: Send + Sync + 'static {
    const VALUE: i64;
    const NAME: &'static str;
}

#[derive(Debug)]
pub enum Two {}
#[derive(Debug)]
pub enum Three {}

impl Radicand for Two {
    const VALUE: i64 = 2;
    const NAME: &'static str = "sqrt2";
}
impl Radicand for Three {
    const VALUE: i64 = 3;
    const NAME: &'static str = "sqrt3";
}

/// `re + im * sqrt(R)` over the base field `F`.
pub struct Ext<F, R> {
    pub re: F,
    pub im: F,
    _r: PhantomData<fn() -> R>,
}

/// Q(sqrt 2).
pub type QSqrt2 = Ext<Rational, Two>;
/// Q(sqrt 3).
pub type QSqrt3 = Ext<Rational, Three>;
/// Q(sqrt 2, sqrt 3), written as `a + b sqrt 3` with `a, b` in Q(sqrt 2).
pub type Q23 = Ext<QSqrt2, Three>;

impl<F: Field, R: Radicand> Ext<F, R> {
    pub fn new(re: F, im: F) -> Self {
        Ext { re, im, _r: PhantomData }
    }

    pub fn from_base(re: F) -> Self {
        Ext::new(re, F::zero())
    }

    pub fn radical() -> Self {
        Ext::new(F::zero(), F::one())
    }

    fn radicand() -> F {
        F::from_i64(R::VALUE)
    }

    pub fn conj(&self) -> Self {
        Ext::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 - R im^2`, the field norm down to `F`.
    pub fn norm(&self) -> F {
        self.re.square() - Self::radicand() * self.im.square()
    }
}

impl<F: Clone, R> Clone for Ext<F, R> {
    fn clone(&self) -> Self {
        Ext { re: self.re.clone(), im: self.im.clone(), _r: PhantomData }
    }
}

impl<F: PartialEq, R> PartialEq for Ext<F, R> {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl<F: Debug, R: Radicand> Debug for Ext<F, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}*{})", self.re, self.im, R::NAME)
    }
}

impl<F: Field, R: Radicand> Display for Ext<F, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})*{}", self.im, R::NAME),
            (false, false) => write!(f, "{} + ({})*{}", self.re, self.im, R::NAME),
        }
    }
}

impl<F: Field, R: Radicand> Add for Ext<F, R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Ext::new(self.re + o.re, self.im + o.im)
    }
}

impl<F: Field, R: Radicand> Sub for Ext<F, R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Ext::new(self.re - o.re, self.im - o.im)
    }
}

impl<F: Field, R: Radicand> Neg for Ext<F, R> {
    type Output = Self;
    fn neg(self) -> Self {
        Ext::new(-self.re, -self.im)
    }
}

impl<F: Field, R: Radicand> Mul for Ext<F, R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Ext::from_base(self.re * o.re);
        }
        let re = self.re.clone() * o.re.clone() + Self::radicand() * self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        Ext::new(re, im)
    }
}

impl<F: Field, R: Radicand> Div for Ext<F, R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl<F: Field, R: Radicand> Field for Ext<F, R> {
    const EXACT: bool = F::EXACT;

    fn zero() -> Self {
        Ext::from_base(F::zero())
    }
    fn one() -> Self {
        Ext::from_base(F::one())
    }
    fn from_i64(n: i64) -> Self {
        Ext::from_base(F::from_i64(n))
    }
    fn ratio(n: i64, d: i64) -> Self {
        Ext::from_base(F::ratio(n, d))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn signum(&self) -> i32 {
        quad_sign(&self.re, &self.im, &Self::radicand())
    }
    fn to_f64(&self) -> f64 {
        self.re.to_f64() + self.im.to_f64() * (R::VALUE as f64).sqrt()
    }
    fn inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.inv().map(Ext::from_base);
        }
        let n = self.norm().inv()?;
        Some(Ext::new(self.re.clone() * n.clone(), -self.im.clone() * n))
    }
}

/// Sign of `a + b sqrt(r)` with `r > 0`, decided exactly in the base field.
fn quad_sign<F: Field>(a: &F, b: &F, r: &F) -> i32 {
    let sa = a.signum();
    let sb = b.signum();
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: the larger magnitude wins
    let d = (a.square() - r.clone() * b.square()).signum();
    if d > 0 {
        sa
    } else if d < 0 {
        sb
    } else {
        0
    }
}

impl Sqrt3Field for QSqrt3 {
    fn sqrt3() -> Self {
        Ext::radical()
    }
}

impl Sqrt3Field for Q23 {
    fn sqrt3() -> Self {
        Ext::radical()
    }
}

impl Sqrt23Field for Q23 {
    fn sqrt2() -> Self {
        Ext::from_base(QSqrt2::radical())
    }
}

impl From<Rational> for Q23 {
    fn from(r: Rational) -> Self {
        Ext::from_base(Ext::from_base(r))
    }
}

impl From<Rational> for QSqrt3 {
    fn from(r: Rational) -> Self {
        Ext::from_base(r)
    }
}

/// `a + b gam` with `a, b` in Q(sqrt 3) and `gam^2 = d` for a rational `d`
/// that is not a square in Q(sqrt 3).
///
/// Elements with `b = 0` do not need to know `d`; it is carried by any
/// element that actually involves `gam`. Build values through [`GammaCtx`].
#[derive(Clone, Debug)]
pub struct QGam {
    pub a: QSqrt3,
    pub b: QSqrt3,
    d: Option<Rational>,
}

impl QGam {
    pub fn from_sqrt3(a: QSqrt3) -> Self {
        QGam { a, b: QSqrt3::zero(), d: None }
    }

    pub fn from_rational(r: Rational) -> Self {
        QGam::from_sqrt3(QSqrt3::from(r))
    }

    fn join(&self, o: &QGam) -> Option<Rational> {
        match (&self.d, &o.d) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixing elements of different gam-extensions");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn d_sqrt3(&self) -> QSqrt3 {
        QSqrt3::from(self.d.clone().unwrap_or_else(<Rational as Field>::zero))
    }
}

impl PartialEq for QGam {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Display for QGam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*gam", self.b)
        } else {
            write!(f, "{} + ({})*gam", self.a, self.b)
        }
    }
}

impl Add for QGam {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.join(&o);
        QGam { a: self.a + o.a, b: self.b + o.b, d }
    }
}

impl Sub for QGam {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = self.join(&o);
        QGam { a: self.a - o.a, b: self.b - o.b, d }
    }
}

impl Neg for QGam {
    type Output = Self;
    fn neg(self) -> Self {
        QGam { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QGam {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.join(&o);
        if self.b.is_zero() && o.b.is_zero() {
            return QGam { a: self.a * o.a, b: QSqrt3::zero(), d };
        }
        let dd = QSqrt3::from(d.clone().expect("gam term without its radicand"));
        let a = self.a.clone() * o.a.clone() + dd * self.b.clone() * o.b.clone();
        let b = self.a * o.b + self.b * o.a;
        QGam { a, b, d }
    }
}

impl Div for QGam {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl Field for QGam {
    const EXACT: bool = true;

    fn zero() -> Self {
        QGam::from_sqrt3(QSqrt3::zero())
    }
    fn one() -> Self {
        QGam::from_sqrt3(QSqrt3::one())
    }
    fn from_i64(n: i64) -> Self {
        QGam::from_sqrt3(QSqrt3::from_i64(n))
    }
    fn ratio(n: i64, d: i64) -> Self {
        QGam::from_sqrt3(QSqrt3::ratio(n, d))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn signum(&self) -> i32 {
        quad_sign(&self.a, &self.b, &self.d_sqrt3())
    }
    fn to_f64(&self) -> f64 {
        let g = self.d.as_ref().map(|d| Field::to_f64(d).sqrt()).unwrap_or(0.0);
        self.a.to_f64() + self.b.to_f64() * g
    }
    fn inv(&self) -> Option<Self> {
        if self.b.is_zero() {
            return self.a.inv().map(QGam::from_sqrt3);
        }
        let n = self.a.square() - self.d_sqrt3() * self.b.square();
        let n = n.inv()?;
        Some(QGam { a: self.a.clone() * n.clone(), b: -self.b.clone() * n, d: self.d.clone() })
    }
}

impl Sqrt3Field for QGam {
    fn sqrt3() -> Self {
        QGam::from_sqrt3(QSqrt3::radical())
    }
}

/// The field Q(sqrt 3)(gam) attached to a rational `alpha >= 3/4`, where
/// `gam = sqrt(alpha (4 alpha - 3)) >= 0`.
///
/// When `gam` already lies in Q(sqrt 3) it is stored there, so that equality
/// of [`QGam`] values stays a coefficient comparison.
#[derive(Clone, Debug)]
pub struct GammaCtx {
    alpha: Rational,
    gam: QGam,
}

impl GammaCtx {
    pub fn new(alpha: Rational) -> Result<Self> {
        let d = alpha.clone() * (Rational::from_i64(4) * alpha.clone() - Rational::from_i64(3));
        if d.is_negative() {
            return Err(Error::Domain(format!("alpha = {alpha} < 3/4 makes gam imaginary")));
        }
        let gam = if let Some(r) = rational_sqrt(&d) {
            QGam::from_rational(r)
        } else if let Some(r) = rational_sqrt(&(d.clone() / Rational::from_i64(3))) {
            QGam::from_sqrt3(QSqrt3::new(<Rational as Field>::zero(), r))
        } else {
            QGam { a: QSqrt3::zero(), b: QSqrt3::one(), d: Some(d) }
        };
        Ok(GammaCtx { alpha, gam })
    }

    pub fn alpha(&self) -> QGam {
        QGam::from_rational(self.alpha.clone())
    }

    pub fn alpha_rational(&self) -> &Rational {
        &self.alpha
    }

    pub fn gam(&self) -> QGam {
        self.gam.clone()
    }
}

/// Exact or floating evaluation, chosen per computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumberMode {
    Float,
    Exact,
}

impl std::str::FromStr for NumberMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(NumberMode::Float),
            "exact" => Ok(NumberMode::Exact),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (expected float or exact)"))),
        }
    }
}

impl Display for NumberMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumberMode::Float => "float",
            NumberMode::Exact => "exact",
        })
    }
}

/// Conversion of exact rationals into any backend.
pub trait FromRational: Field {
    fn from_rational(r: &Rational) -> Self;
}

impl FromRational for f64 {
    fn from_rational(r: &Rational) -> Self {
        Field::to_f64(r)
    }
}

impl FromRational for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl<F: FromRational, R: Radicand> FromRational for Ext<F, R> {
    fn from_rational(r: &Rational) -> Self {
        Ext::from_base(F::from_rational(r))
    }
}

impl FromRational for QGam {
    fn from_rational(r: &Rational) -> Self {
        QGam::from_rational(r.clone())
    }
}
