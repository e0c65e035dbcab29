//! Octonions over an arbitrary [`Field`].
//!
//! The multiplication table lives in `data/octonion_table.txt` and is parsed
//! once on first use.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Field;

const TABLE_TEXT: &str = include_str!("../data/octonion_table.txt");

/// `(sign, index)` with `e_i e_j = sign * e_index`.
pub type TableEntry = (i8, usize);

/// Oriented triples `(a, b, c)` with `e_a e_b = e_c`.
pub const ORIENTED_TRIPLES: [[usize; 3]; 7] =
    [[1, 2, 3], [1, 4, 5], [6, 1, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [5, 3, 6]];

/// Parses an 8x8 signed-index table such as the bundled data file.
pub fn parse_table(text: &str) -> Result<[[TableEntry; 8]; 8]> {
    let mut table = [[(1i8, 0usize); 8]; 8];
    let mut row = 0;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if row == 8 {
            return Err(Error::Parse("more than 8 table rows".into()));
        }
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != 8 {
            return Err(Error::Parse(format!("table row {row} has {} entries", cells.len())));
        }
        for (col, cell) in cells.iter().enumerate() {
            let (sign, digits) = match cell.as_bytes().first() {
                Some(b'+') => (1, &cell[1..]),
                Some(b'-') => (-1, &cell[1..]),
                _ => return Err(Error::Parse(format!("table entry {cell:?} lacks a sign"))),
            };
            let k: usize = digits.parse().map_err(|_| Error::Parse(format!("bad table entry {cell:?}")))?;
            if k > 7 {
                return Err(Error::Parse(format!("table index {k} out of range")));
            }
            table[row][col] = (sign, k);
        }
        row += 1;
    }
    if row != 8 {
        return Err(Error::Parse(format!("expected 8 table rows, found {row}")));
    }
    Ok(table)
}

/// The bundled multiplication table.
pub fn table() -> &'static [[TableEntry; 8]; 8] {
    static TABLE: OnceLock<[[TableEntry; 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(TABLE_TEXT).expect("bundled octonion table is well formed"))
}

/// The bundled table as text.
pub fn table_text() -> &'static str {
    TABLE_TEXT
}

/// Hex SHA-256 of the bundled table file, recorded in reports.
pub fn table_hash() -> String {
    let digest = Sha256::digest(TABLE_TEXT.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Table built directly from [`ORIENTED_TRIPLES`].
pub fn table_from_triples() -> [[TableEntry; 8]; 8] {
    let mut t = [[(1i8, 0usize); 8]; 8];
    for i in 0..8 {
        t[0][i] = (1, i);
        t[i][0] = (1, i);
    }
    for (i, row) in t.iter_mut().enumerate().skip(1) {
        row[i] = (-1, 0);
    }
    for [a, b, c] in ORIENTED_TRIPLES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            t[x][y] = (1, z);
            t[y][x] = (-1, z);
        }
    }
    t
}

#[derive(Clone, PartialEq)]
pub struct Octonion<S> {
    pub c: [S; 8],
}

impl<S: Field> Octonion<S> {
    pub fn new(c: [S; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion { c: std::array::from_fn(|_| S::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// The unit `e_i`.
    pub fn basis(i: usize) -> Self {
        Octonion { c: std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }) }
    }

    pub fn real(s: S) -> Self {
        let mut o = Self::zero();
        o.c[0] = s;
        o
    }

    /// `x0 + sum x_i e_i` from the real part and the 7 imaginary coordinates.
    pub fn from_parts(re: S, im: &[S]) -> Self {
        assert_eq!(im.len(), 7);
        let mut o = Self::real(re);
        for (k, x) in im.iter().enumerate() {
            o.c[k + 1] = x.clone();
        }
        o
    }

    pub fn from_i64(c: [i64; 8]) -> Self {
        Octonion { c: c.map(S::from_i64) }
    }

    pub fn re(&self) -> S {
        self.c[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut o = self.clone();
        o.c[0] = S::zero();
        o
    }

    /// Imaginary coordinates `(x1, .., x7)`.
    pub fn im_coords(&self) -> Vec<S> {
        self.c[1..].to_vec()
    }

    pub fn conj(&self) -> Self {
        let mut o = -self.clone();
        o.c[0] = self.c[0].clone();
        o
    }

    pub fn norm_sq(&self) -> S {
        self.c.iter().fold(S::zero(), |acc, x| acc + x.square())
    }

    /// Euclidean inner product of coefficient vectors.
    pub fn dot(&self, other: &Self) -> S {
        self.c.iter().zip(&other.c).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() * s.clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Field::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = table();
        let mut out = Self::zero();
        for i in 0..8 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if other.c[j].is_zero() {
                    continue;
                }
                let (sign, k) = t[i][j];
                let p = self.c[i].clone() * other.c[j].clone();
                out.c[k] = if sign > 0 { out.c[k].clone() + p } else { out.c[k].clone() - p };
            }
        }
        out
    }

    /// `conj(v) / |v|^2`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        let ninv = n.inv().ok_or_else(|| Error::NonInvertible("octonion with zero norm".into()))?;
        Ok(self.conj().scale(&ninv))
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn power(&self, m: i64) -> Result<Self> {
        let base = if m < 0 { self.inv()? } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        // a single octonion generates an associative subalgebra
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Largest coefficient magnitude, as a float.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c.iter().zip(&other.c).map(|(a, b)| a.dist(b)).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if S::EXACT {
            self == other
        } else {
            self.max_abs_diff(other) <= tol
        }
    }

    pub fn to_f64(&self) -> Octonion<f64> {
        Octonion { c: std::array::from_fn(|i| self.c[i].to_f64()) }
    }
}

impl Octonion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

/// Applies a 7x7 matrix to the imaginary part, fixing `e_0`.
/// Columns follow `X e_j = sum_i X_ij e_i`.
pub fn apply_im<S: Field>(m: &Mat<S>, v: &Octonion<S>) -> Octonion<S> {
    assert_eq!((m.rows(), m.cols()), (7, 7));
    let im = m.mul_vec(&v.im_coords());
    Octonion::from_parts(v.re(), &im)
}

/// Applies a 7x7 matrix as a derivation: `e_0` goes to zero.
pub fn apply_derivation<S: Field>(m: &Mat<S>, v: &Octonion<S>) -> Octonion<S> {
    assert_eq!((m.rows(), m.cols()), (7, 7));
    let im = m.mul_vec(&v.im_coords());
    Octonion::from_parts(S::zero(), &im)
}

/// `X(uv) - (Xu)v - u(Xv)`.
pub fn derivation_residual<S: Field>(x: &Mat<S>, u: &Octonion<S>, v: &Octonion<S>) -> Octonion<S> {
    apply_derivation(x, &u.mul(v)) - apply_derivation(x, u).mul(v) - u.mul(&apply_derivation(x, v))
}

/// `g(uv) - g(u) g(v)`.
pub fn automorphism_residual<S: Field>(g: &Mat<S>, u: &Octonion<S>, v: &Octonion<S>) -> Octonion<S> {
    apply_im(g, &u.mul(v)) - apply_im(g, u).mul(&apply_im(g, v))
}

/// Checks `g` on all 49 products of imaginary units, which determines the
/// automorphism property by bilinearity. Returns the largest residual.
pub fn automorphism_defect<S: Field>(g: &Mat<S>) -> f64 {
    let mut worst = 0.0f64;
    for i in 1..8 {
        for j in 1..8 {
            let r = automorphism_residual(g, &Octonion::basis(i), &Octonion::basis(j));
            worst = worst.max(r.max_abs());
        }
    }
    worst
}

/// Exact check for exact backends; `tol` bound on the defect for floats.
pub fn is_automorphism<S: Field>(g: &Mat<S>, tol: f64) -> bool {
    if (g.rows(), g.cols()) != (7, 7) {
        return false;
    }
    let d = automorphism_defect(g);
    if S::EXACT {
        d == 0.0 && (1..8).all(|i| (1..8).all(|j| automorphism_residual(g, &Octonion::basis(i), &Octonion::basis(j)).is_zero()))
    } else {
        d <= tol
    }
}

/// Same check on the derivation identity over all pairs of units.
pub fn derivation_defect<S: Field>(x: &Mat<S>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            let r = derivation_residual(x, &Octonion::basis(i), &Octonion::basis(j));
            worst = worst.max(r.max_abs());
        }
    }
    worst
}

impl<S: Field> Add for Octonion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() + o.c[i].clone()) }
    }
}

impl<S: Field> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() - o.c[i].clone()) }
    }
}

impl<S: Field> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion { c: self.c.map(|x| -x) }
    }
}

impl<S: Field> Mul for &Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, o: Self) -> Octonion<S> {
        Octonion::mul(self, o)
    }
}

impl<S: Field> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion(")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type O = Octonion<Rational>;

    #[test]
    fn bundled_table_matches_triples() {
        assert_eq!(*table(), table_from_triples());
    }

    #[test]
    fn stated_products() {
        let e = |i| O::basis(i);
        assert_eq!(e(1).mul(&e(2)), e(3));
        assert_eq!(e(1).mul(&e(4)), e(5));
        assert_eq!(e(1).mul(&e(7)), e(6));
        assert_eq!(e(4).mul(&e(5)), e(1));
        assert_eq!(e(3).mul(&e(3)), -O::one());
    }

    #[test]
    fn inverse_of_three_plus_four_e5() {
        let v = O::from_i64([3, 0, 0, 0, 0, 4, 0, 0]);
        let inv = v.inv().unwrap();
        let expect = O::from_i64([3, 0, 0, 0, 0, -4, 0, 0]).scale(&Rational::ratio(1, 25));
        assert_eq!(inv, expect);
        assert_eq!(v.mul(&inv), O::one());
        assert_eq!(O::zero().inv(), Err(Error::NonInvertible("octonion with zero norm".into())));
        assert_eq!(O::one().inv().unwrap(), O::one());
    }

    #[test]
    fn powers() {
        assert_eq!(O::basis(3).power(2).unwrap(), -O::one());
        let v = O::from_i64([1, 2, -1, 0, 3, 0, 1, 1]);
        assert_eq!(v.power(1).unwrap(), v);
        assert_eq!(v.power(-1).unwrap(), v.inv().unwrap());
        assert!(O::zero().power(-2).is_err());
        assert_eq!(O::zero().power(0).unwrap(), O::one());
    }

    #[test]
    fn de_moivre_in_e0_e3_plane() {
        let th = 0.7f64;
        let z = Octonion::<f64>::from_parts(th.cos(), &[0.0, 0.0, th.sin(), 0.0, 0.0, 0.0, 0.0]);
        let p = z.power(5).unwrap();
        let expect = Octonion::<f64>::from_parts((5.0 * th).cos(), &[0.0, 0.0, (5.0 * th).sin(), 0.0, 0.0, 0.0, 0.0]);
        assert!(p.max_abs_diff(&expect) < 1e-14);
        let mut rep = Octonion::<f64>::one();
        for _ in 0..5 {
            rep = rep.mul(&z);
        }
        assert!(p.max_abs_diff(&rep) < 1e-14);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_table("+0 +1").is_err());
        assert!(parse_table(&"1 2 3 4 5 6 7 8\n".repeat(8)).is_err());
        assert!(parse_table(&"+9 +1 +2 +3 +4 +5 +6 +7\n".repeat(8)).is_err());
    }

    #[test]
    fn docs_table_agrees_with_data() {
        let md = include_str!("../../../docs/octonion_table.md");
        let t = table();
        let rows: Vec<&str> = md.lines().filter(|l| l.starts_with("| **e")).collect();
        assert_eq!(rows.len(), 8);
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split('|').map(str::trim).filter(|c| !c.is_empty()).skip(1).collect();
            for (j, cell) in cells.iter().enumerate() {
                let (s, k) = t[i][j];
                let expect = format!("{}e{k}", if s < 0 { "-" } else { "" });
                assert_eq!(*cell, expect, "row {i} col {j}");
            }
        }
    }
}
