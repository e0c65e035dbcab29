//! Sparse multivariate polynomials in the eight profile variables
//! `xi, xi', f1, f1', f2, f2', f12, f12'`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

pub const NVARS: usize = 8;

/// Variable names in exponent-vector order.
pub const VAR_NAMES: [&str; NVARS] = ["xi", "xip", "f1", "f1p", "f2", "f2p", "f12", "f12p"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    Xi,
    XiP,
    F1,
    F1P,
    F2,
    F2P,
    F12,
    F12P,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Xi, Var::XiP, Var::F1, Var::F1P, Var::F2, Var::F2P, Var::F12, Var::F12P];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }
}

/// Exponent vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u8; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> u8 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn eval<S: Field>(&self, vals: &[S; NVARS]) -> S {
        let mut acc = S::one();
        for (e, x) in self.0.iter().zip(vals) {
            if *e > 0 {
                acc = acc * x.powi(*e as u32);
            }
        }
        acc
    }

    /// Swap `f1 <-> f2` and `f1' <-> f2'`.
    pub fn swap_f(&self) -> Self {
        let mut e = self.0;
        e.swap(Var::F1.index(), Var::F2.index());
        e.swap(Var::F1P.index(), Var::F2P.index());
        Monomial(e)
    }
}

impl std::str::FromStr for Monomial {
    type Err = Error;

    /// Products like `xi^2*f1*f1p`; `1` is the empty product.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut e = [0u8; NVARS];
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (n.trim(), p.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                None => (factor.trim(), 1),
            };
            let i = VAR_NAMES
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            e[i] += pow;
        }
        Ok(Monomial(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(VAR_NAMES)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Drop every term with `v` to a power of at least `n`.
    pub fn truncate(&self, v: Var, n: u8) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.exp(v) < n).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Terms satisfying a predicate on the monomial.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn eval(&self, vals: &[C; NVARS]) -> C {
        self.terms.iter().fold(C::zero(), |acc, (m, c)| acc + c.clone() * m.eval(vals))
    }

    pub fn swap_f(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.swap_f(), c.clone());
        }
        out
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn parse_and_print() {
        let m: Monomial = "xi^2*f1*f1p".parse().unwrap();
        assert_eq!(m.exp(Var::Xi), 2);
        assert_eq!(m.to_string(), "xi^2*f1*f1p");
        assert_eq!("1".parse::<Monomial>().unwrap(), Monomial::one());
        assert!("xi*zeta".parse::<Monomial>().is_err());
    }

    #[test]
    fn product_and_truncation() {
        let x = Poly::<Rational>::var(Var::Xi);
        let one = Poly::constant(Rational::from_i64(1));
        let p = x.add(&one).mul(&x.add(&one));
        assert_eq!(p.len(), 3);
        assert_eq!(p.truncate(Var::Xi, 2), x.scale(&Rational::from_i64(2)).add(&one));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn swap_exchanges_f_variables() {
        let m: Monomial = "f1^4*f1p*f2".parse().unwrap();
        assert_eq!(m.swap_f().to_string(), "f1*f2^4*f2p");
    }
}
