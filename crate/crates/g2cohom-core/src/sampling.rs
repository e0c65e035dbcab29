//! Deterministic per-sample random streams and admissible random profiles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::lie_g2::{g2_matrix, G2Param};
use crate::linalg::Mat;
use crate::metric_engine::{FSector, Jet, ReducedProfile};
use crate::octonion::Octonion;
use crate::scalar::{FromRational, Rational, Sqrt3Field};

/// An RNG that depends only on `(seed, label, index)`, so results do not
/// depend on evaluation order or thread count.
pub fn rng_for(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let digest = Sha256::digest(label.as_bytes());
    let stream = u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream ^ index.rotate_left(32));
    rng
}

/// Open-interval uniform draw.
pub fn open_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    loop {
        let x = rng.gen_range(lo..hi);
        if x > lo {
            return x;
        }
    }
}

/// A small random rational in `(lo, hi)` with denominator at most `den`.
pub fn rational_in<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational, den: i64) -> Rational {
    loop {
        let q = rng.gen_range(2..=den);
        let lo_n = (lo * Rational::from_integer(q.into())).floor().to_integer();
        let hi_n = (hi * Rational::from_integer(q.into())).ceil().to_integer();
        let lo_n: i64 = lo_n.try_into().unwrap_or(i64::MIN / 4);
        let hi_n: i64 = hi_n.try_into().unwrap_or(i64::MAX / 4);
        if hi_n <= lo_n {
            continue;
        }
        let x = Rational::new(rng.gen_range(lo_n..=hi_n).into(), q.into());
        if &x > lo && &x < hi {
            return x;
        }
    }
}

/// `beta` strictly inside the admissible interval `(-1/sqrt 3, sqrt 3)`.
pub fn random_beta<R: Rng>(rng: &mut R) -> f64 {
    let r3 = 3f64.sqrt();
    open_uniform(rng, -1.0 / r3, r3)
}

fn random_fsector_f64<R: Rng>(rng: &mut R) -> FSector<f64> {
    let f1 = rng.gen_range(0.1..2.0);
    let f2 = rng.gen_range(0.1..2.0);
    let f12 = open_uniform(rng, -0.9, 0.9) * f1 * f2;
    let mut d = || open_uniform(rng, -1.0, 1.0);
    FSector::new(Jet::new(f1, d()), Jet::new(f2, d()), Jet::new(f12, d()))
}

/// A random reduced profile: `f1, f2` in `(0.1, 2)`, `|f12| < 0.9 f1 f2`,
/// `xi` in `(0, 0.9 alpha)`, derivatives in `(-1, 1)`.
pub fn random_reduced_profile<R: Rng>(rng: &mut R, k: u32) -> ReducedProfile<f64> {
    loop {
        let beta = random_beta(rng);
        let Ok(alpha) = crate::metric_engine::alpha_of_beta(&beta) else { continue };
        let xi = open_uniform(rng, 0.0, 0.9 * alpha);
        let xi_p = open_uniform(rng, -1.0, 1.0);
        let f = random_fsector_f64(rng);
        let h1 = Jet::new(rng.gen_range(0.1..2.0), open_uniform(rng, -1.0, 1.0));
        if let Ok(p) = ReducedProfile::from_beta(beta, Jet::new(xi, xi_p), f, h1, k) {
            return p;
        }
    }
}

/// Random octonion with coordinates uniform in `(-1, 1)`.
pub fn random_octonion<R: Rng>(rng: &mut R) -> Octonion<f64> {
    Octonion::new(std::array::from_fn(|_| open_uniform(rng, -1.0, 1.0)))
}

/// Random unit imaginary octonion.
pub fn random_unit_imaginary<R: Rng>(rng: &mut R) -> Octonion<f64> {
    loop {
        let v = random_octonion(rng).im();
        let n = v.norm();
        if n > 1e-3 {
            return v.scale(&(1.0 / n));
        }
    }
}

/// `exp(X)` for a random derivation `X` with parameters in `(-1, 1)`.
pub fn random_g2_element<R: Rng>(rng: &mut R) -> Mat<f64> {
    let p = G2Param::from_array(std::array::from_fn(|_| open_uniform(rng, -1.0, 1.0)));
    g2_matrix(&p).expm()
}

/// The exact `(alpha, gam)` points where `gam` is rational:
/// `(1, 1)`, `(1, -1)` and `(3/4, 0)`.
pub fn exact_alpha_points() -> [(Rational, Rational); 3] {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    [(r(1, 1), r(1, 1)), (r(1, 1), r(-1, 1)), (r(3, 4), r(0, 1))]
}

/// A random reduced profile with rational data at a rational `(alpha, gam)`.
pub fn random_exact_profile<S, R>(rng: &mut R, alpha: &Rational, gam: &Rational, k: u32) -> ReducedProfile<S>
where
    S: Sqrt3Field + FromRational,
    R: Rng,
{
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let (lo, hi) = (r(1, 10), r(2, 1));
    let unit = (r(-1, 1), r(1, 1));
    let f1 = rational_in(rng, &lo, &hi, 7);
    let f2 = rational_in(rng, &lo, &hi, 7);
    let c = rational_in(rng, &r(-9, 10), &r(9, 10), 7);
    let f12 = c * &f1 * &f2;
    let xi = rational_in(rng, &r(0, 1), &(alpha * r(9, 10)), 11);
    let mut d = || S::from_rational(&rational_in(rng, &unit.0, &unit.1, 9));
    let s = |x: &Rational| S::from_rational(x);
    let f = FSector::new(Jet::new(s(&f1), d()), Jet::new(s(&f2), d()), Jet::new(s(&f12), d()));
    let xi = Jet::new(s(&xi), d());
    let h1 = Jet::new(S::one(), d());
    ReducedProfile::from_alpha_gam(s(alpha), s(gam), xi, f, h1, k).expect("exact sample is admissible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = rng_for(42, "x", 3).gen();
        let b: u64 = rng_for(42, "x", 3).gen();
        let c: u64 = rng_for(42, "x", 4).gen();
        let d: u64 = rng_for(42, "y", 3).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn rational_draw_in_range() {
        let mut rng = rng_for(1, "r", 0);
        let lo = Rational::ratio(1, 10);
        let hi = Rational::from_i64(2);
        for _ in 0..200 {
            let x = rational_in(&mut rng, &lo, &hi, 7);
            assert!(x > lo && x < hi);
        }
    }

    #[test]
    fn random_profiles_are_admissible() {
        let mut rng = rng_for(7, "p", 0);
        for _ in 0..50 {
            let p = random_reduced_profile(&mut rng, 3);
            assert!(crate::metric_engine::build_p(&p.metric()).is_ok());
        }
    }
}
