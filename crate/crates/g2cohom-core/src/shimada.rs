//! Charts of the sphere bundles `E_{m,n}` over `S^8`, the `SO(2) x G2`
//! action on them, the embedded spheres `S^14_k`, `S^13_k`, the fiber
//! antipode `T`, and the induced action on the `G2` orbit space.

use std::io::Write;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::octonion::{apply_im, automorphism_defect, Octonion};
use crate::sampling::{open_uniform, random_octonion, random_unit_imaginary};

type O = Octonion<f64>;

/// Below this norm a Möbius denominator counts as vanishing.
const SINGULAR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// Coordinates `(u, v)`.
    UV,
    /// Coordinates `(u', v')`.
    UpVp,
}

impl Chart {
    pub fn other(self) -> Self {
        match self {
            Chart::UV => Chart::UpVp,
            Chart::UpVp => Chart::UV,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Chart::UV => "uv",
            Chart::UpVp => "u'v'",
        }
    }
}

/// A point of `Sigma^15_k = E_{m,n}` with `m + n = 1`, `k = m - n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub u: O,
    pub v: O,
    pub k: i64,
}

impl ChartPoint {
    pub fn new(chart: Chart, u: O, v: O, k: i64) -> Result<Self> {
        if k % 2 == 0 {
            return Err(Error::Domain(format!("k = {k} must be odd")));
        }
        if (v.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("fiber coordinate has norm {}", v.norm())));
        }
        Ok(ChartPoint { chart, u, v, k })
    }

    /// `m = (k + 1) / 2`.
    pub fn m(&self) -> i64 {
        (self.k + 1) / 2
    }

    /// `n = (1 - k) / 2`.
    pub fn n(&self) -> i64 {
        (1 - self.k) / 2
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        if self.chart != o.chart || self.k != o.k {
            return f64::INFINITY;
        }
        self.u.max_abs_diff(&o.u).max(self.v.max_abs_diff(&o.v))
    }
}

/// `gamma(a, b)` with `a^2 + b^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct So2Element {
    pub a: f64,
    pub b: f64,
}

impl So2Element {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if (a * a + b * b - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("a^2 + b^2 = {} is not 1", a * a + b * b)));
        }
        Ok(So2Element { a, b })
    }

    pub fn from_angle(theta: f64) -> Self {
        So2Element { a: theta.cos(), b: theta.sin() }
    }

    pub fn identity() -> Self {
        So2Element { a: 1.0, b: 0.0 }
    }

    pub fn compose(&self, o: &Self) -> Self {
        So2Element { a: self.a * o.a - self.b * o.b, b: self.a * o.b + self.b * o.a }
    }
}

/// `u^m / |u|^m`, a unit in the subalgebra generated by `u`.
fn unit_power(u: &O, m: i64) -> Result<O> {
    let n = u.norm();
    u.scale(&(1.0 / n)).power(m)
}

/// `x^m v x^n / |x|^(m+n)`; unambiguous because `x` and `v` generate an
/// associative subalgebra.
fn twist(x: &O, v: &O, m: i64, n: i64) -> Result<O> {
    Ok(unit_power(x, m)?.mul(v).mul(&unit_power(x, n)?))
}

/// The gluing map between the two charts, in either direction.
pub fn transition(p: &ChartPoint) -> Result<ChartPoint> {
    let n2 = p.u.norm_sq();
    if n2 <= SINGULAR * SINGULAR {
        return Err(Error::NotInOverlap);
    }
    let u_new = p.u.scale(&(1.0 / n2));
    let v_new = match p.chart {
        Chart::UV => twist(&p.u, &p.v, p.m(), p.n())?,
        // u/|u| = u'/|u'|, so the inverse twist uses the powers -m, -n
        Chart::UpVp => twist(&p.u, &p.v, -p.m(), -p.n())?,
    };
    Ok(ChartPoint { chart: p.chart.other(), u: u_new, v: v_new, k: p.k })
}

/// The Möbius `SO(2)` action of the Davis action.
pub fn davis_so2(g: &So2Element, p: &ChartPoint) -> Result<ChartPoint> {
    let (a, b) = (g.a, g.b);
    let (m, n) = (p.m(), p.n());
    let real = |x: f64| O::real(x);
    let (u, v) = match p.chart {
        Chart::UV => {
            let den = p.u.scale(&-b) + real(a);
            if den.norm() <= SINGULAR {
                return Err(Error::ChartSwitch("-b u + a vanishes".into()));
            }
            let u = (p.u.scale(&a) + real(b)).mul(&den.inv()?);
            (u, twist(&den, &p.v, m, n)?)
        }
        Chart::UpVp => {
            let den = p.u.scale(&b) + real(a);
            if den.norm() <= SINGULAR {
                return Err(Error::ChartSwitch("a + b u' vanishes".into()));
            }
            let u = (p.u.scale(&a) - real(b)).mul(&den.inv()?);
            let w = p.u.conj().scale(&b) + real(a);
            (u, twist(&w, &p.v, m, n)?)
        }
    };
    Ok(ChartPoint { chart: p.chart, u, v, k: p.k })
}

/// Applies `g` in whichever chart keeps the Möbius denominator away from
/// zero, returning the result in the chart of `p` when possible.
pub fn davis_so2_any_chart(g: &So2Element, p: &ChartPoint) -> Result<ChartPoint> {
    match davis_so2(g, p) {
        Err(Error::ChartSwitch(_)) => {
            let q = davis_so2(g, &transition(p)?)?;
            transition(&q).or(Ok(q))
        }
        r => r,
    }
}

/// `g(u, v) = (g u, g v)` for an octonion automorphism `g`.
pub fn davis_g2(g: &Mat<f64>, p: &ChartPoint, tol: f64) -> Result<ChartPoint> {
    let d = automorphism_defect(g);
    if !(d <= tol) {
        return Err(Error::NotAutomorphism(d));
    }
    Ok(ChartPoint { chart: p.chart, u: apply_im(g, &p.u), v: apply_im(g, &p.v), k: p.k })
}

/// The fiber antipode `(u, v) -> (u, -v)`.
pub fn involution_t(p: &ChartPoint) -> ChartPoint {
    ChartPoint { chart: p.chart, u: p.u.clone(), v: -p.v.clone(), k: p.k }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stratum {
    Sigma15,
    S14,
    S13,
}

/// The real parts cutting out `S^14_k` and `S^13_k`. Conditions of the
/// chart not containing the point are `None`.
#[derive(Clone, Debug, Serialize)]
pub struct Residuals {
    pub re_uv: Option<f64>,
    pub re_v: Option<f64>,
    pub re_vp: Option<f64>,
    pub re_up_vp_inv: Option<f64>,
}

impl Residuals {
    pub fn max_abs(&self) -> f64 {
        [self.re_uv, self.re_v, self.re_vp, self.re_up_vp_inv].iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub stratum: Stratum,
    pub f1: f64,
    pub f2: Option<f64>,
    pub residuals: Residuals,
}

/// `f1` on `Sigma^15_k`, in the chart of `p`.
pub fn morse_f1(p: &ChartPoint) -> Result<f64> {
    Ok(match p.chart {
        Chart::UV => p.v.re() / (1.0 + p.u.norm_sq()).sqrt(),
        Chart::UpVp => {
            let w = p.u.mul(&p.v.inv()?);
            w.re() / (1.0 + w.norm_sq()).sqrt()
        }
    })
}

/// The second Morse function, in the chart of `p`.
pub fn morse_f2(p: &ChartPoint) -> f64 {
    match p.chart {
        Chart::UV => p.u.mul(&p.v).re() / (1.0 + p.u.norm_sq()).sqrt(),
        Chart::UpVp => p.v.re() / (1.0 + p.u.norm_sq()).sqrt(),
    }
}

fn chart_residuals(p: &ChartPoint) -> Result<(f64, f64)> {
    Ok(match p.chart {
        Chart::UV => (p.v.re(), p.u.mul(&p.v).re()),
        Chart::UpVp => (p.u.mul(&p.v.inv()?).re(), p.v.re()),
    })
}

/// Finest stratum containing `p`, from the conditions of its own chart.
pub fn membership(p: &ChartPoint, tol: f64) -> Result<Membership> {
    let (s14, s13) = chart_residuals(p)?;
    let other = match transition(p) {
        Ok(q) => Some(chart_residuals(&q)?),
        Err(Error::NotInOverlap) => None,
        Err(e) => return Err(e),
    };
    let (here, there) = (Some((s14, s13)), other);
    let (uv, upvp) = match p.chart {
        Chart::UV => (here, there),
        Chart::UpVp => (there, here),
    };
    let residuals = Residuals {
        re_v: uv.map(|r| r.0),
        re_uv: uv.map(|r| r.1),
        re_up_vp_inv: upvp.map(|r| r.0),
        re_vp: upvp.map(|r| r.1),
    };
    let stratum = if s14.abs() > tol {
        Stratum::Sigma15
    } else if s13.abs() > tol {
        Stratum::S14
    } else {
        Stratum::S13
    };
    let f2 = (stratum != Stratum::Sigma15).then(|| morse_f2(p));
    Ok(Membership { stratum, f1: morse_f1(p)?, f2, residuals })
}

/// The automorphism sending `e1, e2, e4` to a basic triple `x, y, z`
/// (orthonormal imaginary units with `z` orthogonal to `xy`).
pub fn frame_automorphism(x: &O, y: &O, z: &O) -> Mat<f64> {
    let mut img: [Option<O>; 8] = Default::default();
    img[1] = Some(x.clone());
    img[2] = Some(y.clone());
    img[4] = Some(z.clone());
    for (i, j) in [(1, 2), (1, 4), (2, 4), (3, 4)] {
        let prod = O::basis(i).mul(&O::basis(j));
        let (k, sign) = (1..8).find(|&k| prod.c[k] != 0.0).map(|k| (k, prod.c[k])).expect("unit product");
        let image = img[i].as_ref().unwrap().mul(img[j].as_ref().unwrap());
        img[k] = Some(image.scale(&sign));
    }
    let mut g = Mat::zeros(7, 7);
    for (col, o) in img.iter().skip(1).enumerate() {
        g.set_column(col, &o.as_ref().expect("all units reached").im_coords());
    }
    g
}

/// A unit imaginary orthogonal to each of `basis` (assumed orthonormal).
fn orthogonal_unit(basis: &[&O]) -> O {
    for i in 1..8 {
        let mut w = O::basis(i);
        for b in basis {
            w = w.clone() - b.scale(&w.dot(b));
        }
        if w.norm() > 0.5 {
            return w.scale(&(1.0 / w.norm()));
        }
    }
    unreachable!("at most four constraints in a seven-dimensional space")
}

/// Orbit-space coordinates and the normalizing automorphism.
#[derive(Clone, Debug)]
pub struct CanonicalRep {
    pub x1: f64,
    pub x2: f64,
    /// `g` with `g(p) = (x1 + x2 e3, e1)`.
    pub g: Mat<f64>,
}

/// The `G2`-orbit representative `(x1 + x2 e3, e1)` with `x2 >= 0` of a
/// point on `S^13_k`.
pub fn canonical_rep(p: &ChartPoint, tol: f64) -> Result<CanonicalRep> {
    let m = membership(p, tol)?;
    if m.stratum != Stratum::S13 {
        return Err(Error::Domain(format!("point is not on S^13 (residual {:.3e})", m.residuals.max_abs())));
    }
    let v = p.v.im();
    let v = v.scale(&(1.0 / v.norm()));
    let w = p.u.im();
    let x2 = w.norm();
    let w = if x2 > SINGULAR { w.scale(&(1.0 / x2)) } else { orthogonal_unit(&[&v]) };
    // sigma(e1) = v and sigma(e3) = sigma(e1) sigma(e2) = w
    let y = v.mul(&w).scale(&-1.0);
    let z = orthogonal_unit(&[&v, &y, &w]);
    let sigma = frame_automorphism(&v, &y, &z);
    Ok(CanonicalRep { x1: p.u.re(), x2, g: sigma.transpose() })
}

/// Orbit-space gluing `x -> x / |x|^2`.
pub fn phi_orbit(x: (f64, f64)) -> Result<(f64, f64)> {
    let r2 = x.0 * x.0 + x.1 * x.1;
    if r2 <= SINGULAR * SINGULAR {
        return Err(Error::NotInOverlap);
    }
    Ok((x.0 / r2, x.1 / r2))
}

/// The induced action of `gamma` on the orbit-space chart `chart`.
pub fn mobius_orbit(g: &So2Element, x: (f64, f64), chart: Chart) -> Result<(f64, f64)> {
    let (a, b) = (g.a, g.b);
    let (u1, u2) = x;
    if b == 0.0 {
        return Ok(x);
    }
    let s = match chart {
        Chart::UV => -1.0,
        Chart::UpVp => 1.0,
    };
    let c = a + s * b * u1;
    let d = c * c + b * b * u2 * u2;
    if d <= SINGULAR {
        return Err(Error::ChartSwitch("Möbius denominator vanishes".into()));
    }
    Ok((s * a / b - s * c / (b * d), u2 / d))
}

/// Largest entry of `u2'^-2 J^T J - u2^-2 I`, scaled by `u2^2`, for the
/// Jacobian `J` of [`mobius_orbit`] from central differences with step `h`.
pub fn hyperbolic_defect(g: &So2Element, x: (f64, f64), chart: Chart, h: f64) -> Result<f64> {
    let f = |p: (f64, f64)| mobius_orbit(g, p, chart);
    let y = f(x)?;
    let col = |dx: (f64, f64)| -> Result<[f64; 2]> {
        let p = f((x.0 + dx.0, x.1 + dx.1))?;
        let m = f((x.0 - dx.0, x.1 - dx.1))?;
        Ok([(p.0 - m.0) / (2.0 * h), (p.1 - m.1) / (2.0 * h)])
    };
    let j1 = col((h, 0.0))?;
    let j2 = col((0.0, h))?;
    let dot = |a: &[f64; 2], b: &[f64; 2]| a[0] * b[0] + a[1] * b[1];
    let w = x.1 * x.1 / (y.1 * y.1);
    let g11 = w * dot(&j1, &j1);
    let g12 = w * dot(&j1, &j2);
    let g22 = w * dot(&j2, &j2);
    Ok((g11 - 1.0).abs().max(g12.abs()).max((g22 - 1.0).abs()))
}

/// Random point of `Sigma^15_k` in the given chart.
pub fn random_sigma15_point<R: Rng>(rng: &mut R, chart: Chart, k: i64) -> ChartPoint {
    let v = random_octonion(rng);
    let v = v.scale(&(1.0 / v.norm()));
    ChartPoint { chart, u: random_octonion(rng).scale(&2.0), v, k }
}

/// Random point of `S^13_k` in the given chart: `v` a unit imaginary and
/// `Im u` orthogonal to it.
pub fn random_s13_point<R: Rng>(rng: &mut R, chart: Chart, k: i64) -> ChartPoint {
    let v = random_unit_imaginary(rng);
    let w = random_octonion(rng).im();
    let w = w.clone() - v.scale(&w.dot(&v));
    let u = w.scale(&open_uniform(rng, 0.0, 2.0)) + O::real(open_uniform(rng, -2.0, 2.0));
    ChartPoint { chart, u, v, k }
}

/// One CSV row per point: chart, coordinates of `u` and `v`, and the four
/// real-part residuals (empty where the chart does not cover the point).
pub fn write_csv<W: Write>(points: &[ChartPoint], tol: f64, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["chart".to_string()];
    header.extend((0..8).map(|i| format!("u{i}")));
    header.extend((0..8).map(|i| format!("v{i}")));
    header.extend(["re_uv", "re_v", "re_vp", "re_up_vp_inv"].map(String::from));
    w.write_record(&header).map_err(csv_err)?;
    for p in points {
        let r = membership(p, tol)?.residuals;
        let mut row = vec![p.chart.label().to_string()];
        row.extend(p.u.c.iter().chain(&p.v.c).map(|x| format!("{x:.17e}")));
        row.extend([r.re_uv, r.re_v, r.re_vp, r.re_up_vp_inv].map(|x| x.map(|x| format!("{x:.17e}")).unwrap_or_default()));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_for;

    fn e(i: usize) -> O {
        O::basis(i)
    }

    #[test]
    fn unit_sphere_transition() {
        let mut rng = rng_for(3, "t", 0);
        let u = random_unit_imaginary(&mut rng) + O::real(0.3);
        let u = u.scale(&(1.0 / u.norm()));
        let p = ChartPoint::new(Chart::UV, u.clone(), e(1), 1).unwrap();
        let q = transition(&p).unwrap();
        assert!(q.u.approx_eq(&u, 1e-14));
        assert!(q.v.approx_eq(&u.mul(&e(1)), 1e-14));
    }

    #[test]
    fn transition_of_rotation_in_e3_plane() {
        let (r, th, k) = (1.7f64, 0.8f64, 5);
        let u = (O::real(th.cos()) + e(3).scale(&th.sin())).scale(&r);
        let q = transition(&ChartPoint::new(Chart::UV, u, e(1), k).unwrap()).unwrap();
        let kt = k as f64 * th;
        let want = (O::real(kt.cos()) + e(3).scale(&kt.sin())).mul(&e(1));
        assert!(q.v.approx_eq(&want, 1e-13));
    }

    #[test]
    fn antipode_and_sign_flip() {
        let mut rng = rng_for(3, "t", 1);
        let p = random_s13_point(&mut rng, Chart::UV, 3);
        let q = davis_so2(&So2Element::new(-1.0, 0.0).unwrap(), &p).unwrap();
        assert!(q.max_abs_diff(&involution_t(&p)) < 1e-14);
        assert_eq!(involution_t(&involution_t(&p)), p);
    }

    #[test]
    fn critical_points() {
        let p = ChartPoint::new(Chart::UV, O::zero(), e(0), 3).unwrap();
        let m = membership(&p, 1e-12).unwrap();
        assert_eq!(m.stratum, Stratum::Sigma15);
        assert_eq!(m.f1, 1.0);
        let p = ChartPoint::new(Chart::UV, O::zero(), e(1), 3).unwrap();
        assert_eq!(membership(&p, 1e-12).unwrap().stratum, Stratum::S13);
        assert!(matches!(transition(&p), Err(Error::NotInOverlap)));
    }

    #[test]
    fn frame_automorphism_of_standard_frame_is_identity() {
        let g = frame_automorphism(&e(1), &e(2), &e(4));
        assert!(g.approx_eq(&Mat::identity(7), 0.0));
    }

    #[test]
    fn fixed_point_of_orbit_action() {
        for th in [0.3, 1.0, 2.5, -0.7] {
            let y = mobius_orbit(&So2Element::from_angle(th), (0.0, 1.0), Chart::UV).unwrap();
            assert!((y.0).abs() < 1e-14 && (y.1 - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(So2Element::new(1.0, 0.1).is_err());
        assert!(ChartPoint::new(Chart::UV, O::zero(), e(1), 2).is_err());
        assert!(ChartPoint::new(Chart::UV, O::zero(), e(1).scale(&2.0), 3).is_err());
        let p = ChartPoint::new(Chart::UV, O::real(1.0), e(1), 3).unwrap();
        let g = So2Element::from_angle(std::f64::consts::FRAC_PI_4);
        assert!(matches!(davis_so2(&g, &p), Err(Error::ChartSwitch(_))));
        assert!(davis_so2_any_chart(&g, &p).is_ok());
    }
}
