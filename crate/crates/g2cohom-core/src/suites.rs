//! Named verification suites and their JSON reports.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::appendix_suite::{compare, engine_value, ClosedFormId, CoefficientTable, CompareConfig};
use crate::brieskorn::{self as bk, BasePoint, IsotropyClass};
use crate::error::{Error, Result};
use crate::lie_g2::{
    adjoint_weyl, bracket, g2_matrix, idx, inner_q, q0, G2Param, GBasis, GVector, GroupElement, HElement, PVector,
    WeylElement, P_DIM,
};
use crate::linalg::Mat;
use crate::metric_engine::{FSector, Jet, LieData, ReducedProfile};
use crate::obstruction::{beta_window, smoothness_check, BoundaryData};
use crate::octonion::{derivation_defect, derivation_residual, table, table_from_triples, table_hash, Octonion};
use crate::sampling::{open_uniform, random_g2_element, random_octonion, rng_for};
use crate::scalar::{Field, FromRational, NumberMode, Q23, QSqrt2, Rational, Sqrt3Field};
use crate::shimada::{self as sh, Chart, So2Element, Stratum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Octonion,
    G2,
    Brackets,
    Weyl,
    Appendix,
    Davis,
    Brieskorn,
    Smoothness,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Octonion,
        Suite::G2,
        Suite::Brackets,
        Suite::Weyl,
        Suite::Appendix,
        Suite::Davis,
        Suite::Brieskorn,
        Suite::Smoothness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Octonion => "octonion",
            Suite::G2 => "g2",
            Suite::Brackets => "brackets",
            Suite::Weyl => "weyl",
            Suite::Appendix => "appendix",
            Suite::Davis => "davis",
            Suite::Brieskorn => "brieskorn",
            Suite::Smoothness => "smoothness",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Run parameters. `samples` scales every sampled check: octonion pairs are
/// `500 * samples`, derivation pairs `5 * samples` per matrix, Davis and
/// Brieskorn points `50 * samples`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub mode: NumberMode,
    pub tol: f64,
    pub step: f64,
    pub k: u32,
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 42, samples: 20, mode: NumberMode::Float, tol: 1e-9, step: 1e-3, k: 3, jobs: None, table: None }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => self.seed = parse_value(key, value)?,
                "samples" => self.samples = parse_value(key, value)?,
                "mode" => self.mode = value.parse()?,
                "tol" => self.tol = parse_value(key, value)?,
                "step" => self.step = parse_value(key, value)?,
                "k" => self.k = parse_value(key, value)?,
                "jobs" => self.jobs = Some(parse_value(key, value)?),
                "table" => self.table = Some(PathBuf::from(value)),
                _ => return Err(Error::Parse(format!("line {}: unknown key {key:?}", n + 1))),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Domain("samples must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tol = {} must be positive", self.tol)));
        }
        if !(self.step > 0.0) {
            return Err(Error::Domain(format!("step = {} must be positive", self.step)));
        }
        if self.k % 2 == 0 {
            return Err(Error::Domain(format!("k = {} must be odd", self.k)));
        }
        if self.jobs == Some(0) {
            return Err(Error::Domain("jobs must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

impl Check {
    fn within(name: impl Into<String>, residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass: residual <= tol, residual, detail: detail.into() }
    }

    fn exact(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, residual: if pass { 0.0 } else { 1.0 }, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub version: &'static str,
    pub table_hash: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `suite`, on a pool of `cfg.jobs` threads when given.
pub fn run(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let checks = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Domain(e.to_string()))?
            .install(|| run_checks(suite, cfg))?,
        None => run_checks(suite, cfg)?,
    };
    let passed = checks.iter().filter(|c| c.pass).count();
    let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed, pass: passed == checks.len() };
    Ok(Report { suite, version: VERSION, table_hash: table_hash(), config: cfg.clone(), checks, summary })
}

fn run_checks(suite: Suite, cfg: &RunConfig) -> Result<Vec<Check>> {
    match suite {
        Suite::Octonion => Ok(octonion_checks(cfg)),
        Suite::G2 => Ok(g2_checks(cfg)),
        Suite::Brackets => brackets_checks(),
        Suite::Weyl => weyl_checks(cfg),
        Suite::Appendix => appendix_checks(cfg),
        Suite::Davis => davis_checks(cfg),
        Suite::Brieskorn => brieskorn_checks(cfg),
        Suite::Smoothness => smoothness_checks(cfg),
    }
}

/// Largest value, with NaN propagated.
fn worst(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Integer coordinates in `[-999, 999]`. The identities checked are
/// homogeneous, so this covers rational pairs up to a common denominator.
fn random_rational_octonion<R: rand::Rng>(rng: &mut R) -> Octonion<Rational> {
    Octonion::new(std::array::from_fn(|_| Rational::from_i64(rng.gen_range(-999..=999))))
}

/// Relative residuals of the octonion identities on one pair:
/// norm multiplicativity, left and right alternativity, conjugation and
/// `x^2 x^3 = x^5`.
fn octonion_residuals<S: Field>(x: &Octonion<S>, y: &Octonion<S>) -> [f64; 5] {
    let (nx, ny) = (x.norm_sq().to_f64(), y.norm_sq().to_f64());
    let scale = (nx * ny).max(f64::MIN_POSITIVE);
    let xy = x.mul(y);
    let rel = |a: &Octonion<S>, b: &Octonion<S>, s: f64| {
        if S::EXACT {
            if a == b { 0.0 } else { a.max_abs_diff(b).max(f64::MIN_POSITIVE) / s }
        } else {
            a.max_abs_diff(b) / s
        }
    };
    let norm = if xy.norm_sq() == x.norm_sq() * y.norm_sq() {
        0.0
    } else {
        (xy.norm_sq().to_f64() - nx * ny).abs().max(if S::EXACT { f64::MIN_POSITIVE } else { 0.0 }) / scale
    };
    let left = rel(&x.mul(x).mul(y), &x.mul(&xy), nx * ny.sqrt());
    let right = rel(&y.mul(x).mul(x), &y.mul(&x.mul(x)), nx * ny.sqrt());
    let conj = rel(&xy.conj(), &y.conj().mul(&x.conj()), scale.sqrt());
    let power = match (x.power(2), x.power(3), x.power(5)) {
        (Ok(a), Ok(b), Ok(c)) => rel(&a.mul(&b), &c, nx.powf(2.5).max(f64::MIN_POSITIVE)),
        _ => f64::NAN,
    };
    [norm, left, right, conj, power]
}

fn octonion_checks(cfg: &RunConfig) -> Vec<Check> {
    let n = 500 * cfg.samples;
    let rows: Vec<[f64; 5]> = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, "octonion", i);
            match cfg.mode {
                NumberMode::Float => octonion_residuals(&random_octonion(&mut rng), &random_octonion(&mut rng)),
                NumberMode::Exact => {
                    octonion_residuals(&random_rational_octonion(&mut rng), &random_rational_octonion(&mut rng))
                }
            }
        })
        .collect();
    let tol = match cfg.mode {
        NumberMode::Float => 1e-12,
        NumberMode::Exact => 0.0,
    };
    let names = ["norm multiplicativity", "left alternativity", "right alternativity", "conjugation reverses products", "power associativity x^2 x^3 = x^5"];
    let mut out: Vec<Check> = names
        .iter()
        .enumerate()
        .map(|(j, name)| Check::within(*name, worst(rows.iter().map(|r| r[j])), tol, format!("{n} {} pairs", cfg.mode)))
        .collect();
    out.push(Check::exact("table matches oriented triples", *table() == table_from_triples(), format!("sha256 {}", table_hash())));
    out
}

fn g2_basis<S: Field>() -> Vec<Mat<S>> {
    (0..14).map(|i| g2_matrix(&G2Param::<S>::coordinate(i))).collect()
}

fn derivation_worst<S: Field>(basis: &[Mat<S>], pairs: &[(Octonion<S>, Octonion<S>)]) -> (f64, bool) {
    let mut worst_r = 0.0f64;
    let mut exact = true;
    for x in basis {
        for (u, v) in pairs {
            let r = derivation_residual(x, u, v);
            worst_r = worst_r.max(r.max_abs());
            exact &= r.is_zero();
        }
    }
    (worst_r, exact)
}

fn g2_checks(cfg: &RunConfig) -> Vec<Check> {
    let n = 5 * cfg.samples;
    let mut out = Vec::new();
    let detail = format!("14 matrices x {n} {} pairs", cfg.mode);
    match cfg.mode {
        NumberMode::Float => {
            let pairs: Vec<_> = (0..n as u64)
                .map(|i| {
                    let mut rng = rng_for(cfg.seed, "g2", i);
                    (random_octonion(&mut rng), random_octonion(&mut rng))
                })
                .collect();
            let (r, _) = derivation_worst(&g2_basis::<f64>(), &pairs);
            out.push(Check::within("derivation identity", r, 1e-12, detail));
        }
        NumberMode::Exact => {
            let pairs: Vec<_> = (0..n as u64)
                .map(|i| {
                    let mut rng = rng_for(cfg.seed, "g2", i);
                    (random_rational_octonion(&mut rng), random_rational_octonion(&mut rng))
                })
                .collect();
            let (r, ok) = derivation_worst(&g2_basis::<Rational>(), &pairs);
            out.push(Check { name: "derivation identity".into(), pass: ok, residual: r, detail });
        }
    }
    let basis = g2_basis::<Rational>();
    out.push(Check::exact("basis matrices are skew", basis.iter().all(|m| m.transpose() == m.scale(&-Rational::from_i64(1))), ""));
    let closed = basis.iter().all(|a| basis.iter().all(|b| derivation_defect(&a.commutator(b)) == 0.0));
    out.push(Check::exact("closed under brackets", closed, "all 196 commutators are derivations"));
    let gram = Mat::from_fn(14, 14, |i, j| q0(&basis[i], &basis[j]));
    out.push(Check::exact("fourteen independent derivations", !gram.det().is_zero(), "Q0 Gram determinant nonzero"));
    out
}

fn sqrt2() -> Q23 {
    Q23::from_base(QSqrt2::radical())
}

fn brackets_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in [1u32, 3, 5, 7] {
        let b = GBasis::<Q23>::new(k)?;
        let gram = Mat::from_fn(P_DIM, P_DIM, |i, j| inner_q(b.p_vector(i), b.p_vector(j), k));
        out.push(Check::exact(format!("k={k} basis is Q-orthonormal"), gram == Mat::identity(P_DIM), ""));
        let br = |i: usize, j: usize| bracket(b.p_vector(i), b.p_vector(j));
        let p_br = |i: usize, j: usize| b.project_p(&br(i, j));
        let r3 = Q23::sqrt3();
        let x12 = |c: Q23| PVector::from_terms(&[(idx::X1, c.clone()), (idx::X2, -c)]);
        let cases: Vec<(&str, bool)> = vec![
            ("[Y1,E1] = sqrt3 E2", br(idx::Y1, idx::E1) == b.expand_p(&PVector::from_terms(&[(idx::E2, r3.clone())]))),
            ("[Y1,F1] = -F2/sqrt3", br(idx::Y1, idx::F1) == b.expand_p(&PVector::from_terms(&[(idx::F2, -Q23::one() / r3.clone())]))),
            ("[E1,F1] = 0", br(idx::E1, idx::F1) == GVector::zero()),
            ("[E4,F4] = 0", br(idx::E4, idx::F4) == GVector::zero()),
            ("[E1,E4]_p = 0", p_br(idx::E1, idx::E4).is_zero()),
            ("[E1,F4] = -(X1 - X2)/sqrt2", br(idx::E1, idx::F4) == b.expand_p(&x12(-Q23::one() / sqrt2()))),
            ("[E4,F1] = (X1 - X2)/sqrt2", br(idx::E4, idx::F1) == b.expand_p(&x12(Q23::one() / sqrt2()))),
            ("[F1,F4]_p = (sqrt6/3)(X1 - X2)", p_br(idx::F1, idx::F4) == x12(sqrt2() * r3.clone() * Q23::ratio(1, 3))),
        ];
        for (name, ok) in cases {
            out.push(Check::exact(format!("k={k} {name}"), ok, ""));
        }
        let x = b.expand_p(&PVector::from_terms(&[(idx::E1, Q23::one()), (idx::F1, -r3.clone())]));
        let y = b.expand_p(&PVector::from_terms(&[(idx::E4, r3), (idx::F4, Q23::one())]));
        out.push(Check::exact(format!("k={k} [E1 - sqrt3 F1, sqrt3 E4 + F4] = 0"), bracket(&x, &y) == GVector::zero(), ""));
    }
    Ok(out)
}

fn weyl_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let k = cfg.k;
    let report = bk::weyl_verify(k)?;
    let mut out: Vec<Check> = report
        .checks
        .into_iter()
        .map(|c| Check::exact(format!("k={k} {}", c.name), c.pass, c.detail))
        .collect();
    let minus = adjoint_weyl::<Q23>(WeylElement::Minus, k)?;
    let plus = adjoint_weyl::<Q23>(WeylElement::Plus, k)?;
    let id = Mat::identity(P_DIM);
    let tau = HElement::<Q23>::Tau.group_element(0.0)?;
    let ad_tau = GBasis::<Q23>::new(k)?.adjoint_on_p(&tau.a);
    out.push(Check::exact(format!("k={k} Ad(w-) is Q-orthogonal"), &minus.transpose() * &minus == id, ""));
    out.push(Check::exact(format!("k={k} Ad(w+)^2 = I"), &plus * &plus == id, ""));
    out.push(Check::exact(format!("k={k} Ad(w-)^2 = Ad(tau)"), &minus * &minus == ad_tau, ""));
    let wpm = &plus * &minus;
    let sq = &wpm * &wpm;
    out.push(Check::exact(format!("k={k} Ad(w+ w-)^4 = I"), &sq * &sq == id, ""));
    Ok(out)
}

fn appendix_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let table = match &cfg.table {
        Some(path) => CoefficientTable::from_path(path)?,
        None => CoefficientTable::builtin(),
    };
    let cc = CompareConfig { samples: cfg.samples, seed: cfg.seed, tol: cfg.tol, k: cfg.k };
    let mut out = Vec::new();
    for id in ClosedFormId::all() {
        let r = compare(id, cfg.mode, &cc, &table)?;
        let mut detail = format!("{} {} samples", r.samples, cfg.mode);
        if let Some(f) = r.failures.first() {
            detail = format!("{} failures; first at sample {} ({}): engine {} vs closed form {}", r.failures.len(), f.index, f.params, f.engine, f.closed_form);
        }
        if let Some(d) = &r.diagnosis {
            detail.push_str(&format!("; failing monomial {d}"));
        }
        let tol = match cfg.mode {
            NumberMode::Float => cfg.tol,
            NumberMode::Exact => 0.0,
        };
        out.push(Check { name: id.to_string(), pass: r.pass() && r.max_rel_err <= tol, residual: r.max_rel_err, detail });
    }
    let lie = LieData::<Q23>::new(cfg.k)?;
    let mut worst_zero = true;
    for (a, g) in crate::sampling::exact_alpha_points() {
        let f = FSector::new(Jet::new(Q23::ratio(1, 2), Q23::ratio(1, 3)), Jet::new(Q23::ratio(3, 2), Q23::ratio(-1, 5)), Jet::new(Q23::ratio(1, 7), Q23::ratio(2, 9)));
        let p = ReducedProfile::from_alpha_gam(Q23::from_rational(&a), Q23::from_rational(&g), Jet::zero(), f, Jet::new(Q23::one(), Q23::ratio(1, 4)), cfg.k)?;
        worst_zero &= engine_value(ClosedFormId::A2XY, &lie, &p)?.is_zero();
    }
    out.push(Check::exact("A2_XY vanishes at xi = xi' = 0", worst_zero, "exact at the three rational (alpha, gam) points"));
    Ok(out)
}

fn davis_k(cfg: &RunConfig) -> i64 {
    cfg.k as i64
}

fn random_gamma<R: rand::Rng>(rng: &mut R) -> So2Element {
    So2Element::from_angle(open_uniform(rng, -std::f64::consts::PI, std::f64::consts::PI))
}

fn davis_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let n = 50 * cfg.samples as u64;
    let k = davis_k(cfg);
    let mut out = Vec::new();
    for chart in [Chart::UV, Chart::UpVp] {
        let rows: Vec<Result<(f64, bool)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(cfg.seed, &format!("davis/{}", chart.label()), i);
                let p = sh::random_s13_point(&mut rng, chart, k);
                let q = sh::davis_so2_any_chart(&random_gamma(&mut rng), &p)?;
                let m = sh::membership(&q, 1e-10)?;
                Ok((m.residuals.max_abs(), m.stratum == Stratum::S13))
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        let r = worst(rows.iter().map(|x| x.0));
        let all = rows.iter().all(|x| x.1);
        out.push(Check { name: format!("SO(2) preserves S13 and S14 residuals ({})", chart.label()), pass: all && r <= 1e-10, residual: r, detail: format!("{n} points") });
    }
    let gs: Vec<Mat<f64>> = {
        let mut rng = rng_for(cfg.seed, "davis/g2", 0);
        (0..20).map(|_| random_g2_element(&mut rng)).collect()
    };
    let rows: Vec<Result<[f64; 3]>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, "davis/commute", i);
            let chart = if i % 2 == 0 { Chart::UV } else { Chart::UpVp };
            let p = sh::random_sigma15_point(&mut rng, chart, k);
            let g = random_gamma(&mut rng);
            let t = sh::davis_so2(&g, &sh::involution_t(&p))?.max_abs_diff(&sh::involution_t(&sh::davis_so2(&g, &p)?));
            let h = &gs[i as usize % gs.len()];
            let a = sh::davis_so2(&g, &sh::davis_g2(h, &p, 1e-10)?)?;
            let b = sh::davis_g2(h, &sh::davis_so2(&g, &p)?, 1e-10)?;
            let tr = sh::transition(&sh::davis_so2(&g, &p)?)?.max_abs_diff(&sh::davis_so2(&g, &sh::transition(&p)?)?);
            Ok([t, a.max_abs_diff(&b), tr])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    out.push(Check::within("commutes with T", worst(rows.iter().map(|r| r[0])), 1e-10, format!("{n} points")));
    out.push(Check::within("commutes with 20 G2 elements", worst(rows.iter().map(|r| r[1])), 1e-10, format!("{n} points")));
    out.push(Check::within("chart transition intertwines the action", worst(rows.iter().map(|r| r[2])), 1e-10, format!("{n} points")));
    let m = cfg.samples as u64 * 10;
    let rows: Vec<Result<[f64; 4]>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, "davis/orbit", i);
            let g = random_gamma(&mut rng);
            let f = sh::mobius_orbit(&g, (0.0, 1.0), Chart::UV)?;
            let fixed = f.0.abs().max((f.1 - 1.0).abs());
            let x = (open_uniform(&mut rng, -2.0, 2.0), open_uniform(&mut rng, 0.05, 2.0));
            let lhs = sh::phi_orbit(sh::mobius_orbit(&g, x, Chart::UV)?)?;
            let rhs = sh::mobius_orbit(&g, sh::phi_orbit(x)?, Chart::UpVp)?;
            let glue = (lhs.0 - rhs.0).abs().max((lhs.1 - rhs.1).abs());
            let hyp = sh::hyperbolic_defect(&g, x, Chart::UV, 1e-5)?.max(sh::hyperbolic_defect(&g, x, Chart::UpVp, 1e-5)?);
            let chart = if i % 2 == 0 { Chart::UV } else { Chart::UpVp };
            let moved = sh::davis_so2(&g, &sh::ChartPoint::new(chart, Octonion::real(x.0) + Octonion::basis(3).scale(&x.1), Octonion::basis(1), k)?)?;
            let rep = sh::canonical_rep(&moved, 1e-10)?;
            let y = sh::mobius_orbit(&g, x, chart)?;
            Ok([fixed, glue, hyp, (rep.x1 - y.0).abs().max((rep.x2 - y.1).abs())])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let detail = format!("{m} random SO(2) elements");
    out.push(Check::within("Moebius fixed point (0,1)", worst(rows.iter().map(|r| r[0])), 1e-10, detail.clone()));
    out.push(Check::within("gluing map compatibility", worst(rows.iter().map(|r| r[1])), 1e-10, detail.clone()));
    out.push(Check::within("hyperbolic metric invariance", worst(rows.iter().map(|r| r[2])), 1e-6, "finite differences, h = 1e-5"));
    out.push(Check::within("orbit action matches point action", worst(rows.iter().map(|r| r[3])), 1e-10, detail));
    Ok(out)
}

fn brieskorn_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let n = 50 * cfg.samples as u64;
    let d = cfg.k;
    let mut out = Vec::new();
    let t0 = worst((1..=9).map(|d| {
        let t = bk::t0_solve(d);
        (t.powi(d as i32) + t * t - 1.0).abs()
    }));
    out.push(Check::within("t0 residual, d = 1..9", t0, 1e-14, ""));
    let rows: Vec<Result<[f64; 3]>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, "brieskorn", i);
            let p = bk::random_point(&mut rng, d);
            let g = bk::random_group_element(&mut rng);
            let q = bk::act_element(&g, &p, 1e-10)?;
            let z0 = (q.z[0].norm() - p.z[0].norm()).abs();
            let inv = bk::act_element(&g, &bk::involution_i(&p), 1e-10)?.max_abs_diff(&bk::involution_i(&q));
            Ok([q.max_residual().max(p.max_residual()), z0, inv])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    out.push(Check::within("action preserves both defining equations", worst(rows.iter().map(|r| r[0])), 1e-12, format!("{n} samples, d = {d}")));
    out.push(Check::within("action preserves |z0|", worst(rows.iter().map(|r| r[1])), 1e-12, format!("{n} samples")));
    out.push(Check::within("involution commutes with the action", worst(rows.iter().map(|r| r[2])), 1e-12, format!("{n} samples")));

    let tol = 1e-10;
    let mut accepted = 0usize;
    let mut total = 0usize;
    let mut rng = rng_for(cfg.seed, "brieskorn/members", 0);
    for _ in 0..cfg.samples {
        let q: [f64; 4] = std::array::from_fn(|_| open_uniform(&mut rng, -1.0, 1.0));
        let a4 = bk::su2_element(q);
        let theta = open_uniform(&mut rng, -std::f64::consts::PI, std::f64::consts::PI);
        let tau = Mat::diag(&[-1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0]);
        let h_lead = if d % 2 == 1 { &tau * &a4 } else { a4.clone() };
        let mut cases = vec![
            (GroupElement::new((1.0, 0.0), a4.clone()), BasePoint::Regular, IsotropyClass::InH),
            (GroupElement::new((-1.0, 0.0), h_lead), BasePoint::Regular, IsotropyClass::InH),
            (GroupElement::new((theta.cos(), theta.sin()), &bk::plane_rotation(d as f64 * theta) * &a4), BasePoint::Minus, IsotropyClass::InKMinus),
        ];
        for sign in [1.0, -1.0] {
            cases.push((GroupElement::new((sign, 0.0), bk::random_e1_stabilizer(&mut rng, sign)), BasePoint::Plus, IsotropyClass::InKPlus));
        }
        for (g, base, want) in cases {
            total += 1;
            accepted += (bk::isotropy_classify(&g, base, d, tol) == want) as usize;
        }
    }
    out.push(Check::exact("isotropy accepts the pattern families", accepted == total, format!("{accepted}/{total} accepted")));
    let rejected: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, "brieskorn/nonmembers", i);
            let g = bk::random_group_element(&mut rng);
            [BasePoint::Minus, BasePoint::Plus, BasePoint::Regular]
                .into_iter()
                .all(|b| bk::isotropy_classify(&g, b, d, tol) == IsotropyClass::None) as usize
        })
        .sum();
    out.push(Check::exact("isotropy rejects random non-members", rejected as u64 == n, format!("{rejected}/{n} rejected at all base points")));
    Ok(out)
}

fn smoothness_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let k = cfg.k;
    let mut out = Vec::new();
    if k < 3 {
        let b = BoundaryData::from_reduced(0.0, k, 1.0)?;
        let v = smoothness_check(&b, 1e-12);
        out.push(Check::exact("k below 3 is rejected", v.iter().any(|x| x.condition == "k odd and at least 3"), ""));
        return Ok(out);
    }
    let (b1, b2) = beta_window();
    let mut worst_count = 0usize;
    for i in 0..cfg.samples {
        let beta = b1 + (b2 - b1) * i as f64 / cfg.samples.max(2).saturating_sub(1) as f64;
        let b = BoundaryData::from_reduced(beta.min(b2), k, 0.5 + i as f64 / cfg.samples as f64)?;
        worst_count = worst_count.max(smoothness_check(&b, 1e-12).len());
    }
    out.push(Check::exact("reduced profiles pass with zero violations", worst_count == 0, format!("{} profiles across the beta window", cfg.samples)));
    let base = BoundaryData::from_reduced(0.0, k, 1.0)?;
    type Mutation = fn(&mut BoundaryData);
    let mutations: [(&str, Mutation); 14] = [
        ("f1(0) = 0", |b| b.at_zero.f1.value = 0.1),
        ("f12(0) = 0", |b| b.at_zero.f12.value = 0.1),
        ("h1(0) = h2(0)", |b| b.at_zero.h1.value = 1.1),
        ("h12(0) = 0", |b| b.at_zero.h12.value = 0.1),
        ("a12(0) = (sqrt3/2)(a1^2(0) - a2^2(0))", |b| b.at_zero.a12.value += 0.1),
        ("b12(0) = 0", |b| b.at_zero.b12.value = 0.1),
        ("f1'(0) = 4/(k sqrt6)", |b| b.at_zero.f1.deriv *= 1.01),
        ("f2'(0) = 0", |b| b.at_zero.f2.deriv = 0.1),
        ("a1'(0) = 0", |b| b.at_zero.a1.deriv = 0.1),
        ("h2(L) = a2(L)", |b| b.at_l.h2.value = 1.1),
        ("h2'(L) = 0", |b| b.at_l.h2.deriv = 0.1),
        ("a2'(L) = 0", |b| b.at_l.a2.deriv = 0.1),
        ("h1(L) = 0", |b| b.at_l.h1.value = 0.1),
        ("a1(L) = 0", |b| b.at_l.a1.value = 0.1),
    ];
    for (name, mutate) in mutations {
        let mut b = base.clone();
        mutate(&mut b);
        let v = smoothness_check(&b, 1e-12);
        let hit = v.iter().find(|x| x.condition == name);
        out.push(Check {
            name: format!("detects violation of {name}"),
            pass: hit.is_some(),
            residual: hit.map_or(0.0, |x| x.residual),
            detail: v.iter().map(|x| x.condition.as_str()).collect::<Vec<_>>().join("; "),
        });
    }
    let f1p = base.at_zero.f1.deriv;
    let want = 4.0 / (k as f64 * 6f64.sqrt());
    out.push(Check::within("f1'(0) of reduced profiles is 4/(k sqrt6)", (f1p - want).abs(), 1e-15, format!("{f1p}")));
    Ok(out)
}
