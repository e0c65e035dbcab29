//! The fifteen acceptance criteria, one pass/fail line each.

use std::time::{Duration, Instant};

use g2cohom::appendix_suite::{compare, ClosedFormId, CoefficientTable, CompareConfig};
use g2cohom::metric_engine::alpha_of_beta;
use g2cohom::obstruction::{
    alpha_grid, leading_coefficients, p_of_beta, rational_alpha_samples, smoothness_check, verdict, BoundaryData,
    QuarticPsi, Verdict,
};
use g2cohom::scalar::{Field, GammaCtx, NumberMode, QGam, QSqrt3, Sqrt3Field};
use g2cohom::suites::{run, Report, RunConfig, Suite};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn failing_checks(r: &Report) -> String {
    let bad: Vec<String> = r.checks.iter().filter(|c| !c.pass).map(|c| format!("{} ({:e}) {}", c.name, c.residual, c.detail)).collect();
    if bad.is_empty() {
        format!("{}/{} checks", r.summary.passed, r.summary.total)
    } else {
        bad.join("; ")
    }
}

fn suite(s: Suite, cfg: &RunConfig) -> Report {
    run(s, cfg).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn octonion_axioms() -> Outcome {
    let float = RunConfig { jobs: Some(1), ..RunConfig::default() };
    let t = Instant::now();
    let f = suite(Suite::Octonion, &float);
    let elapsed = t.elapsed();
    let e = suite(Suite::Octonion, &RunConfig { mode: NumberMode::Exact, ..RunConfig::default() });
    let worst = f.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let pass = f.pass() && e.pass() && elapsed < Duration::from_secs(1);
    Outcome::new(pass, format!("10^4 pairs; float worst {worst:.2e} in {elapsed:.2?}; exact {}", failing_checks(&e)))
}

fn g2_derivations() -> Outcome {
    let r = suite(Suite::G2, &RunConfig { mode: NumberMode::Exact, ..RunConfig::default() });
    Outcome::new(r.pass(), format!("14 matrices x 100 rational pairs; {}", failing_checks(&r)))
}

fn basis_and_brackets() -> Outcome {
    let r = suite(Suite::Brackets, &RunConfig::default());
    Outcome::new(r.pass(), format!("k in {{1,3,5,7}}, exact; {}", failing_checks(&r)))
}

fn compare_group(ids: &[ClosedFormId]) -> (bool, f64, bool) {
    let table = CoefficientTable::builtin();
    let cfg = CompareConfig::default();
    let mut worst = 0.0f64;
    let mut float_ok = true;
    let mut exact_ok = true;
    for &id in ids {
        let f = compare(id, NumberMode::Float, &cfg, &table).unwrap();
        worst = worst.max(f.max_rel_err);
        float_ok &= f.pass() && f.max_rel_err <= 1e-9;
        let x = compare(id, NumberMode::Exact, &CompareConfig { samples: 3, ..cfg.clone() }, &table).unwrap();
        exact_ok &= x.pass();
    }
    (float_ok, worst, exact_ok)
}

fn appendix_a1() -> Outcome {
    let (f, worst, x) = compare_group(&[ClosedFormId::A1YE, ClosedFormId::A1YF, ClosedFormId::A1YEF]);
    Outcome::new(f && x, format!("20 random beta, max rel err {worst:.2e}; exact at beta in {{0, 1/sqrt3, 2/sqrt3}}: {x}"))
}

fn appendix_a2() -> Outcome {
    let (f, worst, x) = compare_group(&[ClosedFormId::A2XY]);
    let r = suite(Suite::Appendix, &RunConfig { mode: NumberMode::Exact, samples: 3, ..RunConfig::default() });
    let zero = r.checks.iter().any(|c| c.name.starts_with("A2_XY vanishes") && c.pass);
    Outcome::new(f && x && zero, format!("20 profiles, max rel err {worst:.2e}; exact zero at xi = xi' = 0: {zero}"))
}

fn appendix_a3() -> Outcome {
    let ids: Vec<_> = (1..=10).map(ClosedFormId::R).collect();
    let (f, worst, x) = compare_group(&ids);
    Outcome::new(f && x, format!("R1..R10 at 20 profiles, max rel err {worst:.2e}; exact at alpha = 1: {x}"))
}

fn double_root_identities() -> Outcome {
    let mut ok = true;
    for a in rational_alpha_samples(25) {
        let ctx = GammaCtx::new(a).unwrap();
        let q = QuarticPsi::from_ctx(&ctx);
        let x = q.x_alpha();
        let [v, d1, d2] = q.psi_jet(&x);
        let (alpha, g) = (ctx.alpha(), ctx.gam());
        let i = QGam::from_i64;
        let second = QGam::ratio(8, 3) - i(3) / (i(2) * alpha.clone());
        let printed = (i(16) * alpha.clone() - i(9))
            * (i(9) - i(312) * alpha.clone() + i(656) * alpha.square() - i(48) * g.clone() + i(320) * alpha.clone() * g)
            / (i(36) * alpha.clone() * (i(1) + i(4) * alpha).powi(4));
        ok &= v.is_zero() && d1.is_zero() && d2 == second && q.eval(&x).1 == printed;
    }
    let grid = alpha_grid(1e-3).unwrap();
    let min = grid
        .iter()
        .map(|&a| {
            let q = QuarticPsi::from_alpha(a).unwrap();
            q.eval(&q.x_alpha()).1
        })
        .fold(f64::INFINITY, f64::min);
    Outcome::new(ok && min > 0.0, format!("exact at 25 rational alpha: {ok}; min Psi2(x_alpha) on {} grid points {min:.4e}", grid.len()))
}

fn leading_coefficient_identities() -> Outcome {
    let table = CoefficientTable::builtin();
    let mut ok = true;
    let mut count = 0;
    for a in rational_alpha_samples(25) {
        let ctx = GammaCtx::new(a).unwrap();
        for c in leading_coefficients(&ctx, &table).unwrap() {
            ok &= c.pass();
            count += 1;
        }
    }
    Outcome::new(ok, format!("c0..c4 at 25 rational alpha ({count} coefficient checks), constant, xi and f1 f1' xi' parts"))
}

fn window_reproduction() -> Outcome {
    let b1 = 7.0 * 3f64.sqrt() / 3.0 - 2.0 * 39f64.sqrt() / 3.0;
    let p = p_of_beta(&b1).unwrap();
    let a = alpha_of_beta(&b1).unwrap();
    let target = 7.0 / 12.0 + 13f64.sqrt() / 6.0;
    let inv = QSqrt3::one() / QSqrt3::sqrt3();
    let exact = alpha_of_beta(&inv).unwrap() == QSqrt3::ratio(3, 4);
    let pass = p.abs() <= 1e-10 && (a - target).abs() <= 1e-10 && exact && (a - 1.184).abs() < 5e-4;
    Outcome::new(pass, format!("|p(beta1)| = {:.1e}; alpha(beta1) = {a:.12}; alpha(1/sqrt3) = 3/4 exactly: {exact}", p.abs()))
}

fn obstruction_verdicts() -> Outcome {
    let mut ok = true;
    for k in [3, 5, 7, 9] {
        let r = verdict(k, 1e-3).unwrap();
        ok &= r.verdict == Verdict::Infeasible && (r.chained_bound.k_bound - 2.0).abs() < 1e-12;
    }
    let short = verdict(3, 1e-3).unwrap().short_bound;
    let expr = 8.0 / 3.0 * (7.0 / 12.0 + 13f64.sqrt() / 6.0);
    let short_ok = (short.max - expr).abs() <= 1e-4 && (short.max - expr).abs() <= 1e-12 && (short.max - 3.16).abs() < 5e-3;
    let rules = !short.rules_out_k && verdict(5, 1e-3).unwrap().short_bound.rules_out_k;
    let one = verdict(1, 1e-3).unwrap().verdict == Verdict::NoContradiction;
    Outcome::new(
        ok && short_ok && rules && one,
        format!("k in {{3,5,7,9}} infeasible with k <= 2: {ok}; short bound max {:.6} = (8/3)(7/12 + sqrt13/6), rules out 5 not 3: {rules}; k = 1 no contradiction: {one}", short.max),
    )
}

fn weyl_relations() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for k in [3, 5, 7] {
        let r = suite(Suite::Weyl, &RunConfig { k, ..RunConfig::default() });
        ok &= r.pass();
        detail.push(format!("k={k}: {}", failing_checks(&r)));
    }
    Outcome::new(ok, detail.join(", "))
}

fn davis_action() -> Outcome {
    let r = suite(Suite::Davis, &RunConfig::default());
    Outcome::new(r.pass(), format!("1000 points per chart; {}", failing_checks(&r)))
}

fn brieskorn_model() -> Outcome {
    let r = suite(Suite::Brieskorn, &RunConfig::default());
    Outcome::new(r.pass(), format!("1000 samples; {}", failing_checks(&r)))
}

fn smoothness_validator() -> Outcome {
    let r = suite(Suite::Smoothness, &RunConfig::default());
    let b = BoundaryData::from_reduced(0.0, 3, 1.0).unwrap();
    let clean = smoothness_check(&b, 1e-12).is_empty();
    Outcome::new(r.pass() && clean, format!("{}; reduced profile violations: {}", failing_checks(&r), if clean { 0 } else { 1 }))
}

fn full_run_and_determinism() -> Outcome {
    let cfg = RunConfig { jobs: Some(1), ..RunConfig::default() };
    let t = Instant::now();
    let first: Vec<Report> = Suite::ALL.iter().map(|&s| suite(s, &cfg)).collect();
    let elapsed = t.elapsed();
    let second: Vec<String> = Suite::ALL.iter().map(|&s| suite(s, &cfg).to_json()).collect();
    let same = first.iter().zip(&second).all(|(a, b)| &a.to_json() == b);
    let all = first.iter().all(Report::pass);
    Outcome::new(all && same && elapsed < Duration::from_secs(60), format!("8 suites single-threaded in {elapsed:.2?}; all pass: {all}; byte-identical rerun: {same}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("octonion axioms", octonion_axioms),
        ("g2 derivation oracle", g2_derivations),
        ("basis and brackets", basis_and_brackets),
        ("singular-orbit closed forms", appendix_a1),
        ("principal-orbit XY closed form", appendix_a2),
        ("R1..R10 via polarization", appendix_a3),
        ("double-root identities", double_root_identities),
        ("leading coefficients", leading_coefficient_identities),
        ("admissible beta window", window_reproduction),
        ("obstruction verdicts", obstruction_verdicts),
        ("Weyl group relations", weyl_relations),
        ("Davis action", davis_action),
        ("Brieskorn model", brieskorn_model),
        ("smoothness validator", smoothness_validator),
        ("full run and determinism", full_run_and_determinism),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += !o.pass as usize;
        println!("[{}] {:02} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
