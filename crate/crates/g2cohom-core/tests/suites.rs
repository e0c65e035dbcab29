use std::time::Instant;

use g2cohom::scalar::NumberMode;
use g2cohom::suites::{run, RunConfig, Suite};

fn assert_passes(suite: Suite, cfg: &RunConfig) {
    let t = Instant::now();
    let r = run(suite, cfg).unwrap();
    eprintln!("{suite} ({}): {:.2?}", cfg.mode, t.elapsed());
    for c in &r.checks {
        assert!(c.pass, "{suite}: {} residual {:e} {}", c.name, c.residual, c.detail);
    }
    assert!(r.pass());
}

#[test]
fn every_suite_passes_at_default_config() {
    let cfg = RunConfig::default();
    for suite in Suite::ALL {
        assert_passes(suite, &cfg);
    }
}

#[test]
fn exact_mode_suites_pass() {
    let cfg = RunConfig { mode: NumberMode::Exact, samples: 4, ..RunConfig::default() };
    for suite in [Suite::Octonion, Suite::G2, Suite::Appendix] {
        assert_passes(suite, &cfg);
    }
}

#[test]
fn weyl_and_brieskorn_for_other_k() {
    for k in [1, 5, 7] {
        let cfg = RunConfig { k, samples: 2, ..RunConfig::default() };
        for suite in [Suite::Weyl, Suite::Brieskorn, Suite::Davis, Suite::Smoothness] {
            assert_passes(suite, &cfg);
        }
    }
}

#[test]
fn reports_are_deterministic_across_pool_sizes() {
    let base = RunConfig { samples: 4, ..RunConfig::default() };
    for suite in [Suite::Octonion, Suite::Davis, Suite::Brieskorn, Suite::Appendix] {
        let a = run(suite, &RunConfig { jobs: Some(1), ..base.clone() }).unwrap().to_json();
        let b = run(suite, &RunConfig { jobs: Some(3), ..base.clone() }).unwrap().to_json();
        assert_eq!(a, b, "{suite}");
    }
}

#[test]
fn config_parsing() {
    let mut cfg = RunConfig::default();
    cfg.apply_kv("# comment\nseed = 7\nsamples=3\nmode = exact\n\nk = 5 # trailing\n").unwrap();
    assert_eq!((cfg.seed, cfg.samples, cfg.mode, cfg.k), (7, 3, NumberMode::Exact, 5));
    assert!(cfg.clone().apply_kv("colour = red").is_err());
    assert!(cfg.clone().apply_kv("seed").is_err());
    assert!(RunConfig { k: 4, ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { samples: 0, ..RunConfig::default() }.validate().is_err());
    assert!("nope".parse::<Suite>().is_err());
    assert_eq!("weyl".parse::<Suite>().unwrap(), Suite::Weyl);
}

#[test]
fn report_schema() {
    let r = run(Suite::Brackets, &RunConfig::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["suite", "version", "table_hash", "config", "checks", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["suite"], "brackets");
    let c = &v["checks"][0];
    for key in ["name", "pass", "residual", "detail"] {
        assert!(c.get(key).is_some(), "{key}");
    }
}
