use g2cohom::appendix_suite::{compare, ClosedFormId, CoefficientTable, CompareConfig};
use g2cohom::scalar::NumberMode;

#[test]
fn every_identity_matches_in_float_mode() {
    let table = CoefficientTable::builtin();
    let cfg = CompareConfig::default();
    for id in ClosedFormId::all() {
        let r = compare(id, NumberMode::Float, &cfg, &table).unwrap();
        eprintln!("{id}: {:.3e}", r.max_rel_err);
        assert!(r.pass(), "{id}: {:?}", r.failures.first());
    }
}

#[test]
fn every_identity_matches_exactly() {
    let table = CoefficientTable::builtin();
    let cfg = CompareConfig { samples: 6, ..CompareConfig::default() };
    for id in ClosedFormId::all() {
        let r = compare(id, NumberMode::Exact, &cfg, &table).unwrap();
        assert!(r.pass(), "{id}: {:?} {:?}", r.failures.first(), r.diagnosis);
    }
}
