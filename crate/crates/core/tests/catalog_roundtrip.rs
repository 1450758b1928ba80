use prymlab::catalog::{self, CatalogEntry};
use prymlab::hurwitz::DEFAULT_GUARD;

#[test]
fn file_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (d, n) in [(2, 4), (3, 2), (3, 4)] {
        let path = dir.path().join(format!("d{d}n{n}.jsonl"));
        let entries = catalog::build(d, n, DEFAULT_GUARD, 1_700_000_000).unwrap();
        catalog::write(&entries, &path).unwrap();
        let back = catalog::read(&path).unwrap();
        assert_eq!(back, entries);
        catalog::verify(&back).unwrap();
        for e in &back {
            let fresh = CatalogEntry::compute(e.tuple.clone(), e.orbit_id, e.timestamp).unwrap();
            assert_eq!(&fresh, e);
        }
        let rewritten = dir.path().join("again.jsonl");
        catalog::write(&back, &rewritten).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&rewritten).unwrap());
    }
}

#[test]
fn build_is_deterministic() {
    let a = catalog::build(3, 4, DEFAULT_GUARD, 0).unwrap();
    let b = catalog::build(3, 4, DEFAULT_GUARD, 0).unwrap();
    assert_eq!(a, b);
}
