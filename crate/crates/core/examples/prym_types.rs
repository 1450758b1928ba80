//! Prym lattice types for every cover in a small family, grouped by the
//! order of the push-forward cokernel.

use std::collections::BTreeMap;

use prymlab::hurwitz::{enumerate_simple_classes, sample_tuple, DEFAULT_GUARD};
use prymlab::prym::analyze;

fn main() -> prymlab::Result<()> {
    let r = analyze(&sample_tuple(3, 6)?)?;
    println!("sample (3, 6): genus {} type {} coker {}", r.genus, r.prym_type, r.coker_order);
    println!("intersection form:\n{:?}", r.intersection);

    let mut table: BTreeMap<(i64, String), usize> = BTreeMap::new();
    for c in enumerate_simple_classes(4, 2, DEFAULT_GUARD)? {
        let r = analyze(&c.representative)?;
        assert!(r.matches_prediction(4));
        *table.entry((r.coker_order, r.prym_type.to_string())).or_default() += 1;
    }
    for ((coker, kind), count) in table {
        println!("degree 4: coker {coker} type {kind} x{count}");
    }
    Ok(())
}
