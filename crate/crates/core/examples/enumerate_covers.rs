//! Count connected simply branched covers and their braid orbits.
//!
//! `cargo run --example enumerate_covers -- 3 4`

use prymlab::braid::braid_orbits;
use prymlab::hurwitz::{candidate_count, enumerate_simple_classes, guard_from_env};

fn main() -> prymlab::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let d = args.next().unwrap_or(3);
    let n = args.next().unwrap_or(4);

    println!("searching {} candidates", candidate_count(d, n));
    let classes = enumerate_simple_classes(d, n, guard_from_env())?;
    let weighted: usize = classes.iter().map(|c| c.orbit_size).sum();
    println!("d={d} n={n}: {} classes, {weighted} tuples", classes.len());

    let orbits = braid_orbits(&classes)?;
    println!("orbit sizes {:?}", orbits.sizes());
    if let Some(c) = classes.first() {
        let t = &c.representative;
        println!("first class: genus {} monodromy order {}", t.genus()?, t.monodromy_group_order());
        println!("{}", serde_json::to_string(t)?);
    }
    Ok(())
}
