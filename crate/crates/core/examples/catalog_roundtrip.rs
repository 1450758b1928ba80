//! Write a catalog to disk, read it back and verify every entry.

use prymlab::catalog;
use prymlab::hurwitz::guard_from_env;

fn main() -> prymlab::Result<()> {
    let path = std::env::temp_dir().join("prymlab-d3n4.jsonl");
    let entries = catalog::build(3, 4, guard_from_env(), 0)?;
    catalog::write(&entries, &path)?;
    let back = catalog::read(&path)?;
    catalog::verify(&back)?;
    println!("{} entries round-tripped through {}", back.len(), path.display());
    if let Some(e) = back.first() {
        println!("{}", serde_json::to_string_pretty(e)?);
    }
    Ok(())
}
