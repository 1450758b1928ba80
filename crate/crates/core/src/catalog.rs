//! JSON-lines persistence for enumerated covers.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::braid::braid_orbits;
use crate::error::{Error, Result};
use crate::hurwitz::{enumerate_simple_classes, HurwitzTuple};
use crate::prym::analyze;
use crate::symplectic::PolarizationType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub tuple: HurwitzTuple,
    pub genus: usize,
    pub coker_order: i64,
    pub prym_m: i64,
    pub prym_type: PolarizationType,
    pub orbit_id: usize,
    pub timestamp: u64,
}

impl CatalogEntry {
    pub fn compute(tuple: HurwitzTuple, orbit_id: usize, timestamp: u64) -> Result<Self> {
        let r = analyze(&tuple)?;
        Ok(Self {
            genus: r.genus,
            coker_order: r.coker_order,
            prym_m: r.prym_m,
            prym_type: r.prym_type,
            tuple,
            orbit_id,
            timestamp,
        })
    }

    /// Names of the stored fields that disagree with a fresh computation.
    pub fn mismatches(&self) -> Result<Vec<&'static str>> {
        let r = analyze(&self.tuple)?;
        let mut bad = Vec::new();
        if r.genus != self.genus {
            bad.push("genus");
        }
        if r.coker_order != self.coker_order {
            bad.push("coker_order");
        }
        if r.prym_m != self.prym_m {
            bad.push("prym_m");
        }
        if r.prym_type != self.prym_type {
            bad.push("prym_type");
        }
        Ok(bad)
    }
}

/// Every class of degree `d` with `n` branch points, tagged with its move orbit.
pub fn build(degree: usize, n: usize, guard: u128, timestamp: u64) -> Result<Vec<CatalogEntry>> {
    let classes = enumerate_simple_classes(degree, n, guard)?;
    if classes.is_empty() {
        return Ok(Vec::new());
    }
    let orbits = braid_orbits(&classes)?;
    classes
        .into_iter()
        .zip(orbits.orbit_of)
        .map(|(c, o)| CatalogEntry::compute(c.representative, o, timestamp))
        .collect()
}

pub fn write_to<W: Write>(entries: &[CatalogEntry], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for e in entries {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write(entries: &[CatalogEntry], path: &Path) -> Result<()> {
    write_to(entries, File::create(path)?)
}

pub fn read_from<R: Read>(input: R) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (k, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line)
            .map_err(|e| Error::Malformed(format!("catalog line {}: {e}", k + 1)))?;
        out.push(entry);
    }
    Ok(out)
}

pub fn read(path: &Path) -> Result<Vec<CatalogEntry>> {
    read_from(File::open(path)?)
}

/// Recomputes every entry; fails on the first disagreement.
pub fn verify(entries: &[CatalogEntry]) -> Result<()> {
    for (k, e) in entries.iter().enumerate() {
        let bad = e.mismatches()?;
        if !bad.is_empty() {
            return Err(Error::Constraint(format!(
                "catalog entry {k} disagrees on {}",
                bad.join(", ")
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::DEFAULT_GUARD;

    #[test]
    fn degree_two_catalog() {
        let entries = build(2, 2, DEFAULT_GUARD, 7).unwrap();
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| e.genus == 2 && e.orbit_id == 0 && e.timestamp == 7));
        assert!(build(1, 2, DEFAULT_GUARD, 0).unwrap().is_empty());
    }

    #[test]
    fn round_trip_in_memory() {
        let entries = build(3, 2, DEFAULT_GUARD, 0).unwrap();
        let mut buf = Vec::new();
        write_to(&entries, &mut buf).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), entries.len());
        let back = read_from(buf.as_slice()).unwrap();
        assert_eq!(back, entries);
        verify(&back).unwrap();
    }

    #[test]
    fn tampering_detected() {
        let mut entries = build(2, 2, DEFAULT_GUARD, 0).unwrap();
        entries[1].coker_order = 2;
        assert!(matches!(verify(&entries), Err(Error::Constraint(_))));
        assert!(read_from(&b"{\"tuple\": 3}\n"[..]).is_err());
    }
}
