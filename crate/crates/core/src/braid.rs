//! Mapping-class moves on monodromy tuples and the orbits they generate.
//!
//! Generators used:
//! - the elementary braid `(τᵢ, τᵢ₊₁) ↦ (τᵢτᵢ₊₁τᵢ⁻¹, τᵢ)`;
//! - sliding the last branch point across the `γ` loop:
//!   `σ ↦ τₙσ`, `τₙ ↦ wτₙw⁻¹` with `w = τₙσρσ⁻¹`;
//! - sliding it across the `δ` loop:
//!   `ρ ↦ σ⁻¹τₙσρ`, `τₙ ↦ v(σ⁻¹τₙσ)v⁻¹` with `v = τₙσρσ⁻¹ρ⁻¹`;
//! - simultaneous conjugation, which is absorbed by working with classes.
//!
//! Each move is induced by an automorphism of the free group fixing the
//! surface relator, so it maps valid tuples to valid tuples.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::{HurwitzTuple, TupleClass};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Braid the branch points at positions `i` and `i + 1` (0-based).
    Braid(usize),
    SlideAcrossGamma,
    SlideAcrossDelta,
}

impl Move {
    /// All generators for a tuple with `n` branch points.
    pub fn generators(n: usize) -> Vec<Move> {
        let mut moves: Vec<Move> = (0..n.saturating_sub(1)).map(Move::Braid).collect();
        if n > 0 {
            moves.push(Move::SlideAcrossGamma);
            moves.push(Move::SlideAcrossDelta);
        }
        moves
    }
}

/// Applies `mv`, asserting the product relation is preserved.
pub fn apply_move(t: &HurwitzTuple, mv: Move) -> Result<HurwitzTuple> {
    let mut branch = t.branch().to_vec();
    let n = branch.len();
    let (mut sigma, mut rho) = (t.sigma().clone(), t.rho().clone());
    match mv {
        Move::Braid(i) => {
            if i + 1 >= n {
                return Err(Error::Malformed(format!("no braid at position {i} with {n} branch points")));
            }
            let (a, b) = (branch[i].clone(), branch[i + 1].clone());
            branch[i] = &(&a * &b) * &a.inverse();
            branch[i + 1] = a;
        }
        Move::SlideAcrossGamma => {
            let last = branch.last().cloned().ok_or_else(|| Error::Malformed("slide needs a branch point".into()))?;
            let w = &(&(&last * &sigma) * &rho) * &sigma.inverse();
            branch[n - 1] = &(&w * &last) * &w.inverse();
            sigma = &last * &sigma;
        }
        Move::SlideAcrossDelta => {
            let last = branch.last().cloned().ok_or_else(|| Error::Malformed("slide needs a branch point".into()))?;
            let v = &(&(&(&last * &sigma) * &rho) * &sigma.inverse()) * &rho.inverse();
            let moved = last.conjugate_by(&sigma);
            branch[n - 1] = &(&v * &moved) * &v.inverse();
            rho = &moved * &rho;
        }
    }
    let out = HurwitzTuple::from_parts(t.degree(), branch, sigma, rho);
    if t.relation_holds() && !out.relation_holds() {
        return Err(Error::Internal(format!("{mv:?} broke the product relation on {t:?}")));
    }
    Ok(out)
}

/// Partition of a list of classes into move orbits.
#[derive(Clone, Debug, Serialize)]
pub struct Orbits {
    /// `orbit_of[k]` is the orbit index of class `k`.
    pub orbit_of: Vec<usize>,
    /// Class indices of each orbit, ordered by their least member.
    pub members: Vec<Vec<usize>>,
}

impl Orbits {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the move group on `classes`, which must be closed under the moves
/// (as the output of [`crate::hurwitz::enumerate_simple_classes`] is).
pub fn braid_orbits(classes: &[TupleClass]) -> Result<Orbits> {
    let index: HashMap<&HurwitzTuple, usize> = classes
        .iter()
        .enumerate()
        .map(|(k, c)| (&c.representative, k))
        .collect();
    let edges: Vec<(usize, usize)> = classes
        .par_iter()
        .enumerate()
        .map(|(k, c)| -> Result<Vec<(usize, usize)>> {
            let t = &c.representative;
            let group = Permutation::all(t.degree());
            let mut out = Vec::new();
            for mv in Move::generators(t.branch_count()) {
                let image = apply_move(t, mv)?;
                let canon = group
                    .iter()
                    .map(|g| image.conjugate_by(g))
                    .min()
                    .expect("symmetric group is nonempty");
                let j = *index.get(&canon).ok_or_else(|| {
                    Error::Internal(format!("move {mv:?} left the class list: {canon:?}"))
                })?;
                out.push((k, j));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut parent: Vec<usize> = (0..classes.len()).collect();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut root_to_orbit: HashMap<usize, usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let orbit_of = (0..classes.len())
        .map(|k| {
            let r = find(&mut parent, k);
            let id = *root_to_orbit.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[id].push(k);
            id
        })
        .collect();
    Ok(Orbits { orbit_of, members })
}
