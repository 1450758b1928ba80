//! Permutations of `{1..d}`.
//!
//! Products are read left to right: `p * q` applies `p` first, then `q`. This
//! is the convention under which a monodromy representation of path classes
//! (concatenated left to right) is a homomorphism.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1..d}`, stored 0-based. Serialized as its 1-based image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = 255;

    pub fn identity(degree: usize) -> Self {
        assert!(degree <= Self::MAX_DEGREE);
        Self {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from a 1-based one-line image array.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > Self::MAX_DEGREE {
            return Err(Error::Malformed(format!("permutation degree {d} out of range")));
        }
        let mut seen = vec![false; d];
        let mut out = Vec::with_capacity(d);
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::Malformed(format!(
                    "{images:?} is not a bijection of 1..{d}"
                )));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Self { images: out })
    }

    /// Builds a permutation of degree `d` from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree || touched[x - 1] {
                    return Err(Error::Malformed(format!(
                        "bad cycle entry {x} for degree {degree}"
                    )));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// The transposition swapping 1-based points `i` and `j`.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Self {
        Self::from_cycles(degree, &[&[i, j]]).expect("transposition entries in range")
    }

    /// The long cycle `(1 2 ... d)`.
    pub fn long_cycle(degree: usize) -> Self {
        let cycle: Vec<usize> = (1..=degree).collect();
        Self::from_cycles(degree, &[&cycle]).expect("long cycle in range")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of the 0-based point `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// `g⁻¹ · self · g`: relabels the points of `self` by `g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        let mut out = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Self { images: out }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_transposition(&self) -> bool {
        let moved = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x as usize)
            .count();
        moved == 2
    }

    /// All permutations of `{1..d}` in lexicographic order of their image arrays.
    pub fn all(degree: usize) -> Vec<Self> {
        let mut current: Vec<u8> = (0..degree as u8).collect();
        let mut out = vec![Self {
            images: current.clone(),
        }];
        // next lexicographic permutation
        while let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) {
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot successor exists");
            current.swap(i - 1, j);
            current[i..].reverse();
            out.push(Self {
                images: current.clone(),
            });
        }
        out
    }

    /// All transpositions of `{1..d}`, ordered by their (i, j) pair.
    pub fn transpositions(degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..=degree {
            for j in i + 1..=degree {
                out.push(Self::transposition(degree, i, j));
            }
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Self) -> Permutation {
        self.then(rhs)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_images(&v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Order of the subgroup of `S_d` generated by `gens`, by closure under right multiplication.
pub fn generated_order(degree: usize, gens: &[Permutation]) -> usize {
    use std::collections::HashSet;
    let id = Permutation::identity(degree);
    let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Whether the group generated by `gens` acts transitively on `{1..d}`.
pub fn is_transitive(degree: usize, gens: &[Permutation]) -> bool {
    if degree == 0 {
        return false;
    }
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == degree
}
