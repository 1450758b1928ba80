//! Monodromy tuples of covers of an elliptic curve.
//!
//! A tuple `(τ₁, …, τₙ, σ, ρ)` records the monodromy around `n` branch points
//! and along the two handle loops. It describes a cover exactly when
//! `τ₁⋯τₙ · σρσ⁻¹ρ⁻¹ = id`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};

/// Default search bound on `(d!)^(n+2)` for exhaustive enumeration.
pub const DEFAULT_GUARD: u128 = 1_000_000_000;

/// Environment variable that overrides [`DEFAULT_GUARD`].
pub const GUARD_ENV: &str = "PRYMLAB_GUARD";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTuple", into = "RawTuple")]
pub struct HurwitzTuple {
    degree: usize,
    branch: Vec<Permutation>,
    sigma: Permutation,
    rho: Permutation,
}

#[derive(Serialize, Deserialize)]
struct RawTuple {
    degree: usize,
    branch: Vec<Permutation>,
    sigma: Permutation,
    rho: Permutation,
}

impl TryFrom<RawTuple> for HurwitzTuple {
    type Error = Error;

    fn try_from(raw: RawTuple) -> Result<Self> {
        let t = HurwitzTuple::new(raw.branch, raw.sigma, raw.rho)?;
        if t.degree != raw.degree {
            return Err(Error::Malformed(format!(
                "declared degree {} but permutations have degree {}",
                raw.degree, t.degree
            )));
        }
        Ok(t)
    }
}

impl From<HurwitzTuple> for RawTuple {
    fn from(t: HurwitzTuple) -> Self {
        RawTuple {
            degree: t.degree,
            branch: t.branch,
            sigma: t.sigma,
            rho: t.rho,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub relation_ok: bool,
    pub transitive: bool,
    pub simple: bool,
}

impl ValidationReport {
    pub fn is_connected_cover(&self) -> bool {
        self.relation_ok && self.transitive
    }
}

impl HurwitzTuple {
    /// Assembles a tuple; all entries must share one degree `d ≥ 2`.
    /// The product relation is not required here, see [`HurwitzTuple::validate`].
    pub fn new(branch: Vec<Permutation>, sigma: Permutation, rho: Permutation) -> Result<Self> {
        let degree = sigma.degree();
        if degree < 2 {
            return Err(Error::Malformed(format!("cover degree must be at least 2, got {degree}")));
        }
        if rho.degree() != degree || branch.iter().any(|t| t.degree() != degree) {
            return Err(Error::Malformed("entries of a tuple must share one degree".into()));
        }
        Ok(Self::from_parts(degree, branch, sigma, rho))
    }

    /// No degree checks; used for the degree-one base and internal rewrites.
    pub(crate) fn from_parts(
        degree: usize,
        branch: Vec<Permutation>,
        sigma: Permutation,
        rho: Permutation,
    ) -> Self {
        Self {
            degree,
            branch,
            sigma,
            rho,
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn branch(&self) -> &[Permutation] {
        &self.branch
    }

    pub fn branch_count(&self) -> usize {
        self.branch.len()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn rho(&self) -> &Permutation {
        &self.rho
    }

    /// `τ₁⋯τₙ·σρσ⁻¹ρ⁻¹`
    pub fn relation_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for t in &self.branch {
            acc = &acc * t;
        }
        &acc * &commutator(&self.sigma, &self.rho)
    }

    pub fn relation_holds(&self) -> bool {
        self.relation_product().is_identity()
    }

    pub fn generators(&self) -> Vec<Permutation> {
        let mut g = self.branch.clone();
        g.push(self.sigma.clone());
        g.push(self.rho.clone());
        g
    }

    pub fn is_transitive(&self) -> bool {
        perm::is_transitive(self.degree, &self.generators())
    }

    pub fn is_simple(&self) -> bool {
        self.branch.iter().all(Permutation::is_transposition)
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            relation_ok: self.relation_holds(),
            transitive: self.is_transitive(),
            simple: self.is_simple(),
        }
    }

    /// Errors unless the tuple satisfies the relation and is transitive.
    pub fn require_connected(&self) -> Result<()> {
        if !self.relation_holds() {
            return Err(Error::Malformed(format!(
                "tuple violates the product relation (product is {})",
                self.relation_product()
            )));
        }
        if !self.is_transitive() {
            return Err(Error::Disconnected {
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Genus of the covering surface, from `2g − 2 = Σ (d − #cycles(τᵢ))`.
    pub fn genus(&self) -> Result<usize> {
        self.require_connected()?;
        let ramification: usize = self
            .branch
            .iter()
            .map(|t| self.degree - t.cycle_count())
            .sum();
        if !ramification.is_multiple_of(2) {
            return Err(Error::Internal("odd total ramification for a valid tuple".into()));
        }
        Ok(ramification / 2 + 1)
    }

    pub fn monodromy_group_order(&self) -> usize {
        perm::generated_order(self.degree, &self.generators())
    }

    /// Simultaneous conjugation `x ↦ g⁻¹xg`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        Self {
            degree: self.degree,
            branch: self.branch.iter().map(|t| t.conjugate_by(g)).collect(),
            sigma: self.sigma.conjugate_by(g),
            rho: self.rho.conjugate_by(g),
        }
    }

    /// The lexicographically least simultaneous conjugate and the size of the
    /// conjugation orbit.
    pub fn canonical(&self) -> (Self, usize) {
        canonicalize(self, &Permutation::all(self.degree))
    }
}

impl std::fmt::Debug for HurwitzTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "d={} τ=[", self.degree)?;
        for (i, t) in self.branch.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "] σ={} ρ={}", self.sigma, self.rho)
    }
}

/// `σρσ⁻¹ρ⁻¹`
pub fn commutator(sigma: &Permutation, rho: &Permutation) -> Permutation {
    &(&(sigma * rho) * &sigma.inverse()) * &rho.inverse()
}

fn canonicalize(t: &HurwitzTuple, group: &[Permutation]) -> (HurwitzTuple, usize) {
    let mut conjugates: Vec<HurwitzTuple> = group.iter().map(|g| t.conjugate_by(g)).collect();
    conjugates.sort_unstable();
    conjugates.dedup();
    let size = conjugates.len();
    (conjugates.swap_remove(0), size)
}

/// A conjugation class of tuples, held by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleClass {
    pub representative: HurwitzTuple,
    pub orbit_size: usize,
}

/// The explicit tuple with `n` copies of `(12)`, `σ = (12…d)` and `ρ = σ⁻¹`.
pub fn sample_tuple(degree: usize, n: usize) -> Result<HurwitzTuple> {
    if degree < 2 {
        return Err(Error::Malformed(format!("degree must be at least 2, got {degree}")));
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Malformed(format!(
            "branch count must be even and at least 2, got {n}"
        )));
    }
    let swap = Permutation::transposition(degree, 1, 2);
    let sigma = Permutation::long_cycle(degree);
    let rho = sigma.inverse();
    HurwitzTuple::new(vec![swap; n], sigma, rho)
}

/// Active candidate bound: `PRYMLAB_GUARD` if set and parseable, else [`DEFAULT_GUARD`].
pub fn guard_from_env() -> u128 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&g: &u128| g > 0)
        .unwrap_or(DEFAULT_GUARD)
}

/// `(d!)^(n+2)`, saturating.
pub fn candidate_count(degree: usize, n: usize) -> u128 {
    let fact = (1..=degree as u128).fold(1u128, |a, k| a.saturating_mul(k));
    (0..n + 2).fold(1u128, |a, _| a.saturating_mul(fact))
}

/// All connected simple tuples of degree `d` with `n` branch points, one per
/// conjugation class, sorted by canonical representative.
pub fn enumerate_simple_classes(degree: usize, n: usize, guard: u128) -> Result<Vec<TupleClass>> {
    if !n.is_multiple_of(2) {
        return Err(Error::Malformed(format!("branch count must be even, got {n}")));
    }
    if degree < 2 {
        // S₁ has no transpositions and no connected cover of degree 1 is simple-branched
        return Ok(Vec::new());
    }
    if degree > 8 {
        return Err(Error::Guard {
            candidates: candidate_count(degree, n),
            bound: guard,
        });
    }
    let candidates = candidate_count(degree, n);
    if candidates > guard {
        return Err(Error::Guard {
            candidates,
            bound: guard,
        });
    }

    let group = Permutation::all(degree);
    let mut by_commutator: HashMap<Permutation, Vec<(usize, usize)>> = HashMap::new();
    for (i, s) in group.iter().enumerate() {
        for (j, r) in group.iter().enumerate() {
            by_commutator.entry(commutator(s, r)).or_default().push((i, j));
        }
    }

    let swaps = Permutation::transpositions(degree);
    let sequences = swaps.len().pow(n as u32);
    let found: BTreeSet<(HurwitzTuple, usize)> = (0..sequences)
        .into_par_iter()
        .flat_map_iter(|mut code| {
            let mut branch = Vec::with_capacity(n);
            let mut product = Permutation::identity(degree);
            for _ in 0..n {
                let t = &swaps[code % swaps.len()];
                code /= swaps.len();
                product = &product * t;
                branch.push(t.clone());
            }
            let pairs = by_commutator
                .get(&product.inverse())
                .map(Vec::as_slice)
                .unwrap_or(&[]);
            let group = &group;
            pairs.iter().filter_map(move |&(i, j)| {
                let t = HurwitzTuple::from_parts(
                    degree,
                    branch.clone(),
                    group[i].clone(),
                    group[j].clone(),
                );
                t.is_transitive().then(|| canonicalize(&t, group))
            })
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|(representative, orbit_size)| TupleClass {
            representative,
            orbit_size,
        })
        .collect())
}
