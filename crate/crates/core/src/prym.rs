//! The Prym lattice `ker(π⋆) ⊂ H₁(X, Z)` and its polarization type.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::HomologyData;
use crate::hurwitz::HurwitzTuple;
use crate::intmat::{kernel, smith, IntMatrix};
use crate::symplectic::{PolarizationType, SkewLattice};

/// Restriction of `form` to the kernel of `map`, with the kernel basis (columns).
pub fn kernel_lattice(form: &IntMatrix, map: &IntMatrix) -> Result<(IntMatrix, SkewLattice)> {
    let k = kernel(map);
    let lattice = SkewLattice::new(form.congruence(&k))?;
    Ok((k, lattice))
}

pub fn prym_lattice(h: &HomologyData) -> Result<SkewLattice> {
    Ok(kernel_lattice(&h.intersection, &h.push)?.1)
}

/// `m` times a chain whose first entry is 1.
///
/// A rank-two lattice has a single divisor, which is reported as the type with `m = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrymType {
    pub m: i64,
    pub kind: PolarizationType,
}

pub fn prym_type_of(lattice: &SkewLattice) -> Result<PrymType> {
    let divisors = lattice.alternating_divisors()?;
    if divisors.genus() <= 1 {
        return Ok(PrymType { m: 1, kind: divisors });
    }
    let (m, kind) = divisors.normalized();
    Ok(PrymType { m, kind })
}

/// `H₁(Y, Z) / π⋆H₁(X, Z)` as its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cokernel {
    pub order: i64,
    pub invariants: Vec<i64>,
}

impl Cokernel {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

pub fn pushforward_cokernel(h: &HomologyData) -> Result<Cokernel> {
    let s = smith(&h.push);
    if s.rank() < 2 {
        return Err(Error::Degenerate("push-forward has infinite cokernel".into()));
    }
    Ok(Cokernel {
        order: s.diagonal.iter().product(),
        invariants: s.torsion(),
    })
}

/// Everything the pipeline measures for one tuple.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub genus: usize,
    pub rank: usize,
    pub intersection: IntMatrix,
    pub push: IntMatrix,
    pub coker_order: i64,
    pub prym_m: i64,
    pub prym_type: PolarizationType,
}

impl CoverReport {
    /// Type predicted from the degree and the cokernel: `(1, …, 1, d / |coker|)`.
    pub fn predicted_type(&self, degree: usize) -> PolarizationType {
        let top = degree as i64 / self.coker_order;
        let len = self.prym_type.genus();
        let mut divisors = vec![1; len];
        if let Some(last) = divisors.last_mut() {
            *last = top;
        }
        PolarizationType::new(divisors).expect("ones then one divisor form a chain")
    }

    pub fn matches_prediction(&self, degree: usize) -> bool {
        self.prym_m == 1
            && self.prym_type == self.predicted_type(degree)
            && (degree as i64) % self.coker_order == 0
    }
}

pub fn analyze(t: &HurwitzTuple) -> Result<CoverReport> {
    let h = HomologyData::of_tuple(t)?;
    h.check(t.degree())?;
    let coker = pushforward_cokernel(&h)?;
    let lattice = prym_lattice(&h)?;
    if lattice.rank() != h.rank - 2 {
        return Err(Error::Internal("Prym lattice has the wrong rank".into()));
    }
    let kind = prym_type_of(&lattice)?;
    Ok(CoverReport {
        genus: h.genus,
        rank: h.rank,
        intersection: h.intersection,
        push: h.push,
        coker_order: coker.order,
        prym_m: kind.m,
        prym_type: kind.kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{enumerate_simple_classes, sample_tuple, DEFAULT_GUARD};
    use crate::perm::Permutation;

    fn kind(v: &[i64]) -> PolarizationType {
        PolarizationType::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sample_types() {
        let r = analyze(&sample_tuple(2, 4).unwrap()).unwrap();
        assert_eq!((r.genus, r.coker_order, r.prym_m), (3, 1, 1));
        assert_eq!(r.prym_type, kind(&[1, 2]));
        let r = analyze(&sample_tuple(3, 6).unwrap()).unwrap();
        assert_eq!((r.genus, r.coker_order, r.prym_m), (4, 1, 1));
        assert_eq!(r.prym_type, kind(&[1, 1, 3]));
        assert!(r.matches_prediction(3));
    }

    #[test]
    fn rank_two_prym() {
        let t = sample_tuple(2, 2).unwrap();
        let h = HomologyData::of_tuple(&t).unwrap();
        let l = prym_lattice(&h).unwrap();
        assert_eq!(l.rank(), 2);
        assert_ne!(l.gram().det().unwrap(), 0);
        let p = prym_type_of(&l).unwrap();
        assert_eq!((p.m, p.kind), (1, kind(&[2])));
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let h = HomologyData::of_tuple(&sample_tuple(3, 2).unwrap()).unwrap();
        let (_, l) = kernel_lattice(&h.intersection, &IntMatrix::zeros(2, h.rank)).unwrap();
        assert_eq!(l.rank(), h.rank);
        assert_eq!(l.alternating_divisors().unwrap(), PolarizationType::principal(2));
    }

    #[test]
    fn isogeny_has_index_two_image() {
        let swap = Permutation::transposition(2, 1, 2);
        let t = HurwitzTuple::new(vec![], swap, Permutation::identity(2)).unwrap();
        let h = HomologyData::of_tuple(&t).unwrap();
        let c = pushforward_cokernel(&h).unwrap();
        assert_eq!(c, Cokernel { order: 2, invariants: vec![2] });
    }

    #[test]
    fn degree_four_factorisations() {
        let mut seen = std::collections::BTreeSet::new();
        for c in enumerate_simple_classes(4, 2, DEFAULT_GUARD).unwrap() {
            let r = analyze(&c.representative).unwrap();
            assert!(r.matches_prediction(4), "{:?} {:?}", c.representative, r);
            seen.insert(r.coker_order);
        }
        assert!(seen.is_subset(&[1, 2, 4].into()));
        assert!(seen.contains(&2));
    }
}
