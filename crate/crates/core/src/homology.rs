//! First homology of a cover surface, with its intersection form and the
//! push-forward and pull-back to the base torus.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::HurwitzTuple;
use crate::intmat::{column_echelon, smith, ColumnEchelon, IntMatrix};
use crate::surface::{BaseEdge, RibbonSurface};

/// Standard symplectic form on `H₁(torus) = Z²` in the `(γ, δ)` basis.
pub fn base_form() -> IntMatrix {
    IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).expect("2x2 literal")
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyData {
    pub genus: usize,
    pub rank: usize,
    /// Basis cycles as columns in edge coordinates (`E × 2g`).
    pub cycle_basis: IntMatrix,
    pub intersection: IntMatrix,
    /// `2 × 2g`: images of basis cycles in `H₁(Y) = Z²`.
    pub push: IntMatrix,
    /// `2g × 2`: lifts of `γ` and `δ` in the basis.
    pub pull: IntMatrix,
    #[serde(skip)]
    coords: CycleCoordinates,
}

/// Converts edge cycles to coordinates in the homology basis.
#[derive(Clone, Debug)]
struct CycleCoordinates {
    echelon: ColumnEchelon,
    /// Rows of `P` (from the Smith form of the boundary image) that give the
    /// free part.
    projector: IntMatrix,
}

impl CycleCoordinates {
    fn coordinates(&self, cycle: &[i64]) -> Option<Vec<i64>> {
        let k = self.echelon.kernel_coordinates(cycle)?;
        Some(self.projector.mul_vec(&k))
    }
}

impl HomologyData {
    pub fn of_tuple(t: &HurwitzTuple) -> Result<Self> {
        let surface = RibbonSurface::build(t)?;
        let data = Self::of_surface(&surface)?;
        let expected = t.genus()?;
        if data.genus != expected {
            return Err(Error::Internal(format!(
                "homology rank {} but the tuple has genus {expected}",
                data.rank
            )));
        }
        Ok(data)
    }

    pub fn of_surface(s: &RibbonSurface) -> Result<Self> {
        let d1 = s.boundary_edges();
        let d2 = s.boundary_faces();
        let echelon = column_echelon(&d1);
        let cycles = echelon.kernel();
        let k = cycles.cols();

        // boundaries in kernel coordinates
        let boundaries: Vec<Vec<i64>> = (0..d2.cols())
            .map(|f| {
                echelon
                    .kernel_coordinates(&d2.column(f))
                    .ok_or_else(|| Error::Internal("face boundary is not a cycle".into()))
            })
            .collect::<Result<_>>()?;
        let image = IntMatrix::from_columns(k, &boundaries);
        let sf = smith(&image);
        let r = sf.rank();
        if sf.diagonal[..r].iter().any(|&x| x != 1) {
            return Err(Error::Internal(format!(
                "torsion in surface homology: {:?}",
                sf.diagonal
            )));
        }
        let rank = k - r;
        if !rank.is_multiple_of(2) || 2 - s.euler_characteristic() != rank as i64 {
            return Err(Error::Internal(format!(
                "homology rank {rank} disagrees with Euler characteristic {}",
                s.euler_characteristic()
            )));
        }
        let basis_kernel = sf.p_inv.columns(r..k);
        let cycle_basis = &cycles * &basis_kernel;
        let mut projector = IntMatrix::zeros(rank, k);
        for i in 0..rank {
            for j in 0..k {
                projector[(i, j)] = sf.p[(r + i, j)];
            }
        }
        let coords = CycleCoordinates { echelon, projector };

        let columns: Vec<Vec<i64>> = (0..rank).map(|i| cycle_basis.column(i)).collect();
        let mut intersection = IntMatrix::zeros(rank, rank);
        for i in 0..rank {
            for j in i + 1..rank {
                let x = s.intersection(&columns[i], &columns[j])?;
                intersection[(i, j)] = x;
                intersection[(j, i)] = -x;
            }
        }

        let mut push = IntMatrix::zeros(2, rank);
        for (i, c) in columns.iter().enumerate() {
            for (e, &x) in c.iter().enumerate() {
                match s.base_edge(e) {
                    BaseEdge::Gamma => push[(0, i)] += x,
                    BaseEdge::Delta => push[(1, i)] += x,
                    BaseEdge::Slit(_) => {}
                }
            }
        }

        let mut pull = IntMatrix::zeros(rank, 2);
        for (col, which) in [BaseEdge::Gamma, BaseEdge::Delta].into_iter().enumerate() {
            let lift: Vec<i64> = (0..s.edge_count())
                .map(|e| i64::from(s.base_edge(e) == which))
                .collect();
            let x = coords
                .coordinates(&lift)
                .ok_or_else(|| Error::Internal("lift of a base loop is not a cycle".into()))?;
            for (i, v) in x.into_iter().enumerate() {
                pull[(i, col)] = v;
            }
        }

        Ok(Self {
            genus: rank / 2,
            rank,
            cycle_basis,
            intersection,
            push,
            pull,
            coords,
        })
    }

    /// Coordinates of an edge cycle in the homology basis.
    pub fn coordinates(&self, cycle: &[i64]) -> Result<Vec<i64>> {
        self.coords
            .coordinates(cycle)
            .ok_or_else(|| Error::Malformed("chain is not a cycle".into()))
    }

    /// All structural identities: skew unimodular form, `push·pull = d·I` and
    /// `pullᵀ J = J_Y push`. Returns the first that fails.
    pub fn check(&self, degree: usize) -> Result<()> {
        let j = &self.intersection;
        if !j.is_skew() {
            return Err(Error::Internal("intersection form is not skew".into()));
        }
        if j.det()? != 1 {
            return Err(Error::Internal(format!("intersection form has det {}", j.det()?)));
        }
        if &self.push * &self.pull != IntMatrix::identity(2).scale(degree as i64) {
            return Err(Error::Internal("push·pull differs from d·I".into()));
        }
        if &self.pull.transpose() * j != &base_form() * &self.push {
            return Err(Error::Internal("push and pull are not adjoint".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::sample_tuple;
    use crate::perm::Permutation;

    #[test]
    fn unramified_double_cover() {
        let swap = Permutation::transposition(2, 1, 2);
        let t = HurwitzTuple::new(vec![], swap, Permutation::identity(2)).unwrap();
        let h = HomologyData::of_tuple(&t).unwrap();
        assert_eq!(h.rank, 2);
        h.check(2).unwrap();
    }

    #[test]
    fn sample_covers() {
        let h = HomologyData::of_tuple(&sample_tuple(2, 4).unwrap()).unwrap();
        assert_eq!(h.rank, 6);
        assert_eq!(h.intersection.det().unwrap(), 1);
        h.check(2).unwrap();
        let h = HomologyData::of_tuple(&sample_tuple(3, 6).unwrap()).unwrap();
        assert_eq!(h.rank, 8);
        assert_eq!(smith(&h.push).diagonal, vec![1, 1]);
        h.check(3).unwrap();
    }

    #[test]
    fn basis_cycles_have_unit_coordinates() {
        let h = HomologyData::of_tuple(&sample_tuple(3, 4).unwrap()).unwrap();
        for i in 0..h.rank {
            let c = h.coordinates(&h.cycle_basis.column(i)).unwrap();
            let expected: Vec<i64> = (0..h.rank).map(|j| i64::from(i == j)).collect();
            assert_eq!(c, expected);
        }
    }

    #[test]
    fn base_torus_homology() {
        let h = HomologyData::of_surface(&RibbonSurface::base(2)).unwrap();
        assert_eq!(h.rank, 2);
        assert_eq!(h.intersection, base_form().scale(h.intersection[(0, 1)]));
        h.check(1).unwrap();
        assert_eq!(h.push.det().unwrap().abs(), 1);
    }
}
