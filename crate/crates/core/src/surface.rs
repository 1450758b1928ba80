//! The branched cover as an oriented ribbon graph.
//!
//! The base torus is cut open into one polygon whose boundary reads
//! `s₁ s₁⁻¹ … sₙ sₙ⁻¹ γ δ γ⁻¹ δ⁻¹`, where `sᵢ` is a slit from the base vertex
//! to the `i`-th branch point. The cover takes `d` copies of the polygon and
//! glues the `e⁺` side of sheet `j` to the `e⁻` side of sheet `π_e(j)`, with
//! `π_{sᵢ} = τᵢ`, `π_γ = σ` and `π_δ = ρ⁻¹`.
//!
//! Cover edge `(e, j)` is the `e⁺` side of sheet `j`. Each edge has a tail
//! dart (index `2k`) and a head dart (`2k + 1`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::HurwitzTuple;
use crate::perm::Permutation;

/// Which base edge a cover edge lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseEdge {
    Slit(usize),
    Gamma,
    Delta,
}

#[derive(Clone, Debug, Serialize)]
pub struct RibbonSurface {
    degree: usize,
    branch_count: usize,
    /// Counter-clockwise successor of each dart around its vertex.
    rotation: Vec<usize>,
    /// Base dart under each cover dart.
    projection: Vec<usize>,
    vertex_of: Vec<usize>,
    vertex_count: usize,
    /// Oriented boundary of each sheet polygon as `(edge, ±1)`.
    faces: Vec<Vec<(usize, i64)>>,
}

/// One side of the base polygon: base edge index and traversal direction.
fn polygon_sides(n: usize) -> Vec<(usize, bool)> {
    let mut sides = Vec::with_capacity(2 * n + 4);
    for i in 0..n {
        sides.push((i, true));
        sides.push((i, false));
    }
    sides.extend([(n, true), (n + 1, true), (n, false), (n + 1, false)]);
    sides
}

impl RibbonSurface {
    /// Builds the cover surface of a valid, transitive tuple.
    pub fn build(t: &HurwitzTuple) -> Result<Self> {
        t.require_connected()?;
        Ok(Self::glue(t))
    }

    /// The base torus with its `n` slits.
    pub fn base(branch_count: usize) -> Self {
        let id = Permutation::identity(1);
        let t = HurwitzTuple::from_parts(1, vec![id.clone(); branch_count], id.clone(), id);
        Self::glue(&t)
    }

    fn glue(t: &HurwitzTuple) -> Self {
        let d = t.degree();
        let n = t.branch_count();
        let per_sheet = n + 2;
        let mut gluing: Vec<Permutation> = t.branch().to_vec();
        gluing.push(t.sigma().clone());
        gluing.push(t.rho().inverse());
        let back: Vec<Permutation> = gluing.iter().map(Permutation::inverse).collect();

        let edge = |e: usize, j: usize| j * per_sheet + e;
        let sides = polygon_sides(n);
        let k_sides = sides.len();
        let darts = 2 * d * per_sheet;

        // (start dart, end dart, edge, sign) of each side of sheet j
        let side = |j: usize, k: usize| -> (usize, usize, usize, i64) {
            let (e, forward) = sides[k];
            if forward {
                let x = edge(e, j);
                (2 * x, 2 * x + 1, x, 1)
            } else {
                let x = edge(e, back[e].apply(j));
                (2 * x + 1, 2 * x, x, -1)
            }
        };

        let mut rotation = vec![usize::MAX; darts];
        let mut faces = Vec::with_capacity(d);
        for j in 0..d {
            let mut boundary = Vec::with_capacity(k_sides);
            for k in 0..k_sides {
                let (start, _, x, sign) = side(j, k);
                let (_, prev_end, _, _) = side(j, (k + k_sides - 1) % k_sides);
                rotation[start] = prev_end;
                boundary.push((x, sign));
            }
            faces.push(boundary);
        }
        debug_assert!(rotation.iter().all(|&x| x != usize::MAX));

        let projection = (0..darts)
            .map(|h| {
                let e = (h / 2) % per_sheet;
                2 * e + h % 2
            })
            .collect();

        let mut vertex_of = vec![usize::MAX; darts];
        let mut vertex_count = 0;
        for h in 0..darts {
            if vertex_of[h] != usize::MAX {
                continue;
            }
            let mut x = h;
            while vertex_of[x] == usize::MAX {
                vertex_of[x] = vertex_count;
                x = rotation[x];
            }
            vertex_count += 1;
        }

        Self {
            degree: d,
            branch_count: n,
            rotation,
            projection,
            vertex_of,
            vertex_count,
            faces,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn dart_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn genus(&self) -> usize {
        (2 - self.euler_characteristic()) as usize / 2
    }

    /// Counter-clockwise successor of `dart` around its vertex.
    #[inline]
    pub fn rotate(&self, dart: usize) -> usize {
        self.rotation[dart]
    }

    /// The other end of the edge carrying `dart`.
    #[inline]
    pub fn opposite(&self, dart: usize) -> usize {
        dart ^ 1
    }

    #[inline]
    pub fn edge_of(dart: usize) -> usize {
        dart / 2
    }

    #[inline]
    pub fn is_tail(dart: usize) -> bool {
        dart.is_multiple_of(2)
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex_of[dart]
    }

    pub fn project(&self, dart: usize) -> usize {
        self.projection[dart]
    }

    pub fn base_edge(&self, edge: usize) -> BaseEdge {
        let e = edge % (self.branch_count + 2);
        match e {
            _ if e < self.branch_count => BaseEdge::Slit(e),
            _ if e == self.branch_count => BaseEdge::Gamma,
            _ => BaseEdge::Delta,
        }
    }

    /// Sheet of the polygon whose `e⁺` side is this edge.
    pub fn sheet(&self, edge: usize) -> usize {
        edge / (self.branch_count + 2)
    }

    pub fn faces(&self) -> &[Vec<(usize, i64)>] {
        &self.faces
    }

    /// Darts around `vertex`, counter-clockwise.
    pub fn darts_around(&self, vertex: usize) -> Vec<usize> {
        let start = self
            .vertex_of
            .iter()
            .position(|&v| v == vertex)
            .expect("vertex index in range");
        let mut out = vec![start];
        let mut x = self.rotation[start];
        while x != start {
            out.push(x);
            x = self.rotation[x];
        }
        out
    }

    /// Face permutation: next dart along the boundary of the face to the left.
    pub fn face_successor(&self, dart: usize) -> usize {
        self.rotation
            .iter()
            .position(|&y| y == self.opposite(dart))
            .expect("rotation is a permutation")
    }

    /// Number of orbits of the face permutation.
    pub fn face_orbit_count(&self) -> usize {
        let mut inverse = vec![0; self.rotation.len()];
        for (x, &y) in self.rotation.iter().enumerate() {
            inverse[y] = x;
        }
        let mut seen = vec![false; self.rotation.len()];
        let mut count = 0;
        for h in 0..seen.len() {
            if seen[h] {
                continue;
            }
            count += 1;
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                x = inverse[x ^ 1];
            }
        }
        count
    }

    /// Whether the projection intertwines the rotations of cover and base.
    pub fn projection_commutes(&self) -> bool {
        let base = Self::base(self.branch_count);
        (0..self.dart_count())
            .all(|h| self.project(self.rotate(h)) == base.rotate(self.project(h)))
    }

    /// `V × E` boundary matrix.
    pub fn boundary_edges(&self) -> crate::intmat::IntMatrix {
        let mut m = crate::intmat::IntMatrix::zeros(self.vertex_count, self.edge_count());
        for e in 0..self.edge_count() {
            m[(self.vertex_of[2 * e + 1], e)] += 1;
            m[(self.vertex_of[2 * e], e)] -= 1;
        }
        m
    }

    /// `E × F` boundary matrix.
    pub fn boundary_faces(&self) -> crate::intmat::IntMatrix {
        let mut m = crate::intmat::IntMatrix::zeros(self.edge_count(), self.face_count());
        for (f, boundary) in self.faces.iter().enumerate() {
            for &(e, s) in boundary {
                m[(e, f)] += s;
            }
        }
        m
    }

    /// Algebraic intersection number of two edge cycles.
    ///
    /// `b` is pushed off to its right; the pushed copy is routed around each
    /// vertex on a small circle, and the crossings with `a` are counted there.
    pub fn intersection(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        if a.len() != self.edge_count() || b.len() != self.edge_count() {
            return Err(Error::Malformed("chain length differs from edge count".into()));
        }
        let outflow = |c: &[i64], h: usize| {
            let x = c[Self::edge_of(h)];
            if Self::is_tail(h) {
                x
            } else {
                -x
            }
        };
        let mut total = 0;
        let mut done = vec![false; self.vertex_count];
        for h0 in 0..self.dart_count() {
            let v = self.vertex_of[h0];
            if done[v] {
                continue;
            }
            done[v] = true;
            let mut flow = 0;
            let mut h = h0;
            loop {
                let (fa, fb) = (outflow(a, h), outflow(b, h));
                if Self::is_tail(h) {
                    flow -= fb;
                }
                total += fa * flow;
                if !Self::is_tail(h) {
                    flow -= fb;
                }
                h = self.rotation[h];
                if h == h0 {
                    break;
                }
            }
            if flow != 0 {
                return Err(Error::Malformed("second chain is not a cycle".into()));
            }
        }
        Ok(total)
    }
}
