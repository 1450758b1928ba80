//! Integer alternating forms: elementary divisors, symplectic bases and the
//! dual polarization `Ê = −e·A⁻¹`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// A divisor chain `d₁ | d₂ | … | d_g` of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PolarizationType {
    divisors: Vec<i64>,
}

impl PolarizationType {
    pub fn new(divisors: Vec<i64>) -> Result<Self> {
        if divisors.iter().any(|&x| x <= 0) {
            return Err(Error::Malformed(format!("divisors must be positive: {divisors:?}")));
        }
        if divisors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Malformed(format!("{divisors:?} is not a divisor chain")));
        }
        Ok(Self { divisors })
    }

    /// Parses `"1,1,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let divisors = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad divisor {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if divisors.is_empty() {
            return Err(Error::Malformed("empty type".into()));
        }
        Self::new(divisors)
    }

    pub fn principal(g: usize) -> Self {
        Self { divisors: vec![1; g] }
    }

    pub fn divisors(&self) -> &[i64] {
        &self.divisors
    }

    pub fn genus(&self) -> usize {
        self.divisors.len()
    }

    /// `e = d_g` (1 for the empty chain).
    pub fn exponent(&self) -> i64 {
        self.divisors.last().copied().unwrap_or(1)
    }

    /// Dual type `d̂ᵢ = e / d_{g−i+1}`.
    pub fn dual(&self) -> Self {
        let e = self.exponent();
        Self {
            divisors: self.divisors.iter().rev().map(|d| e / d).collect(),
        }
    }

    /// The standard form `[[0, D], [−D, 0]]`.
    pub fn standard_form(&self) -> IntMatrix {
        let g = self.genus();
        let mut m = IntMatrix::zeros(2 * g, 2 * g);
        for (i, &d) in self.divisors.iter().enumerate() {
            m[(i, g + i)] = d;
            m[(g + i, i)] = -d;
        }
        m
    }

    /// Divides every divisor by `d₁`.
    pub fn normalized(&self) -> (i64, Self) {
        let m = self.divisors.first().copied().unwrap_or(1);
        (
            m,
            Self {
                divisors: self.divisors.iter().map(|d| d / m).collect(),
            },
        )
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.divisors.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TryFrom<Vec<i64>> for PolarizationType {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PolarizationType> for Vec<i64> {
    fn from(t: PolarizationType) -> Self {
        t.divisors
    }
}

/// A free abelian group `Z^{2g}` with an integer alternating form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewLattice {
    gram: IntMatrix,
}

/// Result of an alternating reduction: `basisᵀ · A · basis = [[0, D], [−D, 0]]`.
#[derive(Clone, Debug)]
pub struct SymplecticBasis {
    pub basis: IntMatrix,
    pub kind: PolarizationType,
}

impl SkewLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_skew() {
            return Err(Error::Malformed("Gram matrix is not alternating".into()));
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if !self.rank().is_multiple_of(2) {
            return Err(Error::Degenerate(format!("odd rank {}", self.rank())));
        }
        if self.gram.det()? == 0 {
            return Err(Error::Degenerate("form has a kernel".into()));
        }
        Ok(())
    }

    /// Unimodular `U` with `UᵀAU = [[0, D], [−D, 0]]`.
    ///
    /// Pivots on the smallest nonzero entry, ties broken by row-major order.
    pub fn symplectic_basis(&self) -> Result<SymplecticBasis> {
        self.require_nondegenerate()?;
        let n = self.rank();
        let g = n / 2;
        let diagonal: Vec<i64> = (0..g).map(|i| self.gram[(i, g + i)]).collect();
        if let Ok(kind) = PolarizationType::new(diagonal) {
            if kind.standard_form() == self.gram {
                return Ok(SymplecticBasis {
                    basis: IntMatrix::identity(n),
                    kind,
                });
            }
        }
        let mut a = self.gram.clone();
        let mut u = IntMatrix::identity(n);

        let swap = |a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
            a.swap_rows(i, j);
            a.swap_cols(i, j);
            u.swap_cols(i, j);
        };
        // e_dst += k·e_src
        let add = |a: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, k: i64| {
            a.add_row(dst, src, k);
            a.add_col(dst, src, k);
            u.add_col(dst, src, k);
        };

        let mut divisors = Vec::with_capacity(n / 2);
        let mut t = 0;
        while t < n {
            let mut best: Option<(u64, usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    let x = a[(i, j)];
                    if x != 0 && best.is_none_or(|(b, _, _)| x.unsigned_abs() < b) {
                        best = Some((x.unsigned_abs(), i, j));
                    }
                }
            }
            let (_, i, j) = best.ok_or_else(|| Error::Degenerate("form has a kernel".into()))?;
            swap(&mut a, &mut u, t, i);
            swap(&mut a, &mut u, t + 1, j);
            if a[(t, t + 1)] < 0 {
                a.negate_row(t + 1);
                a.negate_col(t + 1);
                u.negate_col(t + 1);
            }
            let p = a[(t, t + 1)];
            let mut clean = true;
            for k in t + 2..n {
                let q = a[(t, k)].div_euclid(p);
                add(&mut a, &mut u, k, t + 1, -q);
                let q = a[(t + 1, k)].div_euclid(p);
                add(&mut a, &mut u, k, t, q);
                clean &= a[(t, k)] == 0 && a[(t + 1, k)] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 2..n).find(|&i| (t + 2..n).any(|j| a[(i, j)] % p != 0));
            if let Some(i) = offender {
                add(&mut a, &mut u, t, i, 1);
                continue;
            }
            divisors.push(p);
            t += 2;
        }

        let order: Vec<usize> = (0..g).map(|i| 2 * i).chain((0..g).map(|i| 2 * i + 1)).collect();
        let mut basis = IntMatrix::zeros(n, n);
        for (new, &old) in order.iter().enumerate() {
            for r in 0..n {
                basis[(r, new)] = u[(r, old)];
            }
        }
        let kind = PolarizationType::new(divisors)
            .map_err(|e| Error::Internal(format!("reduction produced a non-chain: {e}")))?;
        if self.gram.congruence(&basis) != kind.standard_form() {
            return Err(Error::Internal("symplectic reduction failed to verify".into()));
        }
        Ok(SymplecticBasis { basis, kind })
    }

    /// Elementary divisors of the form.
    pub fn alternating_divisors(&self) -> Result<PolarizationType> {
        Ok(self.symplectic_basis()?.kind)
    }

    /// `−e·A⁻¹`, the dual polarization on the dual lattice in the dual basis.
    pub fn dual_form(&self) -> Result<SkewLattice> {
        let e = self.alternating_divisors()?.exponent();
        let det = self.gram.det()?;
        let adj = self.gram.adjugate()?;
        let mut out = IntMatrix::zeros(self.rank(), self.rank());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let num = -(e as i128) * adj[(i, j)] as i128;
                if num % det as i128 != 0 {
                    return Err(Error::Internal("dual form is not integral".into()));
                }
                out[(i, j)] = i64::try_from(num / det as i128)
                    .map_err(|_| Error::Numerical("dual form entry overflows i64".into()))?;
            }
        }
        SkewLattice::new(out)
    }

    /// `(m, A/m)` with `m = d₁`.
    pub fn normalize_smallest_divisor(&self) -> Result<(i64, SkewLattice)> {
        let (m, _) = self.alternating_divisors()?.normalized();
        let gram = self
            .gram
            .div_exact(m)
            .ok_or_else(|| Error::Internal("smallest divisor does not divide the form".into()))?;
        Ok((m, SkewLattice { gram }))
    }

    /// Matrix-level duality identities for `φ = A` and `φ̂ = Â = −eA⁻¹`.
    pub fn check_duality(&self) -> Result<DualityReport> {
        let kind = self.alternating_divisors()?;
        let e = kind.exponent();
        let a = &self.gram;
        let dual = self.dual_form()?;
        let ah = dual.gram();
        let minus_e = IntMatrix::identity(self.rank()).scale(-e);
        let double = dual.dual_form()?;
        let d1 = kind.divisors().first().copied().unwrap_or(1);
        let dual_kind = dual.alternating_divisors()?;
        Ok(DualityReport {
            dual_then_form: (ah * a) == minus_e,
            form_then_dual: (a * ah) == minus_e,
            pullback: &(&a.transpose() * ah) * a == a.scale(e),
            pullback_dual: &(&ah.transpose() * a) * ah == ah.scale(e),
            double_dual: double.gram().scale(d1) == *a,
            dual_type: dual_kind == kind.dual(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `Â·A = −e·I`
    pub dual_then_form: bool,
    /// `A·Â = −e·I`
    pub form_then_dual: bool,
    /// `Aᵀ·Â·A = e·A`
    pub pullback: bool,
    /// `Âᵀ·A·Â = e·Â`
    pub pullback_dual: bool,
    /// Dual of the dual is `A / d₁`.
    pub double_dual: bool,
    /// Type of `Â` is `(e/d_g, …, e/d₁)`.
    pub dual_type: bool,
}

impl DualityReport {
    pub fn all(&self) -> bool {
        self.dual_then_form
            && self.form_then_dual
            && self.pullback
            && self.pullback_dual
            && self.double_dual
            && self.dual_type
    }
}

/// Random unimodular matrix, as a product of elementary operations.
pub fn random_unimodular<R: rand::Rng>(n: usize, steps: usize, rng: &mut R) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.random_range(0..4) {
            0 => u.swap_cols(i, j),
            1 => u.negate_col(i),
            _ => u.add_col(i, j, rng.random_range(-2..=2)),
        }
    }
    u
}

/// Random divisor chain of length `g` with `d₁ = first`.
pub fn random_chain<R: rand::Rng>(g: usize, first: i64, rng: &mut R) -> PolarizationType {
    let mut divisors = Vec::with_capacity(g);
    let mut d = first;
    for i in 0..g {
        if i > 0 {
            d *= [1, 1, 2, 3][rng.random_range(0..4)];
        }
        divisors.push(d);
    }
    PolarizationType { divisors }
}
