//! Normalized period matrices `(Z D)` in Siegel space, their duals and the
//! action of the integral group `Γ_D`.
//!
//! Floating point is used only for the complex side; membership in `Γ_D` and
//! polarization types are decided on integers.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::symplectic::PolarizationType;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Relative tolerance for symmetry and positivity.
pub const TOL_SYM: f64 = 1e-9;
/// Smallest accepted ratio of extreme singular values before inverting.
pub const TOL_INV: f64 = 1e-12;
/// Residual allowed for action-law identities.
pub const TOL_ACTION: f64 = 1e-8;

const I: C64 = Complex { re: 0.0, im: 1.0 };

fn sup_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `a − b`.
pub fn distance(a: &CMatrix, b: &CMatrix) -> f64 {
    sup_norm(&(a - b))
}

fn real_diag(values: &[i64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&d| C64::new(d as f64, 0.0)),
    ))
}

fn to_complex(m: &IntMatrix) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |i, j| C64::new(m[(i, j)] as f64, 0.0))
}

/// Inverse with a conditioning guard.
fn guarded_inverse(m: &CMatrix, what: &str) -> Result<CMatrix> {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if max.is_nan() || max <= 0.0 || min / max < TOL_INV {
        return Err(Error::Numerical(format!("{what} is singular or ill-conditioned")));
    }
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Numerical(format!("{what} is not invertible")))
}

/// Smallest eigenvalue of the Hermitian part of `m`.
fn min_hermitian_eigenvalue(m: &CMatrix) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `Z` in Siegel space together with the polarization diagonal `D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJson", into = "RawJson")]
pub struct PeriodMatrix {
    z: CMatrix,
    kind: PolarizationType,
}

#[derive(Serialize, Deserialize)]
struct RawJson {
    z: Vec<Vec<[f64; 2]>>,
    d: PolarizationType,
}

impl TryFrom<RawJson> for PeriodMatrix {
    type Error = Error;

    fn try_from(raw: RawJson) -> Result<Self> {
        let g = raw.z.len();
        if raw.z.iter().any(|r| r.len() != g) {
            return Err(Error::Malformed("Z must be square".into()));
        }
        let z = CMatrix::from_fn(g, g, |i, j| C64::new(raw.z[i][j][0], raw.z[i][j][1]));
        PeriodMatrix::new(z, raw.d)
    }
}

impl From<PeriodMatrix> for RawJson {
    fn from(p: PeriodMatrix) -> Self {
        let g = p.z.nrows();
        RawJson {
            z: (0..g)
                .map(|i| (0..g).map(|j| [p.z[(i, j)].re, p.z[(i, j)].im]).collect())
                .collect(),
            d: p.kind,
        }
    }
}

impl PeriodMatrix {
    /// Checks `Z = Zᵀ` and `Im Z ≻ 0` to relative tolerance [`TOL_SYM`].
    pub fn new(z: CMatrix, kind: PolarizationType) -> Result<Self> {
        let g = kind.genus();
        if z.nrows() != g || z.ncols() != g {
            return Err(Error::Malformed(format!("Z is {}x{} but D has {g} entries", z.nrows(), z.ncols())));
        }
        let scale = sup_norm(&z).max(1.0);
        let asym = distance(&z, &z.transpose());
        if asym > TOL_SYM * scale {
            return Err(Error::Constraint(format!("Z is not symmetric (residual {asym:e})")));
        }
        let im = z.map(|w| C64::new(w.im, 0.0));
        let min = min_hermitian_eigenvalue(&im);
        if min <= TOL_SYM * scale {
            return Err(Error::Constraint(format!("Im Z is not positive definite (min eigenvalue {min:e})")));
        }
        Ok(Self { z, kind })
    }

    pub fn z(&self) -> &CMatrix {
        &self.z
    }

    pub fn kind(&self) -> &PolarizationType {
        &self.kind
    }

    pub fn genus(&self) -> usize {
        self.kind.genus()
    }

    /// The same `Z` with a different diagonal.
    pub fn with_type(self, kind: PolarizationType) -> Result<Self> {
        Self::new(self.z, kind)
    }

    /// The `g × 2g` matrix `(Z D)`.
    pub fn full(&self) -> CMatrix {
        let g = self.genus();
        let mut m = CMatrix::zeros(g, 2 * g);
        m.view_mut((0, 0), (g, g)).copy_from(&self.z);
        m.view_mut((0, g), (g, g)).copy_from(&real_diag(self.kind.divisors()));
        m
    }

    pub fn as_raw(&self) -> RawPeriod {
        RawPeriod {
            pi: self.full(),
            kind: self.kind.clone(),
        }
    }
}

/// An unnormalized `g × 2g` period matrix `(Π₁ Π₂)`.
#[derive(Clone, Debug)]
pub struct RawPeriod {
    pub pi: CMatrix,
    pub kind: PolarizationType,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RiemannReport {
    /// `‖Π J Πᵀ‖∞`
    pub isotropy_residual: f64,
    /// Smallest eigenvalue of `−i Π J Π̄ᵀ`.
    pub positivity_min_eig: f64,
    pub pass: bool,
}

/// `[[0, D⁻¹], [−D⁻¹, 0]]`
fn inverse_pairing(kind: &PolarizationType) -> CMatrix {
    let g = kind.genus();
    let mut j = CMatrix::zeros(2 * g, 2 * g);
    for (i, &d) in kind.divisors().iter().enumerate() {
        j[(i, g + i)] = C64::new(1.0 / d as f64, 0.0);
        j[(g + i, i)] = C64::new(-1.0 / d as f64, 0.0);
    }
    j
}

impl RawPeriod {
    fn blocks(&self) -> Result<(CMatrix, CMatrix)> {
        let g = self.kind.genus();
        if self.pi.nrows() != g || self.pi.ncols() != 2 * g {
            return Err(Error::Malformed(format!(
                "period matrix must be {g}x{}, got {}x{}",
                2 * g,
                self.pi.nrows(),
                self.pi.ncols()
            )));
        }
        Ok((
            self.pi.columns(0, g).into_owned(),
            self.pi.columns(g, g).into_owned(),
        ))
    }

    pub fn riemann_check(&self) -> Result<RiemannReport> {
        let (_, second) = self.blocks()?;
        guarded_inverse(&second, "Π₂")?;
        let j = inverse_pairing(&self.kind);
        let pj = &self.pi * &j;
        let iso = &pj * self.pi.transpose();
        let herm = (&pj * self.pi.adjoint()) * (-I);
        let scale = sup_norm(&self.pi).max(1.0).powi(2);
        let isotropy_residual = sup_norm(&iso);
        let positivity_min_eig = min_hermitian_eigenvalue(&herm);
        Ok(RiemannReport {
            isotropy_residual,
            positivity_min_eig,
            pass: isotropy_residual <= TOL_SYM * scale && positivity_min_eig > TOL_SYM * scale,
        })
    }

    /// `Z = D Π₂⁻¹ Π₁`.
    pub fn normalize(&self) -> Result<PeriodMatrix> {
        let (first, second) = self.blocks()?;
        let inv = guarded_inverse(&second, "Π₂")?;
        let z = real_diag(self.kind.divisors()) * inv * first;
        PeriodMatrix::new(z, self.kind.clone())
    }
}

/// `Ẑ = S(e D⁻¹ Z D⁻¹)S` with `S` the index reversal, and `D̂ = (e/d_g, …, e/d₁)`.
pub fn dual_period(p: &PeriodMatrix) -> Result<PeriodMatrix> {
    let g = p.genus();
    let d = p.kind.divisors();
    let e = p.kind.exponent() as f64;
    let z = CMatrix::from_fn(g, g, |i, j| {
        let (a, b) = (g - 1 - i, g - 1 - j);
        p.z[(a, b)] * (e / (d[a] as f64 * d[b] as f64))
    });
    PeriodMatrix::new(z, p.kind.dual())
}

/// `J_D = [[0, D], [−D, 0]]`.
pub fn gamma_form(kind: &PolarizationType) -> IntMatrix {
    kind.standard_form()
}

/// Exact test of `M J_D Mᵀ = J_D`.
pub fn in_gamma(kind: &PolarizationType, m: &IntMatrix) -> bool {
    let j = gamma_form(kind);
    m.rows() == j.rows() && m.cols() == j.cols() && &(m * &j) * &m.transpose() == j
}

/// `Z' = (aZ + bD)(D⁻¹cZ + D⁻¹dD)⁻¹`.
pub fn gamma_action(p: &PeriodMatrix, m: &IntMatrix) -> Result<PeriodMatrix> {
    if !in_gamma(&p.kind, m) {
        return Err(Error::Constraint("matrix is not in Γ_D".into()));
    }
    let g = p.genus();
    let mc = to_complex(m);
    let block = |r: usize, c: usize| mc.view((r * g, c * g), (g, g)).into_owned();
    let (a, b, c, d) = (block(0, 0), block(0, 1), block(1, 0), block(1, 1));
    let dd = real_diag(p.kind.divisors());
    let dinv = CMatrix::from_diagonal(&dd.diagonal().map(|x| C64::new(1.0 / x.re, 0.0)));
    let numerator = &a * &p.z + &b * &dd;
    let denominator = &dinv * &c * &p.z + &dinv * &d * &dd;
    let z = numerator * guarded_inverse(&denominator, "D⁻¹cZ + D⁻¹dD")?;
    PeriodMatrix::new(z, p.kind.clone())
}

/// Random point of Siegel space: `Sym + i(PᵀP + εI)`, deterministic per seed.
pub fn sample_siegel(g: usize, seed: u64) -> PeriodMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut re = DMatrix::<f64>::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let x = rng.random_range(-1.0..1.0);
            re[(i, j)] = x;
            re[(j, i)] = x;
        }
    }
    let p = DMatrix::<f64>::from_fn(g, g, |_, _| rng.random_range(-1.0..1.0));
    let im = p.transpose() * &p + DMatrix::<f64>::identity(g, g).scale(0.25);
    let z = CMatrix::from_fn(g, g, |i, j| C64::new(re[(i, j)], im[(i, j)]));
    PeriodMatrix::new(z, PolarizationType::principal(g)).expect("sampled point lies in Siegel space")
}

/// Random element of `Γ_D` as a word in the standard generators.
pub fn random_gamma<R: Rng>(kind: &PolarizationType, steps: usize, rng: &mut R) -> IntMatrix {
    let g = kind.genus();
    let d = kind.divisors();
    let mut m = IntMatrix::identity(2 * g);
    for _ in 0..steps {
        let mut gen = IntMatrix::identity(2 * g);
        match rng.random_range(0..4) {
            0 | 1 => {
                // unipotent with off-diagonal block D·S, S symmetric
                let upper = rng.random_bool(0.5);
                let (i, j) = (rng.random_range(0..g), rng.random_range(0..g));
                let s = rng.random_range(-1..=1);
                let (r0, c0) = if upper { (0, g) } else { (g, 0) };
                gen[(r0 + i, c0 + j)] += d[i] * s;
                if i != j {
                    gen[(r0 + j, c0 + i)] += d[j] * s;
                }
            }
            2 => {
                let i = rng.random_range(0..g);
                gen[(i, i)] = -1;
                gen[(g + i, g + i)] = -1;
            }
            _ => {
                for i in 0..g {
                    gen[(i, i)] = 0;
                    gen[(g + i, g + i)] = 0;
                    gen[(i, g + i)] = 1;
                    gen[(g + i, i)] = -1;
                }
            }
        }
        debug_assert!(in_gamma(kind, &gen));
        m = &m * &gen;
    }
    m
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HodgeReport {
    /// `‖U Q Uᵀ‖∞`
    pub isotropy_residual: f64,
    /// Smallest eigenvalue of `i U Q Ūᵀ`.
    pub min_eig: f64,
    pub pass: bool,
}

/// The form `[[0, −eD⁻¹], [eD⁻¹, 0]]` pairing with the rows of `(Z D)`.
pub fn hodge_form(kind: &PolarizationType) -> IntMatrix {
    let g = kind.genus();
    let e = kind.exponent();
    let mut q = IntMatrix::zeros(2 * g, 2 * g);
    for (i, &d) in kind.divisors().iter().enumerate() {
        q[(i, g + i)] = -e / d;
        q[(g + i, i)] = e / d;
    }
    q
}

/// Checks that the row space of `u` is a weight-one Hodge structure polarized by `q`.
pub fn hodge_riemann_bilinear(u: &CMatrix, q: &IntMatrix) -> Result<HodgeReport> {
    let n = q.rows();
    if !q.is_skew() || u.ncols() != n || 2 * u.nrows() != n {
        return Err(Error::Malformed("U must be g×2g and Q a 2g×2g alternating matrix".into()));
    }
    let g = u.nrows();
    let mut stacked = CMatrix::zeros(n, n);
    stacked.view_mut((0, 0), (g, n)).copy_from(u);
    stacked.view_mut((g, 0), (g, n)).copy_from(&u.map(|z| z.conj()));
    let sv = stacked.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if max.is_nan() || max <= 0.0 || min / max < TOL_SYM {
        return Err(Error::Degenerate("U meets its conjugate; not a weight-one Hodge structure".into()));
    }
    let qc = to_complex(q);
    let uq = u * &qc;
    let iso = &uq * u.transpose();
    let herm = (&uq * u.adjoint()) * I;
    let scale = sup_norm(u).max(1.0).powi(2);
    let isotropy_residual = sup_norm(&iso);
    let min_eig = min_hermitian_eigenvalue(&herm);
    Ok(HodgeReport {
        isotropy_residual,
        min_eig,
        pass: isotropy_residual <= TOL_SYM * scale && min_eig > TOL_SYM * scale,
    })
}
