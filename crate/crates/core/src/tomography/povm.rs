use std::ops::Range;

use rand::Rng;

use crate::design::WeightedBasisFamily;
use crate::error::{domain, structural, Error, Result};
use crate::linalg::{c, frobenius, hermitian_eigen, projector, vectorize, CMatrix, CVector};
use crate::random::{random_pure_state, trial_rng};

/// Largest dimension for which the `d^2 × d^2` frame superoperator is built.
pub const MAX_FRAME_DIM: usize = 32;
/// Frame eigenvalues at or below this are treated as zero.
pub const IC_CUTOFF: f64 = 1e-10;
pub const POVM_TOL: f64 = 1e-10;

/// A rank-one POVM `F(x) = τ(x) |x⟩⟨x|` realized by orthogonal measurements:
/// outcome `x = (a, j)` is vector `j` of basis `a`, and basis `a` is used with
/// probability `v_a`, so `τ(e_j^a) = v_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOnePovm {
    dim: usize,
    vectors: Vec<CVector>,
    taus: Vec<f64>,
    basis_weights: Vec<f64>,
}

impl RankOnePovm {
    /// Outcomes grouped by basis: `bases[a]` is a unitary whose columns are
    /// the outcomes of basis `a`, used with probability `v[a]`.
    pub fn from_bases(bases: &[CMatrix], v: &[f64]) -> Result<Self> {
        if bases.is_empty() || bases.len() != v.len() {
            return structural(format!("{} bases with {} basis weights", bases.len(), v.len()));
        }
        let d = bases[0].nrows();
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > POVM_TOL || v.iter().any(|&x| !(x > 0.0)) {
            return domain(format!("basis weights must be positive and sum to 1, got sum {total}"));
        }
        let mut vectors = Vec::with_capacity(d * bases.len());
        let mut taus = Vec::with_capacity(d * bases.len());
        for (b, &va) in bases.iter().zip(v) {
            if b.nrows() != d || b.ncols() != d {
                return structural("bases of different dimensions");
            }
            for j in 0..d {
                vectors.push(b.column(j).into_owned());
                taus.push(va);
            }
        }
        let povm = Self {
            dim: d,
            vectors,
            taus,
            basis_weights: v.to_vec(),
        };
        let defect = frobenius(&(povm.element_sum() - CMatrix::identity(d, d)));
        if defect > POVM_TOL * d as f64 {
            return domain(format!("POVM elements do not sum to the identity (defect {defect:e})"));
        }
        Ok(povm)
    }

    /// The same outcomes with basis probabilities replaced by `v`.
    pub fn with_basis_weights(&self, v: &[f64]) -> Result<Self> {
        let bases: Vec<CMatrix> = (0..self.num_bases())
            .map(|a| {
                let cols: Vec<CVector> = self.basis_range(a).map(|x| self.vectors[x].clone()).collect();
                CMatrix::from_columns(&cols)
            })
            .collect();
        Self::from_bases(&bases, v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn num_bases(&self) -> usize {
        self.basis_weights.len()
    }

    /// `v_a`.
    pub fn basis_weights(&self) -> &[f64] {
        &self.basis_weights
    }

    /// Outcome indices belonging to basis `a`.
    pub fn basis_range(&self, a: usize) -> Range<usize> {
        a * self.dim..(a + 1) * self.dim
    }

    pub fn basis_of(&self, x: usize) -> usize {
        x / self.dim
    }

    pub fn vector(&self, x: usize) -> &CVector {
        &self.vectors[x]
    }

    pub fn tau(&self, x: usize) -> f64 {
        self.taus[x]
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    /// `π(x) = |x⟩⟨x|`.
    pub fn projector(&self, x: usize) -> CMatrix {
        projector(&self.vectors[x])
    }

    /// `F(x) = τ(x) π(x)`.
    pub fn element(&self, x: usize) -> CMatrix {
        self.projector(x) * c(self.taus[x], 0.0)
    }

    /// `Σ_x F(x)`.
    pub fn element_sum(&self) -> CMatrix {
        (0..self.len()).fold(CMatrix::zeros(self.dim, self.dim), |acc, x| acc + self.element(x))
    }

    /// Outcome probabilities `p(x) = tr[F(x) ρ] = τ(x) ⟨x|ρ|x⟩`.
    pub fn probabilities(&self, rho: &CMatrix) -> Vec<f64> {
        self.vectors
            .iter()
            .zip(&self.taus)
            .map(|(v, &t)| t * (v.adjoint() * rho * v)[(0, 0)].re)
            .collect()
    }
}

/// Each basis `a` becomes a measurement used with probability `v_a = w_a d`.
pub fn povm_from_family(family: &WeightedBasisFamily) -> RankOnePovm {
    let d = family.dim() as f64;
    let bases: Vec<CMatrix> = family.bases().iter().map(|b| b.matrix().clone()).collect();
    let v: Vec<f64> = family.weight_values().iter().map(|w| w * d).collect();
    RankOnePovm::from_bases(&bases, &v).expect("a valid family resolves the identity")
}

fn check_frame_dim(d: usize) -> Result<()> {
    if d > MAX_FRAME_DIM {
        return Err(Error::Capacity {
            what: "frame dimension",
            got: d,
            limit: MAX_FRAME_DIM,
        });
    }
    Ok(())
}

/// `F = Σ_x τ(x) |π(x))(π(x)|` as a `d^2 × d^2` matrix on column-major vectorized operators.
pub fn frame_superop(povm: &RankOnePovm) -> Result<CMatrix> {
    check_frame_dim(povm.dim())?;
    let n = povm.dim() * povm.dim();
    let mut f = CMatrix::zeros(n, n);
    for x in 0..povm.len() {
        let v = vectorize(&povm.projector(x));
        f += (&v * v.adjoint()) * c(povm.tau(x), 0.0);
    }
    Ok(f)
}

/// `(I + |I)(I|)/(d+1)`, the frame superoperator of every tight rank-one IC-POVM.
pub fn tight_frame_superop(d: usize) -> CMatrix {
    let id = vectorize(&CMatrix::identity(d, d));
    (CMatrix::identity(d * d, d * d) + &id * id.adjoint()) * c(1.0 / (d + 1) as f64, 0.0)
}

/// Spectral data of the frame superoperator.
#[derive(Clone, Debug)]
pub struct FrameSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl FrameSpectrum {
    pub fn of(povm: &RankOnePovm) -> Result<Self> {
        let (eigenvalues, eigenvectors) = hermitian_eigen(&frame_superop(povm)?);
        Ok(Self { eigenvalues, eigenvectors })
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn is_informationally_complete(&self) -> bool {
        self.min() > IC_CUTOFF
    }

    /// `F^{-1}`, or the not-IC error when a mode falls below the cutoff.
    pub fn inverse(&self) -> Result<CMatrix> {
        if !self.is_informationally_complete() {
            return Err(Error::NotInformationallyComplete(self.min()));
        }
        let v = &self.eigenvectors;
        let n = v.nrows();
        let mut scaled = v.clone();
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            for r in 0..n {
                scaled[(r, k)] /= c(lam, 0.0);
            }
        }
        Ok(scaled * v.adjoint())
    }

    /// `Tr F^{-1}`.
    pub fn trace_inverse(&self) -> Result<f64> {
        if !self.is_informationally_complete() {
            return Err(Error::NotInformationallyComplete(self.min()));
        }
        Ok(self.eigenvalues.iter().map(|l| 1.0 / l).sum())
    }
}

pub fn is_informationally_complete(povm: &RankOnePovm) -> Result<bool> {
    Ok(FrameSpectrum::of(povm)?.is_informationally_complete())
}

/// `Tr F^{-1}`; at least `d(d(d+1) - 1)`, with equality exactly for tight POVMs.
pub fn trace_inverse_frame(povm: &RankOnePovm) -> Result<f64> {
    FrameSpectrum::of(povm)?.trace_inverse()
}

/// Output fidelity of measure-and-prepare cloning, `Σ_x τ(x) |⟨x|ψ⟩|^4`.
pub fn cloning_fidelity(povm: &RankOnePovm, psi: &CVector) -> f64 {
    let n = psi.norm_squared();
    (0..povm.len())
        .map(|x| {
            let o = povm.vector(x).dotc(psi).norm_sqr() / n;
            povm.tau(x) * o * o
        })
        .sum()
}

/// Smallest cloning fidelity found by sampling `samples` random pure states
/// and then refining the best one by shrinking random perturbations. An
/// estimate of the worst case from above, not a certified infimum.
pub fn worst_case_fidelity(povm: &RankOnePovm, samples: usize, seed: u64) -> (f64, CVector) {
    let mut rng = trial_rng(seed, 0);
    let d = povm.dim();
    let mut best = random_pure_state(d, &mut rng);
    let mut best_f = cloning_fidelity(povm, &best);
    for _ in 1..samples.max(1) {
        let psi = random_pure_state(d, &mut rng);
        let f = cloning_fidelity(povm, &psi);
        if f < best_f {
            best = psi;
            best_f = f;
        }
    }
    let mut scale = 0.1;
    while scale > 1e-8 {
        let mut improved = false;
        for _ in 0..20 {
            let step = random_pure_state(d, &mut rng) * c(scale * rng.random::<f64>(), 0.0);
            let cand = &best + step;
            let cand = &cand / c(cand.norm(), 0.0);
            let f = cloning_fidelity(povm, &cand);
            if f < best_f {
                best = cand;
                best_f = f;
                improved = true;
            }
        }
        if !improved {
            scale *= 0.5;
        }
    }
    (best_f, best)
}
