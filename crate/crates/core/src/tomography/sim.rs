use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, structural, Result};
use crate::linalg::{c, frobenius, CMatrix};
use crate::random::{haar_unitary, trial_rng};

use super::dual::ReconstructionDual;
use super::povm::{FrameSpectrum, RankOnePovm};
use super::state::DensityMatrix;

/// Number of measurements `n_a` made in each basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotAllocation {
    counts: Vec<u64>,
}

impl ShotAllocation {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return domain("allocation needs at least one basis");
        }
        if let Some(a) = counts.iter().position(|&n| n == 0) {
            return domain(format!("basis {a} gets no measurements"));
        }
        Ok(Self { counts })
    }

    /// `N` shots split in proportion to `v` by largest remainder; ties go to
    /// the lower basis index.
    pub fn from_weights(v: &[f64], total: u64) -> Result<Self> {
        let quotas: Vec<f64> = v.iter().map(|w| w * total as f64).collect();
        let mut counts: Vec<u64> = quotas.iter().map(|q| (q + 1e-9).floor() as u64).collect();
        let assigned: u64 = counts.iter().sum();
        let mut order: Vec<usize> = (0..v.len()).collect();
        let frac = |a: usize| quotas[a] - counts[a] as f64;
        order.sort_by(|&a, &b| frac(b).total_cmp(&frac(a)).then(a.cmp(&b)));
        for &a in order.iter().take(total.saturating_sub(assigned) as usize) {
            counts[a] += 1;
        }
        Self::new(counts)
    }

    /// Equal shots in each of `m` bases.
    pub fn uniform(m: usize, per_basis: u64) -> Result<Self> {
        Self::new(vec![per_basis; m])
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `v_a = n_a / N`.
    pub fn weights(&self) -> Vec<f64> {
        let n = self.total() as f64;
        self.counts.iter().map(|&k| k as f64 / n).collect()
    }
}

/// Outcome counts, `counts[a][j]` for vector `j` of basis `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    pub per_basis: Vec<Vec<u64>>,
}

/// How bases are chosen shot by shot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Exactly `n_a` shots in basis `a`.
    Fixed,
    /// Each of the `N` shots picks basis `a` with probability `v_a`.
    RandomBasis,
}

/// Whether the state is re-oriented by a fresh Haar unitary on every trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Fixed,
    Haar,
}

/// `k ~ Multinomial(n, q)` by a chain of binomials.
fn multinomial<R: Rng + ?Sized>(n: u64, q: &[f64], rng: &mut R) -> Vec<u64> {
    let mut out = vec![0; q.len()];
    let mut left = n;
    let mut mass: f64 = q.iter().sum();
    for (i, &qi) in q.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == q.len() || mass <= 0.0 {
            out[i] = left;
            break;
        }
        let p = (qi / mass).clamp(0.0, 1.0);
        let k = Binomial::new(left, p).expect("p in [0, 1]").sample(rng);
        out[i] = k;
        left -= k;
        mass -= qi;
    }
    out
}

/// `q_a(j) = ⟨e_j^a|ρ|e_j^a⟩`, clipped at zero and renormalized.
fn basis_distributions(povm: &RankOnePovm, rho: &CMatrix) -> Vec<Vec<f64>> {
    (0..povm.num_bases())
        .map(|a| {
            let q: Vec<f64> = povm
                .basis_range(a)
                .map(|x| {
                    let v = povm.vector(x);
                    (v.adjoint() * rho * v)[(0, 0)].re.max(0.0)
                })
                .collect();
            let s: f64 = q.iter().sum();
            q.into_iter().map(|x| x / s).collect()
        })
        .collect()
}

fn check_shapes(povm: &RankOnePovm, rho: &DensityMatrix, alloc: &ShotAllocation) -> Result<()> {
    if rho.dim() != povm.dim() {
        return structural(format!("state of dimension {} for a POVM in dimension {}", rho.dim(), povm.dim()));
    }
    if alloc.counts().len() != povm.num_bases() {
        return structural(format!("allocation over {} bases for {} bases", alloc.counts().len(), povm.num_bases()));
    }
    Ok(())
}

/// Draws `n_a` outcomes in each basis `a`.
pub fn simulate_with<R: Rng + ?Sized>(
    povm: &RankOnePovm,
    rho: &DensityMatrix,
    alloc: &ShotAllocation,
    rng: &mut R,
) -> Result<Counts> {
    check_shapes(povm, rho, alloc)?;
    let q = basis_distributions(povm, rho.matrix());
    let per_basis = q.iter().zip(alloc.counts()).map(|(qa, &n)| multinomial(n, qa, rng)).collect();
    Ok(Counts { per_basis })
}

/// [`simulate_with`] on the generator for trial 0 of `seed`.
pub fn simulate(povm: &RankOnePovm, rho: &DensityMatrix, alloc: &ShotAllocation, seed: u64) -> Result<Counts> {
    simulate_with(povm, rho, alloc, &mut trial_rng(seed, 0))
}

/// Draws `N` shots, each in a basis chosen with probability `v_a`.
pub fn simulate_random_basis<R: Rng + ?Sized>(
    povm: &RankOnePovm,
    rho: &DensityMatrix,
    total: u64,
    rng: &mut R,
) -> Result<Counts> {
    if rho.dim() != povm.dim() {
        return structural("state and POVM dimensions differ");
    }
    let q = basis_distributions(povm, rho.matrix());
    let per_basis_shots = multinomial(total, povm.basis_weights(), rng);
    let per_basis = q.iter().zip(per_basis_shots).map(|(qa, n)| multinomial(n, qa, rng)).collect();
    Ok(Counts { per_basis })
}

/// `p̂(e_j^a) = (v_a / n_a) · #{shots with outcome e_j^a}`.
pub fn estimated_probabilities(counts: &Counts, alloc: &ShotAllocation) -> Result<Vec<f64>> {
    if counts.per_basis.len() != alloc.counts().len() {
        return structural("counts and allocation cover different bases");
    }
    let v = alloc.weights();
    let mut p = Vec::new();
    for (a, (row, &n)) in counts.per_basis.iter().zip(alloc.counts()).enumerate() {
        if row.iter().sum::<u64>() != n {
            return structural(format!("basis {a} has {} counts for {n} shots", row.iter().sum::<u64>()));
        }
        p.extend(row.iter().map(|&k| v[a] / n as f64 * k as f64));
    }
    Ok(p)
}

/// The linear estimate `ρ̂ = Σ_x p̂(x) Q(x)`.
///
/// With a shifted dual the sum is split as `Σ_x p̂(x) B(x) + Σ_a v_a D_a`,
/// using `Σ_j p̂(e_j^a) = v_a`; the shift part is added only when nonzero.
pub fn estimate_state(counts: &Counts, dual: &ReconstructionDual, alloc: &ShotAllocation) -> Result<CMatrix> {
    let p = estimated_probabilities(counts, alloc)?;
    if p.len() != dual.len() {
        return structural(format!("{} outcomes counted for a dual with {}", p.len(), dual.len()));
    }
    let d = dual.dim();
    let mut out = CMatrix::zeros(d, d);
    for (x, &px) in p.iter().enumerate() {
        out += dual.base_operator(x) * c(px, 0.0);
    }
    if let Some(shift) = dual.shift_term() {
        if shift.iter().any(|z| z.re != 0.0 || z.im != 0.0) {
            out += shift;
        }
    }
    Ok(out)
}

/// Estimate from random-basis counts: `p̂(x) = #x / N`.
pub fn estimate_state_random_basis(counts: &Counts, dual: &ReconstructionDual) -> Result<CMatrix> {
    let total: u64 = counts.per_basis.iter().flatten().sum();
    let p: Vec<f64> = counts.per_basis.iter().flatten().map(|&k| k as f64 / total as f64).collect();
    super::dual::reconstruct(&p, dual)
}

/// `((d+1)/N)(d - tr ρ^2)`, the mean squared error of the tight linear estimate.
pub fn expected_error_tight(d: usize, total: u64, purity: f64) -> f64 {
    let d = d as f64;
    (d + 1.0) / total as f64 * (d - purity)
}

/// Haar-averaged error of the canonical-dual estimate,
/// `(d - tr σ^2)/((d^2 - 1) N) · (Tr F^{-1} - 1)`, with the POVM's basis
/// weights set to `n_a/N`.
pub fn expected_error_general(povm: &RankOnePovm, purity: f64, alloc: &ShotAllocation) -> Result<f64> {
    let povm = povm.with_basis_weights(&alloc.weights())?;
    let tr_inv = FrameSpectrum::of(&povm)?.trace_inverse()?;
    let d = povm.dim() as f64;
    Ok((d - purity) / ((d * d - 1.0) * alloc.total() as f64) * (tr_inv - 1.0))
}

/// Exact `E‖ρ - ρ̂‖^2` for a fixed state and dual:
/// `Σ_{a,j,k} (1/n_a)(v_a p_j δ_jk - p_j p_k) ⟨Q_j, Q_k⟩`.
pub fn expected_error_fixed(
    povm: &RankOnePovm,
    dual: &ReconstructionDual,
    rho: &DensityMatrix,
    alloc: &ShotAllocation,
) -> Result<f64> {
    check_shapes(povm, rho, alloc)?;
    let v = alloc.weights();
    let q = basis_distributions(povm, rho.matrix());
    let mut e = 0.0;
    for (a, &n) in alloc.counts().iter().enumerate() {
        let xs: Vec<usize> = povm.basis_range(a).collect();
        let p: Vec<f64> = q[a].iter().map(|qj| v[a] * qj).collect();
        let ops: Vec<CMatrix> = xs.iter().map(|&x| dual.operator(x)).collect();
        let mut sum_pq = CMatrix::zeros(povm.dim(), povm.dim());
        let mut diag = 0.0;
        for (j, op) in ops.iter().enumerate() {
            diag += p[j] * frobenius(op).powi(2);
            sum_pq += op * c(p[j], 0.0);
        }
        e += (v[a] * diag - frobenius(&sum_pq).powi(2)) / n as f64;
    }
    Ok(e)
}

/// Exact error in random-basis mode: `(1/N)(Σ_x p(x)‖Q(x)‖^2 - ‖Σ_x p(x) Q(x)‖^2)`.
pub fn expected_error_random_basis(
    povm: &RankOnePovm,
    dual: &ReconstructionDual,
    rho: &DensityMatrix,
    total: u64,
) -> Result<f64> {
    let p = povm.probabilities(rho.matrix());
    let mut sum = CMatrix::zeros(povm.dim(), povm.dim());
    let mut diag = 0.0;
    for (x, &px) in p.iter().enumerate() {
        let q = dual.operator(x);
        diag += px * frobenius(&q).powi(2);
        sum += q * c(px, 0.0);
    }
    Ok((diag - frobenius(&sum).powi(2)) / total as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub trials: usize,
    pub seed: u64,
    pub orientation: Orientation,
    pub mode: SamplingMode,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub mean: f64,
    pub std_error: f64,
    /// `‖ρ - ρ̂‖_F^2` for each trial, in trial order.
    pub errors: Vec<f64>,
}

impl MonteCarloResult {
    fn of(errors: Vec<f64>) -> Self {
        let n = errors.len() as f64;
        let mean = errors.iter().sum::<f64>() / n;
        let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self {
            mean,
            std_error: (var / n).sqrt(),
            errors,
        }
    }
}

/// Mean of `‖ρ - ρ̂‖_F^2` over independent trials. Trial `i` draws from
/// `trial_rng(seed, i)`, so results do not depend on the thread count.
/// The POVM's basis weights should equal the allocation's `n_a/N`.
pub fn monte_carlo_error(
    povm: &RankOnePovm,
    dual: &ReconstructionDual,
    sigma: &DensityMatrix,
    alloc: &ShotAllocation,
    config: &MonteCarloConfig,
) -> Result<MonteCarloResult> {
    if config.trials < 2 {
        return domain(format!("need at least 2 trials, got {}", config.trials));
    }
    check_shapes(povm, sigma, alloc)?;
    let errors = (0..config.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(config.seed, i);
            let rho = match config.orientation {
                Orientation::Fixed => sigma.clone(),
                Orientation::Haar => sigma.rotated(&haar_unitary(sigma.dim(), &mut rng)),
            };
            let est = match config.mode {
                SamplingMode::Fixed => estimate_state(&simulate_with(povm, &rho, alloc, &mut rng)?, dual, alloc)?,
                SamplingMode::RandomBasis => {
                    estimate_state_random_basis(&simulate_random_basis(povm, &rho, alloc.total(), &mut rng)?, dual)?
                }
            };
            Ok(frobenius(&(rho.matrix() - est)).powi(2))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(MonteCarloResult::of(errors))
}
