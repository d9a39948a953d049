use serde::{Deserialize, Serialize};

use crate::algebra::arith::binomial;
use crate::error::{domain, Error, Result};
use crate::linalg::{c, frobenius, CMatrix};

use super::family::WeightedBasisFamily;

/// Default relative tolerance on the Welch residual.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest `d^t` for which [`moment_operator`] builds the matrix.
pub const MAX_MOMENT_SIZE: usize = 4096;
pub const MAX_T: u32 = 3;

/// `binom(d+t-1, t)^{-1}`, the minimum of the Welch sum.
pub fn welch_bound(t: u32, d: usize) -> f64 {
    1.0 / binomial(d as u64 + t as u64 - 1, t as u64) as f64
}

/// `|⟨e_j^a|e_k^b⟩|^2` for all basis pairs `a ≤ b`.
struct Overlaps {
    pairs: Vec<(usize, usize, Vec<f64>)>,
}

impl Overlaps {
    fn of(family: &WeightedBasisFamily) -> Self {
        let bases = family.bases();
        let mut pairs = Vec::with_capacity(bases.len() * (bases.len() + 1) / 2);
        for a in 0..bases.len() {
            let adj = bases[a].matrix().adjoint();
            for b in a..bases.len() {
                let g = &adj * bases[b].matrix();
                pairs.push((a, b, g.iter().map(|z| z.norm_sqr()).collect()));
            }
        }
        Self { pairs }
    }

    fn welch(&self, weights: &[f64], t: u32) -> f64 {
        self.pairs
            .iter()
            .map(|(a, b, sq)| {
                let mult = if a == b { 1.0 } else { 2.0 };
                let s: f64 = sq.iter().map(|v| v.powi(t as i32)).sum();
                mult * weights[*a] * weights[*b] * s
            })
            .sum()
    }

    fn cross(&self) -> impl Iterator<Item = &(usize, usize, Vec<f64>)> {
        self.pairs.iter().filter(|(a, b, _)| a != b)
    }
}

fn check_t(t: u32) -> Result<()> {
    if t == 0 || t > MAX_T {
        return domain(format!("t = {t} is outside 1..={MAX_T}"));
    }
    Ok(())
}

/// `Σ_{a,b} w_a w_b Σ_{j,k} |⟨e_j^a|e_k^b⟩|^{2t}`.
pub fn welch_sum(family: &WeightedBasisFamily, t: u32) -> Result<f64> {
    check_t(t)?;
    Ok(Overlaps::of(family).welch(&family.weight_values(), t))
}

/// Verdicts for one strength `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub t: u32,
    pub welch_sum: f64,
    pub bound: f64,
    /// `welch_sum - bound`, nonnegative up to rounding.
    pub residual: f64,
    pub is_design: bool,
    /// `‖Σ w π^{⊗t} - bound · Π_sym‖_F`, when the moment matrix is small enough.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment_is_design: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub dim: usize,
    pub bases: usize,
    pub tolerance: f64,
    pub levels: Vec<LevelReport>,
    pub mub_pairs: usize,
    pub total_pairs: usize,
    /// Extremes of `|⟨e_j^a|e_k^b⟩|^2` over distinct bases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_cross_overlap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cross_overlap: Option<f64>,
}

impl DesignReport {
    pub fn level(&self, t: u32) -> Option<&LevelReport> {
        self.levels.iter().find(|l| l.t == t)
    }

    pub fn is_design(&self, t: u32) -> bool {
        self.level(t).is_some_and(|l| l.is_design)
    }
}

/// Checks the weighted `s`-design property for every `s ≤ t`, by the Welch
/// sum (`|welch - bound| ≤ tol·bound`) and, where `d^s ≤ 4096` and `s ≤ 2`,
/// by the moment operator (`‖S - bound·Π‖_F^2 ≤ tol·bound`; the squared
/// residual equals `welch - bound`).
pub fn verify_design(family: &WeightedBasisFamily, t: u32, tol: f64) -> Result<DesignReport> {
    check_t(t)?;
    let d = family.dim();
    let weights = family.weight_values();
    let overlaps = Overlaps::of(family);
    let mut levels = Vec::new();
    for s in 1..=t {
        let welch = overlaps.welch(&weights, s);
        let bound = welch_bound(s, d);
        let residual = welch - bound;
        let moment_residual = if s <= 2 && d.pow(s) <= MAX_MOMENT_SIZE {
            Some(moment_residual(family, s)?)
        } else {
            None
        };
        levels.push(LevelReport {
            t: s,
            welch_sum: welch,
            bound,
            residual,
            is_design: residual.abs() <= tol * bound,
            moment_residual,
            moment_is_design: moment_residual.map(|r| r * r <= tol * bound),
        });
    }
    let mc = mub_check_with(&overlaps, family.len(), d, MUB_TOL);
    let cross: Vec<f64> = overlaps.cross().flat_map(|(_, _, sq)| sq.iter().copied()).collect();
    Ok(DesignReport {
        dim: d,
        bases: family.len(),
        tolerance: tol,
        levels,
        mub_pairs: mc.unbiased_pairs,
        total_pairs: mc.total_pairs,
        min_cross_overlap: cross.iter().copied().reduce(f64::min),
        max_cross_overlap: cross.iter().copied().reduce(f64::max),
    })
}

/// Tolerance used for the MUB pair count inside [`verify_design`].
pub const MUB_TOL: f64 = 1e-9;

/// `Σ_a w_a Σ_j π(e_j^a)^{⊗t}` for `t ∈ {1, 2}`, as a `d^t × d^t` matrix with
/// Kronecker index `i·d + j` for `|i⟩⊗|j⟩`.
pub fn moment_operator(family: &WeightedBasisFamily, t: u32) -> Result<CMatrix> {
    let d = family.dim();
    if !(1..=2).contains(&t) {
        return domain(format!("moment operator is built for t in 1..=2, got {t}"));
    }
    let size = d.pow(t);
    if size > MAX_MOMENT_SIZE {
        return Err(Error::Capacity {
            what: "moment operator size",
            got: size,
            limit: MAX_MOMENT_SIZE,
        });
    }
    let mut out = CMatrix::zeros(size, size);
    for (basis, w) in family.iter() {
        for j in 0..d {
            let v = basis.vector(j);
            let v = if t == 1 { v } else { v.kronecker(&v) };
            out += (&v * v.adjoint()) * c(w.value, 0.0);
        }
    }
    Ok(out)
}

/// `Π_sym^{(2)} = (I⊗I + T)/2` with `T` the swap.
pub fn symmetric_projector2(d: usize) -> CMatrix {
    let n = d * d;
    CMatrix::from_fn(n, n, |r, s| {
        let (i, j) = (r / d, r % d);
        let mut v = if r == s { 0.5 } else { 0.0 };
        if s == j * d + i {
            v += 0.5;
        }
        c(v, 0.0)
    })
}

/// `bound · Π_sym^{(t)}`, the moment operator of a `t`-design.
pub fn moment_target(d: usize, t: u32) -> CMatrix {
    let bound = welch_bound(t, d);
    match t {
        1 => CMatrix::identity(d, d) * c(bound, 0.0),
        2 => symmetric_projector2(d) * c(bound, 0.0),
        _ => panic!("moment targets are built for t in 1..=2"),
    }
}

fn moment_residual(family: &WeightedBasisFamily, t: u32) -> Result<f64> {
    Ok(frobenius(&(moment_operator(family, t)? - moment_target(family.dim(), t))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubCheck {
    pub unbiased_pairs: usize,
    pub total_pairs: usize,
    /// Basis pairs `(a, b)`, `a < b`, with some overlap off `1/d` by more than `tol`.
    pub offending: Vec<(usize, usize)>,
}

fn mub_check_with(overlaps: &Overlaps, m: usize, d: usize, tol: f64) -> MubCheck {
    let target = 1.0 / d as f64;
    let offending: Vec<_> = overlaps
        .cross()
        .filter(|(_, _, sq)| sq.iter().any(|v| (v - target).abs() > tol))
        .map(|(a, b, _)| (*a, *b))
        .collect();
    let total_pairs = m * (m - 1) / 2;
    MubCheck {
        unbiased_pairs: total_pairs - offending.len(),
        total_pairs,
        offending,
    }
}

/// Counts basis pairs all of whose overlaps `|⟨e_j^a|e_k^b⟩|^2` are within
/// `tol` of `1/d`.
pub fn mub_check(family: &WeightedBasisFamily, tol: f64) -> MubCheck {
    mub_check_with(&Overlaps::of(family), family.len(), family.dim(), tol)
}

/// Lower bound on the size of a weighted `t`-design in `CP^{d-1}`:
/// `binom(d+⌈t/2⌉-1, ⌈t/2⌉) · binom(d+⌊t/2⌋-1, ⌊t/2⌋)`.
pub fn design_bound(t: u32, d: u64) -> u64 {
    let (hi, lo) = ((t as u64).div_ceil(2), t as u64 / 2);
    binomial(d + hi - 1, hi) * binomial(d + lo - 1, lo)
}
