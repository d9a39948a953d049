use crate::error::{domain, structural, Result};
use crate::linalg::{c, frobenius, unvectorize, vectorize, CMatrix};

use super::povm::{FrameSpectrum, RankOnePovm};

/// Tolerance on `Σ_a v_a D_a = 0` for shifted tight duals.
pub const SHIFT_TOL: f64 = 1e-10;

/// Reconstruction operators `Q(x)`, stored as per-outcome base operators
/// plus optional per-basis shifts: `Q(e_j^a) = B(e_j^a) + D_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionDual {
    dim: usize,
    base: Vec<CMatrix>,
    shifts: Option<Vec<CMatrix>>,
    basis_weights: Vec<f64>,
}

impl ReconstructionDual {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    fn basis_of(&self, x: usize) -> usize {
        x / self.dim
    }

    pub fn num_bases(&self) -> usize {
        self.base.len() / self.dim
    }

    pub fn shifts(&self) -> Option<&[CMatrix]> {
        self.shifts.as_deref()
    }

    pub fn base_operator(&self, x: usize) -> &CMatrix {
        &self.base[x]
    }

    /// `Q(x)`.
    pub fn operator(&self, x: usize) -> CMatrix {
        match &self.shifts {
            Some(s) => &self.base[x] + &s[self.basis_of(x)],
            None => self.base[x].clone(),
        }
    }

    pub fn operators(&self) -> Vec<CMatrix> {
        (0..self.len()).map(|x| self.operator(x)).collect()
    }

    /// `‖Σ_x |Q(x))(F(x)| - I‖_F` over the superoperator space.
    pub fn residual(&self, povm: &RankOnePovm) -> Result<f64> {
        if povm.len() != self.len() || povm.dim() != self.dim {
            return structural("dual and POVM have different shapes");
        }
        let n = self.dim * self.dim;
        let mut s = CMatrix::zeros(n, n);
        for x in 0..self.len() {
            s += vectorize(&self.operator(x)) * vectorize(&povm.element(x)).adjoint();
        }
        Ok(frobenius(&(s - CMatrix::identity(n, n))))
    }

    /// `Σ_a v_a D_a`, the part of every estimate contributed by the shifts.
    pub(crate) fn shift_term(&self) -> Option<CMatrix> {
        let shifts = self.shifts.as_ref()?;
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (d, &v) in shifts.iter().zip(&self.basis_weights) {
            acc += d * c(v, 0.0);
        }
        Some(acc)
    }
}

/// `R(x) = F^{-1} π(x)`, the canonical dual frame.
pub fn canonical_dual(povm: &RankOnePovm) -> Result<ReconstructionDual> {
    let finv = FrameSpectrum::of(povm)?.inverse()?;
    let d = povm.dim();
    let base = (0..povm.len())
        .map(|x| {
            let r = unvectorize(&(&finv * vectorize(&povm.projector(x))), d);
            (&r + r.adjoint()) * c(0.5, 0.0)
        })
        .collect();
    Ok(ReconstructionDual {
        dim: d,
        base,
        shifts: None,
        basis_weights: povm.basis_weights().to_vec(),
    })
}

/// `Q(e_j^a) = (d+1) π(e_j^a) - I + D_a`. The shifts must satisfy
/// `Σ_a v_a D_a = 0`; the result is a dual frame when the POVM is tight.
pub fn tight_dual(povm: &RankOnePovm, shifts: Option<&[CMatrix]>) -> Result<ReconstructionDual> {
    let d = povm.dim();
    let id = CMatrix::identity(d, d);
    let base = (0..povm.len())
        .map(|x| povm.projector(x) * c((d + 1) as f64, 0.0) - &id)
        .collect();
    let mut dual = ReconstructionDual {
        dim: d,
        base,
        shifts: None,
        basis_weights: povm.basis_weights().to_vec(),
    };
    if let Some(s) = shifts {
        if s.len() != povm.num_bases() {
            return structural(format!("{} shifts for {} bases", s.len(), povm.num_bases()));
        }
        if let Some(m) = s.iter().find(|m| m.nrows() != d || m.ncols() != d) {
            return structural(format!("shift of shape {}x{} in dimension {d}", m.nrows(), m.ncols()));
        }
        dual.shifts = Some(s.to_vec());
        let total = frobenius(&dual.shift_term().expect("shifts are set"));
        if total > SHIFT_TOL {
            return domain(format!("shifts are not admissible: ‖Σ v_a D_a‖ = {total:e}"));
        }
    }
    Ok(dual)
}

/// `ρ = Σ_x p(x) Q(x)`.
pub fn reconstruct(p: &[f64], dual: &ReconstructionDual) -> Result<CMatrix> {
    if p.len() != dual.len() {
        return structural(format!("{} probabilities for {} outcomes", p.len(), dual.len()));
    }
    let d = dual.dim();
    let mut out = CMatrix::zeros(d, d);
    for (x, &px) in p.iter().enumerate() {
        out += dual.operator(x) * c(px, 0.0);
    }
    Ok(out)
}
