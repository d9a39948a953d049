use crate::error::{domain, Result};
use crate::linalg::{c, frobenius, hermitian_defect, hermitian_eigen, projector, trace, CMatrix, CVector};

pub const STATE_TOL: f64 = 1e-12;

/// A quantum state on `C^d`: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return domain(format!("density matrix must be square, got {}x{}", matrix.nrows(), matrix.ncols()));
        }
        let h = hermitian_defect(&matrix);
        if h > STATE_TOL {
            return domain(format!("matrix is not Hermitian (defect {h:e})"));
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > STATE_TOL {
            return domain(format!("trace is {tr}, expected 1"));
        }
        let (eig, _) = hermitian_eigen(&matrix);
        if eig[0] < -STATE_TOL {
            return domain(format!("matrix has negative eigenvalue {:e}", eig[0]));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|` for `ψ` normalized internally.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let n = psi.norm();
        if !(n > 0.0) {
            return domain("state vector is zero");
        }
        Self::new(projector(&(psi / c(n, 0.0))))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: CMatrix::identity(d, d) * c(1.0 / d as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `tr ρ^2`.
    pub fn purity(&self) -> f64 {
        frobenius(&self.matrix).powi(2)
    }

    /// `U ρ U†`.
    pub fn rotated(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: u * &self.matrix * u.adjoint(),
        }
    }
}

/// Closest density matrix in Frobenius norm: eigenvalues projected onto the
/// probability simplex. Not used by the error laws, which concern the raw
/// linear estimate.
pub fn project_to_state(m: &CMatrix) -> DensityMatrix {
    let (eig, vecs) = hermitian_eigen(m);
    let mut sorted = eig.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut shift = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cum += v;
        let candidate = (cum - 1.0) / (i + 1) as f64;
        if v - candidate > 0.0 {
            shift = candidate;
        }
    }
    let d = m.nrows();
    let mut out = CMatrix::zeros(d, d);
    for (k, &v) in eig.iter().enumerate() {
        let lam = (v - shift).max(0.0);
        if lam > 0.0 {
            let col = vecs.column(k).into_owned();
            out += projector(&col) * c(lam, 0.0);
        }
    }
    let out = (&out + out.adjoint()) * c(0.5, 0.0);
    DensityMatrix { matrix: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_pure_state, trial_rng};

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(CMatrix::identity(2, 2)).is_err());
        let mut m = CMatrix::identity(2, 2) * c(0.5, 0.0);
        m[(0, 1)] = c(0.0, 0.1);
        assert!(DensityMatrix::new(m).is_err());
        let neg = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.5, 0.0), c(-0.5, 0.0)]));
        assert!(DensityMatrix::new(neg).is_err());
        assert!((DensityMatrix::maximally_mixed(4).purity() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn projection_fixes_states_and_repairs_indefinite_matrices() {
        let mut rng = trial_rng(1, 0);
        let rho = DensityMatrix::pure(&random_pure_state(3, &mut rng)).unwrap();
        assert!(frobenius(&(project_to_state(rho.matrix()).matrix() - rho.matrix())) < 1e-10);
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.2, 0.0), c(-0.2, 0.0)]));
        let p = project_to_state(&m);
        assert!((p.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(DensityMatrix::new(p.matrix().clone()).is_ok());
    }
}
