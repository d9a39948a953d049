//! Canonical and shifted dual frames for qubit MUBs, and what a perturbed
//! basis does to the reconstruction error.

use basis_designs::algebra::FiniteField;
use basis_designs::design::{standard_mub_family, Basis, WeightedBasisFamily};
use basis_designs::linalg::{c, frobenius, CMatrix, CVector};
use basis_designs::tomography::{
    canonical_dual, estimate_state, expected_error_general, povm_for_allocation, simulate, tight_dual,
    DensityMatrix, ShotAllocation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = standard_mub_family(&FiniteField::new(2, 1)?)?;
    let alloc = ShotAllocation::uniform(3, 200)?;
    let povm = povm_for_allocation(&fam, &alloc)?;

    let e = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.2), c(0.0, -0.2), c(-0.5, 0.0)]);
    let plain = tight_dual(&povm, None)?;
    let shifted = tight_dual(&povm, Some(&[e.clone(), -e, CMatrix::zeros(2, 2)]))?;
    println!("dual residuals: plain {:.1e}, shifted {:.1e}", plain.residual(&povm)?, shifted.residual(&povm)?);

    let rho = DensityMatrix::pure(&CVector::from_vec(vec![c(0.8, 0.0), c(0.0, 0.6)]))?;
    let counts = simulate(&povm, &rho, &alloc, 3)?;
    let a = estimate_state(&counts, &plain, &alloc)?;
    let b = estimate_state(&counts, &shifted, &alloc)?;
    println!("estimates agree: {}  error {:.4e}", a == b, frobenius(&(a - rho.matrix())).powi(2));

    for theta in [0.0, 0.1, 0.2, 0.35] {
        let (s, co) = f64::sin_cos(theta);
        let rx = CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, s), c(0.0, s), c(co, 0.0)]);
        let mut bases = fam.bases().to_vec();
        bases[2] = Basis::new(&rx * bases[2].matrix())?;
        let pert = WeightedBasisFamily::new(bases, fam.weights().to_vec(), fam.provenance().clone())?;
        let povm = povm_for_allocation(&pert, &alloc)?;
        let dual = canonical_dual(&povm)?;
        println!(
            "theta {theta:.2}: average error {:.6e}, dual frame residual {:.1e}",
            expected_error_general(&povm, 1.0, &alloc)?,
            dual.residual(&povm)?
        );
    }
    Ok(())
}
