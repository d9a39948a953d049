//! Complete sets of mutually unbiased bases in prime-power dimensions.

use basis_designs::algebra::FiniteField;
use basis_designs::design::{mub_check, standard_mub_family, verify_design};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
        let fam = standard_mub_family(&FiniteField::new(p, n)?)?;
        let mubs = mub_check(&fam, 1e-9);
        let report = verify_design(&fam, 2, 1e-9)?;
        println!(
            "d={:<2} bases={:<2} weight={}  unbiased pairs {}/{}  2-design {}  ({})",
            fam.dim(),
            fam.len(),
            fam.weights()[0],
            mubs.unbiased_pairs,
            mubs.total_pairs,
            report.is_design(2),
            fam.provenance().construction
        );
    }
    Ok(())
}
