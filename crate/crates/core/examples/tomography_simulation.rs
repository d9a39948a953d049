//! Simulated linear tomography with the dimension-6 design against the
//! closed-form error.
//!
//! cargo run --release --example tomography_simulation -- 4200 2000

use basis_designs::design::dim6_design;
use basis_designs::random::{random_pure_state, trial_rng};
use basis_designs::tomography::{
    canonical_dual, expected_error_general, expected_error_tight, monte_carlo_error, povm_for_allocation,
    DensityMatrix, MonteCarloConfig, Orientation, SamplingMode, ShotAllocation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (shots, trials) = match args[..] {
        [n, t] => (n, t as usize),
        _ => (4200, 2000),
    };
    let fam = dim6_design();
    let v: Vec<f64> = fam.weight_values().iter().map(|w| w * 6.0).collect();
    let alloc = ShotAllocation::from_weights(&v, shots)?;
    println!("allocation {:?}", alloc.counts());

    let povm = povm_for_allocation(&fam, &alloc)?;
    let dual = canonical_dual(&povm)?;
    let sigma = DensityMatrix::pure(&random_pure_state(6, &mut trial_rng(1, 0)))?;
    for (mode, label) in [(SamplingMode::Fixed, "fixed allocation"), (SamplingMode::RandomBasis, "random basis")] {
        let cfg = MonteCarloConfig { trials, seed: 2, orientation: Orientation::Haar, mode };
        let mc = monte_carlo_error(&povm, &dual, &sigma, &alloc, &cfg)?;
        println!("{label:<17} mean error {:.6e} +/- {:.1e}", mc.mean, mc.std_error);
    }
    println!("tight prediction  {:.6e}", expected_error_tight(6, alloc.total(), 1.0));
    println!("frame prediction  {:.6e}", expected_error_general(&povm, 1.0, &alloc)?);
    Ok(())
}
