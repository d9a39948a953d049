//! Weighted basis families as rank-one POVMs: frame superoperators, dual
//! frames, linear reconstruction, cloning fidelity and the error of linear
//! tomography, both in closed form and by simulation.

mod dual;
mod povm;
mod report;
mod sim;
mod state;

pub use dual::{canonical_dual, reconstruct, tight_dual, ReconstructionDual, SHIFT_TOL};
pub use povm::{
    cloning_fidelity, frame_superop, is_informationally_complete, povm_from_family, tight_frame_superop,
    trace_inverse_frame, worst_case_fidelity, FrameSpectrum, RankOnePovm, IC_CUTOFF, MAX_FRAME_DIM, POVM_TOL,
};
pub use report::{write_trials_csv, TomographyReport};
pub use sim::{
    estimate_state, estimate_state_random_basis, estimated_probabilities, expected_error_fixed,
    expected_error_general, expected_error_random_basis, expected_error_tight, monte_carlo_error, simulate,
    simulate_random_basis, simulate_with, Counts, MonteCarloConfig, MonteCarloResult, Orientation, SamplingMode,
    ShotAllocation,
};
pub use state::{project_to_state, DensityMatrix, STATE_TOL};

use crate::design::WeightedBasisFamily;
use crate::error::Result;

/// The POVM of `family` with basis probabilities `n_a/N` from `alloc`.
pub fn povm_for_allocation(family: &WeightedBasisFamily, alloc: &ShotAllocation) -> Result<RankOnePovm> {
    povm_from_family(family).with_basis_weights(&alloc.weights())
}
