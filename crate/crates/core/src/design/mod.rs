//! Weighted families of orthonormal bases: construction from 1-uniform
//! functions, design verification, MUB checks and the design file.

mod bounds;
mod construct;
mod family;
pub mod io;
mod verify;

pub use bounds::{bound_table, min_bases_upper_bound, BasisBound, Recipe, MAX_TABLE_DIM, MIN_TABLE_DIM};
pub use construct::{build_design, dim6_design, standard_mub_family, MAX_DIMENSION};
pub use family::{
    dedupe, doubled_standard, single_standard, Basis, Provenance, Weight, WeightedBasisFamily, ORTHONORMAL_TOL,
    WEIGHT_SUM_TOL,
};
pub use io::{parse_design, read_design, serialize_design, write_design, DesignFile};
pub use verify::{
    design_bound, moment_operator, moment_target, mub_check, symmetric_projector2, verify_design, welch_bound,
    welch_sum, DesignReport, LevelReport, MubCheck, DEFAULT_TOL, MAX_MOMENT_SIZE, MAX_T, MUB_TOL,
};
