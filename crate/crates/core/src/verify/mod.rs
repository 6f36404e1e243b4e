//! Certificates: adaptive-precision sign checks for the coefficient
//! sequences, grid verification of the inequality families, sharpness
//! probes, and the `H`/`J` monotonicity checks.

mod bounds;
mod certificate;
mod grid;
mod h;
mod sequence;
mod sharpness;

pub use bounds::{check_point, m1_identity_residual, p3_threshold, BoundSpec, Family, GridPoint, Threshold};
pub use certificate::{Certificate, PrecisionPolicy, Status, Witness};
pub use grid::{
    default_grid, default_x_grid, default_xy_grid, grid_verify, grid_verify_with, DEFAULT_GRID_DENSITY,
    ENDPOINT_DEPTH,
};
pub use h::{h_monotonicity, h_monotonicity_with, j_quotient, j_truncation_check};
pub use sequence::{certify_sequence, Claim, Expect, CLAIM_NAMES};
pub use sharpness::{sharpness_probe, SEARCH_STEPS};
