//! Block-encodings at matrix level, polynomial eigenvalue transforms, the
//! Hadamard test and amplitude estimation, with analytic query accounting.

pub mod amplitude;
pub mod block;
pub mod hadamard;

pub use amplitude::{ae_distribution, ae_error_bound, ae_estimate, ae_in_bound_mass, ae_sample, ae_sample_with, grid_for_error, AeDraw};
pub use block::{
    block_encode_density, block_encode_samplized, block_encode_state, poly_transform, poly_transform_with, BlockEncoding,
    PolyOptions, QueryLedger,
};
pub use hadamard::{hadamard_prob, hadamard_prob_imag, hadamard_test_cost};
