//! Exact small-dimension state algebra: density matrices, pure states, a
//! statevector circuit simulator, spectra, Tsallis entropies and distances.

pub mod circuit;
pub mod entropy;
pub mod linalg;
pub mod random;
pub mod state;

pub use circuit::{prepare_state, simulate, Gate, GateCircuit, DEFAULT_SIM_CAP};
pub use entropy::{binary_entropy, jt_divergence, q_log, tsallis_entropy, tv_distance, Distribution};
pub use random::random_density;
pub use state::{partial_trace, qjt_divergence, trace_distance, DensityMatrix, PureState, StateJson};
