//! Randomized and extremal verification of the divergence and entropy
//! inequalities, reported as replayable suite summaries.

pub mod aux;
mod channel;
mod extremal;
mod identities;
mod report;
mod suites;

pub use channel::{
    depolarizing_channel, partial_trace_channel, random_channel, random_channel_with, random_unitary_channel,
    unitary_channel, KrausChannel, COMPLETENESS_TOL,
};
pub use extremal::{extremal_distributions, sample_at_tv};
pub use identities::{
    diagonal_qjt_defect, fannes_slack, joint_entropy_defect, pseudo_additivity_defect, pure_trace_distance_defect,
    structural_suite, IDENTITY_TOL,
};
pub(crate) use report::run_cases;
pub use report::{SuiteOptions, SuiteReport, CLOSED_FORM_TOL, SPECTRAL_TOL};
pub use suites::{
    auxiliary_fact_suite, binary_bound_check, classical_jt_lower_suite, lower_bound_counterexample, KNOWN_FALSE_PARTS, binary_bound_entry, binary_bound_suite, classical_jt_lower_check,
    data_processing_check, data_processing_part, data_processing_suite, partial_trace_counterexample, default_q_grid, linspace, qjt_link_suite, qjt_sandwich_check, qjt_sandwich_suite,
    random_pair, uniform_tv_bound_check, uniform_tv_brute_force, uniform_tv_full_suite, uniform_tv_suite, BinaryEntry,
    ChannelKind, DataProcessingEntry, PairEnsemble, PairKind, SandwichEntry, SandwichLink, UniformTvEntry,
};
