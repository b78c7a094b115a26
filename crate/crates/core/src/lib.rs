// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo simulation of the projective transverse field Ising model
//! read as a repetition code with faulty, intermittent syndrome measurements.
//!
//! The crate samples classical error and syndrome trajectories, decodes them
//! with four decoders, and estimates decoding probabilities, mean times to
//! first failure and threshold crossings. A stabilizer-tableau simulator is
//! included to check that classical sampling reproduces the quantum process.
//!
//! ```
//! use ptim::{estimate_pd, Decoder, Params};
//!
//! let params = Params::new(0.2, 0.2, 7, 7, 1).unwrap();
//! let est = estimate_pd(Decoder::Matching, &params, 200).unwrap();
//! assert!(est.mean > 0.9);
//! ```

pub mod cli;
pub mod error;
pub mod lattice;
pub mod matching;
pub mod metrics;
pub mod mld;
pub mod mvd;
pub mod sampler;
pub mod stabilizer;

pub use error::{Error, Result};
pub use lattice::{
    candidate_strings, syndrome_of_config, BitConfig, ErrorPattern, FlipPattern, Grid, Outcome,
    Params, SyndromePattern, SyndromeRecord,
};
pub use matching::{
    build_defect_graph, decode_mwpm, decode_mwpm_weighted, extract_defects, min_weight_perfect_matching, Defect,
    DefectGraph, Matching, Partner, Side,
};
pub use metrics::{
    analytic_pd_mwpm_q0, estimate_pd, estimate_pd_common, mtff, threshold_crossing, Crossing,
    Curve, Decoder, Estimate, MtffResult,
};
pub use mld::{
    brute_force_class_probability, candidate_weights, class_log_probability, decode_mld, ClassWeight,
    TransferMatrix,
};
pub use mvd::{decode_mvd, segments_at, MajorityVoter, Segment};
pub use sampler::{
    evaluate_fbi, run_classical, sample_error_pattern, sample_flips_direct,
    sample_flips_two_stage, sample_syndrome_pattern, RngStream, StreamKind, Trajectory,
};
pub use stabilizer::{
    cluster_survives, evaluate_fqm, full_knowledge_pd, run_quantum, QuantumRunResult, Tableau,
};
