//! Classical probability engine for linear-optics boson sampling.
//!
//! Output-state amplitudes of an N-mode interferometer are encoded as
//! integer-frequency harmonics of a generating function g(t; {Q_i}) and read
//! back out of its discrete spectrum. Two frequency assignments are
//! provided: a positional one that separates every output state (one FFT
//! pass yields the whole distribution) and a target-adapted one that keeps a
//! single chosen state alias-free even at the reduced sampling rate
//! f_s = f_target + 1. Both are validated against permanent-based and
//! polynomial-expansion oracles, and a Metropolis-Hastings sampler
//! approximates distributions too large to enumerate.

pub mod complexity;
pub mod distribution;
pub mod error;
pub mod fock;
pub mod fourier;
pub mod io;
pub mod matrix;
pub mod mcmc;
pub mod oracle;
pub mod permanent;
mod validate;

pub use distribution::{DistributionKind, OutcomeDistribution};
pub use error::{Error, Result};
pub use fock::{enumerate_output_states, factorial, factorial_ratio, outcome_count, FockState};
pub use fourier::{
    check_collision_free, distribution_from_plan, eval_g, full_distribution,
    full_distribution_with_limit, full_spectrum, full_spectrum_with_limit, q_method1, q_method2,
    single_state_probability, single_state_probability_with_limit, state_frequency,
    FrequencyPlan, Method, SamplingMode, Spectrum,
};
pub use matrix::{haar_random_unitary, validate_unitary, ComplexMatrix, UnitaryMatrix};
pub use mcmc::{
    acceptance_prob, cosine_similarity, propose, run_chain, run_chain_with_checkpoints,
    transition_prob, ChainCheckpoint, ChainConfig, ChainStats,
};
pub use oracle::{probability_via_expansion, probability_via_permanent};
pub use permanent::{permanent_naive, permanent_ryser};
