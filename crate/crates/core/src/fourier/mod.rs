//! Frequency planning and spectral extraction for the generating function
//! g(t; {Q_i}), whose integer harmonics carry the output-state amplitudes.

mod engine;
mod plan;

pub use engine::{
    distribution_from_plan, eval_g, full_distribution, full_distribution_with_limit,
    full_spectrum, full_spectrum_with_limit, project_coefficient, single_state_probability,
    single_state_probability_with_limit, SamplingMode, Spectrum,
    DEFAULT_PROJECTION_SAMPLE_LIMIT, DEFAULT_SPECTRUM_SAMPLE_LIMIT,
};
pub use plan::{
    check_collision_free, q_method1, q_method2, state_frequency, FrequencyPlan, Method,
    MAX_FREQUENCY,
};
