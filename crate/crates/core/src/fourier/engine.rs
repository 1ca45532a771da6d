//! The harmonic probability engine: sample the generating function
//! g(t; {Q_i}) over one unit interval, then read state amplitudes out of its
//! spectrum — all bins at once via an FFT, or a single aliased coefficient
//! by direct projection at the reduced rate.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::distribution::{DistributionKind, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::fock::{enumerate_output_states, factorial_ratio, FockState};
use crate::fourier::plan::{q_method2, state_frequency, FrequencyPlan};
use crate::matrix::UnitaryMatrix;
use crate::validate::{check_state_matrix, check_transition};

/// Default cap on stored sample buffers (full-spectrum path).
pub const DEFAULT_SPECTRUM_SAMPLE_LIMIT: u64 = 1 << 26;
/// Default cap on streamed sample counts (single-coefficient path).
pub const DEFAULT_PROJECTION_SAMPLE_LIMIT: u64 = 1 << 32;

/// How many points the single-coefficient path samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMode {
    /// K = 2·f_max: no aliasing anywhere in the spectrum.
    Nyquist,
    /// K = f_target + 1: everything aliases, but the target bin stays clean.
    Reduced,
}

/// All K DFT bins of the sampled generating function. Bin b holds the sum of
/// amplitudes α(l) over states with f(l) ≡ b (mod K).
#[derive(Clone, Debug)]
pub struct Spectrum {
    bins: Vec<Complex64>,
    plan: FrequencyPlan,
}

impl Spectrum {
    pub fn sample_count(&self) -> u64 {
        self.bins.len() as u64
    }

    pub fn plan(&self) -> &FrequencyPlan {
        &self.plan
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }

    /// Bin holding frequency `f`; indices wrap modulo K (aliasing).
    pub fn bin(&self, f: u64) -> Complex64 {
        self.bins[(f % self.sample_count()) as usize]
    }

    /// Amplitude α(l) read from the state's bin.
    pub fn state_amplitude(&self, state: &FockState) -> Result<Complex64> {
        let f = state_frequency(state, &self.plan)?;
        Ok(self.bin(f))
    }
}

/// g(t; {Q_i}) = Π_p (Σ_q e^(i2πQ_q t)·u*_qp)^(k_p) over occupied inputs p.
///
/// O(N²) complex operations per call; inner sums are raised to k_p by
/// binary powering.
pub fn eval_g(
    t: f64,
    u: &UnitaryMatrix,
    input: &FockState,
    plan: &FrequencyPlan,
) -> Result<Complex64> {
    check_state_matrix(u, input)?;
    if plan.modes() != u.n() {
        return Err(Error::ModeMismatch {
            state_modes: plan.modes(),
            matrix_modes: u.n(),
        });
    }
    let phases: Vec<Complex64> = plan
        .q()
        .iter()
        .map(|&q| Complex64::cis(TAU * (q as f64 * t).rem_euclid(1.0)))
        .collect();
    Ok(g_from_phases(&phases, u, input))
}

fn g_from_phases(phases: &[Complex64], u: &UnitaryMatrix, input: &FockState) -> Complex64 {
    let n = u.n();
    let mut g = Complex64::ONE;
    for (p, &count) in input.occupations().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let mut sum = Complex64::ZERO;
        for (q, &phase) in phases.iter().enumerate().take(n) {
            sum += phase * u.get(q, p).conj();
        }
        g *= sum.powu(count);
    }
    g
}

/// Streams g(n/K) for n = 0..K using exact integer phase residues:
/// the phase of mode q at sample n is 2π·((Q_q·n) mod K)/K, so huge Q never
/// reaches floating point and samples stay exactly periodic.
struct SampledGenerator<'a> {
    u: &'a UnitaryMatrix,
    input: &'a FockState,
    samples: u64,
    steps: Vec<u64>,
    residues: Vec<u64>,
    phases: Vec<Complex64>,
}

impl<'a> SampledGenerator<'a> {
    fn new(u: &'a UnitaryMatrix, input: &'a FockState, plan: &FrequencyPlan, samples: u64) -> Self {
        let steps: Vec<u64> = plan.q().iter().map(|&q| q % samples).collect();
        let residues = vec![0u64; steps.len()];
        let phases = vec![Complex64::ONE; steps.len()];
        Self {
            u,
            input,
            samples,
            steps,
            residues,
            phases,
        }
    }

    fn next_sample(&mut self) -> Complex64 {
        let k = self.samples as f64;
        for (phase, &residue) in self.phases.iter_mut().zip(&self.residues) {
            *phase = Complex64::cis(TAU * residue as f64 / k);
        }
        let g = g_from_phases(&self.phases, self.u, self.input);
        for (residue, &step) in self.residues.iter_mut().zip(&self.steps) {
            *residue += step;
            if *residue >= self.samples {
                *residue -= self.samples;
            }
        }
        g
    }
}

fn check_plan(u: &UnitaryMatrix, input: &FockState, plan: &FrequencyPlan) -> Result<()> {
    check_state_matrix(u, input)?;
    if plan.modes() != u.n() {
        return Err(Error::ModeMismatch {
            state_modes: plan.modes(),
            matrix_modes: u.n(),
        });
    }
    Ok(())
}

/// Sample g at K = plan.sample_count() points and return all K DFT bins,
/// bin b = (1/K)·Σ_n g(n/K)·e^(−i2πbn/K). Uses the default sample budget.
pub fn full_spectrum(
    u: &UnitaryMatrix,
    input: &FockState,
    plan: &FrequencyPlan,
) -> Result<Spectrum> {
    full_spectrum_with_limit(u, input, plan, DEFAULT_SPECTRUM_SAMPLE_LIMIT)
}

pub fn full_spectrum_with_limit(
    u: &UnitaryMatrix,
    input: &FockState,
    plan: &FrequencyPlan,
    max_samples: u64,
) -> Result<Spectrum> {
    check_plan(u, input, plan)?;
    let samples = plan.sample_count();
    if samples > max_samples {
        return Err(Error::Capacity(format!(
            "spectrum needs {samples} stored samples, budget is {max_samples}; \
             the single-coefficient projection streams in O(1) memory instead"
        )));
    }
    let len = samples as usize;
    let mut generator = SampledGenerator::new(u, input, plan, samples);
    let mut buffer: Vec<Complex64> = (0..len).map(|_| generator.next_sample()).collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(len);
    fft.process(&mut buffer);
    let scale = 1.0 / samples as f64;
    for bin in &mut buffer {
        *bin *= scale;
    }
    Ok(Spectrum {
        bins: buffer,
        plan: plan.clone(),
    })
}

/// Single Fourier coefficient at `frequency` from `samples` points of g,
/// by direct streaming projection with compensated summation. This is the
/// exact-K path: no padding, no stored sample array.
pub fn project_coefficient(
    u: &UnitaryMatrix,
    input: &FockState,
    plan: &FrequencyPlan,
    frequency: u64,
    samples: u64,
) -> Result<Complex64> {
    check_plan(u, input, plan)?;
    if samples == 0 {
        return Err(Error::Capacity("sample count must be positive".into()));
    }
    let mut generator = SampledGenerator::new(u, input, plan, samples);
    let k = samples as f64;
    let step = frequency % samples;
    let mut residue: u64 = 0;
    let mut acc = Complex64::ZERO;
    let mut compensation = Complex64::ZERO;
    for _ in 0..samples {
        let g = generator.next_sample();
        let term = g * Complex64::cis(-TAU * residue as f64 / k);
        // Kahan compensated accumulation, component-wise.
        let adjusted = term - compensation;
        let sum = acc + adjusted;
        compensation = (sum - acc) - adjusted;
        acc = sum;
        residue += step;
        if residue >= samples {
            residue -= samples;
        }
    }
    Ok(acc / k)
}

/// Probability of one output state via the target-adapted plan.
///
/// Builds the plan from `output`, projects the single coefficient at
/// f_target with K = f_target+1 (reduced) or K = 2·f_max (Nyquist), and
/// returns |α|²·Π l_i!/k_i!. Both modes agree to ~1e-8; the reduced rate is
/// safe because no other state frequency is congruent to f_target mod K.
pub fn single_state_probability(
    u: &UnitaryMatrix,
    input: &FockState,
    output: &FockState,
    mode: SamplingMode,
) -> Result<f64> {
    single_state_probability_with_limit(u, input, output, mode, DEFAULT_PROJECTION_SAMPLE_LIMIT)
}

pub fn single_state_probability_with_limit(
    u: &UnitaryMatrix,
    input: &FockState,
    output: &FockState,
    mode: SamplingMode,
    max_samples: u64,
) -> Result<f64> {
    check_transition(u, input, output)?;
    let plan = q_method2(output)?;
    let samples = match mode {
        SamplingMode::Reduced => plan.sample_count(),
        SamplingMode::Nyquist => plan.clone().with_nyquist_rate()?.sample_count(),
    };
    if samples > max_samples {
        return Err(Error::Capacity(format!(
            "projection needs {samples} samples, budget is {max_samples}"
        )));
    }
    let alpha = project_coefficient(u, input, &plan, plan.f_target(), samples)?;
    Ok(alpha.norm_sqr() * factorial_ratio(output, input))
}

/// Exact probabilities of every output state from one positional-plan
/// spectrum pass.
pub fn full_distribution(u: &UnitaryMatrix, input: &FockState) -> Result<OutcomeDistribution> {
    full_distribution_with_limit(u, input, DEFAULT_SPECTRUM_SAMPLE_LIMIT)
}

pub fn full_distribution_with_limit(
    u: &UnitaryMatrix,
    input: &FockState,
    max_samples: u64,
) -> Result<OutcomeDistribution> {
    check_state_matrix(u, input)?;
    let plan = crate::fourier::plan::q_method1(input.total_photons(), input.modes())?;
    distribution_from_plan(u, input, &plan, max_samples)
}

/// Distribution read from one spectrum pass of the given plan. The plan
/// must keep all state frequencies separable (positional plans do).
pub fn distribution_from_plan(
    u: &UnitaryMatrix,
    input: &FockState,
    plan: &FrequencyPlan,
    max_samples: u64,
) -> Result<OutcomeDistribution> {
    let spectrum = full_spectrum_with_limit(u, input, plan, max_samples)?;
    let states = enumerate_output_states(input.modes(), input.total_photons())?;
    let mut entries = Vec::with_capacity(states.len());
    for state in states {
        let alpha = spectrum.state_amplitude(&state)?;
        let probability = alpha.norm_sqr() * factorial_ratio(&state, input);
        entries.push((state, probability));
    }
    Ok(OutcomeDistribution::new(DistributionKind::Exact, entries))
}
