//! Metropolis-Hastings sampling over output states.
//!
//! The proposal moves one photon from a uniformly chosen occupied mode to a
//! uniformly chosen other mode; acceptance uses the exact single-state
//! probabilities from the harmonic engine, memoized per visited state.

use std::collections::HashMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::{DistributionKind, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::fock::{enumerate_output_states, FockState};
use crate::fourier::{single_state_probability, SamplingMode};
use crate::matrix::UnitaryMatrix;
use crate::validate::check_state_matrix;

/// States with probability below this are treated as unreachable starts.
const ZERO_PROBABILITY_FLOOR: f64 = 1e-300;

#[derive(Clone, Debug)]
pub struct ChainConfig {
    pub steps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub initial_state: Option<FockState>,
}

impl ChainConfig {
    /// Defaults burn-in to steps/10.
    pub fn new(steps: u64, seed: u64) -> Self {
        Self {
            steps,
            burn_in: steps / 10,
            seed,
            initial_state: None,
        }
    }

    pub fn with_burn_in(mut self, burn_in: u64) -> Result<Self> {
        if burn_in >= self.steps {
            return Err(Error::ChainInit(format!(
                "burn-in {burn_in} must be below the step count {}",
                self.steps
            )));
        }
        self.burn_in = burn_in;
        Ok(self)
    }

    pub fn with_initial_state(mut self, state: FockState) -> Self {
        self.initial_state = Some(state);
        self
    }
}

#[derive(Clone, Debug)]
pub struct ChainStats {
    pub visit_counts: HashMap<FockState, u64>,
    pub accepted: u64,
    pub proposed: u64,
    pub empirical: OutcomeDistribution,
}

impl ChainStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

/// One photon move: decrement a uniformly random occupied mode h_r, then
/// increment a uniformly random destination among the other N−1 modes
/// (the source mode itself is excluded, empty modes are fair game).
pub fn propose<R: RngExt>(state: &FockState, rng: &mut R) -> Result<FockState> {
    let n = state.modes();
    if n < 2 {
        return Err(Error::NoValidMove);
    }
    if state.total_photons() == 0 {
        return Err(Error::EmptyState);
    }
    let occupied: Vec<usize> = state.occupied_modes().collect();
    let source = occupied[rng.random_range(0..occupied.len())];
    let offset = rng.random_range(0..n - 1);
    let destination = if offset >= source { offset + 1 } else { offset };
    let mut occ = state.occupations().to_vec();
    occ[source] -= 1;
    occ[destination] += 1;
    Ok(FockState::new(occ))
}

/// Probability that [`propose`] maps `from` to `to`: 1/(K(from)·(N−1)) when
/// `to` is one photon move away, else 0. The source mode is the coordinate
/// that decreased, so the generating move is unique.
pub fn transition_prob(from: &FockState, to: &FockState) -> f64 {
    if from.modes() != to.modes() || from.modes() < 2 {
        return 0.0;
    }
    if from.total_photons() != to.total_photons() {
        return 0.0;
    }
    let mut decreased = 0usize;
    let mut increased = 0usize;
    let mut down_by_one = false;
    let mut up_by_one = false;
    for (&a, &b) in from.occupations().iter().zip(to.occupations()) {
        match b as i64 - a as i64 {
            0 => {}
            -1 => {
                decreased += 1;
                down_by_one = true;
            }
            1 => {
                increased += 1;
                up_by_one = true;
            }
            _ => return 0.0,
        }
    }
    if !(decreased == 1 && increased == 1 && down_by_one && up_by_one) {
        return 0.0;
    }
    let sources = from.occupied_count() as f64;
    let destinations = (from.modes() - 1) as f64;
    1.0 / (sources * destinations)
}

/// min(1, (P_next/P_curr)·p(next→curr)/p(curr→next)). The (N−1) factors
/// cancel, leaving (P_next/P_curr)·K(curr)/K(next). A zero-probability
/// current state (possible only at initialization) is force-accepted.
pub fn acceptance_prob(
    p_next: f64,
    p_curr: f64,
    current: &FockState,
    next: &FockState,
) -> f64 {
    if p_curr <= ZERO_PROBABILITY_FLOOR {
        return 1.0;
    }
    if p_next <= 0.0 {
        return 0.0;
    }
    let forward = transition_prob(current, next);
    if forward == 0.0 {
        return 0.0;
    }
    let reverse = transition_prob(next, current);
    let ratio = (p_next / p_curr) * (reverse / forward);
    ratio.min(1.0)
}

/// Checkpoint snapshot: empirical distribution over the visits recorded in
/// steps [burn_in, step).
#[derive(Clone, Debug)]
pub struct ChainCheckpoint {
    pub step: u64,
    pub empirical: OutcomeDistribution,
}

/// Run the chain for cfg.steps, recording visits after burn-in.
/// Deterministic per seed: three RNG draws per step.
pub fn run_chain(u: &UnitaryMatrix, input: &FockState, cfg: &ChainConfig) -> Result<ChainStats> {
    let (stats, _) = run_chain_with_checkpoints(u, input, cfg, &[])?;
    Ok(stats)
}

pub fn run_chain_with_checkpoints(
    u: &UnitaryMatrix,
    input: &FockState,
    cfg: &ChainConfig,
    checkpoints: &[u64],
) -> Result<(ChainStats, Vec<ChainCheckpoint>)> {
    check_state_matrix(u, input)?;
    if cfg.burn_in >= cfg.steps {
        return Err(Error::ChainInit(format!(
            "burn-in {} must be below the step count {}",
            cfg.burn_in, cfg.steps
        )));
    }
    let mut cache: HashMap<FockState, f64> = HashMap::new();
    let mut probability_of = |state: &FockState| -> Result<f64> {
        if let Some(&p) = cache.get(state) {
            return Ok(p);
        }
        let p = single_state_probability(u, input, state, SamplingMode::Reduced)?;
        cache.insert(state.clone(), p);
        Ok(p)
    };

    let mut current = match &cfg.initial_state {
        Some(state) => {
            check_state_matrix(u, state)?;
            if state.total_photons() != input.total_photons() {
                return Err(Error::ChainInit(format!(
                    "initial state {state} does not carry the input photon count {}",
                    input.total_photons()
                )));
            }
            state.clone()
        }
        None => input.clone(),
    };
    if probability_of(&current)? < ZERO_PROBABILITY_FLOOR {
        // Fall back to the first reachable state in canonical order.
        let mut found = None;
        for candidate in enumerate_output_states(input.modes(), input.total_photons())? {
            if probability_of(&candidate)? >= ZERO_PROBABILITY_FLOOR {
                found = Some(candidate);
                break;
            }
        }
        current = found.ok_or_else(|| {
            Error::ChainInit("no output state has nonzero probability".into())
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut visit_counts: HashMap<FockState, u64> = HashMap::new();
    let mut accepted = 0u64;
    let mut snapshots = Vec::with_capacity(checkpoints.len());
    let mut p_curr = probability_of(&current)?;
    for step in 0..cfg.steps {
        let proposal = propose(&current, &mut rng)?;
        let p_prop = probability_of(&proposal)?;
        let alpha = acceptance_prob(p_prop, p_curr, &current, &proposal);
        let draw: f64 = rng.random();
        if draw < alpha {
            current = proposal;
            p_curr = p_prop;
            accepted += 1;
        }
        if step >= cfg.burn_in {
            *visit_counts.entry(current.clone()).or_insert(0) += 1;
        }
        let completed = step + 1;
        if checkpoints.contains(&completed) && completed > cfg.burn_in {
            snapshots.push(ChainCheckpoint {
                step: completed,
                empirical: empirical_from_counts(&visit_counts, completed - cfg.burn_in),
            });
        }
    }
    let recorded = cfg.steps - cfg.burn_in;
    let empirical = empirical_from_counts(&visit_counts, recorded);
    Ok((
        ChainStats {
            visit_counts,
            accepted,
            proposed: cfg.steps,
            empirical,
        },
        snapshots,
    ))
}

fn empirical_from_counts(counts: &HashMap<FockState, u64>, total: u64) -> OutcomeDistribution {
    let entries = counts
        .iter()
        .map(|(state, &count)| (state.clone(), count as f64 / total as f64))
        .collect();
    OutcomeDistribution::new(DistributionKind::Empirical, entries)
}

/// S_C(p,q) = Σ p_i·q_i / (√Σp_i² · √Σq_i²); missing states read as zero.
pub fn cosine_similarity(p: &OutcomeDistribution, q: &OutcomeDistribution) -> Result<f64> {
    let p_norm_sq: f64 = p.iter().map(|(_, v)| v * v).sum();
    let q_norm_sq: f64 = q.iter().map(|(_, v)| v * v).sum();
    if p_norm_sq == 0.0 || q_norm_sq == 0.0 {
        return Err(Error::UndefinedSimilarity);
    }
    let dot: f64 = p.iter().map(|(state, v)| v * q.probability(state)).sum();
    Ok(dot / (p_norm_sq.sqrt() * q_norm_sq.sqrt()))
}
