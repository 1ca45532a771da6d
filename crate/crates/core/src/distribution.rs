//! Probability distributions over output Fock states.

use std::collections::HashMap;

use crate::fock::FockState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionKind {
    /// Computed from amplitudes; complete over the outcome set.
    Exact,
    /// Visit frequencies of a Markov chain.
    Empirical,
}

/// Map from output state to probability, held in canonical (colex) order so
/// exports are byte-stable across runs.
#[derive(Clone, Debug)]
pub struct OutcomeDistribution {
    states: Vec<FockState>,
    probabilities: Vec<f64>,
    index: HashMap<FockState, usize>,
    kind: DistributionKind,
    total_mass: f64,
}

impl OutcomeDistribution {
    pub fn new(kind: DistributionKind, mut entries: Vec<(FockState, f64)>) -> Self {
        entries.sort_by(|a, b| a.0.colex_cmp(&b.0));
        let mut states = Vec::with_capacity(entries.len());
        let mut probabilities = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        let mut total_mass = 0.0;
        for (state, probability) in entries {
            index.insert(state.clone(), states.len());
            total_mass += probability;
            states.push(state);
            probabilities.push(probability);
        }
        Self {
            states,
            probabilities,
            index,
            kind,
            total_mass,
        }
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Probability of a state; absent states read as zero.
    pub fn probability(&self, state: &FockState) -> f64 {
        self.index
            .get(state)
            .map(|&i| self.probabilities[i])
            .unwrap_or(0.0)
    }

    pub fn get(&self, state: &FockState) -> Option<f64> {
        self.index.get(state).map(|&i| self.probabilities[i])
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    /// Entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&FockState, f64)> + '_ {
        self.states
            .iter()
            .zip(self.probabilities.iter().copied())
    }
}
