//! Abstract operation-count model for the single-state path: sampling g at
//! K points costs K·N², the transform K·⌈log₂K⌉, with K = f_target(l) + 1
//! from the target-adapted plan. Costs shrink as photons bunch, so the
//! probability-weighted average sits well below the even-spread maximum.

use crate::error::{Error, Result};
use crate::fock::{enumerate_output_states, FockState};
use crate::fourier::{full_distribution, q_method2};
use crate::matrix::UnitaryMatrix;

/// Per-state operation counts and their probability-weighted summary.
#[derive(Clone, Debug)]
pub struct CostReport {
    /// Cost per output state, canonical order.
    pub per_state: Vec<(FockState, u64)>,
    /// Σ p_i·C_i under the exact distribution.
    pub weighted_average: f64,
    /// Cost of the most expensive state (the even-spread one when N | M).
    pub maximum: f64,
    /// weighted_average / maximum, in (0, 1].
    pub ratio: f64,
}

fn ceil_log2(value: u64) -> u64 {
    if value <= 1 {
        0
    } else {
        64 - (value - 1).leading_zeros() as u64
    }
}

/// K·N² + K·⌈log₂K⌉ with K = f_target(l) + 1; both cost constants fixed
/// to 1 so curves are comparable, not absolute timings.
pub fn cost_single_state(state: &FockState) -> Result<u64> {
    let plan = q_method2(state)?;
    let samples = plan.f_target() + 1;
    let modes = state.modes() as u64;
    let eval = samples
        .checked_mul(modes.checked_mul(modes).ok_or_else(cost_overflow)?)
        .ok_or_else(cost_overflow)?;
    let transform = samples
        .checked_mul(ceil_log2(samples))
        .ok_or_else(cost_overflow)?;
    eval.checked_add(transform).ok_or_else(cost_overflow)
}

fn cost_overflow() -> Error {
    Error::Capacity("cost model overflows u64".into())
}

/// The photon arrangement with the highest single-state cost: photons
/// spread as evenly as the mode count allows, surplus piled on the first
/// modes.
pub fn even_spread_state(modes: usize, photons: u32) -> FockState {
    let base = photons / modes as u32;
    let surplus = photons as usize % modes;
    let occ = (0..modes)
        .map(|i| base + if i < surplus { 1 } else { 0 })
        .collect();
    FockState::new(occ)
}

/// Exact distribution → per-state costs → weighted average and ratio to the
/// maximum. When N divides M the maximum is the even-spread state's cost;
/// otherwise it is found by enumeration.
pub fn weighted_average_complexity(u: &UnitaryMatrix, input: &FockState) -> Result<CostReport> {
    let distribution = full_distribution(u, input)?;
    let mut per_state = Vec::with_capacity(distribution.len());
    let mut weighted_average = 0.0f64;
    let mut enumerated_max = 0u64;
    for (state, probability) in distribution.iter() {
        let cost = cost_single_state(state)?;
        weighted_average += probability * cost as f64;
        enumerated_max = enumerated_max.max(cost);
        per_state.push((state.clone(), cost));
    }
    let modes = input.modes() as u32;
    let photons = input.total_photons();
    let maximum = if photons.is_multiple_of(modes) {
        cost_single_state(&even_spread_state(input.modes(), photons))? as f64
    } else {
        enumerated_max as f64
    };
    Ok(CostReport {
        per_state,
        weighted_average,
        maximum,
        ratio: weighted_average / maximum,
    })
}

/// One row of the analytic speedup comparison at M = N.
#[derive(Clone, Copy, Debug)]
pub struct SpeedupRow {
    pub modes: usize,
    /// This engine on the half-filled collision state (2 photons in each of
    /// the first ⌊N/2⌋ modes, odd N parks the leftover photon next door).
    pub engine_cost: u64,
    /// Permanent-free per-sample reference, N·2^N at M = N.
    pub clifford_cost: u64,
    /// The general form M·2^M + N·M² evaluated at M = N.
    pub clifford_general: u64,
}

/// Analytic cost rows for a sweep of mode counts; no sampling involved.
pub fn speedup_table(mode_counts: &[usize]) -> Result<Vec<SpeedupRow>> {
    let mut rows = Vec::with_capacity(mode_counts.len());
    for &modes in mode_counts {
        if modes == 0 {
            return Err(Error::ZeroModes);
        }
        let half_filled = half_filled_state(modes);
        let engine_cost = cost_single_state(&half_filled)?;
        let n = modes as u64;
        let pow = 1u64
            .checked_shl(modes as u32)
            .ok_or_else(cost_overflow)?;
        let clifford_cost = n.checked_mul(pow).ok_or_else(cost_overflow)?;
        let clifford_general = clifford_cost
            .checked_add(n.checked_mul(n * n).ok_or_else(cost_overflow)?)
            .ok_or_else(cost_overflow)?;
        rows.push(SpeedupRow {
            modes,
            engine_cost,
            clifford_cost,
            clifford_general,
        });
    }
    Ok(rows)
}

fn half_filled_state(modes: usize) -> FockState {
    let mut occ = vec![0u32; modes];
    let pairs = modes / 2;
    for slot in occ.iter_mut().take(pairs) {
        *slot = 2;
    }
    if modes % 2 == 1 {
        occ[pairs] = 1;
    }
    FockState::new(occ)
}

/// Maximum single-state cost over all outcomes of (modes, photons); used by
/// exhaustive dominance tests.
pub fn max_cost_by_enumeration(modes: usize, photons: u32) -> Result<(FockState, u64)> {
    let mut best: Option<(FockState, u64)> = None;
    for state in enumerate_output_states(modes, photons)? {
        if state.total_photons() == 0 {
            continue;
        }
        let cost = cost_single_state(&state)?;
        if best.as_ref().map(|(_, c)| cost > *c).unwrap_or(true) {
            best = Some((state, cost));
        }
    }
    best.ok_or(Error::EmptyState)
}
