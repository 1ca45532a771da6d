//! Harmonic frequency assignments: every output state |l⟩ maps to the
//! integer frequency f(l) = Σ l_i·Q_i, and the choice of {Q_i} decides which
//! states stay separable in the spectrum.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fock::FockState;

/// Frequencies are kept within 63 bits so sums and sample counts stay
/// representable with headroom in u64/i64 arithmetic.
pub const MAX_FREQUENCY: u64 = (1u64 << 63) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Q_i = (M+1)^(i−1): frequencies are digits in a radix-(M+1) positional
    /// system, so *every* pair of output states gets a distinct frequency.
    Positional,
    /// Q adapted to one target state via the running product of (l_j+1);
    /// only the target's frequency is guaranteed unique, which is enough to
    /// read a single probability and enables the reduced sampling rate.
    TargetAdapted,
    /// Caller-supplied frequencies with no separation guarantee.
    Custom,
}

/// A frequency assignment plus the derived target frequency, the maximum
/// reachable frequency, and the sample count K (= sampling rate over one
/// unit interval).
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyPlan {
    q: Vec<u64>,
    method: Method,
    target: Option<FockState>,
    f_target: u64,
    f_max: u64,
    f_s: u64,
}

impl FrequencyPlan {
    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn modes(&self) -> usize {
        self.q.len()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn target(&self) -> Option<&FockState> {
        self.target.as_ref()
    }

    /// Frequency of the target state (target-adapted) or the maximum state
    /// frequency (positional).
    pub fn f_target(&self) -> u64 {
        self.f_target
    }

    /// Largest frequency any same-photon-count state can reach.
    pub fn f_max(&self) -> u64 {
        self.f_max
    }

    /// Sample count K over t ∈ [0,1); equals the sampling rate f_s.
    pub fn sample_count(&self) -> u64 {
        self.f_s
    }

    /// Override the sample count; must stay above the target frequency.
    pub fn with_sample_count(mut self, samples: u64) -> Result<Self> {
        if samples <= self.f_target {
            return Err(Error::Capacity(format!(
                "sample count {samples} does not cover the target frequency {}; need at least {}",
                self.f_target,
                self.f_target + 1
            )));
        }
        self.f_s = samples;
        Ok(self)
    }

    /// Classic two-sided-safe rate: K = 2·f_max.
    pub fn with_nyquist_rate(self) -> Result<Self> {
        let doubled = self
            .f_max
            .checked_mul(2)
            .filter(|&k| k <= MAX_FREQUENCY)
            .ok_or_else(|| {
                Error::Capacity(format!(
                    "Nyquist sample count 2·{} overflows 63 bits",
                    self.f_max
                ))
            })?;
        self.with_sample_count(doubled)
    }

    /// Build a plan from arbitrary frequencies. `photons` gives the total
    /// photon number of the states the plan will be used with (fixes f_max).
    pub fn custom(q: Vec<u64>, photons: u32, target: Option<FockState>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::ZeroModes);
        }
        let max_q = q.iter().copied().max().unwrap_or(0);
        let f_max = mul_checked(photons as u64, max_q)?;
        let f_target = match &target {
            Some(state) => dot_checked(state, &q)?,
            None => f_max,
        };
        let f_s = add_checked(f_target, 1)?;
        Ok(Self {
            q,
            method: Method::Custom,
            target,
            f_target,
            f_max,
            f_s,
        })
    }
}

fn mul_checked(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .filter(|&v| v <= MAX_FREQUENCY)
        .ok_or_else(|| Error::Capacity(format!("frequency product {a}·{b} overflows 63 bits")))
}

fn add_checked(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b)
        .filter(|&v| v <= MAX_FREQUENCY)
        .ok_or_else(|| Error::Capacity(format!("frequency sum {a}+{b} overflows 63 bits")))
}

fn dot_checked(state: &FockState, q: &[u64]) -> Result<u64> {
    if state.modes() != q.len() {
        return Err(Error::ModeMismatch {
            state_modes: state.modes(),
            matrix_modes: q.len(),
        });
    }
    let mut acc: u64 = 0;
    for (&count, &freq) in state.occupations().iter().zip(q) {
        acc = add_checked(acc, mul_checked(count as u64, freq)?)?;
    }
    Ok(acc)
}

/// True iff the positional assignment for (photons, modes) stays in 63 bits,
/// including the sample count f_max + 1.
fn positional_fits(photons: u64, modes: usize) -> bool {
    let base = photons as u128 + 1;
    let mut highest: u128 = 1;
    for _ in 0..modes.saturating_sub(1) {
        highest = highest.saturating_mul(base);
        if highest > MAX_FREQUENCY as u128 {
            return false;
        }
    }
    match highest.checked_mul(photons as u128) {
        Some(f_max) => f_max < MAX_FREQUENCY as u128,
        None => false,
    }
}

fn positional_capacity_error(photons: u32, modes: usize) -> Error {
    let mut max_modes = 0usize;
    while max_modes < 4096 && positional_fits(photons as u64, max_modes + 1) {
        max_modes += 1;
    }
    let mut lo = 1u64;
    let mut hi = MAX_FREQUENCY;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if positional_fits(mid, modes) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let max_photons = if positional_fits(lo, modes) { lo } else { 0 };
    Error::Capacity(format!(
        "positional frequencies for N={modes}, M={photons} overflow 63 bits; \
         largest feasible N at M={photons} is {max_modes}, \
         largest feasible M at N={modes} is {max_photons}"
    ))
}

/// Positional frequency assignment Q_i = (M+1)^(i−1) over `modes` modes.
///
/// Every state of `photons` photons lands on a distinct frequency; the
/// highest, M·(M+1)^(N−1), belongs to the state with all photons in the last
/// mode. Default sample count is f_max + 1 (one-sided spectrum; see
/// [`FrequencyPlan::with_nyquist_rate`] for the 2·f_max variant).
pub fn q_method1(photons: u32, modes: usize) -> Result<FrequencyPlan> {
    if modes == 0 {
        return Err(Error::ZeroModes);
    }
    if photons == 0 {
        return Err(Error::EmptyState);
    }
    if !positional_fits(photons as u64, modes) {
        return Err(positional_capacity_error(photons, modes));
    }
    let base = photons as u64 + 1;
    let mut q = Vec::with_capacity(modes);
    let mut power: u64 = 1;
    for i in 0..modes {
        q.push(power);
        if i + 1 < modes {
            power = mul_checked(power, base)?;
        }
    }
    let f_max = mul_checked(photons as u64, power)?;
    let f_s = add_checked(f_max, 1)?;
    Ok(FrequencyPlan {
        q,
        method: Method::Positional,
        target: None,
        f_target: f_max,
        f_max,
        f_s,
    })
}

/// Target-adapted frequency assignment for reading one state's probability:
/// Q_i = 0 where the target holds no photons, otherwise the running product
/// of (l_j+1) over the preceding modes. The target frequency Σ l_i·Q_i is
/// unique in the spectrum, even modulo f_target + 1, so the default sample
/// count is the reduced rate f_target + 1.
pub fn q_method2(target: &FockState) -> Result<FrequencyPlan> {
    if target.modes() == 0 {
        return Err(Error::ZeroModes);
    }
    if target.total_photons() == 0 {
        return Err(Error::EmptyState);
    }
    let mut q = Vec::with_capacity(target.modes());
    let mut running: Option<u64> = Some(1);
    for &count in target.occupations() {
        if count == 0 {
            q.push(0);
        } else {
            let value = running.ok_or_else(|| {
                Error::Capacity(format!(
                    "target-adapted frequencies for {target} overflow 63 bits"
                ))
            })?;
            q.push(value);
        }
        running = running
            .and_then(|r| r.checked_mul(count as u64 + 1))
            .filter(|&r| r <= MAX_FREQUENCY);
    }
    let f_target = dot_checked(target, &q)?;
    let max_q = q.iter().copied().max().unwrap_or(0);
    let f_max = mul_checked(target.total_photons() as u64, max_q)?;
    let f_s = add_checked(f_target, 1)?;
    Ok(FrequencyPlan {
        q,
        method: Method::TargetAdapted,
        target: Some(target.clone()),
        f_target,
        f_max,
        f_s,
    })
}

/// f(l) = Σ l_i·Q_i, the exact harmonic frequency of a state under a plan.
pub fn state_frequency(state: &FockState, plan: &FrequencyPlan) -> Result<u64> {
    dot_checked(state, plan.q())
}

fn wide_frequency(state: &FockState, q: &[u64]) -> u128 {
    state
        .occupations()
        .iter()
        .zip(q)
        .map(|(&count, &freq)| count as u128 * freq as u128)
        .sum()
}

/// Collision check used by the separation-theorem test harnesses.
///
/// For a plan with a target state: true iff no *other* listed state shares
/// the target's frequency (modulo `modulo` when given). For a plan without
/// a target: true iff all listed state frequencies are pairwise distinct
/// (modulo `modulo` when given).
pub fn check_collision_free(
    states: &[FockState],
    plan: &FrequencyPlan,
    modulo: Option<u64>,
) -> bool {
    assert!(modulo != Some(0), "modulus must be positive");
    let reduce = |f: u128| -> u128 {
        match modulo {
            Some(m) => f % m as u128,
            None => f,
        }
    };
    match plan.target() {
        Some(target) => {
            let target_bin = reduce(wide_frequency(target, plan.q()));
            states
                .iter()
                .filter(|s| *s != target)
                .all(|s| reduce(wide_frequency(s, plan.q())) != target_bin)
        }
        None => {
            let mut seen = HashSet::with_capacity(states.len());
            states
                .iter()
                .all(|s| seen.insert(reduce(wide_frequency(s, plan.q()))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_output_states;

    #[test]
    fn positional_frequencies_for_three_photons() {
        let plan = q_method1(3, 3).unwrap();
        assert_eq!(plan.q(), &[1, 4, 16]);
        assert_eq!(plan.method(), Method::Positional);
        // Highest frequency M·(M+1)^(N−1) belongs to (0,0,3).
        assert_eq!(plan.f_target(), 48);
        assert_eq!(plan.f_max(), 48);
        assert_eq!(plan.sample_count(), 49);
        let top = FockState::new(vec![0, 0, 3]);
        assert_eq!(state_frequency(&top, &plan).unwrap(), 48);
    }

    #[test]
    fn positional_single_mode() {
        let plan = q_method1(1, 1).unwrap();
        assert_eq!(plan.q(), &[1]);
        assert_eq!(plan.f_target(), 1);
    }

    #[test]
    fn positional_overflow_reports_feasible_sizes() {
        let err = q_method1(6, 30).unwrap_err();
        match err {
            Error::Capacity(msg) => {
                assert!(msg.contains("largest feasible N at M=6 is 22"), "{msg}");
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
        // 6·7^22 ≈ 2^64.4 overflows; 6·7^21 ≈ 2^61.6 fits.
        assert!(q_method1(6, 22).is_ok());
        assert!(q_method1(6, 23).is_err());
    }

    #[test]
    fn target_adapted_all_occupied() {
        let plan = q_method2(&FockState::new(vec![1, 1, 1])).unwrap();
        assert_eq!(plan.q(), &[1, 2, 4]);
        assert_eq!(plan.f_target(), 7);
        assert_eq!(plan.sample_count(), 8);
        assert_eq!(plan.method(), Method::TargetAdapted);
    }

    #[test]
    fn target_adapted_skips_empty_modes() {
        let plan = q_method2(&FockState::new(vec![2, 0, 1])).unwrap();
        assert_eq!(plan.q(), &[1, 0, 3]);
        assert_eq!(plan.f_target(), 5);
        assert_eq!(plan.f_max(), 9);
    }

    #[test]
    fn target_adapted_single_mode() {
        for m in 1..=6u32 {
            let plan = q_method2(&FockState::new(vec![m])).unwrap();
            assert_eq!(plan.q(), &[1]);
            assert_eq!(plan.f_target(), m as u64);
        }
    }

    #[test]
    fn target_adapted_rejects_vacuum() {
        assert!(matches!(
            q_method2(&FockState::new(vec![0, 0])),
            Err(Error::EmptyState)
        ));
    }

    #[test]
    fn state_frequency_hand_values() {
        let plan = q_method1(3, 3).unwrap();
        assert_eq!(
            state_frequency(&FockState::new(vec![3, 0, 0]), &plan).unwrap(),
            3
        );
        assert_eq!(
            state_frequency(&FockState::new(vec![0, 0, 3]), &plan).unwrap(),
            48
        );
        let plan2 = q_method2(&FockState::new(vec![2, 0, 1])).unwrap();
        assert_eq!(
            state_frequency(&FockState::new(vec![2, 0, 1]), &plan2).unwrap(),
            plan2.f_target()
        );
    }

    #[test]
    fn state_frequency_checks_dimensions() {
        let plan = q_method1(2, 3).unwrap();
        assert!(matches!(
            state_frequency(&FockState::new(vec![1, 1]), &plan),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn positional_plan_separates_all_states() {
        let plan = q_method1(3, 3).unwrap();
        let states = enumerate_output_states(3, 3).unwrap();
        assert!(check_collision_free(&states, &plan, None));
    }

    #[test]
    fn target_adapted_plan_is_alias_safe_at_reduced_rate() {
        let target = FockState::new(vec![2, 0, 1]);
        let plan = q_method2(&target).unwrap();
        let states = enumerate_output_states(3, 3).unwrap();
        assert!(check_collision_free(&states, &plan, Some(plan.f_target() + 1)));
    }

    #[test]
    fn constant_frequencies_collide() {
        let plan = FrequencyPlan::custom(vec![1, 1, 1], 2, None).unwrap();
        let states = enumerate_output_states(3, 2).unwrap();
        assert!(!check_collision_free(&states, &plan, None));
    }

    #[test]
    fn sample_count_override_enforces_floor() {
        let plan = q_method1(2, 2).unwrap();
        assert!(plan.clone().with_sample_count(3).is_err());
        let widened = plan.with_sample_count(64).unwrap();
        assert_eq!(widened.sample_count(), 64);
    }

    #[test]
    fn nyquist_rate_doubles_f_max() {
        let plan = q_method2(&FockState::new(vec![1, 1, 1])).unwrap();
        let nyquist = plan.with_nyquist_rate().unwrap();
        // f_max = 3·4 = 12 → K = 24.
        assert_eq!(nyquist.sample_count(), 24);
    }
}
