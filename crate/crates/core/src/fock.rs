//! Photon occupation vectors and their enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Occupation-number state |l_1, …, l_N⟩: photon count per mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockState {
    occupations: Vec<u32>,
}

impl FockState {
    pub fn new(occupations: Vec<u32>) -> Self {
        Self { occupations }
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    /// Number of modes N.
    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    /// Total photon count M.
    pub fn total_photons(&self) -> u32 {
        self.occupations.iter().sum()
    }

    /// Indices of modes holding at least one photon.
    pub fn occupied_modes(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupations
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    /// Number of occupied modes, K(l).
    pub fn occupied_count(&self) -> usize {
        self.occupations.iter().filter(|&&c| c > 0).count()
    }

    /// Colexicographic order: compare at the last differing mode.
    pub fn colex_cmp(&self, other: &Self) -> Ordering {
        self.occupations
            .iter()
            .rev()
            .cmp(other.occupations.iter().rev())
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.occupations.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for FockState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let occupations = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidArgument(format!("bad occupation {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if occupations.is_empty() {
            return Err(Error::InvalidArgument("state needs at least one mode".into()));
        }
        Ok(Self::new(occupations))
    }
}

/// All occupation vectors of `modes` modes holding `photons` photons, in
/// colexicographic order. Count is C(M+N−1, N−1).
pub fn enumerate_output_states(modes: usize, photons: u32) -> Result<Vec<FockState>> {
    if modes == 0 {
        return Err(Error::ZeroModes);
    }
    let capacity = outcome_count(modes, photons)
        .and_then(|c| usize::try_from(c).ok())
        .unwrap_or(0);
    let mut out = Vec::with_capacity(capacity);
    let mut occ = vec![0u32; modes];
    fill_colex(&mut occ, modes - 1, photons, &mut out);
    Ok(out)
}

fn fill_colex(occ: &mut Vec<u32>, mode: usize, remaining: u32, out: &mut Vec<FockState>) {
    if mode == 0 {
        occ[0] = remaining;
        out.push(FockState::new(occ.clone()));
        return;
    }
    for count in 0..=remaining {
        occ[mode] = count;
        fill_colex(occ, mode - 1, remaining - count, out);
    }
    occ[mode] = 0;
}

/// C(M+N−1, N−1), the number of outcomes; None if it overflows u128.
pub fn outcome_count(modes: usize, photons: u32) -> Option<u128> {
    // C(m + n - 1, n - 1) via the multiplicative rule, dividing as we go.
    let n = modes as u128;
    let m = photons as u128;
    let k = (n - 1).min(m);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(m + n - 1 - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Largest n with an exact u64 factorial.
pub const EXACT_FACTORIAL_LIMIT: u32 = 20;

/// n! as f64: exact integer arithmetic up to 20!, floating product beyond.
pub fn factorial(n: u32) -> f64 {
    if n <= EXACT_FACTORIAL_LIMIT {
        let mut acc: u64 = 1;
        for i in 2..=n as u64 {
            acc *= i;
        }
        acc as f64
    } else {
        let mut acc = factorial(EXACT_FACTORIAL_LIMIT);
        for i in (EXACT_FACTORIAL_LIMIT + 1)..=n {
            acc *= i as f64;
        }
        acc
    }
}

/// Π numerator_i! / Π denominator_i!, the occupation-factorial weight.
pub fn factorial_ratio(numerator: &FockState, denominator: &FockState) -> f64 {
    let num: f64 = numerator.occupations().iter().map(|&c| factorial(c)).product();
    let den: f64 = denominator
        .occupations()
        .iter()
        .map(|&c| factorial(c))
        .product();
    num / den
}
