//! Brute-force transition probabilities used to validate the harmonic
//! engine: a permanent route and an independent polynomial-expansion route.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{factorial, factorial_ratio, FockState};
use crate::matrix::{ComplexMatrix, UnitaryMatrix};
use crate::permanent::permanent_ryser;
use crate::validate::check_transition;

/// Mode/photon guard for the symbolic expansion route.
pub const EXPANSION_LIMIT: usize = 5;

/// The M×M matrix built from U by repeating column i `input_i` times, then
/// row j `output_j` times. The permanent is invariant to the repeat order;
/// columns-first is fixed for reproducibility.
fn repeated_submatrix(u: &UnitaryMatrix, input: &FockState, output: &FockState) -> ComplexMatrix {
    let mut cols = Vec::new();
    for (i, &count) in input.occupations().iter().enumerate() {
        for _ in 0..count {
            cols.push(i);
        }
    }
    let mut rows = Vec::new();
    for (j, &count) in output.occupations().iter().enumerate() {
        for _ in 0..count {
            rows.push(j);
        }
    }
    let m = cols.len();
    let mut sub = ComplexMatrix::zeros(m);
    for (r, &row) in rows.iter().enumerate() {
        for (c, &col) in cols.iter().enumerate() {
            sub.set(r, c, u.get(row, col));
        }
    }
    sub
}

/// P(k → l) = |Per(U_{k,l})|² / (Π k_i!·Π l_i!), the permanent route.
pub fn probability_via_permanent(
    u: &UnitaryMatrix,
    input: &FockState,
    output: &FockState,
) -> Result<f64> {
    check_transition(u, input, output)?;
    let sub = repeated_submatrix(u, input, output);
    let per = permanent_ryser(&sub)?;
    let denom: f64 = input
        .occupations()
        .iter()
        .chain(output.occupations())
        .map(|&c| factorial(c))
        .product();
    Ok(per.norm_sqr() / denom)
}

/// P(k → l) by expanding Π_p (Σ_q u*_qp x_q)^{k_p} over commuting formal
/// variables and reading the coefficient of Π x_q^{l_q}.
///
/// Fully independent of the permanent route; guarded at N ≤ 5, M ≤ 5.
pub fn probability_via_expansion(
    u: &UnitaryMatrix,
    input: &FockState,
    output: &FockState,
) -> Result<f64> {
    let photons = check_transition(u, input, output)?;
    if u.n() > EXPANSION_LIMIT {
        return Err(Error::SizeGuard {
            what: "probability_via_expansion modes",
            limit: EXPANSION_LIMIT,
            got: u.n(),
        });
    }
    if photons as usize > EXPANSION_LIMIT {
        return Err(Error::SizeGuard {
            what: "probability_via_expansion photons",
            limit: EXPANSION_LIMIT,
            got: photons as usize,
        });
    }
    let n = u.n();
    let mut poly: HashMap<Vec<u32>, Complex64> = HashMap::new();
    poly.insert(vec![0; n], Complex64::ONE);
    for (p, &count) in input.occupations().iter().enumerate() {
        for _ in 0..count {
            let mut next: HashMap<Vec<u32>, Complex64> = HashMap::with_capacity(poly.len() * n);
            for (exponents, coefficient) in &poly {
                for q in 0..n {
                    let term = coefficient * u.get(q, p).conj();
                    let mut bumped = exponents.clone();
                    bumped[q] += 1;
                    *next.entry(bumped).or_insert(Complex64::ZERO) += term;
                }
            }
            poly = next;
        }
    }
    let alpha = poly
        .get(output.occupations())
        .copied()
        .unwrap_or(Complex64::ZERO);
    Ok(alpha.norm_sqr() * factorial_ratio(output, input))
}
