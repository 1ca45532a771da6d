//! Matrix permanents: a factorial-cost reference and the O(n·2^n)
//! inclusion–exclusion form with Gray-code column updates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Guard for the permutation-sum reference.
pub const NAIVE_LIMIT: usize = 8;
/// Guard for the inclusion–exclusion form.
pub const RYSER_LIMIT: usize = 30;

/// Permanent by direct summation over all n! permutations.
///
/// Serves as the oracle for [`permanent_ryser`]; guarded at n ≤ 8.
pub fn permanent_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.n();
    if n > NAIVE_LIMIT {
        return Err(Error::SizeGuard {
            what: "permanent_naive",
            limit: NAIVE_LIMIT,
            got: n,
        });
    }
    if n == 0 {
        return Ok(Complex64::ONE);
    }
    let mut columns: Vec<usize> = (0..n).collect();
    let mut total = Complex64::ZERO;
    permute_and_accumulate(a, &mut columns, 0, &mut total);
    Ok(total)
}

fn permute_and_accumulate(
    a: &ComplexMatrix,
    columns: &mut Vec<usize>,
    row: usize,
    total: &mut Complex64,
) {
    let n = columns.len();
    if row == n {
        let mut prod = Complex64::ONE;
        for (r, &c) in columns.iter().enumerate() {
            prod *= a.get(r, c);
        }
        *total += prod;
        return;
    }
    for i in row..n {
        columns.swap(row, i);
        permute_and_accumulate(a, columns, row + 1, total);
        columns.swap(row, i);
    }
}

/// Permanent via inclusion–exclusion over column subsets,
/// Per(A) = Σ_{S≠∅} (−1)^{n−|S|} Π_i Σ_{j∈S} a_ij,
/// walking subsets in Gray-code order so each step updates one column.
pub fn permanent_ryser(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.n();
    if n > RYSER_LIMIT {
        return Err(Error::SizeGuard {
            what: "permanent_ryser",
            limit: RYSER_LIMIT,
            got: n,
        });
    }
    if n == 0 {
        return Ok(Complex64::ONE);
    }
    let mut row_sums = vec![Complex64::ZERO; n];
    let mut total = Complex64::ZERO;
    let mut included = 0usize;
    for step in 1u64..(1u64 << n) {
        let gray = step ^ (step >> 1);
        let flipped = step.trailing_zeros() as usize;
        if gray & (1 << flipped) != 0 {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum += a.get(i, flipped);
            }
            included += 1;
        } else {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum -= a.get(i, flipped);
            }
            included -= 1;
        }
        let prod: Complex64 = row_sums.iter().product();
        if (n - included).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}
