//! Square complex matrices, interferometer unitaries, and Haar sampling.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default tolerance for the unitarity check.
pub const UNITARITY_TOL: f64 = 1e-10;

/// A dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroModes);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.n + col] = value;
    }

    /// Max-norm of (A†A − I), the deviation from unitarity.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    acc -= Complex64::ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// The interferometer matrix U: output operators are U-weighted sums of
/// input operators, `b_i = Σ_j u_ij a_j` at the operator level.
///
/// Construction only enforces squareness; unitarity is checked explicitly
/// with [`validate_unitary`].
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    inner: ComplexMatrix,
}

impl UnitaryMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        Ok(Self {
            inner: ComplexMatrix::from_rows(rows)?,
        })
    }

    pub fn from_matrix(inner: ComplexMatrix) -> Self {
        Self { inner }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(n),
        }
    }

    /// The 50:50 beam splitter (1/√2)·[[1, 1], [1, −1]].
    pub fn balanced_splitter() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_rows(vec![
            vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            vec![Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        ])
        .expect("2x2 literal is square")
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner.get(row, col)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn unitarity_deviation(&self) -> f64 {
        self.inner.unitarity_deviation()
    }
}

/// True iff the max-norm deviation of U†U from the identity is within `tol`.
pub fn validate_unitary(u: &UnitaryMatrix, tol: f64) -> bool {
    u.unitarity_deviation() <= tol
}

/// Draw an n×n unitary from the Haar measure, deterministically per seed.
///
/// Complex-Gaussian matrix, Householder QR, then the R diagonal phases are
/// pushed onto Q so the distribution is exactly Haar rather than QR-biased.
pub fn haar_random_unitary(n: usize, seed: u64) -> Result<UnitaryMatrix> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = ComplexMatrix::zeros(n);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            a.set(i, j, Complex64::new(re * scale, im * scale));
        }
    }
    let (q, r_diag) = householder_qr(a);
    let mut u = q;
    for (j, r) in r_diag.iter().enumerate() {
        let phase = if r.norm() > 0.0 {
            r / r.norm()
        } else {
            Complex64::ONE
        };
        for i in 0..n {
            u.set(i, j, u.get(i, j) * phase);
        }
    }
    Ok(UnitaryMatrix::from_matrix(u))
}

/// Householder QR of a square matrix. Returns (Q, diag(R)).
fn householder_qr(mut a: ComplexMatrix) -> (ComplexMatrix, Vec<Complex64>) {
    let n = a.n();
    let mut q = ComplexMatrix::identity(n);
    for col in 0..n {
        // Reflector for rows col..n of this column.
        let mut norm_sq = 0.0f64;
        for i in col..n {
            norm_sq += a.get(i, col).norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let pivot = a.get(col, col);
        let phase = if pivot.norm() > 0.0 {
            pivot / pivot.norm()
        } else {
            Complex64::ONE
        };
        // alpha = -phase·‖x‖ keeps v[0] = x[0] + phase·‖x‖ cancellation-free.
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (col..n).map(|i| a.get(i, col)).collect();
        v[0] -= alpha;
        let v_norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if v_norm_sq == 0.0 {
            continue;
        }
        // A ← H A with H = I − 2vv†/(v†v), applied to columns col..n.
        for c in col..n {
            let mut w = Complex64::ZERO;
            for (off, vi) in v.iter().enumerate() {
                w += vi.conj() * a.get(col + off, c);
            }
            let f = 2.0 * w / v_norm_sq;
            for (off, vi) in v.iter().enumerate() {
                let cur = a.get(col + off, c);
                a.set(col + off, c, cur - f * vi);
            }
        }
        // Q ← Q H accumulates the product of reflectors.
        for r in 0..n {
            let mut w = Complex64::ZERO;
            for (off, vi) in v.iter().enumerate() {
                w += q.get(r, col + off) * vi;
            }
            let f = 2.0 * w / v_norm_sq;
            for (off, vi) in v.iter().enumerate() {
                let cur = q.get(r, col + off);
                q.set(r, col + off, cur - f * vi.conj());
            }
        }
    }
    let r_diag = (0..n).map(|i| a.get(i, i)).collect();
    (q, r_diag)
}
