//! Shared precondition checks for (matrix, state) pairings.

use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::matrix::UnitaryMatrix;

pub(crate) fn check_state_matrix(u: &UnitaryMatrix, state: &FockState) -> Result<()> {
    if state.modes() != u.n() {
        return Err(Error::ModeMismatch {
            state_modes: state.modes(),
            matrix_modes: u.n(),
        });
    }
    Ok(())
}

/// Checks both states against the matrix and returns the shared photon total.
pub(crate) fn check_transition(
    u: &UnitaryMatrix,
    input: &FockState,
    output: &FockState,
) -> Result<u32> {
    check_state_matrix(u, input)?;
    check_state_matrix(u, output)?;
    let m_in = input.total_photons();
    let m_out = output.total_photons();
    if m_in != m_out {
        return Err(Error::PhotonMismatch {
            input: m_in,
            output: m_out,
        });
    }
    Ok(m_in)
}
