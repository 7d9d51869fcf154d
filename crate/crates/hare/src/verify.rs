//! Exhaustive check of a reduction on instances small enough to enumerate.

use hare_core::fasthare::{self, Config};
use hare_core::model::IsingHamiltonian;
use hare_core::oracle::{self, ReductionCheck, MAX_GROUND_SPINS};

use crate::error::HareError;

/// Reduces `h` and checks `min H = min H' + offset` and that every ground
/// state of `H'` maps back to a ground state of `H`.
pub fn verify(h: &IsingHamiltonian, config: Config) -> Result<ReductionCheck, HareError> {
    if h.num_spins() > MAX_GROUND_SPINS {
        return Err(HareError::Guard(format!(
            "verify enumerates all states; {} spins exceed the limit of {MAX_GROUND_SPINS}",
            h.num_spins()
        )));
    }
    let out = fasthare::reduce(h, config)?;
    Ok(oracle::check_reduction(h, &out.reduction)?)
}
