//! Size guards for the exhaustive procedures.
//!
//! Every enumeration in the crate checks its search-space size against a
//! fixed limit before doing any work. The limits can be lifted process-wide
//! (the CLI does so when `QMODAL_GUARD_OVERRIDE=1`), at the caller's own
//! runtime risk. Representation limits (64 states, 64 lattice elements) are
//! hard and cannot be lifted.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

static OVERRIDE: AtomicBool = AtomicBool::new(false);

/// Environment variable that lifts the soft guards in the CLI.
pub const OVERRIDE_ENV: &str = "QMODAL_GUARD_OVERRIDE";

pub fn set_override(lifted: bool) {
    OVERRIDE.store(lifted, Ordering::Relaxed);
}

pub fn is_overridden() -> bool {
    OVERRIDE.load(Ordering::Relaxed)
}

/// Soft guard: fails unless `value <= limit` or the override is active.
pub fn check(name: &'static str, value: u128, limit: u128) -> Result<()> {
    if value <= limit || is_overridden() {
        Ok(())
    } else {
        Err(Error::Guard { name, value, limit })
    }
}

/// Hard guard: representation limit, never lifted.
pub fn check_hard(name: &'static str, value: u128, limit: u128) -> Result<()> {
    if value <= limit {
        Ok(())
    } else {
        Err(Error::Guard { name, value, limit })
    }
}

/// `base^exp`, saturating.
pub(crate) fn pow_sat(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
