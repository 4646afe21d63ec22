//! Enumeration guards, scalable via the SCATTERLAB_GUARD_SCALE env var.

use crate::error::{Error, Result};

/// Base guard on Grassmannian enumeration sizes.
pub const ENUM_GUARD: u64 = 100_000_000;
/// Base guard on lattice closure size.
pub const LATTICE_GUARD: u64 = 1_000_000;
/// Base guard on atom-set construction.
pub const ATOMS_GUARD: u64 = 10_000_000;
/// Base guard on exhaustive covering-radius sweeps (number of ambient matrices).
pub const COVERING_GUARD: u64 = 1 << 24;

fn scale() -> u64 {
    std::env::var("SCATTERLAB_GUARD_SCALE")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .filter(|&s| s >= 1)
        .unwrap_or(1)
}

/// Effective guard value after scaling.
pub fn scaled(base: u64) -> u64 {
    base.saturating_mul(scale())
}

/// Check `needed <= scaled(base)`, returning a guard error otherwise.
pub fn check(task: &str, needed: u128, base: u64) -> Result<()> {
    let guard = scaled(base);
    if needed > guard as u128 {
        return Err(Error::GuardExceeded {
            task: task.to_string(),
            needed: needed.to_string(),
            guard,
        });
    }
    Ok(())
}

/// Like `check` but the needed size is a big integer (may overflow u64).
pub fn check_big(task: &str, needed: &num_bigint::BigUint, base: u64) -> Result<()> {
    let guard = scaled(base);
    if needed > &num_bigint::BigUint::from(guard) {
        return Err(Error::GuardExceeded {
            task: task.to_string(),
            needed: needed.to_string(),
            guard,
        });
    }
    Ok(())
}
