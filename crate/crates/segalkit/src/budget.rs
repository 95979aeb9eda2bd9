//! Enumeration size guard.
//!
//! Every operation that enumerates cells or maps is bounded by a global cap,
//! configurable through the `SEGALKIT_MAX_CELLS` environment variable
//! (default 5000). Exceeding the cap aborts the computation with
//! [`Error::Resource`](crate::Error::Resource) instead of returning a
//! truncated (wrong) answer.

use crate::error::{Error, Result};
use std::sync::OnceLock;

pub const DEFAULT_MAX_CELLS: usize = 5000;

static CAP: OnceLock<usize> = OnceLock::new();

/// The active cell cap.
pub fn max_cells() -> usize {
    *CAP.get_or_init(|| {
        std::env::var("SEGALKIT_MAX_CELLS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_CELLS)
    })
}

/// Fail if an enumeration is about to hold more than the cap.
pub fn check(count: usize, what: &str) -> Result<()> {
    if count > max_cells() {
        Err(Error::Resource(format!(
            "{what}: {count} exceeds SEGALKIT_MAX_CELLS={}",
            max_cells()
        )))
    } else {
        Ok(())
    }
}
