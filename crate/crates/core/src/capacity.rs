//! Size guards for the search-heavy operations.
//!
//! Several operations are exponential in the worst case. Each of them checks
//! its input against a limit before doing any work and reports a
//! [`CapacityError`] instead of hanging. Every guarded operation has a
//! `*_capped` variant taking an explicit limit; the plain variant uses the
//! defaults below.

use thiserror::Error;

/// Default vertex limit for subdivided-clique search.
pub const DEFAULT_SUBDIVISION_CAPACITY: usize = 32;

/// Default per-side vertex limit for game solvers.
pub const DEFAULT_GAME_CAPACITY: usize = 60;

/// Default maximum structure size for class enumeration.
pub const DEFAULT_ENUMERATION_CAPACITY: usize = 12;

/// Default quantifier-rank ceiling for the decision procedure.
pub const DEFAULT_DECIDE_RANK: usize = 2;

/// An input exceeded the size limit of a guarded operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{operation}: instance size {actual} exceeds capacity {limit}")]
pub struct CapacityError {
    pub operation: &'static str,
    pub actual: usize,
    pub limit: usize,
}

impl CapacityError {
    pub(crate) fn check(
        operation: &'static str,
        actual: usize,
        limit: usize,
    ) -> Result<(), CapacityError> {
        if actual > limit {
            Err(CapacityError {
                operation,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
