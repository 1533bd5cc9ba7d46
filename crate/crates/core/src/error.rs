//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors reported by the library.
///
/// Functions distinguish "the answer is empty/absent" (an `Ok(None)` or an
/// empty collection) from "the question was malformed or too expensive to
/// answer", which lands here.
#[derive(Debug, Error)]
pub enum Error {
    /// The input violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input is structurally fine but lies outside the domain the
    /// operation is defined on (for example the Fibonacci screen at n = 5).
    #[error("excluded input: {0}")]
    ExcludedInput(String),

    /// Honoring the request would exceed a built-in memory or work budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// An explicit search budget ran out before the search resolved.
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Every bound in a smoothness schedule was tried without finding a split.
    #[error("no smooth split found under any scheduled bound (largest {largest_bound})")]
    ScheduleExhausted { largest_bound: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
