//! Branch budgets for the exhaustive enumerators.

/// Default number of search branches an enumerator may explore.
pub const DEFAULT_MAX_BRANCHES: u64 = 10_000_000;

/// The search ran out of branches. `partial` holds what was found before stopping.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("search budget of {limit} branches exhausted ({} partial results)", partial.len())]
pub struct BudgetExceeded<T: std::fmt::Debug> {
    pub limit: u64,
    pub partial: Vec<T>,
}

#[derive(Debug)]
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<(), Exhausted> {
        self.used += 1;
        if self.used > self.limit {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub(crate) fn limit(&self) -> u64 {
        self.limit
    }
}
