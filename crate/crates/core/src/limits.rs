use std::sync::atomic::{AtomicU64, Ordering};

use crate::exec::Execution;
use crate::{Error, Result};

/// Per-call resource limits shared by partition and orbit scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of exact one-step map applications (cell refinements count as one each).
    pub max_steps: u64,
    /// Maximum number of cells in any level partition.
    pub max_cells: usize,
    pub execution: Execution,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 10_000_000, max_cells: 10_000, execution: Execution::default() }
    }
}

impl Limits {
    pub fn with_steps(max_steps: u64) -> Self {
        Limits { max_steps, ..Self::default() }
    }

    pub fn sequential(self) -> Self {
        Limits { execution: Execution::Sequential, ..self }
    }

    pub fn budget(&self) -> Budget {
        Budget::new(self.max_steps)
    }
}

/// Step counter; cheap to share between worker threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, steps: u64, context: &str) -> Result<()> {
        let before = self.used.fetch_add(steps, Ordering::Relaxed);
        if before.saturating_add(steps) > self.limit {
            return Err(Error::Budget { limit: self.limit, unit: "steps", context: context.to_string() });
        }
        Ok(())
    }
}
