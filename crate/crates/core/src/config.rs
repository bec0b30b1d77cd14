use serde::{Deserialize, Serialize};

/// Default number of integers sieved per segment.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 22;

/// Default cap on `Σ q` residue cells held by a hypothesis sum.
pub const DEFAULT_HYPOTHESIS_CELL_BUDGET: u64 = 1 << 28;

/// Engine settings shared by every table, sum and census.
///
/// `segment_size` fixes the reduction order of floating sums; `threads`
/// only changes how segments are scheduled. `threads == 0` uses the ambient
/// rayon pool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub segment_size: usize,
    pub threads: usize,
    pub hypothesis_cell_budget: u64,
    /// Flips λ at one argument. Used to check that validation catches sieve faults.
    #[doc(hidden)]
    #[serde(skip)]
    pub lambda_fault: Option<u64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            segment_size: DEFAULT_SEGMENT_SIZE,
            threads: 0,
            hypothesis_cell_budget: DEFAULT_HYPOTHESIS_CELL_BUDGET,
            lambda_fault: None,
        }
    }
}

impl Config {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_segment_size(mut self, segment_size: usize) -> Self {
        self.segment_size = segment_size.max(1);
        self
    }

    /// Runs `f` on a pool with the configured thread count.
    pub fn install<R, F>(&self, f: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
