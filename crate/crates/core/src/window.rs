use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest integer any table or sum may touch.
pub const MAX_ARGUMENT: u64 = i64::MAX as u64;

/// Inclusive integer window `[lo, hi]` with `1 <= lo <= hi <= 2^63 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWindow")]
pub struct Window {
    lo: u64,
    hi: u64,
}

#[derive(Deserialize)]
struct RawWindow {
    lo: u64,
    hi: u64,
}

impl TryFrom<RawWindow> for Window {
    type Error = Error;

    fn try_from(raw: RawWindow) -> Result<Self> {
        Window::new(raw.lo, raw.hi)
    }
}

impl Window {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo == 0 {
            return Err(Error::InvalidWindow { lo, hi, reason: "lower end must be at least 1" });
        }
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi, reason: "lower end exceeds upper end" });
        }
        if hi > MAX_ARGUMENT {
            return Err(Error::Range(format!("window end {hi} exceeds 2^63 - 1")));
        }
        Ok(Window { lo, hi })
    }

    /// The window `[1, x]`.
    pub fn up_to(x: u64) -> Result<Self> {
        Window::new(1, x)
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// Splits the window into consecutive pieces of at most `size` elements.
    pub fn segments(&self, size: usize) -> impl Iterator<Item = Window> + '_ {
        let size = size.max(1) as u64;
        let count = self.len().div_ceil(size);
        (0..count).map(move |i| {
            let lo = self.lo + i * size;
            let hi = lo.saturating_add(size - 1).min(self.hi);
            Window { lo, hi }
        })
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
