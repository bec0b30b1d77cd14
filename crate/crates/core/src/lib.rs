//! Exact tables of the Möbius, Liouville and von Mangoldt functions over
//! arbitrary integer windows, correlation sums over integers and shifted
//! primes, sign-pattern censuses, and the Euler-product constants that
//! predict their densities.
//!
//! Every engine partitions its input into fixed segments and reduces the
//! per-segment results in segment order, so results do not depend on the
//! number of worker threads.

pub mod arith;
pub mod cache;
pub mod config;
pub mod constants;
pub mod correlations;
pub mod error;
pub mod oracle;
pub mod patterns;
pub mod reduce;
pub mod repro;
pub mod sieve;
pub mod window;

pub use arith::{ArithValue, FunctionKind, PrimePower};
pub use config::Config;
pub use error::{Error, Result};
pub use window::Window;
