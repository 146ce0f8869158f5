pub mod baser;
pub mod numsys;
pub mod oracle;
pub mod poly;
pub mod reflexive;
pub mod simplex;
pub mod stats;

/// Default cap on the number of points enumerated by one brute-force call.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
