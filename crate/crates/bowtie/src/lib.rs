pub mod cases;
pub mod cli;
pub mod enumerate;
pub mod io;
pub mod report;
pub mod scan;
pub mod search;
pub mod verify;

/// Seed used by randomized operations when none is given.
pub const DEFAULT_SEED: u64 = 1995;
