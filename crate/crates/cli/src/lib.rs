//! Command-line front end: instance generation, solving, exact solving,
//! benchmark sweeps and matrix-sequence scanning.

pub mod bench;
pub mod commands;
pub mod gen;
pub mod rng;
pub mod scan;
