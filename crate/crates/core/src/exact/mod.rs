//! Exact solvers: brute-force enumeration oracles, the squared-mass
//! subproblem solver, and branch-and-cut for both the principal and the
//! rectangular problem.

pub mod bnc;
pub mod brute;
pub mod frobenius;

pub use bnc::{spca_branch_and_cut, ssvd_branch_and_cut, BncConfig, CUT_VIOLATION_TOL, OPTIMALITY_TOL};
pub use brute::{
    brute_force_spca, brute_force_spca_capped, brute_force_ssvd, brute_force_ssvd_capped,
    DEFAULT_ENUMERATION_CAP,
};
pub use frobenius::{FrobeniusOutcome, FrobeniusSolver};
