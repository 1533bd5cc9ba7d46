//! Arithmetic of smooth numbers and what they are good for.
//!
//! A number is smooth over a basis of small primes when every one of its
//! prime factors lies in the basis. This crate collects the desk-scale
//! machinery around that idea:
//!
//! - [`smooth`]: ordered enumeration, membership with certificates, counting
//!   approximations, and gap statistics.
//! - [`partitions`]: counting the ways to write `n` as an ordered-free sum
//!   of powers of 2 and 3, with an independent oracle and a size estimate.
//! - [`repr`]: writing arbitrary integers as sums of few smooth numbers,
//!   greedily or minimally, plus the first number needing more than `k`
//!   terms and two-part splits avoiding any single large prime factor.
//! - [`primality`]: Fermat, Miller-Rabin, and Fibonacci-based probable-prime
//!   tests together with small pseudoprime scans.
//! - [`keygen`]: drawing coprime pairs (and k-tuples) of smooth shares whose
//!   sum is never divisible by a basis prime, measuring how often such sums
//!   are prime, and sizing the speedup over random search.
//! - [`owf`]: a sum-of-two-smooth-numbers puzzle that is cheap to pose and
//!   verify but expensive to invert.
//!
//! Everything randomized takes an explicit generator; [`rng`] derives
//! reproducible per-task streams from a single seed.

pub mod basis;
pub mod error;
pub mod keygen;
mod num_util;
pub mod owf;
pub mod partitions;
pub mod primality;
pub mod repr;
pub mod rng;
pub mod smooth;

pub use basis::PrimeBasis;
pub use error::{Error, Result};
pub use keygen::{CandidateReport, ShareConfig, SharePair, TrialStats};
pub use owf::{Challenge, Witness, WitnessClaim};
pub use partitions::PartitionTable;
pub use primality::{PrimalityPolicy, PrimalityVerdict};
pub use repr::{Decomposition, SmoothSplit, SparsityProfile};
pub use smooth::{Factorization, GapRecord};
