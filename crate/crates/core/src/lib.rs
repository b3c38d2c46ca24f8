//! Exact counting of k-subsets of `D ⊆ F_q` with a prescribed sum.
//!
//! * [`gf`]: finite fields F_{p^e} with a deterministic modulus and generator.
//! * [`combinatorics`]: falling factorials, generalized binomials and
//!   alternating binomial sums, generic over the integer type.
//! * [`counts`]: closed forms, the inclusion-exclusion recursion for general
//!   exclusion sets, and the error-term bounds.
//! * [`oracle`]: dynamic-programming and brute-force ground truth.
//! * [`rscodes`]: Reed-Solomon codes over `D`, distance to the code and
//!   deep-hole classification for words of degree `k + 1`.
//! * [`verify`]: the self-check suite driven by the `verify` CLI command.

pub mod combinatorics;
pub mod counts;
pub mod gf;
pub mod oracle;
pub mod rscodes;
pub mod verify;

pub use num_bigint::BigInt;

/// Exact non-negative counts and signed error terms.
pub type Count = BigInt;

pub use gf::{Field, FieldElement, GfError};
