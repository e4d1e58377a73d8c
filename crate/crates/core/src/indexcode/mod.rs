//! Index coding problems with per-receiver error budgets.
//!
//! A linear code is a matrix `L` with `m * n` rows; message vector `y` is
//! sent as `yL`. Receiver `i` must recover its demanded block from `yL + e`
//! and its side information whenever `wt(e) <= delta_i`. Two independent
//! verifiers are provided: a span test per error pattern
//! ([`verify_differential_ecic`]) and exhaustive enumeration
//! ([`brute_force_verify`]).

mod brute;
mod decoder;
mod problem;
mod search;
mod verify;

pub use brute::{brute_force_cost, brute_force_counterexample, brute_force_verify, Counterexample};
pub use decoder::{decoder_cost, synthesize_decoder, Decoded, Decoder};
pub use problem::{HatSets, IndexCode, IndexCodingProblem, Receiver};
pub use search::{search_min_length, SearchResult};
pub use verify::{
    check_receiver_pattern, error_patterns, first_failing_pattern, verify_differential_ecic,
    ErrorPattern, Verdict, Witness,
};
