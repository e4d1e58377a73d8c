//! Exhaustive oracle: for each receiver, every message vector that is zero on
//! the side information and nonzero on the demand, against every error of
//! weight at most `2 * delta`, must satisfy `yL + e != 0`.
//!
//! Shares nothing with the span-test verifier beyond encoding, so the two can
//! be checked against each other.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::enumerate::{ball_size, saturating_pow, with_support, Budget, Vectors};
use crate::error::Result;
use crate::linalg::IndexSet;

use super::{error_patterns, IndexCode, Verdict, Witness};

/// A message/error pair with `yL + e = 0` for some receiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub receiver: usize,
    pub message: Vec<u8>,
    pub error: Vec<u8>,
}

/// Field-vector checks the oracle performs on this code.
pub fn brute_force_cost(code: &IndexCode) -> u64 {
    let problem = code.problem();
    let q = problem.field().order();
    (0..problem.receivers().len()).fold(0u64, |acc, i| {
        let free = problem
            .hat_sets(i)
            .expect("receiver in range")
            .free_rows
            .len();
        let delta = problem.receivers()[i].delta;
        acc.saturating_add(saturating_pow(q as u64, free).saturating_mul(ball_size(
            q,
            code.len(),
            2 * delta,
        )))
    })
}

struct ReceiverScan {
    failing_supports: BTreeSet<Vec<usize>>,
    first: Option<(Vec<u8>, Vec<u8>)>,
}

fn scan_receiver(code: &IndexCode, i: usize) -> ReceiverScan {
    let problem = code.problem();
    let f = problem.field();
    let q = f.order();
    let c = code.len();
    let hats = problem.hat_sets(i).expect("receiver in range");
    let max_weight = 2 * problem.receivers()[i].delta;
    let demand_pos: Vec<usize> = hats
        .demand_rows
        .iter()
        .map(|d| {
            hats.free_rows
                .binary_search(d)
                .expect("demand is not side information")
        })
        .collect();

    let mut scan = ReceiverScan {
        failing_supports: BTreeSet::new(),
        first: None,
    };
    for free_values in Vectors::new(q, hats.free_rows.len()) {
        if demand_pos.iter().all(|&p| free_values[p] == 0) {
            continue;
        }
        let mut y = vec![0u8; problem.message_len()];
        for (&row, &v) in hats.free_rows.iter().zip(&free_values) {
            y[row] = v;
        }
        let codeword = code.encode(&y).expect("length m*n");
        for weight in 0..=max_weight.min(c) {
            for support in (0..c).combinations(weight) {
                for error in with_support(q, c, &support) {
                    if codeword.iter().zip(&error).all(|(&a, &b)| f.add(a, b) == 0) {
                        if scan.first.is_none() {
                            scan.first = Some((y.clone(), error));
                        }
                        scan.failing_supports.insert(support.clone());
                    }
                }
            }
        }
    }
    scan
}

fn receiver_witness(code: &IndexCode, i: usize, scan: &ReceiverScan) -> Option<IndexSet> {
    if scan.failing_supports.is_empty() {
        return None;
    }
    let c = code.len();
    let k = code.problem().receivers()[i].pattern_size(c);
    error_patterns(c, k).find(|pattern| {
        scan.failing_supports
            .iter()
            .any(|s| s.iter().all(|p| pattern.contains(*p)))
    })
}

/// Exhaustive verification. The witness pattern is the lexicographically
/// first pattern of size `min(2 delta, c)` that covers the support of some
/// confusing error, matching the span-test ordering contract.
pub fn brute_force_verify(code: &IndexCode, budget: Budget) -> Result<Verdict> {
    budget.check(brute_force_cost(code))?;
    for i in 0..code.problem().receivers().len() {
        let scan = scan_receiver(code, i);
        if let Some(pattern) = receiver_witness(code, i, &scan) {
            return Ok(Verdict::Invalid(Witness {
                receiver: i,
                pattern,
            }));
        }
    }
    Ok(Verdict::Valid)
}

/// First concrete `(y, e)` pair with `yL + e = 0`, if any.
pub fn brute_force_counterexample(
    code: &IndexCode,
    budget: Budget,
) -> Result<Option<Counterexample>> {
    budget.check(brute_force_cost(code))?;
    for i in 0..code.problem().receivers().len() {
        if let Some((message, error)) = scan_receiver(code, i).first {
            return Ok(Some(Counterexample {
                receiver: i,
                message,
                error,
            }));
        }
    }
    Ok(None)
}
