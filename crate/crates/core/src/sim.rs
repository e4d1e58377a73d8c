//! Broadcast simulation: encode, add a per-receiver error of weight at most
//! `delta_i`, decode with the minimum-distance decoder, compare the demand.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{ball_size, saturating_pow, with_support, Budget};
use crate::error::{Error, Result};
use crate::indexcode::{decoder_cost, synthesize_decoder, Decoder, IndexCode};

/// Trial `t` draws from ChaCha8 seeded with the master seed on stream `t`.
pub const RNG_NAME: &str = "chacha8-stream-per-trial";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WeightPolicy {
    /// Every error has weight `min(delta_i, c)`.
    #[default]
    Max,
    /// Weight uniform in `0..=min(delta_i, c)`.
    Uniform,
    /// Noiseless channel.
    None,
}

impl WeightPolicy {
    pub fn name(self) -> &'static str {
        match self {
            WeightPolicy::Max => "max",
            WeightPolicy::Uniform => "uniform",
            WeightPolicy::None => "none",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReceiverStats {
    pub failures: u64,
    pub ambiguous: u64,
}

/// A decode that returned the wrong demand block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub receiver: usize,
    pub message: Vec<u8>,
    pub error: Vec<u8>,
    pub decoded: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub trials: u64,
    pub per_receiver: Vec<ReceiverStats>,
    pub seed: u64,
    pub policy: String,
    pub rng: String,
    /// Decodes performed in total.
    pub checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailureRecord>,
}

/// Counts gathered for one message vector, merged associatively so the
/// result does not depend on how trials are split across threads.
#[derive(Debug, Clone)]
struct Tally {
    per_receiver: Vec<ReceiverStats>,
    checks: u64,
    first: Option<(u64, FailureRecord)>,
}

impl Tally {
    fn empty(receivers: usize) -> Self {
        Tally {
            per_receiver: vec![ReceiverStats::default(); receivers],
            checks: 0,
            first: None,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.per_receiver.iter_mut().zip(other.per_receiver) {
            a.failures += b.failures;
            a.ambiguous += b.ambiguous;
        }
        self.checks += other.checks;
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn decoders(code: &IndexCode, budget: Budget) -> Result<Vec<Decoder>> {
    let receivers = code.problem().receivers().len();
    let total = (0..receivers).try_fold(0u64, |acc, i| {
        Ok::<_, Error>(acc.saturating_add(decoder_cost(code, i)?))
    })?;
    budget.check(total)?;
    (0..receivers)
        .map(|i| synthesize_decoder(code, i, budget))
        .collect()
}

/// One decode at one receiver; `wrong` holds the decoded block when it is incorrect.
struct Attempt {
    wrong: Option<Vec<u8>>,
    ambiguous: bool,
}

fn attempt(code: &IndexCode, dec: &Decoder, y: &[u8], codeword: &[u8], error: &[u8]) -> Attempt {
    let f = code.problem().field();
    let received: Vec<u8> = codeword
        .iter()
        .zip(error)
        .map(|(&a, &b)| f.add(a, b))
        .collect();
    let side: Vec<u8> = dec.side_rows().iter().map(|&r| y[r]).collect();
    let out = dec
        .decode(&received, &side)
        .expect("lengths match the code");
    let hats = code
        .problem()
        .hat_sets(dec.receiver())
        .expect("receiver in range");
    let truth: Vec<u8> = hats.demand_rows.iter().map(|&r| y[r]).collect();
    Attempt {
        wrong: (out.message != truth).then_some(out.message),
        ambiguous: out.ambiguous,
    }
}

/// Seeded random trials, one uniform message per trial and one error per
/// receiver. Identical inputs give identical reports regardless of threading.
pub fn run_random_trials(
    code: &IndexCode,
    trials: u64,
    seed: u64,
    policy: WeightPolicy,
    budget: Budget,
) -> Result<TrialReport> {
    let decs = decoders(code, budget)?;
    let problem = code.problem();
    let q = problem.field().order();
    let c = code.len();
    let receivers = problem.receivers().len();

    let tally = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let y: Vec<u8> = (0..problem.message_len())
                .map(|_| rng.gen_range(0..q))
                .collect();
            let codeword = code.encode(&y).expect("length m*n");
            let mut tally = Tally::empty(receivers);
            for (i, dec) in decs.iter().enumerate() {
                let cap = problem.receivers()[i].delta.min(c);
                let weight = match policy {
                    WeightPolicy::Max => cap,
                    WeightPolicy::Uniform => rng.gen_range(0..=cap),
                    WeightPolicy::None => 0,
                };
                let mut error = vec![0u8; c];
                for pos in sample(&mut rng, c, weight).into_vec() {
                    error[pos] = rng.gen_range(1..q);
                }
                let a = attempt(code, dec, &y, &codeword, &error);
                tally.checks += 1;
                tally.per_receiver[i].ambiguous += a.ambiguous as u64;
                if let Some(decoded) = a.wrong {
                    tally.per_receiver[i].failures += 1;
                    if tally.first.is_none() {
                        tally.first = Some((
                            t,
                            FailureRecord {
                                receiver: i,
                                message: y.clone(),
                                error,
                                decoded,
                            },
                        ));
                    }
                }
            }
            tally
        })
        .reduce(|| Tally::empty(receivers), Tally::merge);

    Ok(TrialReport {
        trials,
        per_receiver: tally.per_receiver,
        seed,
        policy: policy.name().to_owned(),
        rng: RNG_NAME.to_owned(),
        checks: tally.checks,
        first_failure: tally.first.map(|(_, f)| f),
    })
}

/// Work for [`run_exhaustive`]: `q^(mn)` messages times the error ball of
/// every receiver.
pub fn exhaustive_cost(code: &IndexCode) -> u64 {
    let problem = code.problem();
    let q = problem.field().order();
    let per_message = problem.receivers().iter().fold(0u64, |acc, r| {
        acc.saturating_add(ball_size(q, code.len(), r.delta))
    });
    saturating_pow(q as u64, problem.message_len()).saturating_mul(per_message)
}

fn vector_at(q: u8, len: usize, mut index: u64) -> Vec<u8> {
    let mut v = vec![0u8; len];
    for slot in v.iter_mut().rev() {
        *slot = (index % q as u64) as u8;
        index /= q as u64;
    }
    v
}

/// Every message against every error of weight at most `delta_i` at every
/// receiver. A receiver's `failures` counts messages for which some such
/// error decodes wrongly; `ambiguous` counts messages with some tie.
/// `trials` is the number of messages. The first failure is the earliest in
/// message, receiver, error order.
pub fn run_exhaustive(code: &IndexCode, budget: Budget) -> Result<TrialReport> {
    budget.check(exhaustive_cost(code))?;
    let decs = decoders(code, budget)?;
    let problem = code.problem();
    let q = problem.field().order();
    let c = code.len();
    let mn = problem.message_len();
    let receivers = problem.receivers().len();
    let messages = saturating_pow(q as u64, mn);

    let errors: Vec<Vec<Vec<u8>>> = problem
        .receivers()
        .iter()
        .map(|r| {
            (0..=r.delta.min(c))
                .flat_map(|w| (0..c).combinations(w))
                .flat_map(|s| with_support(q, c, &s).collect::<Vec<_>>())
                .collect()
        })
        .collect();

    let tally = (0..messages)
        .into_par_iter()
        .map(|idx| {
            let y = vector_at(q, mn, idx);
            let codeword = code.encode(&y).expect("length m*n");
            let mut tally = Tally::empty(receivers);
            for (i, dec) in decs.iter().enumerate() {
                let (mut failed, mut tied) = (false, false);
                for error in &errors[i] {
                    let a = attempt(code, dec, &y, &codeword, error);
                    tally.checks += 1;
                    tied |= a.ambiguous;
                    if let Some(decoded) = a.wrong {
                        failed = true;
                        if tally.first.is_none() {
                            tally.first = Some((
                                idx,
                                FailureRecord {
                                    receiver: i,
                                    message: y.clone(),
                                    error: error.clone(),
                                    decoded,
                                },
                            ));
                        }
                    }
                }
                tally.per_receiver[i].failures += failed as u64;
                tally.per_receiver[i].ambiguous += tied as u64;
            }
            tally
        })
        .reduce(|| Tally::empty(receivers), Tally::merge);

    Ok(TrialReport {
        trials: messages,
        per_receiver: tally.per_receiver,
        seed: 0,
        policy: "exhaustive".to_owned(),
        rng: "none".to_owned(),
        checks: tally.checks,
        first_failure: tally.first.map(|(_, f)| f),
    })
}
