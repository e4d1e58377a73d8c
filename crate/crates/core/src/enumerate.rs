//! Small enumeration helpers shared by the exhaustive paths.

use crate::error::{Error, Result};

/// Environment variable that overrides every enumeration budget in the CLI.
pub const BUDGET_ENV: &str = "POLYINDEX_BUDGET";

/// Upper bound on the number of elementary steps an exhaustive routine may
/// take before refusing to start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 26);

    /// `POLYINDEX_BUDGET` when set and parseable, otherwise the default.
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn check(self, needed: u64) -> Result<()> {
        if needed > self.0 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

pub(crate) fn saturating_pow(base: u64, exp: usize) -> u64 {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(u64::MAX)
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Number of vectors in GF(q)^len with Hamming weight at most `max_weight`.
pub(crate) fn ball_size(q: u8, len: usize, max_weight: usize) -> u64 {
    (0..=max_weight.min(len)).fold(0u64, |acc, w| {
        acc.saturating_add(binomial(len, w).saturating_mul(saturating_pow(q as u64 - 1, w)))
    })
}

/// All vectors of GF(q)^len in lexicographic order (last coordinate fastest).
#[derive(Debug, Clone)]
pub struct Vectors {
    q: u8,
    current: Vec<u8>,
    done: bool,
}

impl Vectors {
    pub fn new(q: u8, len: usize) -> Self {
        Vectors {
            q,
            current: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for Vectors {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = true;
        for slot in self.current.iter_mut().rev() {
            if *slot + 1 < self.q {
                *slot += 1;
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(out)
    }
}

/// Vectors of GF(q)^len whose support is exactly `support`, in lexicographic
/// order of their nonzero values.
pub(crate) fn with_support(
    q: u8,
    len: usize,
    support: &[usize],
) -> impl Iterator<Item = Vec<u8>> + '_ {
    Vectors::new(q - 1, support.len()).map(move |vals| {
        let mut v = vec![0u8; len];
        for (&pos, &val) in support.iter().zip(&vals) {
            v[pos] = val + 1;
        }
        v
    })
}
