use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, IndexSet, PrimeField};

/// A receiver demanding one message, holding some others, and wanting to
/// correct up to `delta` symbol errors. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Receiver {
    pub demand: usize,
    pub side_info: IndexSet,
    pub delta: usize,
}

impl Receiver {
    pub fn new(demand: usize, side_info: Vec<usize>, delta: usize) -> Self {
        let mut side_info = side_info;
        side_info.sort_unstable();
        side_info.dedup();
        Receiver {
            demand,
            side_info: IndexSet::from_sorted_unchecked(side_info),
            delta,
        }
    }

    /// Number of error positions quantified over by the verifier: `2 * delta`
    /// clamped to the code length.
    pub fn pattern_size(&self, code_len: usize) -> usize {
        (2 * self.delta).min(code_len)
    }
}

/// Messages `x_1..x_m`, each a length-`n` vector over GF(q), and the receivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCodingProblem {
    field: PrimeField,
    messages: usize,
    block_len: usize,
    receivers: Vec<Receiver>,
}

/// Row index sets of a receiver, all 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatSets {
    /// Rows of `y` carried by side-information messages.
    pub side_rows: IndexSet,
    /// Rows of `y` carried by the demanded message.
    pub demand_rows: IndexSet,
    /// Messages not in the side information (the demand among them).
    pub unknown_messages: IndexSet,
    /// Rows of `y` not carried by side information.
    pub free_rows: IndexSet,
}

impl IndexCodingProblem {
    pub fn new(
        field: PrimeField,
        messages: usize,
        block_len: usize,
        receivers: Vec<Receiver>,
    ) -> Result<Self> {
        if messages == 0 {
            return Err(Error::InvalidProblem(
                "at least one message is required".into(),
            ));
        }
        if block_len == 0 {
            return Err(Error::InvalidProblem(
                "block length must be at least 1".into(),
            ));
        }
        for (i, r) in receivers.iter().enumerate() {
            if r.demand >= messages {
                return Err(Error::InvalidProblem(format!(
                    "receiver {}: demand {} is not one of the {messages} messages",
                    i + 1,
                    r.demand + 1
                )));
            }
            if let Some(&k) = r.side_info.iter().find(|&&k| k >= messages) {
                return Err(Error::InvalidProblem(format!(
                    "receiver {}: side information {} is not one of the {messages} messages",
                    i + 1,
                    k + 1
                )));
            }
            if r.side_info.contains(r.demand) {
                return Err(Error::InvalidProblem(format!(
                    "receiver {}: demanded message {} is already in its side information",
                    i + 1,
                    r.demand + 1
                )));
            }
        }
        Ok(IndexCodingProblem {
            field,
            messages,
            block_len,
            receivers,
        })
    }

    /// Every receiver gets the same error budget `delta`.
    pub fn with_uniform_delta(
        field: PrimeField,
        messages: usize,
        block_len: usize,
        receivers: Vec<(usize, Vec<usize>)>,
        delta: usize,
    ) -> Result<Self> {
        let receivers = receivers
            .into_iter()
            .map(|(d, h)| Receiver::new(d, h, delta))
            .collect();
        Self::new(field, messages, block_len, receivers)
    }

    /// Same problem with each receiver's budget replaced.
    pub fn with_deltas(&self, deltas: &[usize]) -> Result<Self> {
        if deltas.len() != self.receivers.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} budgets for {} receivers",
                deltas.len(),
                self.receivers.len()
            )));
        }
        let mut out = self.clone();
        for (r, &d) in out.receivers.iter_mut().zip(deltas) {
            r.delta = d;
        }
        Ok(out)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn messages(&self) -> usize {
        self.messages
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// `m * n`, the length of the concatenated message vector `y`.
    pub fn message_len(&self) -> usize {
        self.messages * self.block_len
    }

    pub fn receivers(&self) -> &[Receiver] {
        &self.receivers
    }

    pub fn receiver(&self, i: usize) -> Result<&Receiver> {
        self.receivers.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            universe: self.receivers.len(),
        })
    }

    fn block(&self, message: usize) -> std::ops::Range<usize> {
        message * self.block_len..(message + 1) * self.block_len
    }

    pub fn hat_sets(&self, i: usize) -> Result<HatSets> {
        let r = self.receiver(i)?;
        let side_rows: Vec<usize> = r.side_info.iter().flat_map(|&k| self.block(k)).collect();
        let side_rows = IndexSet::from_sorted_unchecked(side_rows);
        let demand_rows = IndexSet::range(self.block(r.demand));
        let unknown_messages = r.side_info.complement(self.messages);
        let free_rows = side_rows.complement(self.message_len());
        Ok(HatSets {
            side_rows,
            demand_rows,
            unknown_messages,
            free_rows,
        })
    }
}

/// A linear code `y -> yL` for a problem; `L` has `m * n` rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCode {
    problem: IndexCodingProblem,
    matrix: FieldMatrix,
}

impl IndexCode {
    pub fn new(problem: IndexCodingProblem, matrix: FieldMatrix) -> Result<Self> {
        if matrix.field() != problem.field() {
            return Err(Error::FieldMismatch(
                problem.field().order(),
                matrix.field().order(),
            ));
        }
        if matrix.rows() != problem.message_len() {
            return Err(Error::DimensionMismatch(format!(
                "code matrix has {} rows but m*n = {}",
                matrix.rows(),
                problem.message_len()
            )));
        }
        Ok(IndexCode { problem, matrix })
    }

    pub fn problem(&self) -> &IndexCodingProblem {
        &self.problem
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    /// Code length `c`.
    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.cols() == 0
    }

    pub fn encode(&self, y: &[u8]) -> Result<Vec<u8>> {
        self.matrix.left_mul_vec(y)
    }
}
