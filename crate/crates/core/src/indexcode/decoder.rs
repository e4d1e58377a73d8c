use crate::enumerate::{saturating_pow, Budget, Vectors};
use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, IndexSet, PrimeField};

use super::{first_failing_pattern, IndexCode};

/// Minimum-distance decoder for one receiver.
///
/// Holds the codeword contribution of every assignment of the messages the
/// receiver does not know; decoding adds the side-information contribution
/// and picks the candidate nearest to the received word.
#[derive(Debug, Clone)]
pub struct Decoder {
    receiver: usize,
    field: PrimeField,
    code_len: usize,
    side_rows: IndexSet,
    side_block: FieldMatrix,
    candidates: Vec<Candidate>,
    verified: bool,
}

#[derive(Debug, Clone)]
struct Candidate {
    demand: Vec<u8>,
    codeword: Vec<u8>,
}

/// Outcome of one decode. `ambiguous` is set when another candidate at the
/// same distance carries a different demand block; the first one in
/// enumeration order is returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub message: Vec<u8>,
    pub distance: usize,
    pub ambiguous: bool,
}

/// Candidate count for receiver `i`: `q^(n * |unknown messages|)`.
pub fn decoder_cost(code: &IndexCode, i: usize) -> Result<u64> {
    let problem = code.problem();
    let free = problem.hat_sets(i)?.free_rows.len();
    Ok(saturating_pow(problem.field().order() as u64, free))
}

/// Builds the decoder for receiver `i`. Codes that fail verification for
/// this receiver still get a decoder, flagged through [`Decoder::is_verified`].
pub fn synthesize_decoder(code: &IndexCode, i: usize, budget: Budget) -> Result<Decoder> {
    budget.check(decoder_cost(code, i)?)?;
    let problem = code.problem();
    let field = problem.field();
    let hats = problem.hat_sets(i)?;
    let demand_pos: Vec<usize> = hats
        .demand_rows
        .iter()
        .map(|d| {
            hats.free_rows
                .binary_search(d)
                .expect("demand is not side information")
        })
        .collect();
    let free_block = code.matrix().submatrix_rows(&hats.free_rows)?;
    let candidates = Vectors::new(field.order(), hats.free_rows.len())
        .map(|values| Candidate {
            demand: demand_pos.iter().map(|&p| values[p]).collect(),
            codeword: free_block.left_mul_vec(&values).expect("free rows"),
        })
        .collect();
    Ok(Decoder {
        receiver: i,
        field,
        code_len: code.len(),
        side_block: code.matrix().submatrix_rows(&hats.side_rows)?,
        side_rows: hats.side_rows,
        candidates,
        verified: first_failing_pattern(code, i)?.is_none(),
    })
}

impl Decoder {
    pub fn receiver(&self) -> usize {
        self.receiver
    }

    /// Whether the code passed verification for this receiver.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Rows of `y` the caller must supply as side values, in this order.
    pub fn side_rows(&self) -> &IndexSet {
        &self.side_rows
    }

    pub fn decode(&self, received: &[u8], side_values: &[u8]) -> Result<Decoded> {
        if received.len() != self.code_len {
            return Err(Error::DimensionMismatch(format!(
                "received {} symbols, code length is {}",
                received.len(),
                self.code_len
            )));
        }
        if side_values.len() != self.side_rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} side values supplied, receiver knows {}",
                side_values.len(),
                self.side_rows.len()
            )));
        }
        let f = self.field;
        // strip the known part so candidates compare directly
        let known = self.side_block.left_mul_vec(side_values)?;
        let target: Vec<u8> = received
            .iter()
            .zip(&known)
            .map(|(&r, &k)| f.sub(r, k))
            .collect();

        let mut best: Option<(usize, &Candidate)> = None;
        let mut ambiguous = false;
        for cand in &self.candidates {
            let d = cand
                .codeword
                .iter()
                .zip(&target)
                .filter(|(a, b)| a != b)
                .count();
            match best {
                Some((bd, _)) if d > bd => {}
                Some((bd, b)) if d == bd => ambiguous |= b.demand != cand.demand,
                _ => {
                    best = Some((d, cand));
                    ambiguous = false;
                }
            }
        }
        let (distance, cand) = best.expect("at least the all-zero candidate exists");
        Ok(Decoded {
            message: cand.demand.clone(),
            distance,
            ambiguous,
        })
    }
}
