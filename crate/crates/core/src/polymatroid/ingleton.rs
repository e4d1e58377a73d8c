use serde::Serialize;

use crate::enumerate::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::linalg::IndexSet;

use super::table::{mask_of, set_of, RankTable, ENUMERATION_CAP};

/// A quadruple `(A, B, C, D)` with
/// `r(AB) + r(AC) + r(AD) + r(BC) + r(BD) < r(A) + r(B) + r(CD) + r(ABC) + r(ABD)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IngletonViolation {
    pub sets: [IndexSet; 4],
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IngletonVerdict {
    Pass,
    Violation(IngletonViolation),
}

impl IngletonVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, IngletonVerdict::Pass)
    }
}

/// Both sides of the Ingleton inequality for subsets given as masks.
pub fn ingleton_sides(table: &RankTable, a: u32, b: u32, c: u32, d: u32) -> (u64, u64) {
    let r = |m: u32| table.rank(m) as u64;
    let lhs = r(a | b) + r(a | c) + r(a | d) + r(b | c) + r(b | d);
    let rhs = r(a) + r(b) + r(c | d) + r(a | b | c) + r(a | b | d);
    (lhs, rhs)
}

fn violation(table: &RankTable, quad: [u32; 4]) -> Option<IngletonViolation> {
    let (lhs, rhs) = ingleton_sides(table, quad[0], quad[1], quad[2], quad[3]);
    (lhs < rhs).then(|| IngletonViolation {
        sets: quad.map(set_of),
        lhs,
        rhs,
    })
}

/// Screens every ordered quadruple of distinct singletons, in lexicographic
/// order. A violation proves the table is not representable.
pub fn ingleton_check(table: &RankTable) -> Result<IngletonVerdict> {
    let m = table.ground_size();
    if m > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            size: m,
            cap: ENUMERATION_CAP,
        });
    }
    for a in 0..m {
        for b in (0..m).filter(|&b| b != a) {
            for c in (0..m).filter(|&c| c != a && c != b) {
                for d in (0..m).filter(|&d| d != a && d != b && d != c) {
                    let quad = [a, b, c, d].map(|e| mask_of(&[e]));
                    if let Some(v) = violation(table, quad) {
                        return Ok(IngletonVerdict::Violation(v));
                    }
                }
            }
        }
    }
    Ok(IngletonVerdict::Pass)
}

/// Screens every quadruple of pairwise disjoint nonempty subsets. There are
/// `5^m` assignments of elements to A, B, C, D or none, so this is gated by
/// a budget.
pub fn ingleton_check_exhaustive(table: &RankTable, budget: Budget) -> Result<IngletonVerdict> {
    let m = table.ground_size();
    if m > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            size: m,
            cap: ENUMERATION_CAP,
        });
    }
    budget.check(saturating_pow(5, m))?;
    let mut labels = vec![0u8; m];
    loop {
        let mut quad = [0u32; 4];
        for (e, &l) in labels.iter().enumerate() {
            if l > 0 {
                quad[l as usize - 1] |= 1 << e;
            }
        }
        if quad.iter().all(|&s| s != 0) {
            if let Some(v) = violation(table, quad) {
                return Ok(IngletonVerdict::Violation(v));
            }
        }
        // odometer over labels, element 0 fastest
        let Some(pos) = labels.iter().position(|&l| l < 4) else {
            break;
        };
        labels[pos] += 1;
        labels[..pos].iter_mut().for_each(|l| *l = 0);
    }
    Ok(IngletonVerdict::Pass)
}
