use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IndexSet;

/// Largest ground set an explicit table may have.
pub const TABLE_CAP: usize = 20;

/// Largest ground set for basis enumeration and the Ingleton screen.
pub const ENUMERATION_CAP: usize = 12;

/// Explicit rank function on all subsets of `0..ground`, indexed by bitmask
/// (bit `i` set means element `i` is in the subset).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankTable {
    ground: usize,
    ranks: Vec<u32>,
}

pub(crate) fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0u32, |m, &i| m | (1 << i))
}

pub(crate) fn set_of(mask: u32) -> IndexSet {
    IndexSet::from_sorted_unchecked((0..32).filter(|i| mask >> i & 1 == 1).collect())
}

impl RankTable {
    pub fn new(ground: usize, ranks: Vec<u32>) -> Result<Self> {
        if ground > TABLE_CAP {
            return Err(Error::CapExceeded {
                size: ground,
                cap: TABLE_CAP,
            });
        }
        if ranks.len() != 1 << ground {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks for a ground set of size {ground}",
                ranks.len()
            )));
        }
        Ok(RankTable { ground, ranks })
    }

    pub fn from_fn(ground: usize, rank: impl Fn(u32) -> u32) -> Result<Self> {
        if ground > TABLE_CAP {
            return Err(Error::CapExceeded {
                size: ground,
                cap: TABLE_CAP,
            });
        }
        Ok(RankTable {
            ground,
            ranks: (0..1u32 << ground).map(rank).collect(),
        })
    }

    /// Builds a table from `(mask, rank)` pairs; every subset must appear.
    pub fn from_entries(
        ground: usize,
        entries: impl IntoIterator<Item = (u64, u32)>,
    ) -> Result<Self> {
        if ground > TABLE_CAP {
            return Err(Error::CapExceeded {
                size: ground,
                cap: TABLE_CAP,
            });
        }
        let mut ranks: Vec<Option<u32>> = vec![None; 1 << ground];
        for (mask, r) in entries {
            let slot = ranks.get_mut(mask as usize).ok_or_else(|| {
                Error::Parse(format!(
                    "subset mask {mask} is outside a ground set of size {ground}"
                ))
            })?;
            *slot = Some(r);
        }
        let ranks = ranks
            .into_iter()
            .enumerate()
            .map(|(mask, r)| r.ok_or(Error::TableNotTotal(mask as u64)))
            .collect::<Result<Vec<u32>>>()?;
        Ok(RankTable { ground, ranks })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    #[inline]
    pub fn rank(&self, mask: u32) -> u32 {
        self.ranks[mask as usize]
    }

    pub fn rank_of(&self, set: &[usize]) -> Result<u32> {
        if let Some(&index) = set.iter().find(|&&i| i >= self.ground) {
            return Err(Error::IndexOutOfRange {
                index,
                universe: self.ground,
            });
        }
        Ok(self.rank(mask_of(set)))
    }

    /// `r(E)`, the common component sum of the basis vectors.
    pub fn total_rank(&self) -> u32 {
        self.rank(self.full_mask())
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub(crate) fn full_mask(&self) -> u32 {
        ((1u64 << self.ground) - 1) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// `A ⊆ B` implies `r(A) <= r(B)`.
    Monotone,
    /// `r(A ∪ B) + r(A ∩ B) <= r(A) + r(B)`.
    Submodular,
    /// `r(∅) = 0`.
    Normalized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Ok,
    Violation { axiom: Axiom, sets: Vec<IndexSet> },
}

impl AxiomVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, AxiomVerdict::Ok)
    }
}

/// Submodularity is checked over all pairs up to this ground size, and via
/// the equivalent local form `r(A+i) + r(A+j) >= r(A+i+j) + r(A)` beyond.
const PAIRWISE_SUBMODULAR_CAP: usize = 10;

/// Checks normalization, then monotonicity over covering pairs, then
/// submodularity; the first violation is reported with its subsets.
pub fn check_axioms(table: &RankTable) -> AxiomVerdict {
    if table.rank(0) != 0 {
        return AxiomVerdict::Violation {
            axiom: Axiom::Normalized,
            sets: vec![IndexSet::empty()],
        };
    }
    let n = 1u32 << table.ground;
    for a in 0..n {
        for e in 0..table.ground {
            let b = a | 1 << e;
            if b != a && table.rank(a) > table.rank(b) {
                return AxiomVerdict::Violation {
                    axiom: Axiom::Monotone,
                    sets: vec![set_of(a), set_of(b)],
                };
            }
        }
    }
    if table.ground <= PAIRWISE_SUBMODULAR_CAP {
        for a in 0..n {
            for b in a + 1..n {
                if table.rank(a | b) + table.rank(a & b) > table.rank(a) + table.rank(b) {
                    return AxiomVerdict::Violation {
                        axiom: Axiom::Submodular,
                        sets: vec![set_of(a), set_of(b)],
                    };
                }
            }
        }
    } else {
        for a in 0..n {
            for i in (0..table.ground).filter(|i| a >> i & 1 == 0) {
                for j in (i + 1..table.ground).filter(|j| a >> j & 1 == 0) {
                    let (ai, aj) = (a | 1 << i, a | 1 << j);
                    if table.rank(ai | aj) + table.rank(a) > table.rank(ai) + table.rank(aj) {
                        return AxiomVerdict::Violation {
                            axiom: Axiom::Submodular,
                            sets: vec![set_of(ai), set_of(aj)],
                        };
                    }
                }
            }
        }
    }
    AxiomVerdict::Ok
}

/// Whether `u` satisfies `|u(A)| <= r(A)` for every subset `A`.
pub fn membership(table: &RankTable, u: &[u32]) -> Result<bool> {
    if u.len() != table.ground {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a ground set of size {}",
            u.len(),
            table.ground
        )));
    }
    Ok((0..1u32 << table.ground).all(|mask| {
        let sum: u64 = (0..table.ground)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| u[i] as u64)
            .sum();
        sum <= table.rank(mask) as u64
    }))
}

/// A maximal member of the polymatroid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisVector(pub Vec<u32>);

impl BasisVector {
    pub fn magnitude(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All maximal members, in lexicographic order.
///
/// Depth-first over components `u_0, u_1, ...`, keeping the subset sums of
/// every subset whose largest element is already assigned.
pub fn basis_vectors(table: &RankTable) -> Result<Vec<BasisVector>> {
    let m = table.ground;
    if m > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            size: m,
            cap: ENUMERATION_CAP,
        });
    }
    let mut sums = vec![0u32; 1 << m];
    let mut u = vec![0u32; m];
    let mut out = Vec::new();
    extend_member(table, 0, &mut u, &mut sums, &mut out);
    Ok(out)
}

fn extend_member(
    table: &RankTable,
    k: usize,
    u: &mut [u32],
    sums: &mut [u32],
    out: &mut Vec<BasisVector>,
) {
    let m = table.ground;
    if k == m {
        let maximal = (0..m)
            .all(|i| (0..1u32 << m).any(|s| s >> i & 1 == 1 && sums[s as usize] == table.rank(s)));
        if maximal {
            out.push(BasisVector(u.to_vec()));
        }
        return;
    }
    let bit = 1usize << k;
    'value: for value in 0..=table.rank(bit as u32) {
        for mask in bit..bit << 1 {
            let s = sums[mask ^ bit] + value;
            if s > table.rank(mask as u32) {
                // larger values only make this worse
                break 'value;
            }
            sums[mask] = s;
        }
        u[k] = value;
        extend_member(table, k + 1, u, sums, out);
    }
}

/// `D / T`: ground set `0..m` minus `T` (relabelled in increasing order) with
/// rank `r(X ∪ T) - r(T)`.
pub fn contract(table: &RankTable, t: &IndexSet) -> Result<RankTable> {
    if let Some(&index) = t.iter().find(|&&i| i >= table.ground) {
        return Err(Error::IndexOutOfRange {
            index,
            universe: table.ground,
        });
    }
    let t_mask = mask_of(t);
    let rest = t.complement(table.ground);
    let base = table.rank(t_mask);
    RankTable::from_fn(rest.len(), |local| {
        let original = rest
            .iter()
            .enumerate()
            .filter(|(j, _)| local >> j & 1 == 1)
            .fold(0u32, |acc, (_, &e)| acc | 1 << e);
        table.rank(original | t_mask) - base
    })
}

/// Positions of `set` inside the ground set left after removing `removed`.
fn relabel(set: &IndexSet, removed: &IndexSet, ground: usize) -> IndexSet {
    let rest = removed.complement(ground);
    IndexSet::from_sorted_unchecked(
        set.iter()
            .map(|e| rest.binary_search(e).expect("disjoint"))
            .collect(),
    )
}

/// Whether `(D/T1)/T2`, `(D/T2)/T1` and `D/(T1 ∪ T2)` coincide.
pub fn contract_commutes_check(table: &RankTable, t1: &IndexSet, t2: &IndexSet) -> Result<bool> {
    if !t1.is_disjoint(t2) {
        return Err(Error::OverlappingSets);
    }
    let m = table.ground;
    let one_then_two = contract(&contract(table, t1)?, &relabel(t2, t1, m))?;
    let two_then_one = contract(&contract(table, t2)?, &relabel(t1, t2, m))?;
    let both = contract(table, &t1.union(t2))?;
    Ok(one_then_two == both && two_then_one == both)
}
