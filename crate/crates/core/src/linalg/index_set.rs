use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Strictly increasing 0-based indices into rows, columns, or a ground set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates that `indices` is strictly increasing and below `universe`.
    pub fn new(indices: Vec<usize>, universe: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet);
        }
        if let Some(&index) = indices.iter().find(|&&i| i >= universe) {
            return Err(Error::IndexOutOfRange { index, universe });
        }
        Ok(IndexSet(indices))
    }

    /// Sorts and deduplicates before validating the universe bound.
    pub fn from_unsorted(mut indices: Vec<usize>, universe: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices, universe)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn range(range: std::ops::Range<usize>) -> Self {
        IndexSet(range.collect())
    }

    pub fn singleton(index: usize) -> Self {
        IndexSet(vec![index])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// `0..universe` minus `self`.
    pub fn complement(&self, universe: usize) -> IndexSet {
        IndexSet((0..universe).filter(|i| !self.contains(*i)).collect())
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(
            self.0
                .iter()
                .copied()
                .filter(|i| !other.contains(*i))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|i| !other.contains(*i))
    }

    /// Indices shifted by `offset`, e.g. error positions mapped into a ground set.
    pub fn shifted(&self, offset: usize) -> IndexSet {
        IndexSet(self.0.iter().map(|i| i + offset).collect())
    }

    /// 1-based view used by every file format and CLI message.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet(indices)
    }
}

impl Deref for IndexSet {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(IndexSet::new(vec![0, 2, 5], 6).is_ok());
        assert_eq!(IndexSet::new(vec![2, 2], 6), Err(Error::UnsortedIndexSet));
        assert_eq!(IndexSet::new(vec![3, 1], 6), Err(Error::UnsortedIndexSet));
        assert_eq!(
            IndexSet::new(vec![1, 6], 6),
            Err(Error::IndexOutOfRange {
                index: 6,
                universe: 6
            })
        );
        assert_eq!(
            IndexSet::from_unsorted(vec![4, 1, 4], 5)
                .unwrap()
                .as_slice(),
            &[1, 4]
        );
    }

    #[test]
    fn set_algebra() {
        let a = IndexSet::new(vec![0, 2], 4).unwrap();
        let b = IndexSet::new(vec![2, 3], 4).unwrap();
        assert_eq!(a.complement(4).as_slice(), &[1, 3]);
        assert_eq!(a.union(&b).as_slice(), &[0, 2, 3]);
        assert_eq!(a.difference(&b).as_slice(), &[0]);
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.shifted(3).as_slice(), &[3, 5]);
        assert_eq!(a.one_based(), vec![1, 3]);
    }
}
