//! Ordered, duplicate-free sets of column identifiers.

use std::fmt;
use std::hash::{Hash, Hasher};

/// 0-based column index; a table with `N` columns reserves id `N` for the
/// hypothetical rowid column.
pub type ColumnId = usize;

/// An ordered, duplicate-free set of column ids.
///
/// Equality and hashing use set semantics (order is irrelevant), while the
/// insertion order is preserved for reporting.
#[derive(Clone, Debug, Default)]
pub struct ColumnSet {
    ids: Vec<ColumnId>,
}

impl ColumnSet {
    pub fn new() -> Self {
        ColumnSet { ids: Vec::new() }
    }

    pub fn single(id: ColumnId) -> Self {
        ColumnSet { ids: vec![id] }
    }

    /// Builds a set from ids, keeping the first occurrence of each.
    pub fn from_ids<I: IntoIterator<Item = ColumnId>>(ids: I) -> Self {
        let mut set = ColumnSet::new();
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: ColumnId) -> bool {
        self.ids.contains(&id)
    }

    /// Appends `id` unless already present; returns whether it was added.
    pub fn insert(&mut self, id: ColumnId) -> bool {
        if self.contains(id) {
            false
        } else {
            self.ids.push(id);
            true
        }
    }

    /// A copy of this set with `id` appended (no-op when present).
    pub fn with(&self, id: ColumnId) -> Self {
        let mut out = self.clone();
        out.insert(id);
        out
    }

    /// A copy of this set with `id` removed.
    pub fn without(&self, id: ColumnId) -> Self {
        ColumnSet {
            ids: self.ids.iter().copied().filter(|&x| x != id).collect(),
        }
    }

    pub fn union(&self, other: &ColumnSet) -> Self {
        let mut out = self.clone();
        for &id in &other.ids {
            out.insert(id);
        }
        out
    }

    /// Elements of `self` not present in `other`, in insertion order.
    pub fn difference(&self, other: &ColumnSet) -> Self {
        ColumnSet {
            ids: self
                .ids
                .iter()
                .copied()
                .filter(|&x| !other.contains(x))
                .collect(),
        }
    }

    pub fn intersects(&self, other: &ColumnSet) -> bool {
        self.ids.iter().any(|&x| other.contains(x))
    }

    pub fn is_subset_of(&self, other: &ColumnSet) -> bool {
        self.ids.iter().all(|&x| other.contains(x))
    }

    pub fn ids(&self) -> &[ColumnId] {
        &self.ids
    }

    pub fn iter(&self) -> impl Iterator<Item = ColumnId> + '_ {
        self.ids.iter().copied()
    }

    pub fn sorted_ids(&self) -> Vec<ColumnId> {
        let mut v = self.ids.clone();
        v.sort_unstable();
        v
    }

    /// Reverses the insertion order (set content unchanged).
    pub fn reversed(&self) -> Self {
        ColumnSet {
            ids: self.ids.iter().rev().copied().collect(),
        }
    }
}

impl PartialEq for ColumnSet {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_ids() == other.sorted_ids()
    }
}

impl Eq for ColumnSet {}

impl Hash for ColumnSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sorted_ids().hash(state);
    }
}

impl PartialOrd for ColumnSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then lexicographically on sorted ids.
impl Ord for ColumnSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.sorted_ids()).cmp(&(other.len(), other.sorted_ids()))
    }
}

impl FromIterator<ColumnId> for ColumnSet {
    fn from_iter<I: IntoIterator<Item = ColumnId>>(iter: I) -> Self {
        ColumnSet::from_ids(iter)
    }
}

impl From<&[ColumnId]> for ColumnSet {
    fn from(ids: &[ColumnId]) -> Self {
        ColumnSet::from_ids(ids.iter().copied())
    }
}

impl<const K: usize> From<[ColumnId; K]> for ColumnSet {
    fn from(ids: [ColumnId; K]) -> Self {
        ColumnSet::from_ids(ids)
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.ids.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn set_semantics_ignore_order() {
        let a = ColumnSet::from([1, 4, 6]);
        let b = ColumnSet::from([6, 1, 4]);
        assert_eq!(a, b);
        let mut seen = HashSet::new();
        seen.insert(a);
        assert!(seen.contains(&b));
    }

    #[test]
    fn insertion_order_preserved() {
        let mut s = ColumnSet::new();
        s.insert(9);
        s.insert(0);
        s.insert(9);
        assert_eq!(s.ids(), &[9, 0]);
        assert_eq!(s.reversed().ids(), &[0, 9]);
    }

    #[test]
    fn ordering_is_size_then_lex() {
        let small = ColumnSet::from([7]);
        let a = ColumnSet::from([2, 1]);
        let b = ColumnSet::from([1, 3]);
        assert!(small < a);
        assert!(a < b); // [1,2] < [1,3]
    }

    #[test]
    fn difference_and_subset() {
        let a = ColumnSet::from([0, 1, 2, 3]);
        let b = ColumnSet::from([1, 3]);
        assert_eq!(a.difference(&b).ids(), &[0, 2]);
        assert!(b.is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }
}
