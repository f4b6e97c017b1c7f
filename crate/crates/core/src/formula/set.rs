use fixedbitset::FixedBitSet;
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::SubId;

/// A set of subformulas of the goal, one bit per position of the goal universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaSet(FixedBitSet);

impl Hash for FormulaSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.as_slice().hash(state);
    }
}

impl FormulaSet {
    pub fn empty(width: usize) -> Self {
        FormulaSet(FixedBitSet::with_capacity(width))
    }

    pub fn from_iter<I: IntoIterator<Item = SubId>>(width: usize, items: I) -> Self {
        let mut s = Self::empty(width);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, f: SubId) {
        self.0.insert(f);
    }

    pub fn remove(&mut self, f: SubId) {
        self.0.set(f, false);
    }

    pub fn contains(&self, f: SubId) -> bool {
        self.0.contains(f)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubId> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &FormulaSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &FormulaSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &FormulaSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &FormulaSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &FormulaSet) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &FormulaSet) -> FormulaSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &FormulaSet) -> FormulaSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &FormulaSet) -> FormulaSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn with(&self, f: SubId) -> FormulaSet {
        let mut s = self.clone();
        s.insert(f);
        s
    }

    pub fn without(&self, f: SubId) -> FormulaSet {
        let mut s = self.clone();
        s.remove(f);
        s
    }
}

/// Lexicographic on the ascending member lists, so `{0} < {0,1} < {1}`.
impl Ord for FormulaSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for FormulaSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
