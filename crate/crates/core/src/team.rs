//! Multiteams: multisets of assignments stored as multiplicity maps.

use std::collections::BTreeMap;

use crate::signature::Assignment;

/// A finite multiset of rows. Stored rows always have multiplicity >= 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multiteam {
    rows: BTreeMap<Assignment, u64>,
}

impl Multiteam {
    pub fn empty() -> Self {
        Multiteam::default()
    }

    /// Collects `(row, count)` pairs, summing counts of equal rows and
    /// dropping zero counts.
    pub fn from_rows<I: IntoIterator<Item = (Assignment, u64)>>(rows: I) -> Self {
        let mut team = Multiteam::empty();
        for (row, count) in rows {
            team.add(row, count);
        }
        team
    }

    /// Adds `count` copies of `row`; a zero count is a no-op.
    pub fn add(&mut self, row: Assignment, count: u64) {
        if count == 0 {
            return;
        }
        let slot = self.rows.entry(row).or_insert(0);
        *slot = slot.checked_add(count).expect("row multiplicity overflow");
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of rows, multiplicities included.
    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }

    /// Number of distinct rows.
    pub fn distinct(&self) -> usize {
        self.rows.len()
    }

    pub fn count(&self, row: &Assignment) -> u64 {
        self.rows.get(row).copied().unwrap_or(0)
    }

    /// Distinct rows with multiplicities, in ascending row order.
    pub fn iter(&self) -> impl Iterator<Item = (&Assignment, u64)> {
        self.rows.iter().map(|(row, &count)| (row, count))
    }

    pub fn support(&self) -> impl Iterator<Item = &Assignment> {
        self.rows.keys()
    }

    /// Multiplicity-wise inclusion.
    pub fn is_sub_of(&self, other: &Multiteam) -> bool {
        self.rows
            .iter()
            .all(|(row, &count)| count <= other.count(row))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    #[test]
    fn merges_duplicates_and_skips_zeros() {
        let sig = Signature::binary(&["A", "B"]).unwrap();
        let r0 = sig.mk_assignment(&[("A", "0"), ("B", "0")]).unwrap();
        let r1 = sig.mk_assignment(&[("A", "1"), ("B", "0")]).unwrap();
        let team = Multiteam::from_rows(vec![(r0.clone(), 2), (r1.clone(), 0), (r0.clone(), 3)]);
        assert_eq!(team.count(&r0), 5);
        assert_eq!(team.count(&r1), 0);
        assert_eq!(team.total(), 5);
        assert_eq!(team.distinct(), 1);
    }

    #[test]
    fn sub_multiteam_is_multiplicity_wise() {
        let sig = Signature::binary(&["A"]).unwrap();
        let r0 = sig.mk_assignment(&[("A", "0")]).unwrap();
        let r1 = sig.mk_assignment(&[("A", "1")]).unwrap();
        let small = Multiteam::from_rows(vec![(r0.clone(), 1)]);
        let big = Multiteam::from_rows(vec![(r0.clone(), 2), (r1.clone(), 1)]);
        assert!(small.is_sub_of(&big));
        assert!(!big.is_sub_of(&small));
        assert!(Multiteam::empty().is_sub_of(&small));
        let too_many = Multiteam::from_rows(vec![(r0, 3)]);
        assert!(!too_many.is_sub_of(&big));
    }
}
