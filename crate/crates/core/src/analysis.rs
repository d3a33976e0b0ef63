//! Regularity, projective dimension and extremal Betti numbers of a table.

use serde::Serialize;

use crate::table::BettiTable;

/// `reg(S/I)`: the largest strand with a nonzero entry.
pub fn regularity(t: &BettiTable) -> usize {
    t.max_strand()
}

/// `projdim(S/I)`: the largest homological degree with a nonzero entry.
pub fn projective_dimension(t: &BettiTable) -> usize {
    t.max_degree()
}

/// One extremal Betti number `β_{i,i+j} = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalBetti {
    pub i: usize,
    pub j: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    /// Sorted by increasing `i`, hence decreasing `j`.
    pub positions: Vec<ExtremalBetti>,
    pub regularity: usize,
    pub projective_dimension: usize,
    /// `positions.len() == 1`.
    pub unique: bool,
}

impl ExtremalReport {
    pub fn count(&self) -> usize {
        self.positions.len()
    }

    pub fn coordinates(&self) -> Vec<(usize, usize)> {
        self.positions.iter().map(|e| (e.i, e.j)).collect()
    }
}

/// Entries `β_{i,i+j}` such that no other nonzero `β_{k,k+l}` has `k >= i`
/// and `l >= j`.
///
/// `(0, 0)` is only reported for the table of the zero ideal, where it is
/// the sole entry.
pub fn extremal_positions(t: &BettiTable) -> ExtremalReport {
    let support: Vec<(usize, usize, u64)> = t.entries().collect();
    let candidates: Vec<&(usize, usize, u64)> = if support.len() > 1 {
        support.iter().filter(|&&(i, j, _)| (i, j) != (0, 0)).collect()
    } else {
        support.iter().collect()
    };
    let mut positions: Vec<ExtremalBetti> = candidates
        .iter()
        .filter(|&&&(i, j, _)| {
            !candidates
                .iter()
                .any(|&&(k, l, _)| (k, l) != (i, j) && k >= i && l >= j)
        })
        .map(|&&(i, j, value)| ExtremalBetti { i, j, value })
        .collect();
    positions.sort_by_key(|e| e.i);
    ExtremalReport {
        unique: positions.len() == 1,
        positions,
        regularity: regularity(t),
        projective_dimension: projective_dimension(t),
    }
}

/// Whether the table has exactly one extremal Betti number, with the corner
/// `(p, r) = (projdim, reg)` as witness when `β_{p,p+r} != 0`.
///
/// A single extremal number is the same as `β_{p,p+r} != 0`; both sides are
/// computed independently and checked against each other.
pub fn has_unique_extremal(t: &BettiTable) -> (bool, Option<(usize, usize)>) {
    let report = extremal_positions(t);
    let corner = (report.projective_dimension, report.regularity);
    let witness = (t.get(corner.0, corner.1) != 0).then_some(corner);
    debug_assert_eq!(report.unique, witness.is_some(), "unique-extremal equivalence broken");
    (report.unique, witness)
}
