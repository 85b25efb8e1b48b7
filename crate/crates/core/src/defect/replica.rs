//! Literal replica procedure: flip each defective cell in a copy of the
//! reference, evolve both one step, and count every cell where they differ.
//!
//! Uses nothing but [`step`], so it serves as an independent check of the
//! Jacobian recurrence in [`super::propagate`]. Cost is one full lattice
//! step per defective cell, so keep `T` small.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::propagate::propagate_step;
use super::vector::DefectVector;
use crate::eca::{step, Configuration, RuleTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ReplicaState {
    reference: Configuration,
    defects: BTreeMap<usize, BigUint>,
    time: u64,
}

impl ReplicaState {
    pub fn new(reference: Configuration, defects: BTreeMap<usize, BigUint>) -> Result<Self> {
        let width = reference.width();
        if let Some(&index) = defects.keys().find(|&&i| i >= width) {
            return Err(Error::PositionOutOfRange { index, width });
        }
        let defects = defects.into_iter().filter(|(_, m)| *m != BigUint::from(0u8)).collect();
        Ok(Self {
            reference,
            defects,
            time: 0,
        })
    }

    pub fn single(reference: Configuration, position: usize) -> Result<Self> {
        Self::new(reference, BTreeMap::from([(position, BigUint::from(1u8))]))
    }

    pub fn reference(&self) -> &Configuration {
        &self.reference
    }

    pub fn defects(&self) -> &BTreeMap<usize, BigUint> {
        &self.defects
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn total(&self) -> BigUint {
        self.defects.values().sum()
    }

    /// Dense per-cell multiplicities.
    pub fn to_defect_vector(&self) -> DefectVector<BigUint> {
        let mut counts = vec![BigUint::from(0u8); self.reference.width()];
        for (&i, m) in &self.defects {
            counts[i] = m.clone();
        }
        DefectVector::from_counts(counts, self.time)
    }
}

pub fn replica_oracle_step(rule: &RuleTable, state: &ReplicaState) -> ReplicaState {
    let next_reference = step(rule, &state.reference);
    let mut next: BTreeMap<usize, BigUint> = BTreeMap::new();
    for (&i, multiplicity) in &state.defects {
        let replica = step(rule, &state.reference.flipped(i));
        let differing = replica
            .cells()
            .iter()
            .zip(next_reference.cells())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(j, _)| j);
        for j in differing {
            *next.entry(j).or_default() += multiplicity;
        }
    }
    ReplicaState {
        reference: next_reference,
        defects: next,
        time: state.time + 1,
    }
}

/// Runs the replica procedure and the Jacobian recurrence side by side from
/// a single defect at `position`. Returns the first step at which their
/// per-cell counts differ, or `None` if they agree for all `steps`.
pub fn first_replica_mismatch(
    rule: &RuleTable,
    initial: &Configuration,
    position: usize,
    steps: u64,
) -> Result<Option<u64>> {
    let mut replica = ReplicaState::single(initial.clone(), position)?;
    let mut reference = initial.clone();
    let mut counts = DefectVector::<BigUint>::single(initial.width(), position)?;
    for t in 1..=steps {
        replica = replica_oracle_step(rule, &replica);
        counts = propagate_step(rule, &reference, &counts)?;
        reference = step(rule, &reference);
        if replica.to_defect_vector().counts() != counts.counts() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eca::Boundary;

    #[test]
    fn rule_150_spreads_to_three_cells() {
        let c = Configuration::from_bits("0110100110", Boundary::FixedZero).unwrap();
        let s = ReplicaState::single(c, 4).unwrap();
        let s1 = replica_oracle_step(&RuleTable::from_wolfram(150), &s);
        let expected: BTreeMap<usize, BigUint> = [3, 4, 5].into_iter().map(|i| (i, BigUint::from(1u8))).collect();
        assert_eq!(s1.defects(), &expected);
        assert_eq!(s1.time(), 1);
    }

    #[test]
    fn rule_0_erases_everything() {
        let c = Configuration::from_bits("0110100110", Boundary::Periodic).unwrap();
        let multiset = BTreeMap::from([(1, BigUint::from(4u8)), (7, BigUint::from(2u8))]);
        let s = ReplicaState::new(c, multiset).unwrap();
        assert!(replica_oracle_step(&RuleTable::from_wolfram(0), &s)
            .defects()
            .is_empty());
    }

    #[test]
    fn out_of_range_positions_are_rejected() {
        let c = Configuration::zeros(5, Boundary::FixedZero).unwrap();
        assert!(ReplicaState::single(c, 5).is_err());
    }
}
