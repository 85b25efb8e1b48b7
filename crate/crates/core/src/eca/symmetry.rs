use std::collections::BTreeSet;

use serde::Serialize;

use super::rule::RuleTable;

/// Orbit of a rule under reflection and complementation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleEquivalenceClass {
    pub members: BTreeSet<u8>,
    pub minimal_representative: u8,
}

impl RuleEquivalenceClass {
    pub fn of(rule: u8) -> Self {
        let r = RuleTable::from_wolfram(rule);
        let members: BTreeSet<u8> = [r, r.reflect(), r.complement(), r.reflect().complement()]
            .iter()
            .map(RuleTable::wolfram_number)
            .collect();
        let minimal_representative = *members.first().expect("orbit contains the rule itself");
        Self {
            members,
            minimal_representative,
        }
    }

    pub fn contains(&self, rule: u8) -> bool {
        self.members.contains(&rule)
    }
}

/// The equivalence classes of all 256 rules, ordered by minimal representative.
pub fn minimal_rules() -> Vec<RuleEquivalenceClass> {
    (0..=255u8)
        .map(RuleEquivalenceClass::of)
        .enumerate()
        .filter(|(n, class)| usize::from(class.minimal_representative) == *n)
        .map(|(_, class)| class)
        .collect()
}

/// Minimal representatives of the 88 classes, ascending.
pub fn minimal_rule_numbers() -> Vec<u8> {
    minimal_rules().iter().map(|c| c.minimal_representative).collect()
}
