//! Elementary cellular automata: rule tables, lattice configurations,
//! one-step evolution, Boolean derivatives and rule symmetries.

mod config;
mod rule;
mod symmetry;

pub use config::{local_derivative, step, Boundary, Configuration, Neighbour};
pub use rule::{complement_rule, reflect_rule, rule_from_number, RuleTable, CENTER, LEFT, RIGHT};
pub use symmetry::{minimal_rule_numbers, minimal_rules, RuleEquivalenceClass};
