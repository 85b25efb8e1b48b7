use std::fmt;

use crate::error::{Error, Result};

/// Bit weights of the three neighbourhood slots in a pattern index `4l + 2c + r`.
pub const LEFT: u8 = 0b100;
pub const CENTER: u8 = 0b010;
pub const RIGHT: u8 = 0b001;

/// Truth table of an elementary CA rule, indexed by the neighbourhood
/// pattern `4l + 2c + r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleTable {
    table: [u8; 8],
}

impl RuleTable {
    pub fn from_number(n: i64) -> Result<Self> {
        let n = u8::try_from(n).map_err(|_| Error::RuleOutOfRange(n))?;
        Ok(Self::from_wolfram(n))
    }

    pub const fn from_wolfram(n: u8) -> Self {
        let mut table = [0u8; 8];
        let mut k = 0;
        while k < 8 {
            table[k] = (n >> k) & 1;
            k += 1;
        }
        Self { table }
    }

    pub fn wolfram_number(&self) -> u8 {
        self.table
            .iter()
            .enumerate()
            .fold(0u8, |acc, (k, &bit)| acc | (bit << k))
    }

    pub fn table(&self) -> &[u8; 8] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, l: u8, c: u8, r: u8) -> u8 {
        self.table[usize::from((l << 2) | (c << 1) | r)]
    }

    #[inline]
    pub fn output(&self, pattern: u8) -> u8 {
        self.table[usize::from(pattern & 7)]
    }

    /// Slots of `pattern` whose flip changes the output, as a mask of
    /// [`LEFT`], [`CENTER`] and [`RIGHT`].
    #[inline]
    pub fn sensitivity(&self, pattern: u8) -> u8 {
        let out = self.output(pattern);
        [LEFT, CENTER, RIGHT]
            .into_iter()
            .filter(|&slot| self.output(pattern ^ slot) != out)
            .fold(0, |acc, slot| acc | slot)
    }

    /// Left-right mirror image of the rule.
    pub fn reflect(&self) -> Self {
        let mut table = [0u8; 8];
        for (p, out) in table.iter_mut().enumerate() {
            let p = p as u8;
            let mirrored = ((p & LEFT) >> 2) | (p & CENTER) | ((p & RIGHT) << 2);
            *out = self.output(mirrored);
        }
        Self { table }
    }

    /// Rule obtained by exchanging the roles of the states 0 and 1.
    pub fn complement(&self) -> Self {
        let mut table = [0u8; 8];
        for (p, out) in table.iter_mut().enumerate() {
            *out = 1 - self.output(!(p as u8) & 7);
        }
        Self { table }
    }
}

impl fmt::Debug for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleTable({})", self.wolfram_number())
    }
}

impl fmt::Display for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.wolfram_number())
    }
}

impl From<u8> for RuleTable {
    fn from(n: u8) -> Self {
        Self::from_wolfram(n)
    }
}

pub fn rule_from_number(n: i64) -> Result<RuleTable> {
    RuleTable::from_number(n)
}

pub fn reflect_rule(rule: &RuleTable) -> RuleTable {
    rule.reflect()
}

pub fn complement_rule(rule: &RuleTable) -> RuleTable {
    rule.complement()
}
