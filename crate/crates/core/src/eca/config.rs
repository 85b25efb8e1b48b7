use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rule::{RuleTable, CENTER, LEFT, RIGHT};
use crate::error::{Error, Result};

/// How missing neighbours of the two edge cells are supplied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    #[default]
    FixedZero,
    FixedOne,
    Periodic,
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "fixed_zero" | "fixed-zero" => Ok(Self::FixedZero),
            "one" | "fixed_one" | "fixed-one" => Ok(Self::FixedOne),
            "periodic" => Ok(Self::Periodic),
            other => Err(Error::InvalidConfig(format!("unknown boundary policy '{other}'"))),
        }
    }
}

/// A neighbour slot of some cell: either another lattice cell or a ghost
/// value supplied by a fixed boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighbour {
    Cell(usize),
    Ghost(u8),
}

/// Lattice state at one time step.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    cells: Vec<u8>,
    boundary: Boundary,
}

impl Configuration {
    pub fn new(cells: Vec<u8>, boundary: Boundary) -> Result<Self> {
        if cells.len() < 3 {
            return Err(Error::WidthTooSmall(cells.len()));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c > 1) {
            return Err(Error::InvalidCell(bad));
        }
        Ok(Self { cells, boundary })
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bits(bits: &str, boundary: Boundary) -> Result<Self> {
        let cells = bits
            .bytes()
            .map(|b| match b {
                b'0' => Ok(0),
                b'1' => Ok(1),
                other => Err(Error::InvalidCell(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cells, boundary)
    }

    pub fn zeros(width: usize, boundary: Boundary) -> Result<Self> {
        Self::new(vec![0; width], boundary)
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn get(&self, i: usize) -> u8 {
        self.cells[i]
    }

    pub fn to_bits(&self) -> String {
        self.cells.iter().map(|&c| if c == 1 { '1' } else { '0' }).collect()
    }

    /// Copy of the configuration with cell `i` flipped.
    pub fn flipped(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.cells[i] ^= 1;
        out
    }

    pub fn left_of(&self, i: usize) -> Neighbour {
        if i > 0 {
            Neighbour::Cell(i - 1)
        } else {
            match self.boundary {
                Boundary::FixedZero => Neighbour::Ghost(0),
                Boundary::FixedOne => Neighbour::Ghost(1),
                Boundary::Periodic => Neighbour::Cell(self.width() - 1),
            }
        }
    }

    pub fn right_of(&self, i: usize) -> Neighbour {
        if i + 1 < self.width() {
            Neighbour::Cell(i + 1)
        } else {
            match self.boundary {
                Boundary::FixedZero => Neighbour::Ghost(0),
                Boundary::FixedOne => Neighbour::Ghost(1),
                Boundary::Periodic => Neighbour::Cell(0),
            }
        }
    }

    fn value(&self, n: Neighbour) -> u8 {
        match n {
            Neighbour::Cell(j) => self.cells[j],
            Neighbour::Ghost(v) => v,
        }
    }

    /// Neighbourhood pattern `4l + 2c + r` of cell `i`.
    #[inline]
    pub fn pattern(&self, i: usize) -> u8 {
        let l = self.value(self.left_of(i));
        let r = self.value(self.right_of(i));
        (l << 2) | (self.cells[i] << 1) | r
    }

    /// Slot of `source` within the neighbourhood of `target`, if any.
    pub fn slot_of(&self, target: usize, source: usize) -> Option<u8> {
        if source == target {
            Some(CENTER)
        } else if self.left_of(target) == Neighbour::Cell(source) {
            Some(LEFT)
        } else if self.right_of(target) == Neighbour::Cell(source) {
            Some(RIGHT)
        } else {
            None
        }
    }

    pub fn reflected(&self) -> Self {
        let mut cells = self.cells.clone();
        cells.reverse();
        Self {
            cells,
            boundary: self.boundary,
        }
    }

    /// Bitwise complement; fixed boundaries swap their ghost value too.
    pub fn complemented(&self) -> Self {
        let boundary = match self.boundary {
            Boundary::FixedZero => Boundary::FixedOne,
            Boundary::FixedOne => Boundary::FixedZero,
            Boundary::Periodic => Boundary::Periodic,
        };
        Self {
            cells: self.cells.iter().map(|c| c ^ 1).collect(),
            boundary,
        }
    }

    pub fn ones(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 1).count()
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({:?}, {})", self.boundary, self.to_bits())
    }
}

/// Advances `config` by one time step under `rule`.
pub fn step(rule: &RuleTable, config: &Configuration) -> Configuration {
    let n = config.width();
    let cells = &config.cells;
    let mut next = Vec::with_capacity(n);
    let (lo, hi) = match config.boundary {
        Boundary::FixedZero => (0, 0),
        Boundary::FixedOne => (1, 1),
        Boundary::Periodic => (cells[n - 1], cells[0]),
    };
    next.push(rule.apply(lo, cells[0], cells[1]));
    next.extend(cells.windows(3).map(|w| rule.apply(w[0], w[1], w[2])));
    next.push(rule.apply(cells[n - 2], cells[n - 1], hi));
    Configuration {
        cells: next,
        boundary: config.boundary,
    }
}

/// One-step Boolean derivative of cell `target` at `t + 1` with respect to
/// cell `source` at `t`.
pub fn local_derivative(rule: &RuleTable, config: &Configuration, target: usize, source: usize) -> Result<u8> {
    let width = config.width();
    for index in [target, source] {
        if index >= width {
            return Err(Error::PositionOutOfRange { index, width });
        }
    }
    let slot = config
        .slot_of(target, source)
        .ok_or(Error::NotNeighbours { target, cell: source })?;
    Ok(u8::from(rule.sensitivity(config.pattern(target)) & slot != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rule(n: u8) -> RuleTable {
        RuleTable::from_wolfram(n)
    }

    #[test]
    fn step_examples() {
        let c = Configuration::from_bits("01101", Boundary::FixedZero).unwrap();
        assert_eq!(step(&rule(0), &c).to_bits(), "00000");
        assert_eq!(step(&rule(204), &c).to_bits(), "01101");
        let c = Configuration::from_bits("00100", Boundary::FixedZero).unwrap();
        assert_eq!(step(&rule(90), &c).to_bits(), "01010");
    }

    #[test]
    fn boundaries_supply_ghosts() {
        let c = Configuration::from_bits("000", Boundary::FixedOne).unwrap();
        // rule 90: l xor r; edges see a ghost 1 on one side.
        assert_eq!(step(&rule(90), &c).to_bits(), "101");
        let c = Configuration::from_bits("1000", Boundary::Periodic).unwrap();
        assert_eq!(step(&rule(90), &c).to_bits(), "0101");
    }

    #[test]
    fn too_narrow_or_invalid_configs_are_rejected() {
        assert!(matches!(
            Configuration::from_bits("01", Boundary::FixedZero),
            Err(Error::WidthTooSmall(2))
        ));
        assert!(Configuration::new(vec![0, 2, 1], Boundary::FixedZero).is_err());
    }

    #[test]
    fn derivative_examples() {
        let c = Configuration::from_bits("0110100111", Boundary::FixedZero).unwrap();
        for t in 0..c.width() {
            assert_eq!(local_derivative(&rule(90), &c, t, t).unwrap(), 0);
            assert_eq!(local_derivative(&rule(204), &c, t, t).unwrap(), 1);
            for s in [t.wrapping_sub(1), t + 1] {
                if s < c.width() {
                    assert_eq!(local_derivative(&rule(204), &c, t, s).unwrap(), 0);
                    assert_eq!(local_derivative(&rule(150), &c, t, s).unwrap(), 1);
                }
            }
            assert_eq!(local_derivative(&rule(150), &c, t, t).unwrap(), 1);
        }
    }

    #[test]
    fn derivative_outside_neighbourhood_is_rejected() {
        let c = Configuration::zeros(8, Boundary::FixedZero).unwrap();
        assert!(matches!(
            local_derivative(&rule(150), &c, 2, 5),
            Err(Error::NotNeighbours { .. })
        ));
        // Edge cells are neighbours only under periodic wrap.
        assert!(local_derivative(&rule(150), &c, 0, 7).is_err());
        let p = Configuration::zeros(8, Boundary::Periodic).unwrap();
        assert_eq!(local_derivative(&rule(150), &p, 0, 7).unwrap(), 1);
    }

    #[test]
    fn derivative_is_flip_and_compare_exhaustively() {
        // Every rule, every neighbourhood of the middle cell of a 5-cell lattice.
        for n in 0..=255u8 {
            let r = rule(n);
            for p in 0..8u8 {
                let bits = format!("0{}{}{}0", p >> 2 & 1, p >> 1 & 1, p & 1);
                let c = Configuration::from_bits(&bits, Boundary::FixedZero).unwrap();
                let base = step(&r, &c).get(2);
                for source in 1..=3 {
                    let flipped = step(&r, &c.flipped(source)).get(2);
                    let expected = u8::from(base != flipped);
                    assert_eq!(local_derivative(&r, &c, 2, source).unwrap(), expected);
                }
            }
        }
    }

    fn config_strategy() -> impl Strategy<Value = (Vec<u8>, Boundary)> {
        (
            prop::collection::vec(0u8..=1, 3..=32),
            prop_oneof![
                Just(Boundary::FixedZero),
                Just(Boundary::FixedOne),
                Just(Boundary::Periodic)
            ],
        )
    }

    proptest! {
        #[test]
        fn step_commutes_with_reflection(n in 0u8..=255, (cells, boundary) in config_strategy()) {
            let c = Configuration::new(cells, boundary).unwrap();
            let r = rule(n);
            prop_assert_eq!(step(&r.reflect(), &c.reflected()), step(&r, &c).reflected());
        }

        #[test]
        fn step_commutes_with_complement(n in 0u8..=255, (cells, boundary) in config_strategy()) {
            let c = Configuration::new(cells, boundary).unwrap();
            let r = rule(n);
            prop_assert_eq!(step(&r.complement(), &c.complemented()), step(&r, &c).complemented());
        }

        #[test]
        fn step_preserves_width_and_boundary(n in 0u8..=255, (cells, boundary) in config_strategy()) {
            let c = Configuration::new(cells, boundary).unwrap();
            let next = step(&rule(n), &c);
            prop_assert_eq!(next.width(), c.width());
            prop_assert_eq!(next.boundary(), c.boundary());
            prop_assert!(next.cells().iter().all(|&b| b <= 1));
        }
    }
}
