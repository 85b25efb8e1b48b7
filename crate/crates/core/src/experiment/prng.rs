use crate::eca::{Boundary, Configuration};
use crate::error::{Error, Result};

/// SplitMix64. Fixed constants so every implementation reproduces the same
/// initial configurations from the same seed.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const INCREMENT: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::INCREMENT);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

impl Iterator for SplitMix64 {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_u64())
    }
}

/// Cell `i` is the lowest bit of the `(i + 1)`-th output.
pub fn random_configuration(width: usize, seed: u64, boundary: Boundary) -> Result<Configuration> {
    if width < 3 {
        return Err(Error::WidthTooSmall(width));
    }
    let cells = SplitMix64::new(seed).take(width).map(|x| (x & 1) as u8).collect();
    Configuration::new(cells, boundary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_outputs() {
        // Published SplitMix64 outputs for seed 0 and seed 1234567.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
        let mut r = SplitMix64::new(1_234_567);
        assert_eq!(r.next_u64(), 6_457_827_717_110_365_317);
        assert_eq!(r.next_u64(), 3_203_168_211_198_807_973);
    }

    #[test]
    fn configuration_is_deterministic() {
        let a = random_configuration(257, 42, Boundary::FixedZero).unwrap();
        let b = random_configuration(257, 42, Boundary::FixedZero).unwrap();
        assert_eq!(a, b);
        let expected: Vec<u8> = SplitMix64::new(42).take(257).map(|x| (x & 1) as u8).collect();
        assert_eq!(a.cells(), &expected[..]);
    }

    #[test]
    fn ones_fraction_is_near_half() {
        let c = random_configuration(10_000, 7, Boundary::FixedZero).unwrap();
        let frac = c.ones() as f64 / 10_000.0;
        assert!((frac - 0.5).abs() <= 0.02, "fraction {frac}");
    }

    #[test]
    fn different_seeds_differ() {
        for s in 0..100u64 {
            let a = random_configuration(64, s, Boundary::FixedZero).unwrap();
            let b = random_configuration(64, s + 1000, Boundary::FixedZero).unwrap();
            assert_ne!(a, b);
        }
    }

    #[test]
    fn narrow_widths_rejected() {
        assert!(matches!(
            random_configuration(2, 1, Boundary::FixedZero),
            Err(Error::WidthTooSmall(2))
        ));
    }
}
