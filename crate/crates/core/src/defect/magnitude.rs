//! Non-negative defect-count magnitudes.
//!
//! Counts grow like `3^T`, so two representations share one contract:
//! exact big integers for ground truth, and natural logarithms for long runs.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Exact,
    #[default]
    LogDomain,
}

impl std::str::FromStr for Backend {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "log" | "log_domain" | "log-domain" => Ok(Self::LogDomain),
            other => Err(crate::Error::InvalidConfig(format!("unknown backend '{other}'"))),
        }
    }
}

pub trait Magnitude: Clone + Debug + PartialEq + Send + Sync + 'static {
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_count(n: u64) -> Self;
    fn is_zero(&self) -> bool;
    /// Sum of the given magnitudes; the empty sum is zero.
    fn sum<'a>(terms: impl IntoIterator<Item = &'a Self>) -> Self;
    /// Natural logarithm; `-inf` for zero.
    fn ln(&self) -> f64;
    /// Logarithm in an arbitrary base.
    fn log(&self, base: f64) -> f64 {
        self.ln() / base.ln()
    }
}

impl Magnitude for BigUint {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        BigUint::from(1u8)
    }

    fn from_count(n: u64) -> Self {
        BigUint::from(n)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sum<'a>(terms: impl IntoIterator<Item = &'a Self>) -> Self {
        terms.into_iter().fold(<BigUint as Zero>::zero(), |acc, x| acc + x)
    }

    fn ln(&self) -> f64 {
        ln_biguint(self)
    }

    fn log(&self, base: f64) -> f64 {
        log_biguint(self, base)
    }
}

/// Natural logarithm of a big integer, `-inf` for zero.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let (mantissa, shift) = split_biguint(n);
    if mantissa == 0.0 {
        return f64::NEG_INFINITY;
    }
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Logarithm in `base`, computed without going through the natural log so
/// that base-independence of normalized quantities can be checked.
pub fn log_biguint(n: &BigUint, base: f64) -> f64 {
    let (mantissa, shift) = split_biguint(n);
    if mantissa == 0.0 {
        return f64::NEG_INFINITY;
    }
    if base == 2.0 {
        return mantissa.log2() + shift as f64;
    }
    if base == 10.0 {
        return mantissa.log10() + shift as f64 * std::f64::consts::LOG10_2;
    }
    mantissa.log(base) + shift as f64 * 2f64.log(base)
}

// n = mantissa * 2^shift with the mantissa exactly representable up to f64 rounding.
fn split_biguint(n: &BigUint) -> (f64, u64) {
    let bits = n.bits();
    if bits <= 1000 {
        (n.to_f64().unwrap_or(f64::INFINITY), 0)
    } else {
        let shift = bits - 64;
        ((n >> shift).to_f64().expect("64-bit value fits"), shift)
    }
}

/// A count stored as its natural logarithm.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LogCount(pub f64);

/// The zero count. Absorbing under products, identity under sums.
pub const NEG_INF: LogCount = LogCount(f64::NEG_INFINITY);

impl LogCount {
    pub fn is_neg_inf(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// `ln(Σ exp(x))` over the given log-magnitudes, with `-inf` as the empty sum.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for &x in terms {
        if x != f64::NEG_INFINITY {
            acc += (x - max).exp();
        }
    }
    max + acc.ln()
}

impl Magnitude for LogCount {
    const BACKEND: Backend = Backend::LogDomain;

    fn zero() -> Self {
        NEG_INF
    }

    fn one() -> Self {
        LogCount(0.0)
    }

    fn from_count(n: u64) -> Self {
        LogCount((n as f64).ln())
    }

    fn is_zero(&self) -> bool {
        self.is_neg_inf()
    }

    fn sum<'a>(terms: impl IntoIterator<Item = &'a Self>) -> Self {
        // At most three terms per propagation step; avoid allocating for those.
        let mut small = [f64::NEG_INFINITY; 3];
        let mut spill = Vec::new();
        for (k, t) in terms.into_iter().enumerate() {
            if k < 3 {
                small[k] = t.0;
            } else {
                if spill.is_empty() {
                    spill.extend_from_slice(&small);
                }
                spill.push(t.0);
            }
        }
        if spill.is_empty() {
            LogCount(log_sum_exp(&small))
        } else {
            LogCount(log_sum_exp(&spill))
        }
    }

    fn ln(&self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn log_sum_exp_identities() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY, f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY, 1.5]), 1.5);
        let v = log_sum_exp(&[0.0, 0.0, 0.0]);
        assert!((v - 3f64.ln()).abs() < 1e-15);
        // Large magnitudes stay finite.
        let v = log_sum_exp(&[1234.0, 1232.0]);
        assert!((v - (1232.0 + (2f64.exp() + 1.0).ln())).abs() < 1e-12);
    }

    #[test]
    fn sum_handles_more_than_three_terms() {
        let terms = vec![LogCount(0.0); 5];
        assert!((LogCount::sum(&terms).0 - 5f64.ln()).abs() < 1e-15);
        let big: Vec<BigUint> = (1..=5u32).map(BigUint::from).collect();
        assert_eq!(BigUint::sum(&big), BigUint::from(15u32));
    }

    #[test]
    fn zero_conventions() {
        assert!(<LogCount as Magnitude>::zero().is_zero());
        assert!(Magnitude::is_zero(&<BigUint as Magnitude>::zero()));
        assert_eq!(<BigUint as Magnitude>::zero().ln(), f64::NEG_INFINITY);
        assert_eq!(LogCount::one().ln(), 0.0);
    }

    #[test]
    fn big_ln_matches_exact_powers() {
        let three = BigUint::from(3u8);
        for t in [1u32, 10, 100, 1000, 5000] {
            let n: BigUint = three.clone().pow(t);
            let expected = f64::from(t) * 3f64.ln();
            assert!(
                (ln_biguint(&n) - expected).abs() <= 1e-12 * expected.max(1.0),
                "t = {t}"
            );
            let expected2 = f64::from(t) * 3f64.log2();
            assert!((log_biguint(&n, 2.0) - expected2).abs() <= 1e-12 * expected2.max(1.0));
        }
        assert_eq!(ln_biguint(&BigUint::from(1u8)), 0.0);
    }
}
