//! Trinomial coefficients `C2(T, k)`: the number of ways to pick steps in
//! `{-1, 0, +1}` over `T` rounds landing at offset `k`. Row `T` bounds
//! the per-cell defect counts after `T` steps.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::defect::ln_biguint;
use crate::error::{Error, Result};

/// Largest `T` accepted by [`max_lyapunov_closed_form`].
pub const CLOSED_FORM_MAX_STEPS: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialRow {
    steps: u64,
    coefficients: Vec<BigUint>,
}

impl TrinomialRow {
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Coefficients for `k = -T..=T`.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// `C2(T, k)`, zero outside `|k| <= T`.
    pub fn get(&self, k: i64) -> BigUint {
        let t = self.steps as i64;
        if k.abs() > t {
            BigUint::zero()
        } else {
            self.coefficients[(k + t) as usize].clone()
        }
    }

    pub fn central(&self) -> &BigUint {
        &self.coefficients[self.steps as usize]
    }

    pub fn sum(&self) -> BigUint {
        self.coefficients.iter().sum()
    }
}

/// Row `T` via `C2(T, k) = C2(T-1, k-1) + C2(T-1, k) + C2(T-1, k+1)`.
pub fn trinomial_row(steps: u64) -> TrinomialRow {
    let mut row = vec![BigUint::one()];
    for _ in 0..steps {
        let n = row.len();
        let mut next = vec![BigUint::zero(); n + 2];
        for (i, c) in row.iter().enumerate() {
            for out in &mut next[i..i + 3] {
                *out += c;
            }
        }
        row = next;
    }
    TrinomialRow {
        steps,
        coefficients: row,
    }
}

/// Central coefficients `C2(t, 0)` for `t = 0..=steps`, from the holonomic
/// recurrence `t a_t = (2t - 1) a_{t-1} + 3 (t - 1) a_{t-2}`.
pub fn central_trinomial_series(steps: u64) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(BigUint::one());
    if steps >= 1 {
        out.push(BigUint::one());
    }
    for t in 2..=steps {
        let k = t as usize;
        let num = &out[k - 1] * (2 * t - 1) + &out[k - 2] * (3 * (t - 1));
        debug_assert!((&num % t).is_zero());
        out.push(num / t);
    }
    out
}

pub fn central_trinomial(steps: u64) -> BigUint {
    central_trinomial_series(steps).pop().expect("series is never empty")
}

/// `(1/T) ln C2(T, 0)`: the largest finite-time exponent any ECA can reach.
pub fn max_lyapunov_bound(steps: u64) -> Result<f64> {
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    Ok(ln_biguint(&central_trinomial(steps)) / steps as f64)
}

/// Bounds for every `t = 1..=steps`; element `t - 1` holds the bound at `t`.
pub fn max_lyapunov_bound_series(steps: u64) -> Vec<f64> {
    central_trinomial_series(steps)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(t, c)| ln_biguint(c) / t as f64)
        .collect()
}

/// Evaluates `1 + T! * sum_{j=1}^{floor(T/2)} prod_{k<=j} k^-2 * prod_{k<=T-2j} k^-1`
/// in exact rationals.
pub fn closed_form_central_coefficient(steps: u64) -> Result<BigUint> {
    if steps == 0 || steps > CLOSED_FORM_MAX_STEPS {
        return Err(Error::UnsupportedSteps {
            got: steps,
            max: CLOSED_FORM_MAX_STEPS,
        });
    }
    // factorials[k] = k!
    let factorials: Vec<BigUint> = std::iter::once(BigUint::one())
        .chain((1..=steps).scan(BigUint::one(), |acc, k| {
            *acc *= k;
            Some(acc.clone())
        }))
        .collect();
    let mut inner = BigRational::zero();
    for j in 1..=steps / 2 {
        let j = j as usize;
        let denominator = &factorials[j] * &factorials[j] * &factorials[steps as usize - 2 * j];
        inner += BigRational::new(BigUint::one().into(), denominator.into());
    }
    let value = BigRational::one() + BigRational::from_integer(factorials[steps as usize].clone().into()) * inner;
    assert!(value.is_integer(), "closed form must evaluate to an integer");
    Ok(value.to_integer().to_biguint().expect("closed form is positive"))
}

/// The bound of [`max_lyapunov_bound`] evaluated through the closed form.
pub fn max_lyapunov_closed_form(steps: u64) -> Result<f64> {
    let c = closed_form_central_coefficient(steps)?;
    Ok(ln_biguint(&c) / steps as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    // Oracle: enumerate all 3^T step sequences.
    fn brute_force_row(t: u32) -> Vec<u64> {
        let mut row = vec![0u64; 2 * t as usize + 1];
        for code in 0..3u64.pow(t) {
            let mut c = code;
            let mut k = 0i64;
            for _ in 0..t {
                k += (c % 3) as i64 - 1;
                c /= 3;
            }
            row[(k + i64::from(t)) as usize] += 1;
        }
        row
    }

    fn as_u64(row: &TrinomialRow) -> Vec<u64> {
        row.coefficients().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn small_rows() {
        assert_eq!(as_u64(&trinomial_row(0)), [1]);
        assert_eq!(as_u64(&trinomial_row(1)), [1, 1, 1]);
        assert_eq!(as_u64(&trinomial_row(2)), [1, 2, 3, 2, 1]);
        assert_eq!(trinomial_row(2).sum(), BigUint::from(9u8));
        assert_eq!(trinomial_row(4).central(), &BigUint::from(19u8));
    }

    #[test]
    fn rows_match_path_enumeration() {
        for t in 0..=8 {
            assert_eq!(as_u64(&trinomial_row(t)), brute_force_row(t as u32), "T = {t}");
        }
    }

    #[test]
    fn rows_are_symmetric_and_sum_to_powers_of_three() {
        for t in 0..=30u64 {
            let row = trinomial_row(t);
            assert_eq!(row.sum(), BigUint::from(3u8).pow(t as u32));
            for k in 0..=t as i64 {
                assert_eq!(row.get(k), row.get(-k));
            }
            assert_eq!(row.get(t as i64 + 1), BigUint::zero());
        }
    }

    #[test]
    fn central_series_matches_rows() {
        let series = central_trinomial_series(200);
        for t in [0u64, 1, 2, 3, 7, 50, 123, 200] {
            assert_eq!(&series[t as usize], trinomial_row(t).central());
        }
    }

    #[test]
    fn bound_examples() {
        assert!(matches!(max_lyapunov_bound(0), Err(Error::ZeroSteps)));
        assert_eq!(max_lyapunov_bound(1).unwrap(), 0.0);
        assert!((max_lyapunov_bound(4).unwrap() - 19f64.ln() / 4.0).abs() < 1e-15);
        assert!((max_lyapunov_bound(4).unwrap() - 0.736_110).abs() < 1e-6);
        let b = max_lyapunov_bound(5000).unwrap();
        assert!(b >= 1.097 && b < 3f64.ln());
    }

    #[test]
    fn bound_series_agrees_with_pointwise_bound() {
        let s = max_lyapunov_bound_series(60);
        assert_eq!(s.len(), 60);
        for t in 1..=60u64 {
            assert_eq!(s[t as usize - 1], max_lyapunov_bound(t).unwrap());
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_central_coefficient(1).unwrap(), BigUint::from(1u8));
        assert_eq!(closed_form_central_coefficient(2).unwrap(), BigUint::from(3u8));
        assert_eq!(closed_form_central_coefficient(4).unwrap(), BigUint::from(19u8));
        assert!(closed_form_central_coefficient(0).is_err());
        assert!(matches!(
            max_lyapunov_closed_form(201),
            Err(Error::UnsupportedSteps { got: 201, .. })
        ));
    }

    #[test]
    fn closed_form_equals_row_centre() {
        for t in 1..=60u64 {
            assert_eq!(&closed_form_central_coefficient(t).unwrap(), trinomial_row(t).central());
        }
    }
}
