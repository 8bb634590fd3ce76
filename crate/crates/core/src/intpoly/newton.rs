//! Newton's identities between the coefficients of `f(t) = c0 * prod (1 - a_i t)`
//! and the power sums `s_n = sum a_i^n` of its reciprocal roots.
//!
//! From `f' = -f * sum s_n t^(n-1)`:
//!   `c0 s_n = -n c_n - sum_{j=1}^{n-1} c_j s_{n-j}`.
//! All divisions are checked for exactness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{IntPolynomial, PolyError};

/// `s_1, s_2, ...` as exact integers. Index 0 holds `s_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumSeries {
    #[serde(with = "crate::serde_bigints")]
    pub sums: Vec<BigInt>,
}

impl PowerSumSeries {
    pub fn from_i64s(s: &[i64]) -> Self {
        PowerSumSeries {
            sums: s.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// `s_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.sums[n - 1]
    }

    /// `s_k, s_2k, ...`: the power sums of the k-th powers.
    pub fn every(&self, k: usize) -> Self {
        PowerSumSeries {
            sums: self.sums.iter().skip(k - 1).step_by(k).cloned().collect(),
        }
    }

    /// Weil bound `|s_n| <= 2g q^(n/2)` for every entry, checked as
    /// `s_n^2 <= 4 g^2 q^n`.
    pub fn within_weil_bound(&self, q: u64, g: usize) -> bool {
        let q = BigInt::from(q);
        let four_g2 = BigInt::from(4 * g * g);
        let mut qn = BigInt::one();
        self.sums.iter().all(|s| {
            qn *= &q;
            s * s <= &four_g2 * &qn
        })
    }
}

/// Power sums `s_1..s_r` of the reciprocal roots of `f`.
pub fn power_sums_from_poly(f: &IntPolynomial, r: usize) -> Result<PowerSumSeries, PolyError> {
    let c0 = f.constant_term();
    if c0.is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let mut sums: Vec<BigInt> = Vec::with_capacity(r);
    for n in 1..=r {
        let mut acc = -(f.coeff(n) * BigInt::from(n));
        for j in 1..n.min(f.coeffs.len()) {
            acc -= &f.coeffs[j] * &sums[n - j - 1];
        }
        let (q, rem) = acc.div_rem(&c0);
        if !rem.is_zero() {
            return Err(PolyError::NonIntegralPowerSums(c0.to_string()));
        }
        sums.push(q);
    }
    Ok(PowerSumSeries { sums })
}

/// First `r + 1` coefficients `1, c_1, .., c_r` of `prod (1 - a_i t)`
/// from `s_1..s_r`.
pub(crate) fn coeffs_from_power_sums(s: &[BigInt], r: usize) -> Result<Vec<BigInt>, PolyError> {
    assert!(s.len() >= r);
    let mut c: Vec<BigInt> = Vec::with_capacity(r + 1);
    c.push(BigInt::one());
    for n in 1..=r {
        let mut acc = s[n - 1].clone();
        for j in 1..n {
            acc += &c[j] * &s[n - j - 1];
        }
        let (q, rem) = acc.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(PolyError::NotPowerSums(n));
        }
        c.push(-q);
    }
    Ok(c)
}

/// The degree-`d` polynomial `prod (1 - a_i t)` whose reciprocal-root power
/// sums start with `s`. A vanishing top coefficient is rejected.
pub fn poly_from_power_sums(s: &PowerSumSeries, d: usize) -> Result<IntPolynomial, PolyError> {
    if s.len() < d {
        return Err(PolyError::NotPowerSums(s.len() + 1));
    }
    let c = coeffs_from_power_sums(&s.sums, d)?;
    if d > 0 && c[d].is_zero() {
        return Err(PolyError::NotPowerSums(d));
    }
    Ok(IntPolynomial::new(c))
}
