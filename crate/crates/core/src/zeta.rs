//! L-polynomials: recovery from point counts, counts from L, the extension
//! operator `L -> L^(n)`, p-rank via reduction mod p, and validation.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::curves::PointCountSeries;
use crate::intpoly::{
    newton::coeffs_from_power_sums, poly_from_power_sums, power_sums_from_poly, IntPolynomial,
    PolyError, PowerSumSeries,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("need at least {needed} point counts, got {got}")]
    TooFewCounts { needed: usize, got: usize },
    #[error("counts are not consistent with any L-polynomial: {0}")]
    NotConsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `L(t) = prod (1 - alpha_i t)` of degree `2g` for a curve over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPolynomial {
    pub q: u64,
    pub g: usize,
    pub poly: IntPolynomial,
}

impl LPolynomial {
    pub fn new(q: u64, g: usize, poly: IntPolynomial) -> Self {
        LPolynomial { q, g, poly }
    }

    pub fn from_i64s(q: u64, g: usize, coeffs: &[i64]) -> Self {
        Self::new(q, g, IntPolynomial::from_i64s(coeffs))
    }

    /// `s_1..s_r` of the reciprocal roots.
    pub fn power_sums(&self, r: usize) -> PowerSumSeries {
        power_sums_from_poly(&self.poly, r).expect("L(0) = 1")
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.pretty())
    }
}

#[derive(Serialize, Deserialize)]
struct LPolyJson {
    q: u64,
    g: usize,
    coeffs: Vec<String>,
}

impl Serialize for LPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LPolyJson {
            q: self.q,
            g: self.g,
            coeffs: self.poly.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LPolyJson::deserialize(d)?;
        let poly = IntPolynomial::from_strings(&raw.coeffs).map_err(serde::de::Error::custom)?;
        Ok(LPolynomial::new(raw.q, raw.g, poly))
    }
}

fn checked_pow(q: u64, n: usize) -> u64 {
    u32::try_from(n)
        .ok()
        .and_then(|n| q.checked_pow(n))
        .unwrap_or_else(|| panic!("field size {q}^{n} does not fit in 64 bits"))
}

/// Recovers `L` from `N_1..N_g` by inverse Newton and the functional
/// equation. Any further counts must agree with the result.
pub fn lpoly_from_counts(q: u64, g: usize, counts: &[BigInt]) -> Result<LPolynomial, ZetaError> {
    if counts.len() < g {
        return Err(ZetaError::TooFewCounts {
            needed: g,
            got: counts.len(),
        });
    }
    let series = PointCountSeries {
        q,
        counts: counts.to_vec(),
    };
    let s = series.power_sums();
    let low =
        coeffs_from_power_sums(&s.sums, g).map_err(|e| ZetaError::NotConsistent(e.to_string()))?;
    let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
    coeffs[..=g].clone_from_slice(&low);
    let qb = BigInt::from(q);
    let mut qpow = BigInt::one();
    for i in (0..g).rev() {
        qpow *= &qb;
        coeffs[2 * g - i] = &low[i] * &qpow;
    }
    let l = LPolynomial::new(q, g, IntPolynomial::new(coeffs));
    if counts.len() > g {
        let implied = counts_from_lpoly(&l, counts.len());
        if let Some(m) = (g..counts.len()).find(|&i| implied.counts[i] != counts[i]) {
            return Err(ZetaError::NotConsistent(format!(
                "N_{} = {} but the completed polynomial {} implies {}",
                m + 1,
                counts[m],
                l,
                implied.counts[m]
            )));
        }
    }
    Ok(l)
}

/// `N_m = q^m + 1 - s_m` for `m = 1..r`.
pub fn counts_from_lpoly(l: &LPolynomial, r: usize) -> PointCountSeries {
    PointCountSeries::from_power_sums(l.q, &l.power_sums(r))
}

/// `L^(n)(t) = prod (1 - alpha_i^n t)` over `F_{q^n}`.
pub fn extension_lpoly(l: &LPolynomial, n: usize) -> LPolynomial {
    assert!(n >= 1);
    let q = checked_pow(l.q, n);
    let d = 2 * l.g;
    if d == 0 {
        return LPolynomial::new(q, 0, IntPolynomial::one());
    }
    let s = l.power_sums(n * d).every(n);
    let poly =
        poly_from_power_sums(&s, d).expect("integral power sums of a nonzero-top polynomial");
    LPolynomial::new(q, l.g, poly)
}

/// Degree of `L mod p`.
pub fn p_rank_manin(l: &LPolynomial, p: u64) -> usize {
    l.poly.degree_mod(p).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Structural checks: `L(0) = 1`, degree `2g`, functional equation. With
/// `numeric`, also checks that every root has modulus `q^(-1/2)` to 1e-6;
/// that check is advisory and only runs once the exact checks pass.
pub fn validate_lpoly(l: &LPolynomial, numeric: bool) -> Validation {
    let mut failures = Vec::new();
    if !l.poly.constant_term().is_one() {
        failures.push(format!(
            "constant term is {}, not 1",
            l.poly.constant_term()
        ));
    }
    if l.poly.degree() != Some(2 * l.g) {
        failures.push(format!(
            "degree is {}, expected 2g = {}",
            l.poly.degree().map_or("-inf".into(), |d| d.to_string()),
            2 * l.g
        ));
    } else {
        let qb = BigInt::from(l.q);
        for i in 0..=l.g {
            let want = l.poly.coeff(i) * num_traits::pow(qb.clone(), l.g - i);
            if l.poly.coeff(2 * l.g - i) != want {
                failures.push(format!(
                    "functional equation fails at a_{}: {} != q^{} * a_{}",
                    2 * l.g - i,
                    l.poly.coeff(2 * l.g - i),
                    l.g - i,
                    i
                ));
            }
        }
    }
    if numeric && failures.is_empty() {
        if let Some(worst) = root_modulus_deviation(l) {
            if worst > 1e-6 {
                failures.push(format!(
                    "root moduli deviate from q^(-1/2) by up to {worst:.3e}"
                ));
            }
        }
    }
    Validation {
        ok: failures.is_empty(),
        failures,
    }
}

/// Largest `| |u| - 1 |` over the roots `u` of `L(u / sqrt q)`, via the
/// companion matrix. `None` for constant `L`.
pub fn root_modulus_deviation(l: &LPolynomial) -> Option<f64> {
    let d = l.poly.degree()?;
    if d == 0 {
        return None;
    }
    let sq = (l.q as f64).sqrt();
    let b: Vec<f64> = (0..=d)
        .map(|i| l.poly.coeff(i).to_f64().unwrap_or(f64::NAN) / sq.powi(i as i32))
        .collect();
    let lead = b[d];
    let mut c = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        c[(i, d - 1)] = -b[i] / lead;
    }
    let eig = c.complex_eigenvalues();
    Some(
        eig.iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max),
    )
}
