//! Divisibility of L-polynomials detected from point counts.
//!
//! If two curves over `F_q` have the same number of points over `F_{q^m}`
//! for every `m` not divisible by `k`, and the k-th powers of the reciprocal
//! roots of `L_C` are distinct, then `L_D(t) = Q(t^k) L_C(t)`. This module
//! checks the hypotheses and the conclusion exactly, plus the converse,
//! the conjectured structure for the family `D_k`, and related scans.

mod counterexample;
mod dk;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{CurveError, CurveModel};
use crate::field::EnumerationLimit;
use crate::intpoly::IntPolynomial;
use crate::zeta::{counts_from_lpoly, extension_lpoly, lpoly_from_counts, LPolynomial, ZetaError};

pub use counterexample::{counterexample_f3, Assertion, CounterexampleReport};
pub use dk::{
    gsum_invariance_scan, verify_conjecture_dk, DkReport, GsumEntry, GsumTable, QuotientStructure,
};
pub use split::{split_two_prime, SplitOutcome};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("horizon {horizon} is below the genus {genus}; the L-polynomial is not determined")]
    HorizonTooSmall { horizon: usize, genus: usize },
    #[error("curves live over different fields (q = {0} and q = {1})")]
    BaseFieldMismatch(u64, u64),
    #[error("k must be at least 1")]
    ZeroK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    HypothesisFails,
    TheoremAppliesAndHolds,
    TheoremAppliesViolationFound,
}

/// Equal point counts for `m` not divisible by `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountHypothesis {
    /// Counts were compared for every `m <= horizon` with `k` not dividing `m`.
    pub horizon: usize,
    pub compared: Vec<usize>,
    pub holds_to_horizon: bool,
    /// Smallest failing `m`, searched up to `exact_bound`.
    pub first_failure: Option<usize>,
    /// Agreement for all `m` is decided exactly by comparing power sums
    /// up to this bound, the degree of the identity
    /// `L_C^k L_D^(k)(t^k) = L_D^k L_C^(k)(t^k)`.
    pub exact_bound: usize,
    pub holds_for_all_m: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub schema: u32,
    pub q: u64,
    pub k: usize,
    pub lc: LPolynomial,
    pub ld: LPolynomial,
    pub lc_str: String,
    pub ld_str: String,
    pub hyp1: CountHypothesis,
    pub hyp2_squarefree: bool,
    pub divides: bool,
    pub quotient: Option<String>,
    pub quotient_in_tk: bool,
    /// `h` with `quotient(t) = h(t^k)`.
    pub quotient_compressed: Option<String>,
    pub verdict: Verdict,
}

/// `L_C(t)^k L_D^(k)(t^k) = L_D(t)^k L_C^(k)(t^k)`.
pub fn master_identity_check(lc: &LPolynomial, ld: &LPolynomial, k: usize) -> bool {
    assert!(k >= 1);
    assert_eq!(lc.q, ld.q, "master identity needs a common base field");
    let k32 = u32::try_from(k).expect("k fits in u32");
    let lhs = &lc.poly.pow(k32) * &extension_lpoly(ld, k).poly.expand_power(k);
    let rhs = &ld.poly.pow(k32) * &extension_lpoly(lc, k).poly.expand_power(k);
    lhs == rhs
}

fn count_hypothesis(
    lc: &LPolynomial,
    ld: &LPolynomial,
    k: usize,
    horizon: usize,
) -> CountHypothesis {
    let exact_bound = 2 * k * (lc.g + ld.g);
    let reach = horizon.max(exact_bound).max(1);
    let sc = lc.power_sums(reach);
    let sd = ld.power_sums(reach);
    let differs = |m: usize| !m.is_multiple_of(k) && sc.get(m) != sd.get(m);
    let compared: Vec<usize> = (1..=horizon).filter(|m| m % k != 0).collect();
    let first_failure = (1..=reach).find(|&m| differs(m));
    CountHypothesis {
        horizon,
        holds_to_horizon: !compared.iter().any(|&m| differs(m)),
        compared,
        first_failure,
        exact_bound,
        holds_for_all_m: master_identity_check(lc, ld, k),
    }
}

/// The main divisibility check on two L-polynomials over the same field.
pub fn check_main_theorem_lpoly(
    lc: &LPolynomial,
    ld: &LPolynomial,
    k: usize,
    horizon: usize,
) -> Result<DivisibilityReport, DecompError> {
    if k == 0 {
        return Err(DecompError::ZeroK);
    }
    if lc.q != ld.q {
        return Err(DecompError::BaseFieldMismatch(lc.q, ld.q));
    }
    let hyp1 = count_hypothesis(lc, ld, k, horizon);
    let hyp2_squarefree = extension_lpoly(lc, k).poly.is_squarefree();
    let div = IntPolynomial::divides_with_quotient(&lc.poly, &ld.poly).expect("L_C is nonzero");
    let compressed = div.quotient.as_ref().and_then(|q| q.support_in_tk(k));
    let quotient_in_tk = compressed.is_some();
    let hypotheses = hyp1.holds_to_horizon && hyp1.holds_for_all_m && hyp2_squarefree;
    let verdict = match (hypotheses, div.divides && quotient_in_tk) {
        (false, _) => Verdict::HypothesisFails,
        (true, true) => Verdict::TheoremAppliesAndHolds,
        (true, false) => Verdict::TheoremAppliesViolationFound,
    };
    Ok(DivisibilityReport {
        schema: SCHEMA,
        q: lc.q,
        k,
        lc_str: lc.poly.compact(),
        ld_str: ld.poly.compact(),
        lc: lc.clone(),
        ld: ld.clone(),
        hyp1,
        hyp2_squarefree,
        divides: div.divides,
        quotient: div.quotient.as_ref().map(IntPolynomial::compact),
        quotient_in_tk,
        quotient_compressed: compressed.as_ref().map(IntPolynomial::compact),
        verdict,
    })
}

/// L-polynomial of a curve from its counts up to `horizon`; counts beyond
/// the genus cross-check the result.
pub fn lpoly_of_curve(
    c: &CurveModel,
    horizon: usize,
    limit: EnumerationLimit,
) -> Result<LPolynomial, DecompError> {
    let g = c.genus();
    if horizon < g {
        return Err(DecompError::HorizonTooSmall { horizon, genus: g });
    }
    let counts = c.count_series(horizon, limit)?;
    Ok(lpoly_from_counts(c.base_field_size(), g, &counts.counts)?)
}

/// The main divisibility check on two curves, with counts enumerated up to
/// `horizon` (which must cover both genera).
pub fn check_main_theorem(
    c: &CurveModel,
    d: &CurveModel,
    k: usize,
    horizon: usize,
    limit: EnumerationLimit,
) -> Result<DivisibilityReport, DecompError> {
    if c.base_field_size() != d.base_field_size() {
        return Err(DecompError::BaseFieldMismatch(
            c.base_field_size(),
            d.base_field_size(),
        ));
    }
    let lc = lpoly_of_curve(c, horizon, limit)?;
    let ld = lpoly_of_curve(d, horizon, limit)?;
    check_main_theorem_lpoly(&lc, &ld, k, horizon)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub schema: u32,
    pub k: usize,
    pub horizon: usize,
    pub ld: LPolynomial,
    pub ld_str: String,
    pub compared: Vec<usize>,
    pub holds: bool,
}

/// Builds `L_D(t) = Q(t^k) L_C(t)` and compares counts for `m <= horizon`
/// with `k` not dividing `m`.
pub fn converse_counts_check(
    lc: &LPolynomial,
    qpoly: &IntPolynomial,
    k: usize,
    horizon: usize,
) -> ConverseReport {
    assert!(k >= 1 && horizon >= 1);
    let poly = &qpoly.expand_power(k) * &lc.poly;
    let ld = LPolynomial::new(lc.q, poly.degree().unwrap_or(0) / 2, poly);
    let nc = counts_from_lpoly(lc, horizon);
    let nd = counts_from_lpoly(&ld, horizon);
    let compared: Vec<usize> = (1..=horizon).filter(|m| m % k != 0).collect();
    let holds = compared.iter().all(|&m| nc.get(m) == nd.get(m));
    ConverseReport {
        schema: SCHEMA,
        k,
        horizon,
        ld_str: ld.poly.compact(),
        ld,
        compared,
        holds,
    }
}
