use serde::{Deserialize, Serialize};

use super::{lpoly_of_curve, split_two_prime, DecompError, SplitOutcome, SCHEMA};
use crate::curves::{gsum, CurveError, CurveModel};
use crate::field::{prime_factors, EnumerationLimit};
use crate::intpoly::IntPolynomial;
use crate::zeta::{extension_lpoly, p_rank_manin, validate_lpoly, LPolynomial};

/// How the quotient `L_{D_k} / L_{D_1}` decomposes along the primes of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QuotientStructure {
    /// `k = 1`: the quotient must be 1.
    Unit { is_one: bool },
    /// `k = p^e`: the quotient must lie in `Z[t^p]`.
    PrimePower {
        p: u64,
        in_support: bool,
        compressed: Option<String>,
    },
    /// `k = p1^a p2^b`: quotient `= A(t^p1) B(t^p2)`.
    TwoPrime {
        p1: u64,
        p2: u64,
        split: SplitOutcome,
    },
    /// Three or more prime factors: not attempted.
    NotAttempted { primes: Vec<u64> },
}

impl QuotientStructure {
    /// `Some(true/false)` when decided, `None` when inconclusive.
    pub fn decided(&self) -> Option<bool> {
        match self {
            QuotientStructure::Unit { is_one } => Some(*is_one),
            QuotientStructure::PrimePower { in_support, .. } => Some(*in_support),
            QuotientStructure::TwoPrime { split, .. } => match split {
                SplitOutcome::Split { .. } => Some(true),
                SplitOutcome::NoSplit { .. } => Some(false),
                SplitOutcome::Inconclusive { .. } => None,
            },
            QuotientStructure::NotAttempted { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DkReport {
    pub schema: u32,
    pub k: u32,
    pub genus: usize,
    /// Counts were enumerated for `m = 1..horizon`.
    pub horizon: usize,
    pub lpoly: LPolynomial,
    pub lpoly_str: String,
    pub lpoly_valid: bool,
    pub divides_by_d1: bool,
    pub quotient: Option<String>,
    pub structure: Option<QuotientStructure>,
    pub two_rank_deuring: usize,
    pub p_rank_lpoly: usize,
    pub p_rank_quotient: Option<usize>,
    /// Squarefreeness of `L_{D_1}^(k)`, the root-distinctness hypothesis
    /// needed to derive the divisibility from point counts.
    pub d1_extension_squarefree: bool,
    /// `L_{D_1}` divides `L_{D_k}`.
    pub divisibility_conjecture: bool,
    /// `"holds"`, `"fails"` or `"inconclusive"`.
    pub structure_conjecture: String,
}

/// Computes `L_{D_k}` from counts up to the genus and analyzes
/// `L_{D_k} / L_{D_1}`.
pub fn verify_conjecture_dk(k: u32, limit: EnumerationLimit) -> Result<DkReport, DecompError> {
    if k == 0 {
        return Err(DecompError::ZeroK);
    }
    let dk = CurveModel::dk(k);
    let g = dk.genus();
    let lpoly = lpoly_of_curve(&dk, g, limit)?;
    let d1 = lpoly_of_curve(&CurveModel::dk(1), 2, limit)?;
    let div = IntPolynomial::divides_with_quotient(&d1.poly, &lpoly.poly).expect("nonzero");
    let structure = div.quotient.as_ref().map(|q| analyze_quotient(q, k as u64));
    let verdict = match structure.as_ref().and_then(QuotientStructure::decided) {
        _ if !div.divides => "fails",
        Some(true) => "holds",
        Some(false) => "fails",
        None => "inconclusive",
    };
    Ok(DkReport {
        schema: SCHEMA,
        k,
        genus: g,
        horizon: g,
        lpoly_str: lpoly.poly.compact(),
        lpoly_valid: validate_lpoly(&lpoly, false).ok,
        divides_by_d1: div.divides,
        quotient: div.quotient.as_ref().map(IntPolynomial::compact),
        structure,
        two_rank_deuring: dk.two_rank_deuring().expect("binary model"),
        p_rank_lpoly: p_rank_manin(&lpoly, 2),
        p_rank_quotient: div.quotient.as_ref().map(|q| q.degree_mod(2).unwrap_or(0)),
        d1_extension_squarefree: extension_lpoly(&d1, k as usize).poly.is_squarefree(),
        divisibility_conjecture: div.divides,
        structure_conjecture: verdict.into(),
        lpoly,
    })
}

fn analyze_quotient(q: &IntPolynomial, k: u64) -> QuotientStructure {
    let primes = prime_factors(k);
    match primes.as_slice() {
        [] => QuotientStructure::Unit { is_one: q.is_one() },
        [p] => {
            let compressed = q.support_in_tk(*p as usize);
            QuotientStructure::PrimePower {
                p: *p,
                in_support: compressed.is_some(),
                compressed: compressed.as_ref().map(IntPolynomial::compact),
            }
        }
        [p1, p2] => QuotientStructure::TwoPrime {
            p1: *p1,
            p2: *p2,
            split: split_two_prime(q, *p1 as usize, *p2 as usize),
        },
        _ => QuotientStructure::NotAttempted { primes },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsumEntry {
    pub k: u32,
    pub m: u32,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsumTable {
    pub schema: u32,
    pub k_max: u32,
    pub m_max: u32,
    pub entries: Vec<GsumEntry>,
    /// `(k, m)` with `G_m^(k) != G_m^(gcd(k, m))`.
    pub mismatches: Vec<(u32, u32)>,
}

impl GsumTable {
    pub fn get(&self, k: u32, m: u32) -> Option<i64> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.m == m)
            .map(|e| e.value)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `G_m^(k)` for `k <= k_max`, `m <= m_max`, with every violation of
/// `G_m^(k) = G_m^(gcd(k, m))` recorded.
pub fn gsum_invariance_scan(
    k_max: u32,
    m_max: u32,
    limit: EnumerationLimit,
) -> Result<GsumTable, CurveError> {
    let mut entries = Vec::new();
    for k in 1..=k_max {
        for m in 1..=m_max {
            entries.push(GsumEntry {
                k,
                m,
                value: gsum(k, m, limit)?,
            });
        }
    }
    let mut table = GsumTable {
        schema: SCHEMA,
        k_max,
        m_max,
        entries,
        mismatches: Vec::new(),
    };
    let mismatches = table
        .entries
        .iter()
        .filter(|e| table.get(gcd(e.k, e.m), e.m) != Some(e.value))
        .map(|e| (e.k, e.m))
        .collect();
    table.mismatches = mismatches;
    Ok(table)
}
