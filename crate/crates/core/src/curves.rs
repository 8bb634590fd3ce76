//! Curve models over prime fields, their genus and p-rank, and exact point
//! counts of the smooth projective model over extension fields.
//!
//! Two models are supported:
//!
//! * `y^2 + y = f(x)` over GF(2) with `f` a rational map in Artin–Schreier
//!   reduced form (every pole, including infinity, of odd order);
//! * `y^2 + h(x) y = f(x)` over GF(p), p odd, handled by completing the
//!   square to `y^2 = F(x)` with `F = f + h^2/4`.
//!
//! Point counts use the sign convention `N_m = 2^m + 1 + G_m` for the
//! curves `y^2 + y = x^(2^k+1) + 1/x`, where `G_m` is the character sum over
//! the nonzero elements. Each `x` with `Tr(f(x)) = 0` lifts to two points,
//! so the affine count is `(#defined x) + G`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{
    char_sum, make_field, EnumerationLimit, FieldError, FiniteField, FpPoly, RationalMap,
};
use crate::intpoly::PowerSumSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(
        "rational map is not in Artin-Schreier reduced form: pole of even order {order} at {place}"
    )]
    NotReduced { place: String, order: usize },
    #[error(
        "rational map has no poles; y^2 + y = f(x) does not define a curve of nonnegative genus"
    )]
    NoPoles,
    #[error("Artin-Schreier model needs a map over GF(2), got GF({0})")]
    NotBinary(u32),
    #[error("hyperelliptic model needs an odd prime characteristic, got {0}")]
    NotOddPrime(u32),
    #[error("completed square {0} is not squarefree of positive degree")]
    Singular(String),
    #[error("point count {count} over GF({q}^{m}) violates the Weil bound for genus {genus}")]
    WeilBoundViolated {
        q: u64,
        m: u32,
        count: u64,
        genus: usize,
    },
}

/// `y^2 + y = f(x)` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct As2Curve {
    f: RationalMap,
    /// Order of the pole at infinity, if there is one.
    pole_at_infinity: Option<usize>,
    /// Squarefree pieces of the denominator with their pole order.
    finite_poles: Vec<(FpPoly, usize)>,
}

/// `y^2 + h(x) y = f(x)` over GF(p), p odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperOddCurve {
    p: u32,
    h: FpPoly,
    f: FpPoly,
    /// `f + h^2/4`.
    completed: FpPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    As2(As2Curve),
    HyperOdd(HyperOddCurve),
}

/// JSON form of a curve. Extra `name`/`note` fields are carried as metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CurveSpec {
    As2 {
        f_num: Vec<i64>,
        f_den: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    HyperOdd {
        p: u32,
        h: Vec<i64>,
        f: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
}

impl CurveSpec {
    pub fn name(&self) -> Option<&str> {
        match self {
            CurveSpec::As2 { name, .. } | CurveSpec::HyperOdd { name, .. } => name.as_deref(),
        }
    }

    pub fn to_model(&self) -> Result<CurveModel, CurveError> {
        match self {
            CurveSpec::As2 { f_num, f_den, .. } => {
                let f = RationalMap::new(FpPoly::new(2, f_num), FpPoly::new(2, f_den))?;
                CurveModel::as2(f)
            }
            CurveSpec::HyperOdd { p, h, f, .. } => {
                if *p == 2 || !crate::field::is_prime(*p as u64) {
                    return Err(CurveError::NotOddPrime(*p));
                }
                CurveModel::hyper_odd(FpPoly::new(*p, h), FpPoly::new(*p, f))
            }
        }
    }
}

/// Number of `F_{q^m}`-points on the smooth model, for `m = 1..r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountSeries {
    pub q: u64,
    #[serde(with = "crate::serde_bigints")]
    pub counts: Vec<BigInt>,
}

impl PointCountSeries {
    /// `N_m` for `m >= 1`.
    pub fn get(&self, m: usize) -> &BigInt {
        &self.counts[m - 1]
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `s_m = q^m + 1 - N_m`.
    pub fn power_sums(&self) -> PowerSumSeries {
        let q = BigInt::from(self.q);
        let mut qm = BigInt::from(1);
        PowerSumSeries {
            sums: self
                .counts
                .iter()
                .map(|n| {
                    qm *= &q;
                    &qm + 1 - n
                })
                .collect(),
        }
    }

    pub fn from_power_sums(q: u64, s: &PowerSumSeries) -> Self {
        let qb = BigInt::from(q);
        let mut qm = BigInt::from(1);
        PointCountSeries {
            q,
            counts: s
                .sums
                .iter()
                .map(|s| {
                    qm *= &qb;
                    &qm + 1 - s
                })
                .collect(),
        }
    }

    /// Weil bound `|N_m - q^m - 1| <= 2g q^(m/2)` at every entry.
    pub fn within_weil_bound(&self, g: usize) -> bool {
        self.power_sums().within_weil_bound(self.q, g)
    }
}

impl CurveModel {
    /// Validates Artin–Schreier reduced form and records the pole data.
    pub fn as2(f: RationalMap) -> Result<Self, CurveError> {
        if f.characteristic() != 2 {
            return Err(CurveError::NotBinary(f.characteristic()));
        }
        let dn = f.numerator().degree().unwrap_or(0);
        let dd = f.denominator().degree().unwrap_or(0);
        let pole_at_infinity = (dn > dd).then_some(dn - dd);
        if let Some(order) = pole_at_infinity {
            if order % 2 == 0 {
                return Err(CurveError::NotReduced {
                    place: "infinity".into(),
                    order,
                });
            }
        }
        let finite_poles = f.denominator().squarefree_decomposition();
        for (a, order) in &finite_poles {
            if order % 2 == 0 {
                return Err(CurveError::NotReduced {
                    place: format!("roots of {a}"),
                    order: *order,
                });
            }
        }
        if pole_at_infinity.is_none() && finite_poles.is_empty() {
            return Err(CurveError::NoPoles);
        }
        Ok(CurveModel::As2(As2Curve {
            f,
            pole_at_infinity,
            finite_poles,
        }))
    }

    /// `y^2 + h y = f` over GF(p), p odd; the completed square must be
    /// squarefree of positive degree.
    pub fn hyper_odd(h: FpPoly, f: FpPoly) -> Result<Self, CurveError> {
        let p = f.characteristic();
        if p == 2 || h.characteristic() != p {
            return Err(CurveError::NotOddPrime(p));
        }
        let quarter = crate::field::FpPoly::new(p, &[1]).scale(inverse_of_four(p));
        let completed = f.add(&h.mul(&h).mul(&quarter));
        let d = completed.degree().unwrap_or(0);
        let sqfree = d >= 1
            && !completed.derivative().is_zero()
            && completed.gcd(&completed.derivative()).is_one();
        if !sqfree {
            return Err(CurveError::Singular(completed.to_string()));
        }
        Ok(CurveModel::HyperOdd(HyperOddCurve { p, h, f, completed }))
    }

    /// `D_k: y^2 + y = x^(2^k+1) + x^(-1)` over GF(2).
    pub fn dk(k: u32) -> Self {
        assert!((1..=40).contains(&k));
        Self::as2(RationalMap::power_plus_inverse((1usize << k) + 1))
            .expect("D_k is in reduced form")
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CurveModel::As2(_) => 2,
            CurveModel::HyperOdd(c) => c.p,
        }
    }

    /// Size of the base field (always the prime field here).
    pub fn base_field_size(&self) -> u64 {
        self.characteristic() as u64
    }

    pub fn genus(&self) -> usize {
        match self {
            CurveModel::As2(c) => {
                let mut total = c.pole_at_infinity.map_or(0, |d| d + 1);
                for (a, d) in &c.finite_poles {
                    total += a.degree().unwrap_or(0) * (d + 1);
                }
                total / 2 - 1
            }
            CurveModel::HyperOdd(c) => (c.completed.degree().unwrap() - 1) / 2,
        }
    }

    /// 2-rank by Deuring–Shafarevich: `(#geometric poles - 1)(p - 1)`.
    /// `None` for the odd-characteristic model.
    pub fn two_rank_deuring(&self) -> Option<usize> {
        match self {
            CurveModel::As2(c) => {
                let poles = c.pole_at_infinity.map_or(0, |_| 1)
                    + c.finite_poles
                        .iter()
                        .map(|(a, _)| a.degree().unwrap_or(0))
                        .sum::<usize>();
                Some(poles - 1)
            }
            CurveModel::HyperOdd(_) => None,
        }
    }

    pub fn to_spec(&self) -> CurveSpec {
        let conv = |f: &FpPoly| f.coeffs().iter().map(|&c| c as i64).collect();
        match self {
            CurveModel::As2(c) => CurveSpec::As2 {
                f_num: conv(c.f.numerator()),
                f_den: conv(c.f.denominator()),
                name: None,
                note: None,
            },
            CurveModel::HyperOdd(c) => CurveSpec::HyperOdd {
                p: c.p,
                h: conv(&c.h),
                f: conv(&c.f),
                name: None,
                note: None,
            },
        }
    }

    /// Places at infinity (and, for the binary model, above the finite poles)
    /// that are rational over GF(p^m).
    fn points_at_infinity(&self, field: &FiniteField) -> u64 {
        let m = field.degree();
        match self {
            CurveModel::As2(c) => match c.pole_at_infinity {
                Some(_) => 1,
                None => {
                    // f(infinity) is 0 or 1; two points unless Tr(1) = 1.
                    let deg_equal = c.f.numerator().degree() == c.f.denominator().degree();
                    if deg_equal && m % 2 == 1 {
                        0
                    } else {
                        2
                    }
                }
            },
            CurveModel::HyperOdd(c) => {
                let d = c.completed.degree().unwrap();
                if d % 2 == 1 {
                    1
                } else {
                    let lc = field.from_prime(c.completed.leading());
                    (1 + field.quadratic_character(lc)) as u64
                }
            }
        }
    }

    /// `#C(GF(p^m))` on the smooth projective model.
    pub fn count_points(&self, m: u32, limit: EnumerationLimit) -> Result<u64, CurveError> {
        let field = make_field(self.characteristic(), m, None)?;
        limit.check(&field)?;
        let q = field.order();
        let at_infinity = self.points_at_infinity(&field);
        match self {
            CurveModel::As2(c) => {
                // Affine: 2 * #{defined x: Tr f(x) = 0} = #defined + S.
                // Each affine pole adds its single ramified place.
                let affine_poles = c.f.denominator().count_roots_in_extension(m) as u64;
                let s = char_sum(&field, &c.f, limit)?;
                let defined = (q - affine_poles) as i64;
                Ok((defined + s) as u64 + affine_poles + at_infinity)
            }
            CurveModel::HyperOdd(c) => {
                let chi = quadratic_character_sum(&field, &c.completed);
                Ok((q as i64 + chi) as u64 + at_infinity)
            }
        }
    }

    /// `N_1..N_r`, each checked against the Weil bound.
    pub fn count_series(
        &self,
        r: usize,
        limit: EnumerationLimit,
    ) -> Result<PointCountSeries, CurveError> {
        let q = self.base_field_size();
        let g = self.genus();
        let mut counts = Vec::with_capacity(r);
        for m in 1..=r as u32 {
            let n = self.count_points(m, limit)?;
            let single = PointCountSeries {
                q: q.pow(m),
                counts: vec![BigInt::from(n)],
            };
            if !single.within_weil_bound(g) {
                return Err(CurveError::WeilBoundViolated {
                    q,
                    m,
                    count: n,
                    genus: g,
                });
            }
            counts.push(BigInt::from(n));
        }
        Ok(PointCountSeries { q, counts })
    }

    /// The map `f` of the binary model.
    pub fn as2_map(&self) -> Option<&RationalMap> {
        match self {
            CurveModel::As2(c) => Some(&c.f),
            CurveModel::HyperOdd(_) => None,
        }
    }

    /// `(h, f, f + h^2/4)` of the odd model.
    pub fn hyper_odd_parts(&self) -> Option<(&FpPoly, &FpPoly, &FpPoly)> {
        match self {
            CurveModel::HyperOdd(c) => Some((&c.h, &c.f, &c.completed)),
            CurveModel::As2(_) => None,
        }
    }
}

fn inverse_of_four(p: u32) -> u32 {
    (1..p).find(|&v| (4 * v as u64) % p as u64 == 1).unwrap()
}

/// `sum_x chi(F(x))` over the whole field.
fn quadratic_character_sum(field: &FiniteField, f: &FpPoly) -> i64 {
    use rayon::prelude::*;
    let q = field.order();
    const CHUNK: u64 = 1 << 14;
    (0..q.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(q);
            (start..end)
                .map(|code| {
                    let x = field.element(code).unwrap();
                    field.quadratic_character(field.eval_poly(f, x)) as i64
                })
                .sum::<i64>()
        })
        .sum()
}

/// `G_m^(k) = sum_{x != 0} (-1)^Tr(x^(2^k+1) + 1/x)` over GF(2^m).
pub fn gsum(k: u32, m: u32, limit: EnumerationLimit) -> Result<i64, CurveError> {
    assert!((1..=40).contains(&k));
    let field = make_field(2, m, None)?;
    Ok(char_sum(
        &field,
        &RationalMap::power_plus_inverse((1usize << k) + 1),
        limit,
    )?)
}
