//! Additive character sums `sum (-1)^{Tr(f(x))}` over GF(2^m).
//!
//! The fast path walks `x = g^i` through the multiplicative group. When the
//! denominator of `f` is a monomial, `f(g^i)` is a sum of Laurent monomials
//! `g^{e*i}`, and each one is a running product advanced by a fixed
//! constant multiplier per step. Other denominators go through chunked
//! Horner evaluation with batched inversion.
//!
//! The index range is cut into fixed-size chunks independent of the thread
//! count, and each chunk's partial sum is an exact integer, so the result
//! does not depend on scheduling.

use rayon::prelude::*;

use super::binary::{ConstMul, Gf2m};
use super::{FieldError, FiniteField, RationalMap};

const CHUNK: u64 = 1 << 16;

/// Upper bound on enumerated field sizes, in bits of `log2(#field)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimit(pub u32);

impl Default for EnumerationLimit {
    fn default() -> Self {
        EnumerationLimit(34)
    }
}

impl EnumerationLimit {
    pub fn check(self, field: &FiniteField) -> Result<(), FieldError> {
        let bits = (field.characteristic() as f64).log2() * field.degree() as f64;
        if bits > self.0 as f64 + 1e-9 {
            Err(FieldError::TooLarge {
                p: field.characteristic(),
                m: field.degree(),
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `sum (-1)^{Tr(f(x))}` over every `x` in GF(2^m) where `f` is defined.
pub fn char_sum(
    field: &FiniteField,
    f: &RationalMap,
    limit: EnumerationLimit,
) -> Result<i64, FieldError> {
    let gf = binary_field(field, f)?;
    limit.check(field)?;
    let at_zero = value_at_zero(field, f);
    let walk = match f.denominator().as_monomial() {
        Some(j) => laurent_walk(gf, field, f, j),
        None => horner_sum(gf, field, f),
    };
    Ok(walk + at_zero)
}

/// Same sum by the definition: every element, Horner evaluation, inversion
/// by exponentiation, trace as `x + x^2 + ... + x^{2^{m-1}}`.
pub fn char_sum_reference(field: &FiniteField, f: &RationalMap) -> Result<i64, FieldError> {
    let gf = binary_field(field, f)?;
    let mut sum = 0i64;
    for x in 0..field.order() {
        let den = horner(gf, f.denominator().coeffs(), x);
        let Some(inv) = gf.inv(den) else { continue };
        let y = gf.mul(horner(gf, f.numerator().coeffs(), x), inv);
        sum += 1 - 2 * gf.trace_by_definition(y) as i64;
    }
    Ok(sum)
}

fn binary_field<'a>(field: &'a FiniteField, f: &RationalMap) -> Result<&'a Gf2m, FieldError> {
    if f.characteristic() != field.characteristic() {
        return Err(FieldError::CharacteristicMismatch {
            field: field.characteristic(),
            map: f.characteristic(),
        });
    }
    field
        .binary()
        .ok_or(FieldError::NotBinary(field.characteristic()))
}

fn horner(gf: &Gf2m, coeffs: &[u32], x: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| gf.mul(acc, x) ^ c as u64)
}

/// Contribution of `x = 0`, which the walk over the multiplicative group skips.
fn value_at_zero(field: &FiniteField, f: &RationalMap) -> i64 {
    // Over GF(2) the denominator is monic, so den(0) is 0 (a pole) or 1.
    if f.denominator().coeff(0) == 0 {
        return 0;
    }
    // f(0) = num(0) lies in GF(2), and Tr(1) = m mod 2.
    let parity = (f.numerator().coeff(0) * field.degree()) & 1;
    1 - 2 * parity as i64
}

/// Exponent `e * i` reduced into `[0, q-1)`.
fn exp_mod(e: i64, i: u64, n: u64) -> u64 {
    let e = e.rem_euclid(n as i64) as u128;
    (e * i as u128 % n as u128) as u64
}

fn laurent_walk(gf: &Gf2m, field: &FiniteField, f: &RationalMap, den_degree: usize) -> i64 {
    let n = field.order() - 1;
    let g = field.generator().code();
    let exponents: Vec<i64> = f
        .numerator()
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i as i64 - den_degree as i64)
        .collect();
    // Constant terms contribute Tr(1) = m mod 2 at every point.
    let constant_parity =
        (exponents.iter().filter(|&&e| e == 0).count() as u32 * field.degree()) & 1;
    let terms: Vec<(i64, ConstMul)> = exponents
        .iter()
        .filter(|&&e| e != 0)
        .map(|&e| (e, ConstMul::new(gf, gf.pow(g, exp_mod(e, 1, n)))))
        .collect();
    let mask = gf.trace_mask();
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            let mut state: Vec<u64> = terms
                .iter()
                .map(|(e, _)| gf.pow(g, exp_mod(*e, start, n)))
                .collect();
            let mut ones = 0i64;
            match terms.as_slice() {
                [(_, a), (_, b)] => {
                    let (mut x, mut y) = (state[0], state[1]);
                    for _ in start..end {
                        ones += (((x ^ y) & mask).count_ones() & 1) as i64;
                        x = a.apply(x);
                        y = b.apply(y);
                    }
                }
                _ => {
                    for _ in start..end {
                        let v = state.iter().fold(0u64, |acc, &s| acc ^ s);
                        ones += ((v & mask).count_ones() & 1) as i64;
                        for (s, (_, t)) in state.iter_mut().zip(&terms) {
                            *s = t.apply(*s);
                        }
                    }
                }
            }
            let len = (end - start) as i64;
            if constant_parity == 1 {
                ones = len - ones;
            }
            len - 2 * ones
        })
        .sum()
}

fn horner_sum(gf: &Gf2m, field: &FiniteField, f: &RationalMap) -> i64 {
    let n = field.order() - 1;
    let g = field.generator().code();
    let num = f.numerator().coeffs();
    let den = f.denominator().coeffs();
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            let step = ConstMul::new(gf, g);
            let mut x = gf.pow(g, start);
            let mut nums = Vec::with_capacity((end - start) as usize);
            let mut dens = Vec::with_capacity((end - start) as usize);
            for _ in start..end {
                let d = horner(gf, den, x);
                if d != 0 {
                    nums.push(horner(gf, num, x));
                    dens.push(d);
                }
                x = step.apply(x);
            }
            // Batched inversion: prefix products, one inversion, walk back.
            let mut prefix = Vec::with_capacity(dens.len());
            let mut acc = 1u64;
            for &d in &dens {
                prefix.push(acc);
                acc = gf.mul(acc, d);
            }
            let mut inv = gf.inv(acc).unwrap_or(1);
            let mut sum = 0i64;
            for i in (0..dens.len()).rev() {
                let d_inv = gf.mul(inv, prefix[i]);
                inv = gf.mul(inv, dens[i]);
                let y = gf.mul(nums[i], d_inv);
                sum += 1 - 2 * gf.trace(y) as i64;
            }
            sum
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FpPoly};

    #[test]
    fn small_sums_by_hand() {
        let lim = EnumerationLimit::default();
        let f3 = RationalMap::power_plus_inverse(3);
        let f5 = RationalMap::power_plus_inverse(5);
        let gf2 = make_field(2, 1, None).unwrap();
        let gf4 = make_field(2, 2, None).unwrap();
        assert_eq!(char_sum(&gf2, &f3, lim).unwrap(), 1);
        assert_eq!(char_sum(&gf4, &f3, lim).unwrap(), -1);
        assert_eq!(char_sum(&gf2, &f5, lim).unwrap(), 1);
    }

    #[test]
    fn walk_matches_reference_exhaustively() {
        let maps = [
            RationalMap::power_plus_inverse(3),
            RationalMap::power_plus_inverse(5),
            RationalMap::polynomial(FpPoly::new(2, &[0, 0, 0, 1])),
            RationalMap::polynomial(FpPoly::new(2, &[1, 1, 0, 1])),
            // x + 1/x + 1/(x+1)
            RationalMap::new(FpPoly::new(2, &[1, 0, 1, 1]), FpPoly::new(2, &[0, 1, 1])).unwrap(),
            RationalMap::new(FpPoly::new(2, &[1, 0, 0, 1]), FpPoly::new(2, &[1, 1, 1])).unwrap(),
        ];
        for m in 1..=12 {
            let field = make_field(2, m, None).unwrap();
            for f in &maps {
                assert_eq!(
                    char_sum(&field, f, EnumerationLimit::default()).unwrap(),
                    char_sum_reference(&field, f).unwrap(),
                    "m = {m}, f = {f}"
                );
            }
        }
    }

    #[test]
    fn rejects_odd_and_oversized_fields() {
        let f = RationalMap::power_plus_inverse(3);
        let gf9 = make_field(3, 2, None).unwrap();
        assert!(char_sum(&gf9, &f, EnumerationLimit::default()).is_err());
        let gf = make_field(2, 20, None).unwrap();
        assert_eq!(
            char_sum(&gf, &f, EnumerationLimit(19)).unwrap_err(),
            FieldError::TooLarge {
                p: 2,
                m: 20,
                limit: 19
            }
        );
    }

    #[test]
    fn parity_split_accounts_for_every_defined_point() {
        // #{Tr = 0} + #{Tr = 1} = number of non-pole points, so
        // char_sum has the parity of that count.
        let f = RationalMap::power_plus_inverse(9);
        for m in 1..=10 {
            let field = make_field(2, m, None).unwrap();
            let defined = field.order() as i64 - 1;
            let s = char_sum(&field, &f, EnumerationLimit::default()).unwrap();
            assert!(s.abs() <= defined);
            assert_eq!((defined - s) % 2, 0);
        }
    }
}
