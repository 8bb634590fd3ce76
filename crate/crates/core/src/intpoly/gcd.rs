use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPolynomial;

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without fractions.
fn pseudo_remainder(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading();
    let mut r = a.coeffs.clone();
    let Some(da) = a.degree() else {
        return IntPolynomial::zero();
    };
    if da < db {
        return a.clone();
    }
    let mut steps = da - db + 1;
    for i in (db..=da).rev() {
        let top = std::mem::take(&mut r[i]);
        for c in r.iter_mut().take(i) {
            *c *= &lb;
        }
        if !top.is_zero() {
            for (j, bc) in b.coeffs.iter().enumerate().take(db) {
                r[i - db + j] -= &top * bc;
            }
        }
        steps -= 1;
    }
    debug_assert_eq!(steps, 0);
    r.truncate(db);
    IntPolynomial::new(r)
}

fn exact_div(p: &IntPolynomial, d: &BigInt) -> IntPolynomial {
    IntPolynomial::new(
        p.coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                debug_assert!(r.is_zero(), "subresultant division must be exact");
                q
            })
            .collect(),
    )
}

/// Subresultant polynomial remainder sequence; the result is made primitive
/// with a positive leading coefficient.
pub(super) fn subresultant_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    if b.is_zero() {
        return a;
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = pseudo_remainder(&a, &b);
        if r.is_zero() {
            break;
        }
        if r.degree() == Some(0) {
            return IntPolynomial::one();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = exact_div(&r, &divisor);
        g = a.leading();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h, delta - 1);
            num / den
        };
    }
    b.primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pseudo_remainder_identity() {
        let a = IntPolynomial::from_i64s(&[1, 2, 3, 4, 5]);
        let b = IntPolynomial::from_i64s(&[7, 0, 3]);
        let r = pseudo_remainder(&a, &b);
        // lc(b)^3 * a - r is divisible by b.
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        let out = IntPolynomial::divides_with_quotient(&b, &lhs).unwrap();
        assert!(out.divides);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn classic_knuth_example() {
        // gcd(x^8+x^6-3x^4-3x^3+8x^2+2x-5, 3x^6+5x^4-4x^2-9x+21) = 1
        let a = IntPolynomial::from_i64s(&[-5, 2, 8, -3, -3, 0, 1, 0, 1]);
        let b = IntPolynomial::from_i64s(&[21, -9, -4, 0, 5, 0, 3]);
        assert_eq!(subresultant_gcd(&a, &b), IntPolynomial::one());
    }

    #[test]
    fn nontrivial_common_factor_of_higher_degree() {
        let c = IntPolynomial::from_i64s(&[1, -1, 4, -4, 16]);
        let a = &c * &IntPolynomial::from_i64s(&[3, 0, 0, 7, 1]);
        let b = &c * &IntPolynomial::from_i64s(&[-2, 5, 1]);
        assert_eq!(subresultant_gcd(&a, &b), c);
    }
}
