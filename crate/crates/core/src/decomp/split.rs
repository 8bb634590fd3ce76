use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::intpoly::IntPolynomial;

/// Result of looking for `Q(t) = A(t^p1) * B(t^p2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum SplitOutcome {
    /// `a` and `b` are the compressed factors.
    Split {
        a: IntPolynomial,
        b: IntPolynomial,
    },
    NoSplit {
        reason: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl SplitOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitOutcome::Split { .. })
    }
}

fn degree_solvable(d: usize, p1: usize, p2: usize) -> bool {
    (0..=d / p1).any(|a| (d - a * p1).is_multiple_of(p2))
}

/// Searches for `Q(t) = A(t^p1) B(t^p2)` with `Q(0) = 1` and distinct primes.
///
/// When one prime is 2 the search is exact: any such `A(t^2)` is, up to a
/// factor lying in `Z[t^(2 p2)]`, the gcd of `Q(t)` and `Q(-t)`, so a failed
/// gcd route proves there is no split. For two odd primes only the trivial
/// splits are tried.
pub fn split_two_prime(q: &IntPolynomial, p1: usize, p2: usize) -> SplitOutcome {
    assert!(p1 != p2 && p1 >= 2 && p2 >= 2);
    if !q.constant_term().is_one() {
        return SplitOutcome::Inconclusive {
            reason: format!("constant term {} is not 1", q.constant_term()),
        };
    }
    if p2 == 2 {
        return match split_two_prime(q, 2, p1) {
            SplitOutcome::Split { a, b } => SplitOutcome::Split { a: b, b: a },
            other => other,
        };
    }
    let d = q.degree().unwrap_or(0);
    if !degree_solvable(d, p1, p2) {
        return SplitOutcome::NoSplit {
            reason: format!("degree {d} is not {p1}a + {p2}b with a, b >= 0"),
        };
    }
    if let Some(a) = q.support_in_tk(p1) {
        return verified(q, a, IntPolynomial::one(), p1, p2);
    }
    if let Some(b) = q.support_in_tk(p2) {
        return verified(q, IntPolynomial::one(), b, p1, p2);
    }
    if p1 != 2 {
        return SplitOutcome::Inconclusive {
            reason: format!("no trivial split and no exact method for primes {p1}, {p2}"),
        };
    }
    let mut g = IntPolynomial::gcd_primitive(q, &q.negate_variable());
    if g.constant_term().is_negative() {
        g = -&g;
    }
    let rest = IntPolynomial::divides_with_quotient(&g, q)
        .expect("gcd is nonzero")
        .quotient
        .expect("gcd divides Q");
    match (g.support_in_tk(2), rest.support_in_tk(p2)) {
        (Some(a), Some(b)) => verified(q, a, b, p1, p2),
        _ => SplitOutcome::NoSplit {
            reason: format!(
                "gcd(Q(t), Q(-t)) = {} leaves cofactor {} outside Z[t^{p2}]",
                g.compact(),
                rest.compact()
            ),
        },
    }
}

fn verified(
    q: &IntPolynomial,
    a: IntPolynomial,
    b: IntPolynomial,
    p1: usize,
    p2: usize,
) -> SplitOutcome {
    let back = &a.expand_power(p1) * &b.expand_power(p2);
    assert_eq!(&back, q, "split does not multiply back to Q");
    SplitOutcome::Split { a, b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(
            split_two_prime(&p(&[1, 0, 2, -1, 0, -2]), 2, 3),
            SplitOutcome::Split {
                a: p(&[1, 2]),
                b: p(&[1, -1])
            }
        );
        assert_eq!(
            split_two_prime(&p(&[1, 0, 2]), 2, 3),
            SplitOutcome::Split {
                a: p(&[1, 2]),
                b: p(&[1])
            }
        );
        assert!(matches!(
            split_two_prime(&p(&[1, 1, 1]), 2, 3),
            SplitOutcome::NoSplit { .. }
        ));
    }

    #[test]
    fn swapped_primes() {
        assert_eq!(
            split_two_prime(&p(&[1, 0, 2, -1, 0, -2]), 3, 2),
            SplitOutcome::Split {
                a: p(&[1, -1]),
                b: p(&[1, 2])
            }
        );
    }

    #[test]
    fn gcd_route_rejects_when_degrees_fit() {
        // Degree 5 = 2 + 3 but 1 + t + t^5 has no such split.
        assert!(matches!(
            split_two_prime(&p(&[1, 1, 0, 0, 0, 1]), 2, 3),
            SplitOutcome::NoSplit { .. }
        ));
    }

    #[test]
    fn shared_even_factor_is_moved_into_a() {
        // B(u) = 1 - u^2 lies in Z[u^2], so B(t^3) is also even.
        let q = &p(&[1, 0, 3]).expand_power(2) * &p(&[1, 0, -1, 1]).expand_power(3);
        match split_two_prime(&q, 2, 3) {
            SplitOutcome::Split { a, b } => {
                assert_eq!(&a.expand_power(2) * &b.expand_power(3), q);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_primes_are_inconclusive_without_trivial_split() {
        let q = &p(&[1, 1]).expand_power(3) * &p(&[1, 1]).expand_power(5);
        assert!(matches!(
            split_two_prime(&q, 3, 5),
            SplitOutcome::Inconclusive { .. }
        ));
        assert!(split_two_prime(&p(&[1, 0, 0, 4]), 3, 5).is_split());
    }

    proptest! {
        #[test]
        fn constructed_products_split(
            a in prop::collection::vec(-5i64..5, 0..4),
            b in prop::collection::vec(-5i64..5, 0..4),
            p2 in prop_oneof![Just(3usize), Just(5), Just(7)],
        ) {
            let mut ac = vec![1]; ac.extend(a);
            let mut bc = vec![1]; bc.extend(b);
            let q = &p(&ac).expand_power(2) * &p(&bc).expand_power(p2);
            match split_two_prime(&q, 2, p2) {
                SplitOutcome::Split { a, b } => {
                    prop_assert_eq!(&a.expand_power(2) * &b.expand_power(p2), q);
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
