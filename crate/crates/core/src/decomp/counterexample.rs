use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SCHEMA;
use crate::intpoly::IntPolynomial;
use crate::zeta::{counts_from_lpoly, extension_lpoly, validate_lpoly, LPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub schema: u32,
    pub lc: LPolynomial,
    pub ld: LPolynomial,
    pub lc_str: String,
    pub ld_str: String,
    pub assertions: Vec<Assertion>,
    pub all_passed: bool,
}

/// `L_C = 3t^2 + t + 1`.
pub fn f3_lc() -> LPolynomial {
    LPolynomial::from_i64s(3, 1, &[1, 1, 3])
}

/// `L_D = 9t^4 + 3t^3 - 2t^2 + t + 1`.
pub fn f3_ld() -> LPolynomial {
    LPolynomial::from_i64s(3, 2, &[1, 1, -2, 3, 9])
}

/// A pair over `F_3` whose counts agree whenever `gcd(m, 6) = 1` but where
/// `L_C` does not divide `L_D`, although every `L_C^(n)` is squarefree.
pub fn counterexample_f3() -> CounterexampleReport {
    let (lc, ld) = (f3_lc(), f3_ld());
    let horizon = 25;
    let nc = counts_from_lpoly(&lc, horizon);
    let nd = counts_from_lpoly(&ld, horizon);
    let mut out = Vec::new();

    let vc = validate_lpoly(&lc, true);
    let vd = validate_lpoly(&ld, true);
    out.push(Assertion {
        name: "both polynomials are valid L-polynomials".into(),
        passed: vc.ok && vd.ok,
        detail: [vc.failures, vd.failures].concat().join("; "),
    });

    let coprime: Vec<usize> = (1..=horizon).filter(|m| m.gcd(&6) == 1).collect();
    let bad: Vec<usize> = coprime
        .iter()
        .copied()
        .filter(|&m| nc.get(m) != nd.get(m))
        .collect();
    out.push(Assertion {
        name: format!("equal counts for gcd(m, 6) = 1, m <= {horizon}"),
        passed: bad.is_empty(),
        detail: format!("compared m = {coprime:?}; mismatches {bad:?}"),
    });

    out.push(Assertion {
        name: "counts differ at m = 2".into(),
        passed: nc.get(2) != nd.get(2),
        detail: format!("N_2 = {} vs {}", nc.get(2), nd.get(2)),
    });

    let div = IntPolynomial::divides_with_quotient(&lc.poly, &ld.poly).expect("nonzero");
    out.push(Assertion {
        name: "L_C does not divide L_D".into(),
        passed: !div.divides,
        detail: String::new(),
    });

    let not_sqfree: Vec<usize> = (1..=12)
        .filter(|&n| !extension_lpoly(&lc, n).poly.is_squarefree())
        .collect();
    out.push(Assertion {
        name: "L_C^(n) squarefree for n <= 12".into(),
        passed: not_sqfree.is_empty(),
        detail: format!("failing n: {not_sqfree:?}"),
    });

    CounterexampleReport {
        schema: SCHEMA,
        lc_str: lc.poly.compact(),
        ld_str: ld.poly.compact(),
        lc,
        ld,
        all_passed: out.iter().all(|a| a.passed),
        assertions: out,
    }
}
