//! Dense polynomials over a prime field GF(p) with small p.
//!
//! These carry the moduli of extension fields, the numerators and
//! denominators of rational maps, and the right-hand sides of curve
//! equations. Degrees stay small (a few dozen at most), so everything is
//! schoolbook.

use std::fmt;

/// Polynomial over GF(p), coefficients ascending, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

impl FpPoly {
    /// Builds a polynomial from ascending coefficients, reducing each mod `p`.
    pub fn new(p: u32, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        let coeffs = coeffs.iter().map(|&c| c.rem_euclid(pi) as u32).collect();
        Self::from_raw(p, coeffs)
    }

    pub(crate) fn from_raw(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u32) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u32) -> Self {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    /// `x^e`.
    pub fn monomial(p: u32, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = 1;
        FpPoly { p, coeffs }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// `x^j` with unit coefficient, returning `j`.
    pub fn as_monomial(&self) -> Option<usize> {
        let d = self.degree()?;
        (self.coeffs[d] == 1 && self.coeffs[..d].iter().all(|&c| c == 0)).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::from_raw(self.p, c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect();
        Self::from_raw(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = self.p as u64;
        let c = self
            .coeffs
            .iter()
            .map(|&a| (a as u64 * (s as u64 % p) % p) as u32)
            .collect();
        Self::from_raw(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_raw(self.p, out.into_iter().map(|c| c as u32).collect())
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let p = self.p as u64;
        let inv_lc = inv_mod(divisor.leading(), self.p) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        if rem.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] % p * inv_lc % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - c * b as u64 % p) % p;
            }
        }
        rem.truncate(dd);
        (
            Self::from_raw(self.p, quot.into_iter().map(|c| c as u32).collect()),
            Self::from_raw(self.p, rem.into_iter().map(|c| c as u32).collect()),
        )
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p as u64;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| (a as u64 * (i as u64 % p) % p) as u32)
            .collect();
        Self::from_raw(self.p, c)
    }

    /// Evaluates at a prime-field point.
    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or irreducibility test: no factor of degree `i <= n/2` divides,
    /// i.e. `gcd(x^{p^i} - x, f) = 1` for each such `i`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.make_monic();
        let x = Self::x(self.p);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(self.p as u64, &f);
            if !h.sub(&x).gcd(&f).is_one() {
                return false;
            }
        }
        true
    }

    /// Replaces `x` by `x^{1/p}`; valid only when every exponent is a multiple of `p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        Self::from_raw(self.p, c)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(a_i, i)` with
    /// `f = prod a_i^i`, each `a_i` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, usize)> {
        let f = self.make_monic();
        let mut out: Vec<(FpPoly, usize)> = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.p as usize;
        let fp = f.derivative();
        if fp.is_zero() {
            for (a, i) in f.pth_root().squarefree_decomposition() {
                push_factor(&mut out, a, i * p);
            }
            return out;
        }
        let mut c = f.gcd(&fp);
        let mut w = f.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if fac.degree().unwrap_or(0) > 0 {
                push_factor(&mut out, fac, i);
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if !c.is_one() {
            for (a, j) in c.pth_root().squarefree_decomposition() {
                push_factor(&mut out, a, j * p);
            }
        }
        out.sort_by_key(|(_, i)| *i);
        out
    }

    /// Number of distinct roots lying in GF(p^m), i.e. `deg gcd(f, x^{p^m} - x)`.
    pub fn count_roots_in_extension(&self, m: u32) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let f = self.make_monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        for _ in 0..m {
            h = h.pow_mod(self.p as u64, &f);
        }
        h.sub(&x).gcd(&f).degree().unwrap_or(0)
    }
}

fn push_factor(out: &mut Vec<(FpPoly, usize)>, a: FpPoly, mult: usize) {
    if let Some(slot) = out.iter_mut().find(|(_, i)| *i == mult) {
        slot.0 = slot.0.mul(&a);
    } else {
        out.push((a, mult));
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "x^{i}")?,
                (_, 1) => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_roundtrip() {
        let a = FpPoly::new(3, &[1, 2, 0, 1, 1]);
        let b = FpPoly::new(3, &[2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn irreducibility_small_binary() {
        // x^2 + x + 1 and x^4 + x + 1 are irreducible; x^4 + 1 = (x + 1)^4 is not.
        assert!(FpPoly::new(2, &[1, 1, 1]).is_irreducible());
        assert!(FpPoly::new(2, &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!FpPoly::new(2, &[1, 0, 0, 0, 1]).is_irreducible());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!FpPoly::new(2, &[1, 0, 1, 0, 1]).is_irreducible());
        assert!(FpPoly::new(3, &[1, 0, 1]).is_irreducible());
        assert!(!FpPoly::new(3, &[2, 0, 1]).is_irreducible());
    }

    #[test]
    fn irreducibility_matches_brute_force_degree_6() {
        // Trial division by every monic polynomial of degree 1..=3.
        for r in 0u32..64 {
            let mut c: Vec<i64> = (0..6).map(|i| ((r >> i) & 1) as i64).collect();
            c.push(1);
            let f = FpPoly::new(2, &c);
            let mut reducible = false;
            for d in 1..=3usize {
                for s in 0u32..(1 << d) {
                    let mut g: Vec<i64> = (0..d).map(|i| ((s >> i) & 1) as i64).collect();
                    g.push(1);
                    if f.rem(&FpPoly::new(2, &g)).is_zero() {
                        reducible = true;
                    }
                }
            }
            assert_eq!(f.is_irreducible(), !reducible, "{f}");
        }
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let a = FpPoly::new(2, &[0, 1]); // x
        let b = FpPoly::new(2, &[1, 1, 1]); // x^2 + x + 1
        let c = FpPoly::new(2, &[1, 1]); // x + 1
                                         // x * (x^2+x+1)^2 * (x+1)^3
        let f = a.mul(&b).mul(&b).mul(&c).mul(&c).mul(&c);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(a, 1), (b, 2), (c, 3)]);
    }

    #[test]
    fn squarefree_decomposition_handles_pth_powers() {
        let c = FpPoly::new(3, &[1, 1]);
        let f = c.mul(&c).mul(&c); // (x+1)^3 has zero derivative in char 3
        assert_eq!(f.squarefree_decomposition(), vec![(c, 3)]);
    }

    #[test]
    fn roots_in_extensions() {
        let f = FpPoly::new(2, &[1, 1, 1]); // roots live in GF(4)
        assert_eq!(f.count_roots_in_extension(1), 0);
        assert_eq!(f.count_roots_in_extension(2), 2);
        assert_eq!(f.count_roots_in_extension(3), 0);
        let g = FpPoly::new(2, &[0, 1, 1]); // x(x+1)
        assert_eq!(g.count_roots_in_extension(5), 2);
    }
}
