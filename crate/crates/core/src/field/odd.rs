//! GF(p^m) for odd p.
//!
//! Elements are encoded as integers `sum c_i p^i` over their power-basis
//! coefficients. Small fields get Zech-logarithm tables; larger ones fall
//! back to polynomial-basis arithmetic.

use super::fpoly::FpPoly;

/// Largest field order for which Zech tables are built.
pub(crate) const ZECH_LIMIT: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub(crate) p: u32,
    pub(crate) m: u32,
    pub(crate) modulus: FpPoly,
}

impl Basis {
    pub(crate) fn digits(&self, mut code: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.m)
            .map(|_| {
                let d = (code % p) as u32;
                code /= p;
                d
            })
            .collect()
    }

    pub(crate) fn encode(&self, digits: &[u32]) -> u64 {
        let p = self.p as u64;
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64)
    }

    fn to_poly(&self, code: u64) -> FpPoly {
        FpPoly::from_raw(self.p, self.digits(code))
    }

    fn encode_poly(&self, f: &FpPoly) -> u64 {
        self.encode(f.coeffs())
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u64;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        let p = self.p as u64;
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += ((p - a % p) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = self.to_poly(a).mul(&self.to_poly(b)).rem(&self.modulus);
        self.encode_poly(&prod)
    }
}

/// Discrete-log tables relative to a fixed generator `g`.
#[derive(Debug)]
pub(crate) struct Zech {
    /// `log[code]`; `NO_LOG` at zero.
    log: Vec<u32>,
    /// `exp[i]` is the code of `g^i`.
    exp: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, `NO_LOG` where `1 + g^n = 0`.
    zech: Vec<u32>,
    order_minus_one: u32,
}

impl Zech {
    pub(crate) fn build(basis: &Basis, generator: u64, order: u64) -> Self {
        let n = (order - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NO_LOG; order as usize];
        let mut x = 1u64;
        for i in 0..n {
            exp.push(x as u32);
            log[x as usize] = i as u32;
            x = basis.mul(x, generator);
        }
        debug_assert_eq!(x, 1, "generator order must be order - 1");
        let zech = exp
            .iter()
            .map(|&c| log[basis.add(1, c as u64) as usize])
            .collect();
        Zech {
            log,
            exp,
            zech,
            order_minus_one: n as u32,
        }
    }

    #[inline]
    pub(crate) fn log(&self, a: u64) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    #[inline]
    pub(crate) fn exp(&self, i: u64) -> u64 {
        self.exp[(i % self.order_minus_one as u64) as usize] as u64
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        match (self.log(a), self.log(b)) {
            (Some(la), Some(lb)) => self.exp(la as u64 + lb as u64),
            _ => 0,
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let (la, lb) = match (self.log(a), self.log(b)) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(la), Some(lb)) => (la as u64, lb as u64),
        };
        let n = self.order_minus_one as u64;
        let d = (lb + n - la) % n;
        match self.zech[d as usize] {
            NO_LOG => 0,
            z => self.exp(la + z as u64),
        }
    }

    /// +1 for nonzero squares, -1 for non-squares, 0 at zero.
    #[inline]
    pub(crate) fn quadratic_character(&self, a: u64) -> i32 {
        match self.log(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            Some(_) => -1,
        }
    }
}
