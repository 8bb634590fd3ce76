//! Slow reference implementations used as test oracles. They share nothing
//! with the library's arithmetic except the choice of modulus, which does
//! not affect any count.

#![allow(dead_code)]

use std::path::PathBuf;

use lpdiv_core::curves::CurveSpec;
use lpdiv_core::field::default_modulus;

const MAX_M: usize = 24;

/// GF(p^m) with elements as digit arrays in the power basis.
pub struct NaiveField {
    pub p: u32,
    pub m: usize,
    /// Monic, ascending, length m + 1.
    modulus: Vec<u32>,
}

pub type El = [u32; MAX_M];

impl NaiveField {
    pub fn new(p: u32, m: usize) -> Self {
        assert!(m <= MAX_M);
        let modulus = default_modulus(p, m as u32).coeffs().to_vec();
        assert_eq!(modulus.len(), m + 1);
        NaiveField { p, m, modulus }
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    pub fn element(&self, mut code: u64) -> El {
        let mut e = [0; MAX_M];
        for d in e.iter_mut().take(self.m) {
            *d = (code % self.p as u64) as u32;
            code /= self.p as u64;
        }
        e
    }

    pub fn code(&self, a: &El) -> u64 {
        a[..self.m]
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p as u64 + d as u64)
    }

    pub fn all(&self) -> Vec<El> {
        (0..self.size()).map(|c| self.element(c)).collect()
    }

    pub fn constant(&self, c: i64) -> El {
        let mut v = [0; MAX_M];
        v[0] = c.rem_euclid(self.p as i64) as u32;
        v
    }

    pub fn is_zero(&self, a: &El) -> bool {
        a.iter().all(|&d| d == 0)
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        let mut r = [0; MAX_M];
        for i in 0..self.m {
            r[i] = (a[i] + b[i]) % self.p;
        }
        r
    }

    pub fn neg(&self, a: &El) -> El {
        let mut r = [0; MAX_M];
        for i in 0..self.m {
            r[i] = (self.p - a[i]) % self.p;
        }
        r
    }

    /// Schoolbook product followed by reduction of the high coefficients.
    pub fn mul(&self, a: &El, b: &El) -> El {
        let p = self.p as u64;
        let m = self.m;
        let mut prod = [0u64; 2 * MAX_M];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += a[i] as u64 * b[j] as u64;
            }
        }
        for i in (m..2 * m).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                prod[i - m + j] += (p - c) * self.modulus[j] as u64;
            }
        }
        let mut r = [0; MAX_M];
        for i in 0..m {
            r[i] = (prod[i] % p) as u32;
        }
        r
    }

    pub fn pow(&self, a: &El, mut e: u64) -> El {
        let mut acc = self.constant(1);
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &El) -> El {
        assert!(!self.is_zero(a));
        self.pow(a, self.size() - 2)
    }

    /// Horner evaluation of a polynomial with prime-field coefficients.
    pub fn eval(&self, coeffs: &[i64], x: &El) -> El {
        let mut acc = self.constant(0);
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.constant(c));
        }
        acc
    }

    /// `x + x^p + ... + x^(p^(m-1))`, as a prime-field value.
    pub fn trace(&self, x: &El) -> u32 {
        let mut acc = self.constant(0);
        let mut y = *x;
        for _ in 0..self.m {
            acc = self.add(&acc, &y);
            y = self.pow(&y, self.p as u64);
        }
        assert!(
            acc[1..].iter().all(|&d| d == 0),
            "trace lies in the prime field"
        );
        acc[0]
    }

    /// Membership table of the nonzero squares, indexed by code.
    pub fn squares(&self) -> Vec<bool> {
        let mut sq = vec![false; self.size() as usize];
        for y in self.all().iter().filter(|y| !self.is_zero(y)) {
            sq[self.code(&self.mul(y, y)) as usize] = true;
        }
        sq
    }
}

fn degree(c: &[i64], p: u32) -> Option<usize> {
    c.iter().rposition(|&x| x.rem_euclid(p as i64) != 0)
}

/// Points on the smooth model of `y^2 + y = num/den` over GF(2^m), by
/// testing every pair `(x, y)`. Assumes the map is in reduced form.
pub fn naive_count_as2(num: &[i64], den: &[i64], m: usize) -> u64 {
    let f = NaiveField::new(2, m);
    let all = f.all();
    let lhs: Vec<u64> = all
        .iter()
        .map(|y| f.code(&f.add(&f.mul(y, y), y)))
        .collect();
    let mut affine = 0u64;
    let mut finite_poles = 0u64;
    for x in &all {
        let d = f.eval(den, x);
        if f.is_zero(&d) {
            finite_poles += 1;
            continue;
        }
        let v = f.code(&f.mul(&f.eval(num, x), &f.inv(&d)));
        affine += lhs.iter().filter(|&&l| l == v).count() as u64;
    }
    let (dn, dd) = (degree(num, 2).unwrap(), degree(den, 2).unwrap());
    let at_infinity = if dn > dd {
        1
    } else {
        let c = u64::from(dn == dd);
        lhs.iter().filter(|&&l| l == c).count() as u64
    };
    affine + finite_poles + at_infinity
}

/// Points on the smooth model of `y^2 + h y = f` over GF(p^m), p odd.
/// Affine points are found by testing every pair `(x, y)` when `pairs` is
/// set, otherwise from whether the discriminant of the quadratic in `y` is
/// a square.
pub fn naive_count_hyper(p: u32, h: &[i64], fc: &[i64], m: usize, pairs: bool) -> u64 {
    let f = NaiveField::new(p, m);
    let all = f.all();
    let squares = if pairs { Vec::new() } else { f.squares() };
    let mut affine = 0u64;
    for x in &all {
        let hx = f.eval(h, x);
        let fx = f.eval(fc, x);
        if pairs {
            affine += all
                .iter()
                .filter(|y| f.add(&f.mul(y, &f.add(y, &hx)), &f.neg(&fx)) == f.constant(0))
                .count() as u64;
        } else {
            let disc = f.add(&f.mul(&hx, &hx), &f.mul(&f.constant(4), &fx));
            affine += if f.is_zero(&disc) {
                1
            } else if squares[f.code(&disc) as usize] {
                2
            } else {
                0
            };
        }
    }
    // Weighted model at infinity: Y^2 + h_(d/2) Y = f_d when d is even.
    let dh = degree(h, p).map_or(0, |d| 2 * d);
    let df = degree(fc, p).unwrap_or(0);
    let d = dh.max(df);
    let at_infinity = if d % 2 == 1 {
        1
    } else {
        let a = f.constant(*h.get(d / 2).unwrap_or(&0));
        let b = f.constant(*fc.get(d).unwrap_or(&0));
        all.iter()
            .filter(|y| f.add(&f.mul(y, &f.add(y, &a)), &f.neg(&b)) == f.constant(0))
            .count() as u64
    };
    affine + at_infinity
}

/// Naive point count for any bundled curve.
pub fn naive_count(spec: &CurveSpec, m: usize) -> u64 {
    match spec {
        CurveSpec::As2 { f_num, f_den, .. } => naive_count_as2(f_num, f_den, m),
        CurveSpec::HyperOdd { p, h, f, .. } => naive_count_hyper(*p, h, f, m, m <= 7),
    }
}

/// `sum_{x != 0} (-1)^Tr(x^(2^k+1) + 1/x)` over GF(2^m), element by element.
pub fn naive_gsum(k: u32, m: usize) -> i64 {
    let f = NaiveField::new(2, m);
    f.all()
        .iter()
        .filter(|x| !f.is_zero(x))
        .map(|x| {
            let v = f.add(&f.pow(x, (1u64 << k) + 1), &f.inv(x));
            if f.trace(&v) == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

pub fn samples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

/// Every curve JSON in the samples directory, sorted by file name.
pub fn bundled_curves() -> Vec<(String, CurveSpec)> {
    let mut out: Vec<(String, CurveSpec)> = std::fs::read_dir(samples_dir())
        .expect("samples directory")
        .filter_map(|e| {
            let path = e.ok()?.path();
            let text = std::fs::read_to_string(&path).ok()?;
            let spec = serde_json::from_str::<CurveSpec>(&text).ok()?;
            Some((path.file_name()?.to_string_lossy().into_owned(), spec))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
