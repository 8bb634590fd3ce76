//! Finite fields GF(p^m) for small p, rational maps over the prime field,
//! and the exponential-sum kernel for p = 2.

pub(crate) mod binary;
mod charsum;
mod fpoly;
mod odd;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use charsum::{char_sum, char_sum_reference, EnumerationLimit};
pub use fpoly::FpPoly;

use binary::Gf2m;
use odd::{Basis, Zech, ZECH_LIMIT};

/// Largest supported field order, as a bit count; generator search factors
/// `p^m - 1` by trial division.
pub const MAX_FIELD_BITS: u32 = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NoPrime(u32),
    #[error("characteristic {0} is outside the supported range 2..65536")]
    UnsupportedCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} exceeds the supported size of 2^{MAX_FIELD_BITS}")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below p")]
    BadModulus { expected: u32 },
    #[error("modulus {0} is reducible")]
    ModulusReducible(String),
    #[error("field of order {p}^{m} exceeds the enumeration bound of 2^{limit} elements")]
    TooLarge { p: u32, m: u32, limit: u32 },
    #[error("operation requires characteristic 2, got {0}")]
    NotBinary(u32),
    #[error("characteristic mismatch: field has p = {field}, map is over GF({map})")]
    CharacteristicMismatch { field: u32, map: u32 },
    #[error("rational map has a zero denominator")]
    ZeroDenominator,
    #[error("element code {0} is outside the field")]
    NotAnElement(u64),
}

/// An element of some `FiniteField`, as its power-basis code: bit-packed
/// for p = 2, base-p digits otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Binary(Gf2m),
    Odd {
        basis: Basis,
        zech: Option<Arc<Zech>>,
    },
}

/// GF(p^m) with a fixed irreducible modulus and multiplicative generator.
/// Immutable once built; share it freely across threads.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    order: u64,
    modulus: FpPoly,
    generator: FieldElement,
    repr: Repr,
    /// `Tr(z^j)` for each basis element; odd characteristic only.
    basis_traces: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.m, self.modulus)
    }
}

/// Field descriptor in its JSON form: `{"p": 2, "m": 4, "modulus": [1,1,0,0,1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn order_of(p: u32, m: u32) -> Result<u64, FieldError> {
    let bits = (p as f64).log2() * m as f64;
    if bits > MAX_FIELD_BITS as f64 + 1e-9 {
        return Err(FieldError::FieldTooLarge { p, m });
    }
    (p as u64)
        .checked_pow(m)
        .filter(|&q| q <= 1u64 << MAX_FIELD_BITS)
        .ok_or(FieldError::FieldTooLarge { p, m })
}

/// The first monic irreducible polynomial of degree `m` over GF(p), ordering
/// candidates `x^m + r(x)` by the base-p integer value of `r`'s coefficients
/// (constant term least significant). Results are cached per `(p, m)`.
pub fn default_modulus(p: u32, m: u32) -> FpPoly {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FpPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
        return f.clone();
    }
    let found = (0u64..)
        .map(|r| {
            let mut digits = Vec::with_capacity(m as usize + 1);
            let mut r = r;
            for _ in 0..m {
                digits.push((r % p as u64) as u32);
                r /= p as u64;
            }
            digits.push(1);
            FpPoly::from_raw(p, digits)
        })
        .find(|f| f.is_irreducible())
        .expect("irreducible polynomials exist in every degree");
    cache.lock().unwrap().insert((p, m), found.clone());
    found
}

/// Builds GF(p^m), with the supplied monic modulus (ascending coefficients)
/// or the default one.
pub fn make_field(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FiniteField, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NoPrime(p));
    }
    if p >= 1 << 16 {
        return Err(FieldError::UnsupportedCharacteristic(p));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let order = order_of(p, m)?;
    let modulus = match modulus {
        Some(c) => {
            if c.len() != m as usize + 1 || c[m as usize] != 1 || c.iter().any(|&d| d >= p) {
                return Err(FieldError::BadModulus { expected: m });
            }
            let f = FpPoly::from_raw(p, c.to_vec());
            if !f.is_irreducible() {
                return Err(FieldError::ModulusReducible(f.to_string()));
            }
            f
        }
        None => default_modulus(p, m),
    };

    let repr = if p == 2 {
        let bits = modulus
            .coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc << 1) | c as u64);
        Repr::Binary(Gf2m::new(m, bits))
    } else {
        Repr::Odd {
            basis: Basis {
                p,
                m,
                modulus: modulus.clone(),
            },
            zech: None,
        }
    };
    let mut field = FiniteField {
        p,
        m,
        order,
        modulus,
        generator: FieldElement(1),
        repr,
        basis_traces: Vec::new(),
    };
    field.generator = field.find_generator();
    if let Repr::Odd { basis, zech } = &mut field.repr {
        if order <= ZECH_LIMIT {
            *zech = Some(Arc::new(Zech::build(basis, field.generator.0, order)));
        }
    }
    if p != 2 {
        field.basis_traces = (0..m)
            .map(|j| {
                let z = field.from_coeffs(&unit_vector(j as usize));
                field.trace_by_definition(z)
            })
            .collect();
    }
    Ok(field)
}

fn unit_vector(j: usize) -> Vec<u32> {
    let mut v = vec![0; j + 1];
    v[j] = 1;
    v
}

impl FiniteField {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// `p^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        let mut modulus = self.modulus.coeffs().to_vec();
        modulus.resize(self.m as usize + 1, 0);
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus,
        }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self, FieldError> {
        make_field(d.p, d.m, Some(&d.modulus))
    }

    pub(crate) fn binary(&self) -> Option<&Gf2m> {
        match &self.repr {
            Repr::Binary(f) => Some(f),
            Repr::Odd { .. } => None,
        }
    }

    pub(crate) fn zech(&self) -> Option<&Zech> {
        match &self.repr {
            Repr::Odd { zech, .. } => zech.as_deref(),
            Repr::Binary(_) => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, code: u64) -> Result<FieldElement, FieldError> {
        if code < self.order {
            Ok(FieldElement(code))
        } else {
            Err(FieldError::NotAnElement(code))
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Element with the given power-basis coefficients (ascending); reduced
    /// modulo the field modulus when longer than `m`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let f = FpPoly::from_raw(self.p, coeffs.iter().map(|&c| c % self.p).collect());
        let r = f.rem(&self.modulus);
        let mut digits = r.coeffs().to_vec();
        digits.resize(self.m as usize, 0);
        FieldElement(match &self.repr {
            Repr::Binary(_) => digits
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc << 1) | c as u64),
            Repr::Odd { basis, .. } => basis.encode(&digits),
        })
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        match &self.repr {
            Repr::Binary(_) => (0..self.m).map(|i| ((x.0 >> i) & 1) as u32).collect(),
            Repr::Odd { basis, .. } => basis.digits(x.0),
        }
    }

    /// Embeds a prime-field value.
    pub fn from_prime(&self, c: u32) -> FieldElement {
        FieldElement((c % self.p) as u64)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(match &self.repr {
            Repr::Binary(_) => a.0 ^ b.0,
            Repr::Odd { zech: Some(z), .. } => z.add(a.0, b.0),
            Repr::Odd { basis, .. } => basis.add(a.0, b.0),
        })
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.repr {
            Repr::Binary(_) => a,
            Repr::Odd { basis, .. } => FieldElement(basis.neg(a.0)),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(match &self.repr {
            Repr::Binary(f) => f.mul(a.0, b.0),
            Repr::Odd { zech: Some(z), .. } => z.mul(a.0, b.0),
            Repr::Odd { basis, .. } => basis.mul(a.0, b.0),
        })
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        if let Repr::Binary(f) = &self.repr {
            return FieldElement(f.pow(a.0, e));
        }
        if let Some(z) = self.zech() {
            return FieldElement(match z.log(a.0) {
                None if e == 0 => 1,
                None => 0,
                Some(l) => z.exp((l as u128 * e as u128 % (self.order - 1) as u128) as u64),
            });
        }
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.order - 2))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Absolute trace to GF(p), via the precomputed linear form.
    pub fn trace(&self, x: FieldElement) -> u32 {
        match &self.repr {
            Repr::Binary(f) => f.trace(x.0),
            Repr::Odd { basis, .. } => {
                let p = self.p as u64;
                basis
                    .digits(x.0)
                    .iter()
                    .zip(&self.basis_traces)
                    .fold(0u64, |acc, (&c, &t)| (acc + c as u64 * t as u64) % p)
                    as u32
            }
        }
    }

    /// Absolute trace as `x + x^p + ... + x^{p^{m-1}}`.
    pub fn trace_by_definition(&self, x: FieldElement) -> u32 {
        let mut acc = self.zero();
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.frobenius(y);
        }
        debug_assert!(acc.0 < self.p as u64, "trace must land in the prime field");
        acc.0 as u32
    }

    /// Quadratic character for odd p: 1 on nonzero squares, -1 on
    /// non-squares, 0 at zero.
    pub fn quadratic_character(&self, a: FieldElement) -> i32 {
        assert!(self.p != 2, "quadratic character needs odd characteristic");
        if let Some(z) = self.zech() {
            return z.quadratic_character(a.0);
        }
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.order - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    /// Horner evaluation of a prime-field polynomial at `x`.
    pub fn eval_poly(&self, f: &FpPoly, x: FieldElement) -> FieldElement {
        f.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            self.add(self.mul(acc, x), self.from_prime(c))
        })
    }

    fn find_generator(&self) -> FieldElement {
        if self.order == 2 {
            return self.one();
        }
        let n = self.order - 1;
        let factors = prime_factors(n);
        (2..self.order)
            .map(FieldElement)
            .find(|&c| factors.iter().all(|&r| self.pow(c, n / r) != self.one()))
            .expect("the multiplicative group is cyclic")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order - 1;
        for r in prime_factors(self.order - 1) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Some(ord)
    }
}

/// A rational function `num/den` over GF(p), stored in lowest terms with a
/// monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    num: FpPoly,
    den: FpPoly,
}

/// The value of a rational map at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapValue {
    Finite(FieldElement),
    Pole,
}

/// JSON form `{"num": [...], "den": [...]}`, ascending coefficients over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMapSpec {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
}

impl RationalMap {
    /// Reduces `num/den` to lowest terms.
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        if num.characteristic() != den.characteristic() {
            return Err(FieldError::CharacteristicMismatch {
                field: num.characteristic(),
                map: den.characteristic(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if num.is_zero() {
            (num, FpPoly::one(den.characteristic()))
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading();
        if lc != 1 {
            let inv = fpoly::inv_mod(lc, den.characteristic());
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RationalMap { num, den })
    }

    pub fn polynomial(f: FpPoly) -> Self {
        let p = f.characteristic();
        RationalMap {
            num: f,
            den: FpPoly::one(p),
        }
    }

    /// `x^d + x^{-1}` over GF(2).
    pub fn power_plus_inverse(d: usize) -> Self {
        let mut num = vec![0i64; d + 2];
        num[0] = 1;
        num[d + 1] = 1;
        RationalMap {
            num: FpPoly::new(2, &num),
            den: FpPoly::x(2),
        }
    }

    pub fn from_spec(p: u32, spec: &RationalMapSpec) -> Result<Self, FieldError> {
        Self::new(FpPoly::new(p, &spec.num), FpPoly::new(p, &spec.den))
    }

    pub fn to_spec(&self) -> RationalMapSpec {
        let conv = |f: &FpPoly| f.coeffs().iter().map(|&c| c as i64).collect();
        RationalMapSpec {
            num: conv(&self.num),
            den: conv(&self.den),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.num.characteristic()
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Evaluates `f` at `x`, reporting a pole where the denominator vanishes.
pub fn eval_rational_map(
    field: &FiniteField,
    f: &RationalMap,
    x: FieldElement,
) -> Result<MapValue, FieldError> {
    if f.characteristic() != field.characteristic() {
        return Err(FieldError::CharacteristicMismatch {
            field: field.characteristic(),
            map: f.characteristic(),
        });
    }
    let den = field.eval_poly(&f.den, x);
    Ok(match field.inv(den) {
        None => MapValue::Pole,
        Some(inv) => MapValue::Finite(field.mul(field.eval_poly(&f.num, x), inv)),
    })
}

/// Absolute trace of `x`.
pub fn trace(field: &FiniteField, x: FieldElement) -> u32 {
    field.trace(x)
}
