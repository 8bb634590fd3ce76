//! Bit-packed GF(2^m) arithmetic for m <= 63.
//!
//! An element is a `u64` whose bit `i` is the coefficient of `z^i` in the
//! power basis of the modulus. Multiplication is a carryless product
//! followed by folding the high half back with the low part of the modulus.

/// Carryless 64x64 -> 128 bit product.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_pclmul(a, b) };
        }
    }
    clmul_soft(a, b)
}

/// Portable shift-and-xor carryless product.
#[inline]
pub fn clmul_soft(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut b = b;
    let mut acc = 0u128;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_cvtsi64_si128, _mm_storeu_si128};
    let x = _mm_cvtsi64_si128(a as i64);
    let y = _mm_cvtsi64_si128(b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0x00);
    let mut out = 0u128;
    _mm_storeu_si128(&mut out as *mut u128 as *mut _, r);
    out
}

#[derive(Clone, Debug)]
pub(crate) struct Gf2m {
    m: u32,
    /// Modulus without its leading `z^m` term.
    low: u64,
    mask: u64,
    /// Bit `j` is `Tr(z^j)`.
    trace_mask: u64,
}

impl Gf2m {
    /// `modulus` holds all m+1 coefficient bits, including `z^m`.
    pub(crate) fn new(m: u32, modulus: u64) -> Self {
        assert!((1..=63).contains(&m));
        let mask = (1u64 << m) - 1;
        let mut f = Gf2m {
            m,
            low: modulus & mask,
            mask,
            trace_mask: 0,
        };
        let mut tm = 0u64;
        for j in 0..m {
            tm |= (f.trace_by_definition(1u64 << j) as u64) << j;
        }
        f.trace_mask = tm;
        f
    }

    #[inline]
    pub(crate) fn reduce(&self, mut v: u128) -> u64 {
        loop {
            let hi = (v >> self.m) as u64;
            if hi == 0 {
                return v as u64;
            }
            v = (v & self.mask as u128) ^ clmul(hi, self.low);
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }

    #[inline]
    pub(crate) fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub(crate) fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.mask - 1))
    }

    /// One AND and a popcount: the trace is linear.
    #[inline]
    pub(crate) fn trace(&self, a: u64) -> u32 {
        (a & self.trace_mask).count_ones() & 1
    }

    pub(crate) fn trace_by_definition(&self, a: u64) -> u32 {
        let mut t = 0u64;
        let mut x = a;
        for _ in 0..self.m {
            t ^= x;
            x = self.square(x);
        }
        debug_assert!(t <= 1);
        t as u32
    }

    pub(crate) fn trace_mask(&self) -> u64 {
        self.trace_mask
    }
}

/// Multiplication by a fixed element, as byte-indexed lookup tables.
///
/// `x -> c*x` is GF(2)-linear, so the product is the XOR of one table entry
/// per input byte.
#[derive(Clone)]
pub(crate) struct ConstMul {
    tables: Vec<[u64; 256]>,
}

impl ConstMul {
    pub(crate) fn new(field: &Gf2m, c: u64) -> Self {
        let bytes = field.m.div_ceil(8) as usize;
        let tables = (0..bytes)
            .map(|j| {
                let mut t = [0u64; 256];
                // Linear in the byte value: fill from the eight basis products.
                let basis: Vec<u64> = (0..8)
                    .map(|b| {
                        let bit = 8 * j + b;
                        if bit < field.m as usize {
                            field.mul(c, 1u64 << bit)
                        } else {
                            0
                        }
                    })
                    .collect();
                for v in 1..256usize {
                    let low = v.trailing_zeros() as usize;
                    t[v] = t[v & (v - 1)] ^ basis[low];
                }
                t
            })
            .collect();
        ConstMul { tables }
    }

    #[inline(always)]
    pub(crate) fn apply(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for (j, t) in self.tables.iter().enumerate() {
            acc ^= t[((x >> (8 * j)) & 0xff) as usize];
        }
        acc
    }
}
