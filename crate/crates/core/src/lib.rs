//! Exact arithmetic for zeta functions of curves over finite fields:
//! finite field arithmetic, integer polynomials, point counting, L-polynomials
//! and divisibility checks between them.

pub mod curves;
pub mod decomp;
pub mod field;
pub mod intpoly;
pub mod zeta;

/// Serializes a list of big integers as decimal strings.
pub(crate) mod serde_bigints {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}
