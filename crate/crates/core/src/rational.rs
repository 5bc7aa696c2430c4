//! Exact rational scalars and their wire format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Renders `p/q`, or just `p` for integers.
pub fn to_string(x: &Q) -> String {
    x.to_string()
}

pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Integer value if `x` is integral and fits in an `i64`.
pub fn as_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(x))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
}

/// serde adapter for `Vec<Q>`.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&to_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

/// serde adapter for `Vec<Vec<Q>>`.
pub mod vecvec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = xs.iter().map(|r| strings(r)).collect();
        serde::Serialize::serialize(&v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|r| r.iter().map(|s| parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))).collect())
            .collect()
    }
}

pub fn strings(xs: &[Q]) -> Vec<String> {
    xs.iter().map(to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_roundtrip() {
        for (n, d) in [(3, 1), (-1, 2), (0, 5), (22, -7)] {
            let x = qf(n, d);
            assert_eq!(parse(&to_string(&x)), Some(x));
        }
        assert_eq!(to_string(&qf(-1, 2)), "-1/2");
        assert_eq!(to_string(&q(4)), "4");
        assert_eq!(parse("1/0"), None);
    }
}
