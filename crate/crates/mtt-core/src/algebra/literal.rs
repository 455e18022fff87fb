//! Parsing of ring descriptors and ring-element literals from instance
//! documents.
//!
//! Ring names: `rational`, `gaussian`, `quaternion`, `group_ring:k`,
//! `matrix:N:<base>`. Element literals: rationals as `"p/q"` (or bare
//! integers), Gaussian as a 2-array, quaternions as a 4-array, group ring
//! elements as a k-array of integers, matrices as N×N nested arrays.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use super::ring::{Element, Ring};
use crate::Error;

pub fn parse_ring(s: &str) -> Result<Ring, Error> {
    match s {
        "rational" => Ok(Ring::Rational),
        "gaussian" => Ok(Ring::Gaussian),
        "quaternion" => Ok(Ring::Quaternion),
        _ => {
            if let Some(k) = s.strip_prefix("group_ring:") {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::MalformedInstance(format!("bad ring `{s}`")))?;
                if k == 0 {
                    return Err(Error::MalformedInstance("group_ring:0".into()));
                }
                return Ok(Ring::GroupRing(k));
            }
            if let Some(rest) = s.strip_prefix("matrix:") {
                let (n, base) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::MalformedInstance(format!("bad ring `{s}`")))?;
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::MalformedInstance(format!("bad ring `{s}`")))?;
                if n == 0 {
                    return Err(Error::MalformedInstance("matrix:0".into()));
                }
                return Ok(Ring::Matrix(n, Box::new(parse_ring(base)?)));
            }
            Err(Error::MalformedInstance(format!("unknown ring `{s}`")))
        }
    }
}

pub fn render_ring(r: &Ring) -> String {
    match r {
        Ring::Rational => "rational".into(),
        Ring::Gaussian => "gaussian".into(),
        Ring::Quaternion => "quaternion".into(),
        Ring::GroupRing(k) => format!("group_ring:{k}"),
        Ring::Matrix(n, base) => format!("matrix:{n}:{}", render_ring(base)),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, Error> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::MalformedInstance(format!("non-integer number {n}")))?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((p, q)) => (p.trim(), q.trim()),
                None => (s.trim(), "1"),
            };
            let p: BigInt = num
                .parse()
                .map_err(|_| Error::MalformedInstance(format!("bad rational `{s}`")))?;
            let q: BigInt = den
                .parse()
                .map_err(|_| Error::MalformedInstance(format!("bad rational `{s}`")))?;
            if q.is_zero() {
                return Err(Error::MalformedInstance(format!("zero denominator `{s}`")));
            }
            Ok(BigRational::new(p, q))
        }
        _ => Err(Error::MalformedInstance(format!("bad rational literal {v}"))),
    }
}

pub fn parse_element(ring: &Ring, v: &Value) -> Result<Element, Error> {
    match ring {
        Ring::Rational => Ok(Element::Rational(parse_rational(v)?)),
        Ring::Gaussian => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::MalformedInstance("gaussian literal must be a 2-array".into()))?;
            Ok(Element::Gaussian([
                parse_rational(&arr[0])?,
                parse_rational(&arr[1])?,
            ]))
        }
        Ring::Quaternion => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| Error::MalformedInstance("quaternion literal must be a 4-array".into()))?;
            Ok(Element::Quaternion([
                parse_rational(&arr[0])?,
                parse_rational(&arr[1])?,
                parse_rational(&arr[2])?,
                parse_rational(&arr[3])?,
            ]))
        }
        Ring::GroupRing(k) => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == *k)
                .ok_or_else(|| {
                    Error::MalformedInstance(format!("group ring literal must be a {k}-array"))
                })?;
            let coeffs = arr
                .iter()
                .map(|x| {
                    x.as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::MalformedInstance("group ring coefficients must be integers".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Element::GroupRing(coeffs))
        }
        Ring::Matrix(n, base) => {
            let rows = v
                .as_array()
                .filter(|a| a.len() == *n)
                .ok_or_else(|| Error::MalformedInstance(format!("matrix literal must be {n} rows")))?;
            let mut entries = Vec::with_capacity(n * n);
            for row in rows {
                let cols = row
                    .as_array()
                    .filter(|a| a.len() == *n)
                    .ok_or_else(|| {
                        Error::MalformedInstance(format!("matrix row must have {n} entries"))
                    })?;
                for c in cols {
                    entries.push(parse_element(base, c)?);
                }
            }
            Ok(Element::Matrix { size: *n, entries })
        }
    }
}
