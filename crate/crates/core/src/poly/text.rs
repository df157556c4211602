//! Expanded-form polynomial text, e.g. `t^3+t^2-18*t-43` or
//! `t^4+9/2*t^3+27/4*t^2+35/8*t+17/16`.

use super::{IntPoly, Poly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense rational coefficients, constant term first.
pub type RationalPoly = Vec<BigRational>;

pub fn format_poly(p: &IntPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        match (mag.is_one(), mono.is_empty()) {
            (_, true) => out.push_str(&mag.to_string()),
            (true, false) => out.push_str(&mono),
            (false, false) => out.push_str(&format!("{mag}*{mono}")),
        }
    }
    out
}

fn parse_err(text: &str, why: &str) -> Error {
    Error::Parse(format!("{why} in polynomial {text:?}"))
}

pub fn parse_rational_poly(text: &str, var: &str) -> Result<RationalPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err(text, "empty input"));
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut coeffs: Vec<BigRational> = Vec::new();
    let read_int = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| s[start..*pos].parse().unwrap())
    };
    while pos < bytes.len() {
        let mut sign = BigInt::one();
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -sign;
                pos += 1
            }
            _ if pos != 0 => return Err(parse_err(text, "expected '+' or '-'")),
            _ => {}
        }
        let mut coeff = BigRational::one();
        let mut has_coeff = false;
        if let Some(num) = read_int(&mut pos) {
            has_coeff = true;
            let mut den = BigInt::one();
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                den = read_int(&mut pos).ok_or_else(|| parse_err(text, "missing denominator"))?;
                if den.is_zero() {
                    return Err(parse_err(text, "zero denominator"));
                }
            }
            coeff = BigRational::new(num, den);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if !s[pos..].starts_with(var) {
                    return Err(parse_err(text, "expected variable after '*'"));
                }
            }
        }
        let mut power = 0usize;
        if s[pos..].starts_with(var) {
            pos += var.len();
            power = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let e = read_int(&mut pos).ok_or_else(|| parse_err(text, "missing exponent"))?;
                power = e
                    .try_into()
                    .map_err(|_| parse_err(text, "exponent too large"))?;
            }
        } else if !has_coeff {
            return Err(parse_err(text, "expected a term"));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::zero());
        }
        coeffs[power] += coeff * BigRational::from_integer(sign);
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Multiply by the lcm of denominators; the result is returned as is (not
/// made primitive).
pub fn clear_denominators(p: &RationalPoly) -> IntPoly {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    Poly::new(
        p.iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

/// Parse an integer polynomial; rational coefficients have their
/// denominators cleared.
pub fn parse_int_poly(text: &str, var: &str) -> Result<IntPoly> {
    Ok(clear_denominators(&parse_rational_poly(text, var)?))
}

macro_rules! poly_serde {
    ($name:ident, $var:expr) => {
        /// Serialize an [`IntPoly`] as expanded text.
        pub mod $name {
            use crate::poly::IntPoly;
            use serde::{Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&super::format_poly(p, $var))
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
                let text = String::deserialize(d)?;
                super::parse_int_poly(&text, $var).map_err(serde::de::Error::custom)
            }
        }
    };
}

poly_serde!(serde_t, "t");
poly_serde!(serde_x, "x");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let p = parse_int_poly("t^3+t^2-18*t-43", "t").unwrap();
        assert_eq!(p, IntPoly::from_i64s(&[-43, -18, 1, 1]));
        assert_eq!(format_poly(&p, "t"), "t^3+t^2-18*t-43");
        let q = parse_int_poly("t^3+t^2+3/4*t+1/8", "t").unwrap();
        assert_eq!(q, IntPoly::from_i64s(&[1, 6, 8, 8]));
        let r = parse_int_poly("t + 1/4", "t").unwrap();
        assert_eq!(r, IntPoly::from_i64s(&[1, 4]));
        assert_eq!(format_poly(&IntPoly::from_i64s(&[0, -1]), "x"), "-x");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_int_poly("", "t").is_err());
        assert!(parse_int_poly("t^", "t").is_err());
        assert!(parse_int_poly("3*", "t").is_err());
        assert!(parse_int_poly("1/0*t", "t").is_err());
        assert!(parse_int_poly("t t", "t").is_err());
    }
}
