use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

/// Closed interval `[lo, hi]` with dyadic endpoints. Every operation rounds
/// outward to `prec` significant bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub prec: u32,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        DyadicInterval { lo, hi, prec }
    }

    pub fn point(v: Dyadic, prec: u32) -> Self {
        DyadicInterval {
            lo: v.clone(),
            hi: v,
            prec,
        }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Self::point(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        DyadicInterval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        DyadicInterval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec,
        }
    }

    fn out(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        DyadicInterval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `self` inside the interior of `other`.
    pub fn strictly_inside(&self, other: &Self) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| DyadicInterval {
            lo,
            hi,
            prec: self.prec.max(other.prec),
        })
    }

    pub fn hull(&self, other: &Self) -> Self {
        DyadicInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn neg(&self) -> Self {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::out(
            self.lo.add(&o.lo),
            self.hi.add(&o.hi),
            self.prec.max(o.prec),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::out(
            self.lo.sub(&o.hi),
            self.hi.sub(&o.lo),
            self.prec.max(o.prec),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Self::out(lo, hi, self.prec.max(o.prec))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.mul(&Self::point(Dyadic::from_bigint(k), self.prec))
    }

    pub fn square(&self) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        if self.contains_zero() {
            Self::out(Dyadic::zero(), a.max(b), self.prec)
        } else {
            Self::out(a.clone().min(b.clone()), a.max(b), self.prec)
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DomainError(
                "reciprocal of an interval containing 0".into(),
            ));
        }
        let one = Dyadic::one();
        Ok(DyadicInterval {
            lo: one.div(&self.hi, self.prec, Round::Down),
            hi: one.div(&self.lo, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.contains_zero() {
            return Err(Error::DomainError(
                "division by an interval containing 0".into(),
            ));
        }
        let prec = self.prec.max(o.prec);
        let cands = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let lo = cands
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Down))
            .min()
            .unwrap();
        let hi = cands
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Up))
            .max()
            .unwrap();
        Ok(DyadicInterval { lo, hi, prec })
    }

    /// Integer power; negative exponents need an interval free of 0.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.powi(-e)?.recip();
        }
        let mut acc = Self::point(Dyadic::one(), self.prec);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::DomainError(
                "square root of a negative enclosure".into(),
            ));
        }
        Ok(DyadicInterval {
            lo: self.lo.sqrt(self.prec, Round::Down),
            hi: self.hi.sqrt(self.prec, Round::Up),
            prec: self.prec,
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Round both endpoints to `sig` significant decimal digits; `Some` only
    /// when they agree.
    pub fn to_decimal(&self, sig: usize) -> Option<String> {
        let a = format_sig(&self.lo.to_rational(), sig);
        let b = format_sig(&self.hi.to_rational(), sig);
        (a == b).then_some(a)
    }

    /// Whether every point lies within half a unit of the last printed
    /// digit of `printed` (e.g. `"4.729032"` allows `+-5e-7`).
    pub fn matches_printed(&self, printed: &str) -> bool {
        let Some((value, decimals)) = parse_decimal(printed) else {
            return false;
        };
        let half_ulp = BigRational::new(BigInt::from(1), BigInt::from(10).pow(decimals) * 2);
        let lo = &value - &half_ulp;
        let hi = &value + &half_ulp;
        lo <= self.lo.to_rational() && self.hi.to_rational() <= hi
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Parse a plain decimal like `-3.320192` into an exact rational and its
/// number of fractional digits.
pub fn parse_decimal(s: &str) -> Option<(BigRational, u32)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let decimals = frac.len() as u32;
    let mut v = BigRational::new(digits, BigInt::from(10).pow(decimals));
    if neg {
        v = -v;
    }
    Some((v, decimals))
}

/// Round half away from zero to `sig` significant digits, printed in plain
/// positional notation (`d.ddddddddd` for `sig = 10` and magnitude in `[1,10)`).
pub fn format_sig(q: &BigRational, sig: usize) -> String {
    if q.is_zero() {
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::from_integer(BigInt::from(1)) {
        scaled *= &ten;
        e -= 1;
    }
    let decimals = sig as i64 - 1 - e;
    let factor = BigRational::from_integer(BigInt::from(10).pow(decimals.unsigned_abs() as u32));
    let shifted = if decimals >= 0 {
        &a * &factor
    } else {
        &a / &factor
    };
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut n = (shifted + half).floor().to_integer();
    // rounding may carry into a new digit (9.99.. -> 10.0..)
    let mut decimals = decimals;
    if n.to_string().len() > sig {
        n /= 10;
        decimals -= 1;
    }
    let digits = n.to_string();
    let body = if decimals > 0 {
        let d = decimals as usize;
        let padded = format!("{:0>width$}", digits, width = d + 1);
        let (i, f) = padded.split_at(padded.len() - d);
        format!("{i}.{f}")
    } else {
        let zeros = "0".repeat((-decimals) as usize);
        format!("{digits}{zeros}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
