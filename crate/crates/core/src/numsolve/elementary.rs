use super::dyadic::Dyadic;
use super::interval::DyadicInterval;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

const GUARD: u32 = 32;

/// `atan(1/n) * 2^w` truncated term by term. Returns the sum and the number
/// of terms; the absolute error is below `terms + 1` units.
fn atan_inv_fixed(n: u32, w: u64) -> (BigInt, u64) {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = (BigInt::one() << w) / &n;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    (sum, k)
}

/// Enclosure of pi from Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> DyadicInterval {
    let w = prec as u64 + GUARD as u64;
    let (a, ta) = atan_inv_fixed(5, w);
    let (b, tb) = atan_inv_fixed(239, w);
    let s = a * 16 - b * 4;
    let err = BigInt::from(16 * (ta + 1) + 4 * (tb + 1));
    let lo = Dyadic::new(&s - &err, -(w as i64));
    let hi = Dyadic::new(&s + &err, -(w as i64));
    DyadicInterval::new(lo, hi, prec).with_prec(prec)
}

/// Enclosure of `atan(z)` for a point `z`.
fn atan_point(z: &Dyadic, prec: u32) -> DyadicInterval {
    let wp = prec + GUARD;
    if z.is_zero() {
        return DyadicInterval::point(Dyadic::zero(), prec);
    }
    if z.is_negative() {
        return atan_point(&z.neg(), prec).neg();
    }
    let one = DyadicInterval::from_int(1, wp);
    let mut x = DyadicInterval::point(z.clone(), wp);
    let mut outer = None;
    if z > &Dyadic::one() {
        outer = Some(pi(wp).mul(&DyadicInterval::point(Dyadic::pow2(-1), wp)));
        x = x.recip().expect("z > 1");
    }
    // atan(x) = 2 atan(x / (1 + sqrt(1 + x^2)))
    let mut doublings = 0u32;
    while x.hi > Dyadic::pow2(-8) {
        let r = one.add(&x.square()).sqrt().expect("1 + x^2 > 0");
        x = x.div(&one.add(&r)).expect("denominator >= 2");
        doublings += 1;
    }
    // alternating Taylor series; the remainder is bounded by the next term
    let x2 = x.square();
    let mut power = x.clone();
    let mut sum = DyadicInterval::from_int(0, wp);
    let mut k: u64 = 0;
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    loop {
        let term = power.div(&DyadicInterval::from_int(2 * k + 1, wp)).unwrap();
        if term.mag() < eps {
            let bound = term.mag();
            sum = sum.add(&DyadicInterval::new(bound.neg(), bound, wp));
            break;
        }
        sum = if k % 2 == 0 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        power = power.mul(&x2);
        k += 1;
    }
    let mut r = sum.mul(&DyadicInterval::point(Dyadic::pow2(doublings as i64), wp));
    if let Some(half_pi) = outer {
        r = half_pi.sub(&r);
    }
    r.with_prec(prec)
}

/// Enclosure of `atan` over an interval (monotone increasing).
pub fn atan(x: &DyadicInterval) -> DyadicInterval {
    let prec = x.prec;
    let lo = atan_point(&x.lo, prec);
    let hi = atan_point(&x.hi, prec);
    DyadicInterval::new(lo.lo, hi.hi, prec)
}

/// `arccos(x) = 2 atan(sqrt((1 - x) / (1 + x)))` at a point in `(-1, 1]`.
fn arccos_point(x: &Dyadic, prec: u32) -> Result<DyadicInterval> {
    let one = Dyadic::one();
    if x > &one || x < &one.neg() {
        return Err(Error::DomainError(format!(
            "arccos argument {} outside [-1, 1]",
            x
        )));
    }
    if x == &one.neg() {
        return Ok(pi(prec));
    }
    let wp = prec + GUARD;
    let xi = DyadicInterval::point(x.clone(), wp);
    let onei = DyadicInterval::from_int(1, wp);
    let q = onei.sub(&xi).div(&onei.add(&xi))?;
    let s = q.sqrt()?;
    let a = atan(&s);
    Ok(a.mul(&DyadicInterval::from_int(2, wp)).with_prec(prec))
}

/// Enclosure of `arccos` over an interval (monotone decreasing).
pub fn arccos(x: &DyadicInterval) -> Result<DyadicInterval> {
    let prec = x.prec;
    let hi = arccos_point(&x.lo, prec)?;
    let lo = arccos_point(&x.hi, prec)?;
    Ok(DyadicInterval::new(lo.lo, hi.hi, prec))
}

/// `alpha = -1 - pi / arccos(-c)`.
pub fn alpha_from_c(c: &DyadicInterval) -> Result<DyadicInterval> {
    let prec = c.prec;
    if c.lo <= Dyadic::one().neg() {
        return Err(Error::DomainError("c may equal -1".into()));
    }
    let a = arccos(&c.neg())?;
    if !a.is_positive() {
        return Err(Error::DomainError("arccos(-c) enclosure touches 0".into()));
    }
    let ratio = pi(prec).div(&a)?;
    Ok(DyadicInterval::from_int(-1, prec).sub(&ratio))
}
