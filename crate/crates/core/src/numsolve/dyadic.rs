use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Exact dyadic rational `mant * 2^exp`, kept with an odd mantissa (or zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shl_signed(m: &BigInt, s: i64) -> BigInt {
    if s >= 0 {
        m << s as u64
    } else {
        m >> (-s) as u64
    }
}

/// `floor` or `ceil` of `n / 2^k`.
fn shr_round(n: &BigInt, k: u64, dir: Round) -> BigInt {
    let d = BigInt::one() << k;
    match dir {
        Round::Down => n.div_floor(&d),
        Round::Up => -((-n).div_floor(&d)),
    }
}

fn div_round(n: &BigInt, d: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => n.div_floor(d),
        Round::Up => -((-n).div_floor(d)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v.into(), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Dyadic::new(v.clone(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite float");
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        Dyadic::new(
            shl_signed(&self.mant, self.exp - e) + shl_signed(&o.mant, o.exp - e),
            e,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Multiply by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let b = self.mant.bits();
        if b <= prec as u64 {
            return self.clone();
        }
        let k = b - prec as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), self.exp + k as i64)
    }

    /// Round to a multiple of `2^e` in direction `dir`.
    pub fn round_to_exp(&self, e: i64, dir: Round) -> Self {
        if self.is_zero() || self.exp >= e {
            return self.clone();
        }
        let k = (e - self.exp) as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), e)
    }

    /// `self / o` with `prec` significant bits, rounded in direction `dir`.
    pub fn div(&self, o: &Self, prec: u32, dir: Round) -> Self {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let s = prec as i64 + o.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let s = s.max(0);
        let num = &self.mant << s as u64;
        let q = div_round(&num, &o.mant, dir);
        Dyadic::new(q, self.exp - o.exp - s).round(prec, dir)
    }

    /// Square root with `prec` significant bits, rounded in direction `dir`.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut s = 2 * prec as i64 + 4 - self.mant.bits() as i64;
        s = s.max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = &self.mant << s as u64;
        let mut r = n.sqrt();
        if dir == Round::Up && &r * &r < n {
            r += 1;
        }
        Dyadic::new(r, (self.exp - s) / 2).round(prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Round a rational to `prec` significant bits in direction `dir`.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        Dyadic::from_bigint(q.numer()).div(&Dyadic::from_bigint(q.denom()), prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Down);
        let m = r.mant.to_f64().unwrap();
        m * 2f64.powi(r.exp.clamp(-2000, 2000) as i32)
    }

    /// Midpoint of two dyadics (exact).
    pub fn midpoint(a: &Self, b: &Self) -> Self {
        a.add(b).mul_pow2(-1)
    }

    /// Exact `floor(log2 |self|)`, undefined for zero.
    pub fn log2_floor(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", &self.mant << self.exp as u64)
        } else {
            write!(f, "{}/2^{}", self.mant, -self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_order() {
        let a = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(a, Dyadic::new(BigInt::from(3), 2));
        assert!(Dyadic::from_f64(0.5) < Dyadic::from_f64(0.75));
        assert_eq!(
            Dyadic::from_f64(-0.375).to_rational(),
            BigRational::new((-3).into(), 8.into())
        );
    }

    #[test]
    fn directed_rounding_brackets() {
        let third_lo = Dyadic::one().div(&Dyadic::from_int(3), 64, Round::Down);
        let third_hi = Dyadic::one().div(&Dyadic::from_int(3), 64, Round::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert!(third_lo.to_rational() < third && third < third_hi.to_rational());
        assert!(third_hi.sub(&third_lo) <= Dyadic::pow2(-63));
        let m = Dyadic::from_int(-7);
        assert_eq!(m.round(2, Round::Down), Dyadic::from_int(-8));
        assert_eq!(m.round(2, Round::Up), Dyadic::from_int(-6));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        assert!(lo.mul(&lo) < two && hi.mul(&hi) > two);
        assert!(hi.sub(&lo) <= Dyadic::pow2(-98));
        assert_eq!(
            Dyadic::from_int(9).sqrt(10, Round::Down),
            Dyadic::from_int(3)
        );
        assert_eq!(
            Dyadic::from_f64(0.25).sqrt(10, Round::Up),
            Dyadic::from_f64(0.5)
        );
    }
}
