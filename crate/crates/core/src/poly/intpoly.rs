use super::{int_gcd, IntPoly, Poly};
use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

impl IntPoly {
    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs()
            .iter()
            .fold(BigInt::zero(), |acc, c| int_gcd(&acc, c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.map_coeffs(|a| a / &c)
    }

    /// Primitive with positive leading coefficient.
    pub fn canonical(&self) -> Self {
        let p = self.primitive_part();
        if p.lc().is_negative() {
            -&p
        } else {
            p
        }
    }

    pub fn is_canonical(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.lc().is_positive()
    }

    /// Remove the factor `t^k` of largest `k`.
    pub fn strip_x_powers(&self) -> Self {
        let k = self.coeffs().iter().take_while(|c| c.is_zero()).count();
        Poly::new(self.coeffs()[k..].to_vec())
    }

    /// Multiplicity of 0 as a root.
    pub fn x_valuation(&self) -> usize {
        self.coeffs().iter().take_while(|c| c.is_zero()).count()
    }

    /// `X^deg * p(1/X)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs().to_vec();
        c.reverse();
        Poly::new(c)
    }

    /// `p(X + 1)` by repeated synthetic division.
    pub fn taylor_shift_one(&self) -> Self {
        let mut c = self.coeffs().to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let v = c[j + 1].clone();
                c[j] += v;
            }
        }
        Poly::new(c)
    }

    /// `p(-X)`.
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Number of sign changes in the coefficient sequence (zeros skipped).
    pub fn sign_variations(&self) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for c in self.coeffs() {
            let s = c.sign();
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn eval_rational(&self, at: &BigRational) -> BigRational {
        self.coeffs()
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * at + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of `p(m / 2^k)`, evaluated exactly as `2^(k*deg) p(m/2^k)`.
    pub fn sign_at_dyadic(&self, m: &BigInt, k: u64) -> Sign {
        let Some(d) = self.degree() else {
            return Sign::NoSign;
        };
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            acc = acc * m + (c << (k * (d - i) as u64));
        }
        acc.sign()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Canonical (primitive, positive leading coefficient) gcd over `Q[X]`
/// scaled into `Z[X]`; the zero polynomial only when both inputs are zero.
pub fn gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.primitive_part(), q.primitive_part())
    } else {
        (q.primitive_part(), p.primitive_part())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    if a.degree() == Some(0) {
        IntPoly::from_i64s(&[1])
    } else {
        a.canonical()
    }
}

/// Whether `p` divides `q` in `Q[X]`.
pub fn divides(p: &IntPoly, q: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::DivisionByZeroPoly);
    }
    Ok(q.is_zero() || q.pseudo_rem(p).is_zero())
}

/// `p / gcd(p, p')`, canonical.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::DivisionByZeroPoly);
    }
    let pp = p.canonical();
    if pp.degree() == Some(0) {
        return Ok(pp);
    }
    let g = gcd(&pp, &pp.derivative());
    let q = pp
        .div_exact(&g)
        .expect("primitive gcd divides a primitive polynomial over Z");
    Ok(q.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn squarefree_examples() {
        // (t+1)^2 (t-2) = t^3 - 3t - 2
        let p = ip(&[-2, -3, 0, 1]);
        assert_eq!(squarefree_part(&p).unwrap(), ip(&[-2, -1, 1]));
        assert_eq!(
            squarefree_part(&IntPoly::zero()),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&ip(&[-1, 0, 1]), &ip(&[1, -2, 1])), ip(&[-1, 1]));
        assert_eq!(gcd(&ip(&[-2, 0, 1]), &ip(&[-3, 0, 1])), ip(&[1]));
        assert_eq!(gcd(&ip(&[0, -6, 6]), &IntPoly::zero()), ip(&[0, -1, 1]));
    }

    #[test]
    fn divides_example() {
        let f = ip(&[-43, -18, 1, 1]);
        let p = &ip(&[1, 1]) * &f;
        assert!(divides(&f, &p).unwrap());
        assert!(!divides(&ip(&[-1, 1]), &p).unwrap());
        // rational divisibility: 2t - 1 divides t^2 - t/4 * ... scaled
        assert!(divides(&ip(&[-1, 2]), &ip(&[-1, 2, 0])).unwrap());
        assert_eq!(
            divides(&IntPoly::zero(), &p),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn taylor_shift_and_reverse() {
        // (x+1)^2 - 1 = x^2 + 2x
        assert_eq!(ip(&[-1, 0, 1]).taylor_shift_one(), ip(&[0, 2, 1]));
        assert_eq!(ip(&[1, 2, 3]).reverse(), ip(&[3, 2, 1]));
        assert_eq!(ip(&[1, 0, -1, 1]).sign_variations(), 2);
    }

    #[test]
    fn dyadic_sign() {
        let p = ip(&[-2, 0, 1]);
        // p(1.5) > 0, p(1.25) < 0
        assert_eq!(p.sign_at_dyadic(&BigInt::from(3), 1), Sign::Plus);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(5), 2), Sign::Minus);
        assert_eq!(
            ip(&[-1, 1]).sign_at_dyadic(&BigInt::from(4), 2),
            Sign::NoSign
        );
    }
}
