//! Exact dense polynomials over integer-like rings.
//!
//! `Poly<R>` is a univariate polynomial (constant term first) over any
//! [`Ring`]. Nesting gives multivariate polynomials: `BiPoly` is a polynomial
//! whose coefficients are `IntPoly`, and `TriPoly` nests once more. The outer
//! variable is always the one eliminated by [`resultant`].

mod cyclotomic;
mod intpoly;
mod ring;
mod sparse;
mod text;

pub use cyclotomic::{
    chebyshev_double_cover, cyclotomic, cyclotomic_candidates, euler_phi, minpoly_two_cos,
};
pub use intpoly::{divides, gcd, squarefree_part};
pub use ring::{int_gcd, Ring};
pub use sparse::{MultiPoly, Var};
pub use text::{
    clear_denominators, format_poly, parse_int_poly, parse_rational_poly, serde_t, serde_x,
    RationalPoly,
};

use num_bigint::BigInt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type IntPoly = Poly<BigInt>;
pub type BiPoly = Poly<IntPoly>;
pub type TriPoly = Poly<BiPoly>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_exact_scalar(&self, c: &R) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < dd {
            return self.clone();
        }
        let lcd = d.lc();
        let mut remaining = (da - dd + 1) as u32;
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.lc();
            r = r.scale(&lcd).sub_poly(&d.scale(&c).shift(dr - dd));
            remaining -= 1;
        }
        if remaining > 0 {
            r = r.scale(&lcd.pow(remaining));
        }
        r
    }

    /// Exact quotient `self / d`; `None` if some step needs a non-exact
    /// coefficient division or the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < dd {
            return None;
        }
        let lcd = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(&lcd)?;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    fn add_poly(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn sub_poly(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.sub(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.neg(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    fn neg_poly(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// `self(inner)`, composing polynomials over the same ring.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul_poly(inner).add_poly(&Self::constant(c.clone()))
        })
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_poly(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_poly(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Poly::div_exact(self, other)
    }
}

impl<'a, R: Ring> Add for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        self.add_poly(rhs)
    }
}

impl<'a, R: Ring> Sub for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        self.sub_poly(rhs)
    }
}

impl<'a, R: Ring> Mul for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        self.mul_poly(rhs)
    }
}

impl<'a, R: Ring> Neg for &'a Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_poly()
    }
}

/// Sylvester resultant with respect to the outer variable, computed with the
/// subresultant remainder sequence (fraction-free over any [`Ring`]).
///
/// Both operands of degree zero give `1` (empty Sylvester matrix).
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return R::zero();
    };
    let (mut a, mut b) = if da < db {
        (b.clone(), a.clone())
    } else {
        (a.clone(), b.clone())
    };
    let mut negate = da % 2 == 1 && db % 2 == 1 && da < db;
    let sign = |v: R, neg: bool| if neg { v.neg() } else { v };

    if b.degree() == Some(0) {
        return sign(b.lc().pow(a.degree().unwrap() as u32), negate);
    }

    let mut g = R::one();
    let mut h = R::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return R::zero();
        }
        a = b;
        let denom = g.mul(&h.pow(delta));
        b = r
            .div_exact_scalar(&denom)
            .expect("subresultant division must be exact");
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update must be exact")
        };
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().unwrap() as u32;
    let res = b
        .lc()
        .pow(da)
        .div_exact(&h.pow(da - 1))
        .expect("final subresultant division must be exact");
    sign(res, negate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn trims_leading_zeros() {
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(ip(&[0, 0]).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = ip(&[-1, 0, 1]);
        let b = ip(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(ip(&[1, 1])));
        assert_eq!(ip(&[1, 0, 1]).div_exact(&b), None);
    }

    #[test]
    fn pseudo_remainder_matches_definition() {
        // lc(b)^2 * a mod b with a = x^2 + 1, b = 2x + 1 -> 4a = (2x+1)(2x-1) + 5
        let r = ip(&[1, 0, 1]).pseudo_rem(&ip(&[1, 2]));
        assert_eq!(r, ip(&[5]));
    }

    #[test]
    fn univariate_resultants() {
        // Res(x - 2, x - 3) = -1 ; Res(x^2 - 2, x^2 - 3) = 1
        assert_eq!(resultant(&ip(&[-2, 1]), &ip(&[-3, 1])), BigInt::from(-1));
        assert_eq!(
            resultant(&ip(&[-2, 0, 1]), &ip(&[-3, 0, 1])),
            BigInt::from(1)
        );
        assert_eq!(
            resultant(&ip(&[-1, 0, 1]), &ip(&[1, -2, 1])),
            BigInt::from(0)
        );
        assert_eq!(resultant(&ip(&[5]), &ip(&[1, 1, 1])), BigInt::from(25));
    }

    #[test]
    fn bivariate_resultant_eliminates_outer_variable() {
        // outer y, coefficients in x: y - x^2 and y - 1
        let p: BiPoly = Poly::new(vec![-&ip(&[0, 0, 1]), IntPoly::one()]);
        let q: BiPoly = Poly::new(vec![ip(&[-1]), IntPoly::one()]);
        let r = resultant(&p, &q);
        assert!(r == ip(&[-1, 0, 1]) || r == ip(&[1, 0, -1]));

        // outer x, coefficients in t: x^2 - 2 and x^2 - t gives (t - 2)^2
        let p: BiPoly = Poly::new(vec![ip(&[-2]), IntPoly::zero(), IntPoly::one()]);
        let q: BiPoly = Poly::new(vec![ip(&[0, -1]), IntPoly::zero(), IntPoly::one()]);
        assert_eq!(resultant(&p, &q), ip(&[4, -4, 1]));
    }
}
