use super::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `n`-th cyclotomic polynomial, `X^n - 1` divided by every `Phi_d`
/// with `d | n`, `d < n`. Results are memoized process-wide.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut acc = IntPoly::monomial(BigInt::one(), n as usize);
    acc = &acc - &IntPoly::from_i64s(&[1]);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic(d);
        acc = acc
            .div_exact(&phi_d)
            .expect("cyclotomic factors divide X^n - 1");
    }
    cache().lock().unwrap().insert(n, acc.clone());
    acc
}

/// Totient table for `0..=limit`.
fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Every `N` with `phi(N) <= max_degree`, ascending. The search stops at
/// `2 * max_degree^2`, which suffices because `phi(N) >= sqrt(N / 2)`.
pub fn cyclotomic_candidates(max_degree: u64) -> Vec<u64> {
    if max_degree == 0 {
        return Vec::new();
    }
    let limit = (2 * max_degree * max_degree) as usize;
    let phi = totients(limit);
    (1..=limit as u64)
        .filter(|&n| phi[n as usize] <= max_degree)
        .collect()
}

/// Primitive part of `(2X)^d p((X^2 + 1) / (2X))`: its roots are the `z`
/// with `p((z + 1/z) / 2) = 0`.
pub fn chebyshev_double_cover(p: &IntPoly) -> IntPoly {
    let d = p.degree().expect("double cover of the zero polynomial");
    let x2p1 = IntPoly::from_i64s(&[1, 0, 1]);
    let two_x = IntPoly::from_i64s(&[0, 2]);
    let mut pow_x2p1 = vec![IntPoly::from_i64s(&[1])];
    let mut pow_2x = vec![IntPoly::from_i64s(&[1])];
    for i in 1..=d {
        pow_x2p1.push(&pow_x2p1[i - 1] * &x2p1);
        pow_2x.push(&pow_2x[i - 1] * &two_x);
    }
    let mut acc = IntPoly::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = (&pow_x2p1[i] * &pow_2x[d - i]).scale(c);
        acc = &acc + &term;
    }
    acc.canonical()
}

/// Minimal polynomial of `2 cos(2 pi / n)`, `n >= 3`, read off from the
/// palindromic `Phi_n(X) = X^(phi/2) Psi_n(X + 1/X)`.
pub fn minpoly_two_cos(n: u64) -> IntPoly {
    assert!(n >= 3, "minpoly_two_cos needs n >= 3");
    let phi = cyclotomic(n);
    let m = phi.degree().unwrap() / 2;
    // D_k(s) = X^k + X^-k as a polynomial in s = X + 1/X
    let s = IntPoly::from_i64s(&[0, 1]);
    let mut dk = vec![IntPoly::from_i64s(&[2]), s.clone()];
    for k in 2..=m {
        let next = &(&s * &dk[k - 1]) - &dk[k - 2];
        dk.push(next);
    }
    let mut psi = IntPoly::constant(phi.coeff(m));
    for k in 1..=m {
        psi = &psi + &dk[k].scale(&phi.coeff(m + k));
    }
    psi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{gcd, Poly};

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic(2), ip(&[1, 1]));
        assert_eq!(cyclotomic(6), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ip(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_coefficient_minus_two() {
        let p = cyclotomic(105);
        assert_eq!(p.degree(), Some(48));
        assert!(p.coeffs().iter().any(|c| *c == BigInt::from(-2)));
        // every smaller index stays within {-1, 0, 1}
        for n in 1..105 {
            assert!(cyclotomic(n)
                .coeffs()
                .iter()
                .all(|c| c.magnitude() <= &One::one()));
        }
    }

    #[test]
    fn product_of_divisor_cyclotomics() {
        for n in 1..=60u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(ip(&[1]), |acc, d| &acc * &cyclotomic(d));
            let mut expect = IntPoly::monomial(BigInt::one(), n as usize);
            expect = &expect - &ip(&[1]);
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn candidates() {
        assert_eq!(cyclotomic_candidates(1), vec![1, 2]);
        assert_eq!(cyclotomic_candidates(2), vec![1, 2, 3, 4, 6]);
        // the classical bound N <= 150 for phi(N) <= 30 is not tight: the
        // largest such N is 90
        let c30 = cyclotomic_candidates(30);
        assert_eq!(*c30.last().unwrap(), 90);
        assert!(c30.iter().all(|&n| n <= 150 && euler_phi(n) <= 30));
    }

    #[test]
    fn double_cover_examples() {
        assert_eq!(
            chebyshev_double_cover(&ip(&[1, 6, 8, 8])),
            ip(&[1, 2, 6, 5, 6, 2, 1])
        );
        assert_eq!(chebyshev_double_cover(&ip(&[-1, 2])), cyclotomic(6));
        assert_eq!(chebyshev_double_cover(&ip(&[0, 1])), cyclotomic(4));
    }

    #[test]
    fn two_cos_minpolys() {
        assert_eq!(minpoly_two_cos(5), ip(&[-1, 1, 1]));
        assert_eq!(minpoly_two_cos(6), ip(&[-1, 1]));
        assert_eq!(minpoly_two_cos(12), ip(&[-3, 0, 1]));
        for n in 3..=40u64 {
            let psi = minpoly_two_cos(n);
            assert_eq!(psi.degree(), Some(euler_phi(n) as usize / 2));
            // Psi_n(2t) double-covers onto Phi_n
            let doubled = Poly::new(
                psi.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c << i)
                    .collect(),
            );
            let r = chebyshev_double_cover(&doubled);
            assert_eq!(gcd(&r, &cyclotomic(n)), cyclotomic(n), "n = {n}");
        }
    }
}
