use super::dyadic::Dyadic;
use super::interval::DyadicInterval;
use crate::error::{Error, Result};
use crate::poly::{squarefree_part, IntPoly, Poly};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use std::fmt;

fn sign_at(p: &IntPoly, d: &Dyadic) -> Sign {
    if d.exponent() >= 0 {
        p.sign_at_dyadic(&(d.mantissa() << d.exponent() as u64), 0)
    } else {
        p.sign_at_dyadic(d.mantissa(), (-d.exponent()) as u64)
    }
}

/// Smallest `e` with every root of `p` in `(-2^e, 2^e)` (Cauchy bound).
fn root_bound_exp(p: &IntPoly) -> i64 {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // 1 + m / lc < 2^e
    let q: BigInt = m / &lc + 2;
    q.bits() as i64
}

/// `2^deg * q(X / 2)`.
fn halve(q: &IntPoly) -> IntPoly {
    let d = q.degree().unwrap_or(0);
    Poly::new(
        q.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c << (d - i))
            .collect(),
    )
}

fn descartes_01(q: &IntPoly) -> usize {
    q.reverse().taylor_shift_one().sign_variations()
}

/// Isolating intervals `(lo, hi)` for the positive roots of a squarefree `p`
/// with `p(0) != 0`; `lo == hi` marks an exact dyadic root.
fn positive_roots(p: &IntPoly) -> Vec<(Dyadic, Dyadic)> {
    let e = root_bound_exp(p);
    // q(y) = p(2^e y), roots in (0, 1)
    let q = Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c << (e as usize * i))
            .collect(),
    );
    let mut out = Vec::new();
    let mut stack: Vec<(IntPoly, BigInt, i64)> = vec![(q, BigInt::zero(), 0)];
    while let Some((q, c, k)) = stack.pop() {
        let v = descartes_01(&q);
        let scale = e - k;
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push((Dyadic::new(c.clone(), scale), Dyadic::new(&c + 1, scale)));
            continue;
        }
        let left = halve(&q);
        let mut right = left.taylor_shift_one();
        let mid: BigInt = &c * 2 + 1;
        if right.coeff(0).is_zero() {
            let root = Dyadic::new(mid.clone(), scale - 1);
            out.push((root.clone(), root));
            right = Poly::new(right.coeffs()[1..].to_vec());
        }
        stack.push((right, mid, k + 1));
        stack.push((left, &c * 2, k + 1));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Disjoint isolating intervals for all real roots of `p`, ascending.
/// Degenerate intervals (`lo == hi`) are exact dyadic roots.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<DyadicInterval>> {
    let sq = squarefree_part(p)?;
    let mut roots = Vec::new();
    if sq.degree() == Some(0) {
        return Ok(roots);
    }
    let zero_root = sq.coeff(0).is_zero();
    let core = sq.strip_x_powers();
    let prec = 64;
    if core.degree().unwrap_or(0) > 0 {
        for (lo, hi) in positive_roots(&core.reflect()).into_iter().rev() {
            roots.push(DyadicInterval::new(hi.neg(), lo.neg(), prec));
        }
    }
    if zero_root {
        roots.push(DyadicInterval::point(Dyadic::zero(), prec));
    }
    if core.degree().unwrap_or(0) > 0 {
        for (lo, hi) in positive_roots(&core) {
            roots.push(DyadicInterval::new(lo, hi, prec));
        }
    }
    Ok(roots)
}

/// Real algebraic number: a squarefree integer polynomial and an interval
/// containing exactly one of its real roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    pub annihilator: IntPoly,
    pub isolator: DyadicInterval,
}

impl AlgebraicNumber {
    /// `p` must be squarefree and `iv` must isolate one of its roots.
    pub fn new(annihilator: IntPoly, isolator: DyadicInterval) -> Self {
        AlgebraicNumber {
            annihilator,
            isolator,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.isolator.lo == self.isolator.hi
    }

    /// Bisect until the isolator is at most `2^-bits` wide.
    pub fn refine(&self, bits: u32) -> Self {
        let iv = refine(&self.annihilator, &self.isolator, bits);
        AlgebraicNumber::new(self.annihilator.clone(), iv)
    }

    pub fn to_f64(&self) -> f64 {
        self.refine(60).isolator.mid().to_f64()
    }

    /// Ten significant digits, refined until the printed value is certain.
    pub fn to_decimal(&self, sig: usize) -> String {
        let mut bits = 64;
        loop {
            let a = self.refine(bits);
            if let Some(s) = a.isolator.to_decimal(sig) {
                return s;
            }
            if bits > 4096 {
                // a decimal tie; print the midpoint
                return super::format_sig(&a.isolator.mid().to_rational(), sig);
            }
            bits *= 2;
        }
    }

    /// Isolator whose closed hull holds no other root of the annihilator.
    fn clean_isolator(&self) -> DyadicInterval {
        let mut iv = self.isolator.clone();
        let mut bits = 8;
        while iv.lo != iv.hi
            && (sign_at(&self.annihilator, &iv.lo) == Sign::NoSign
                || sign_at(&self.annihilator, &iv.hi) == Sign::NoSign)
        {
            let w = iv.width().log2_floor();
            bits = bits.max((-w + 1).max(0) as u32);
            iv = refine(&self.annihilator, &iv, bits);
        }
        iv
    }

    /// Exact test of `q(self) = 0`.
    pub fn is_root_of(&self, q: &IntPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        let h = crate::poly::gcd(&self.annihilator, q);
        if h.degree() == Some(0) {
            return false;
        }
        let iv = self.clean_isolator();
        if iv.lo == iv.hi {
            return sign_at(&h, &iv.lo) == Sign::NoSign;
        }
        // the roots of h are roots of the annihilator, at most one lies here
        sign_at(&h, &iv.lo) != sign_at(&h, &iv.hi)
    }

    /// Sign of the number, exact.
    pub fn sign(&self) -> Sign {
        let zero = Dyadic::zero();
        if self.annihilator.coeff(0).is_zero() && self.isolator.contains(&zero) {
            return Sign::NoSign;
        }
        let mut a = self.clone();
        let mut bits = 8;
        loop {
            if a.isolator.is_positive() {
                return Sign::Plus;
            }
            if a.isolator.is_negative() {
                return Sign::Minus;
            }
            bits *= 2;
            a = a.refine(bits);
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(10))
    }
}

/// Sign of `p` just inside `(lo, hi)` next to the endpoint.
fn inner_sign(p: &IntPoly, at: &Dyadic, right_of: bool) -> Sign {
    match sign_at(p, at) {
        Sign::NoSign => {
            let d = sign_at(&p.derivative(), at);
            if right_of {
                d
            } else {
                -d
            }
        }
        s => s,
    }
}

/// Shrink an isolating interval of a squarefree `p` to width `<= 2^-bits`.
pub fn refine(p: &IntPoly, iv: &DyadicInterval, bits: u32) -> DyadicInterval {
    let target = Dyadic::pow2(-(bits as i64));
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi || hi.sub(&lo) <= target {
        return iv.clone();
    }
    let s_lo = inner_sign(p, &lo, true);
    while hi.sub(&lo) > target {
        let m = Dyadic::midpoint(&lo, &hi);
        let s = sign_at(p, &m);
        if s == Sign::NoSign {
            lo = m.clone();
            hi = m;
            break;
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    DyadicInterval::new(lo, hi, iv.prec.max(bits))
}

/// The unique real root of `p` lying in `target`.
pub fn match_root(p: &IntPoly, target: &DyadicInterval) -> Result<AlgebraicNumber> {
    match_root_with(p, target, |_| None)
}

/// As [`match_root`], with `tighter(bits)` supplying narrower enclosures of
/// the same value while root isolators are refined in lockstep.
pub fn match_root_with(
    p: &IntPoly,
    target: &DyadicInterval,
    mut tighter: impl FnMut(u32) -> Option<DyadicInterval>,
) -> Result<AlgebraicNumber> {
    let sq = squarefree_part(p)?;
    let mut cands = isolate_real_roots(&sq)?;
    let mut target = target.clone();
    let mut bits = 16u32;
    loop {
        cands.retain(|r| r.intersects(&target));
        match cands.len() {
            0 => return Err(Error::NoMatchingRoot),
            1 => {
                let mut r = cands.pop().unwrap();
                let mut b = bits;
                // refine until the isolator sits inside the target or leaves it
                while !r.subset_of(&target) && b <= 2 * super::precision_cap() {
                    b *= 2;
                    r = refine(&sq, &r, b);
                    if !r.intersects(&target) {
                        return Err(Error::NoMatchingRoot);
                    }
                }
                return Ok(AlgebraicNumber::new(sq, r));
            }
            _ => {}
        }
        if bits > 2 * super::precision_cap() {
            return Err(Error::AmbiguousRoot);
        }
        bits *= 2;
        cands = cands.iter().map(|r| refine(&sq, r, bits)).collect();
        match tighter(bits) {
            Some(t) => target = t.intersect(&target).unwrap_or(t),
            None => {
                let fine = target.width().mul_pow2(-4);
                if cands.iter().all(|r| r.width() < fine) {
                    let hits = cands.iter().filter(|r| r.intersects(&target)).count();
                    if hits > 1 {
                        return Err(Error::AmbiguousRoot);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Number of distinct real roots by Sturm's theorem.
    fn sturm_count(p: &IntPoly) -> usize {
        let p = squarefree_part(p).unwrap();
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = rational_rem(&seq[n - 2], &seq[n - 1]);
            seq.push(-&r);
        }
        seq.pop();
        let signs = |at_pos_inf: bool| {
            let v: Vec<Sign> = seq
                .iter()
                .filter(|q| !q.is_zero())
                .map(|q| {
                    let s = q.lc().sign();
                    let odd = q.degree().unwrap() % 2 == 1;
                    if at_pos_inf || !odd {
                        s
                    } else {
                        -s
                    }
                })
                .collect();
            v.windows(2).filter(|w| w[0] != w[1]).count()
        };
        signs(false) - signs(true)
    }

    /// Remainder with positive scaling so that Sturm signs are preserved.
    fn rational_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let r = a.pseudo_rem(b);
        let db = b.degree().unwrap();
        let da = a.degree().unwrap();
        let lc = b.lc().clone();
        // pseudo_rem multiplies by lc^(da - db + 1); undo a negative sign
        if lc.is_negative() && (da + 1 - db) % 2 == 1 {
            (-&r).primitive_part()
        } else {
            r.primitive_part()
        }
    }

    #[test]
    fn isolates_simple_examples() {
        let r = isolate_real_roots(&ip(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        let s2 = BigRational::from_float(std::f64::consts::SQRT_2).unwrap();
        assert!(r[1].lo.to_rational() < s2 && s2 < r[1].hi.to_rational());
        // exact dyadic roots: 0, 1/2, -3
        let p = &(&ip(&[0, 1]) * &ip(&[-1, 2])) * &ip(&[3, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 3);
        let refined: Vec<f64> = r
            .iter()
            .map(|iv| refine(&p, iv, 40).mid().to_f64())
            .collect();
        assert!(
            (refined[0] + 3.0).abs() < 1e-9
                && refined[1].abs() < 1e-9
                && (refined[2] - 0.5).abs() < 1e-9
        );
        assert!(isolate_real_roots(&ip(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn close_roots_separate() {
        // (1000 t - 1)(1001 t - 1)
        let p = &ip(&[-1, 1000]) * &ip(&[-1, 1001]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(!r[0].intersects(&r[1]) || r[0].hi == r[1].lo);
    }

    #[test]
    fn match_known_roots() {
        let p = ip(&[-43, -18, 1, 1]);
        let t = DyadicInterval::new(Dyadic::from_f64(4.7), Dyadic::from_f64(4.8), 64);
        let a = match_root(&p, &t).unwrap().refine(40);
        assert!(a.isolator.lo.to_f64() > 4.72 && a.isolator.hi.to_f64() < 4.73);
        assert_eq!(a.to_decimal(10), "4.729031538");

        let t = DyadicInterval::new(Dyadic::from_f64(1.40), Dyadic::from_f64(1.42), 64);
        let a = match_root(&ip(&[-2, 0, 1]), &t).unwrap();
        assert_eq!(a.to_decimal(10), "1.414213562");

        let far = DyadicInterval::new(Dyadic::from_int(10), Dyadic::from_int(11), 64);
        assert_eq!(match_root(&p, &far), Err(Error::NoMatchingRoot));
    }

    #[test]
    fn match_negative_c_root() {
        // (4t^2+1)(8t^3+8t^2+6t+1)(8t^3-8t^2+6t-1)
        let p = &(&ip(&[1, 0, 4]) * &ip(&[1, 6, 8, 8])) * &ip(&[-1, 6, -8, 8]);
        let t = DyadicInterval::new(Dyadic::from_f64(-0.22), Dyadic::from_f64(-0.21), 64);
        let a = match_root(&p, &t).unwrap();
        let mu = ip(&[1, 6, 8, 8]);
        let r = refine(&p, &a.isolator, 50);
        assert!(sign_at(&mu, &r.lo) != sign_at(&mu, &r.hi));
        assert_eq!(a.sign(), Sign::Minus);
    }

    #[test]
    fn sign_of_exact_zero() {
        let a = match_root(&ip(&[0, 1, 1]), &DyadicInterval::from_int(0, 64)).unwrap();
        assert_eq!(a.sign(), Sign::NoSign);
    }

    #[test]
    fn counts_agree_with_sturm() {
        let polys = [
            ip(&[-43, -18, 1, 1]),
            ip(&[17, 70, 108, 72, 16]),
            ip(&[-1, 12, -48, 64, 256]),
            ip(&[1, 2, 6, 5, 6, 2, 1]),
            &(&ip(&[-1, 0, 1]) * &ip(&[-2, 0, 1])) * &ip(&[0, 1]),
        ];
        for p in polys {
            assert_eq!(
                isolate_real_roots(&p).unwrap().len(),
                sturm_count(&p),
                "{p:?}"
            );
        }
    }
}
