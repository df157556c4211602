//! Irrationality of `arccos(c) / pi` by a cyclotomic sweep, and the
//! non-D-finiteness verdict built on it.

use crate::elim::{eliminant_c, eliminant_rho, Eliminant};
use crate::enumerate::{detect_period, nondegenerate_in_box};
use crate::error::{Error, Result};
use crate::numsolve::{
    alpha_from_c, arccos, eval_c, eval_rho, match_root_with, pi, solve_critical_point,
    AlgebraicNumber, CriticalPoint, DyadicInterval, DEFAULT_PRECISION,
};
use crate::poly::{
    chebyshev_double_cover, cyclotomic, cyclotomic_candidates, divides, IntPoly, Poly,
};
use crate::stepset::{is_half_plane_confined, is_singular, StepSet};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    CyclotomicSweep,
    RationalWitness,
    Inconclusive,
}

/// `arccos(c) / pi = p / q`, with `c = cos(2 pi k / n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalWitness {
    pub p: i64,
    pub q: i64,
    pub k: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrationalityCertificate {
    pub method: CertificateMethod,
    /// Degree of the swept polynomial `R`.
    pub degree_bound: usize,
    /// Every `N` with `phi(N) <= degree_bound`, ascending.
    pub checked_n: Vec<u64>,
    /// The `N` with `Phi_N | R`.
    pub flagged_n: Vec<u64>,
    /// Set when flagged `N` were ruled out root by root.
    pub restricted_to_root: bool,
    pub witness: Option<RationalWitness>,
    #[serde(with = "crate::poly::serde_x")]
    pub transformed_poly: IntPoly,
}

impl IrrationalityCertificate {
    pub fn is_irrational(&self) -> bool {
        self.method == CertificateMethod::CyclotomicSweep
    }

    pub fn inconclusive(reason_poly: IntPoly) -> Self {
        IrrationalityCertificate {
            method: CertificateMethod::Inconclusive,
            degree_bound: reason_poly.degree().unwrap_or(0),
            checked_n: Vec::new(),
            flagged_n: Vec::new(),
            restricted_to_root: false,
            witness: None,
            transformed_poly: reason_poly,
        }
    }
}

/// The `N` among all candidates with `Phi_N` dividing the double cover of `e`.
pub fn rootofunity_sweep(e: &IntPoly) -> Vec<u64> {
    sweep(&chebyshev_double_cover(e)).1
}

fn sweep(r: &IntPoly) -> (Vec<u64>, Vec<u64>) {
    let deg = r.degree().unwrap_or(0) as u64;
    let checked = cyclotomic_candidates(deg);
    let mut flagged: Vec<u64> = checked
        .par_iter()
        .filter(|&&n| divides(&cyclotomic(n), r).unwrap_or(false))
        .copied()
        .collect();
    flagged.sort_unstable();
    (checked, flagged)
}

/// `Psi_n(2t)`: the polynomial whose roots are `cos(2 pi k / n)`, `gcd(k, n) = 1`.
pub fn cos_minpoly(n: u64) -> IntPoly {
    match n {
        1 => IntPoly::from_i64s(&[-1, 1]),
        2 => IntPoly::from_i64s(&[1, 1]),
        _ => {
            let psi = crate::poly::minpoly_two_cos(n);
            Poly::new(
                psi.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c << i)
                    .collect(),
            )
            .canonical()
        }
    }
}

/// `k` with `c = cos(2 pi k / n)`, `0 <= k <= n / 2`, given that `c` is a
/// root of `cos_minpoly(n)`.
fn witness_index(c: &AlgebraicNumber, n: u64) -> Option<u64> {
    let mut bits = 64;
    while bits <= 4096 {
        let iv = c.refine(bits).isolator.with_prec(bits);
        let t = arccos(&iv).ok()?;
        let pi = pi(bits);
        let half_n = DyadicInterval::from_int(n, bits).mul(&DyadicInterval::point(
            crate::numsolve::Dyadic::pow2(-1),
            bits,
        ));
        let k = t.div(&pi).ok()?.mul(&half_n);
        let lo = k.lo.to_rational().ceil().to_integer();
        let hi = k.hi.to_rational().floor().to_integer();
        if lo == hi {
            return lo.to_u64();
        }
        bits *= 2;
    }
    None
}

/// Certify `arccos(c) / pi` irrational, or produce a rational witness.
pub fn certify_alpha_irrational(e_c: &Eliminant, c: &AlgebraicNumber) -> IrrationalityCertificate {
    let r = chebyshev_double_cover(&e_c.poly);
    let (checked, flagged) = sweep(&r);
    let mut cert = IrrationalityCertificate {
        method: CertificateMethod::CyclotomicSweep,
        degree_bound: r.degree().unwrap_or(0),
        checked_n: checked,
        flagged_n: flagged.clone(),
        restricted_to_root: !flagged.is_empty(),
        witness: None,
        transformed_poly: r,
    };
    for n in flagged {
        if !c.is_root_of(&cos_minpoly(n)) {
            continue;
        }
        let Some(k) = witness_index(c, n) else {
            cert.method = CertificateMethod::Inconclusive;
            return cert;
        };
        let r = BigRational::new(BigInt::from(2 * k), BigInt::from(n));
        cert.method = CertificateMethod::RationalWitness;
        cert.witness = Some(RationalWitness {
            p: r.numer().to_i64().unwrap_or(0),
            q: r.denom().to_i64().unwrap_or(1),
            k,
            n,
        });
        return cert;
    }
    cert
}

/// `2 * min { l >= 1 : l / (alpha + 1) in Z }`.
pub fn group_order_from_alpha(alpha: &BigRational) -> Result<u64> {
    let a1 = alpha + BigRational::from_integer(BigInt::from(1));
    if a1.is_zero() {
        return Err(Error::DomainError("alpha = -1".into()));
    }
    let num = a1.numer().abs();
    (num * 2u32)
        .to_u64()
        .ok_or_else(|| Error::DomainError("group order overflows u64".into()))
}

/// Exact `alpha = -1 - 1 / (1 - p/q)` from `arccos(c) / pi = p/q`; note
/// `arccos(-c) = pi - arccos(c)`.
pub fn alpha_from_witness(w: &RationalWitness) -> Option<BigRational> {
    let r = BigRational::new(BigInt::from(w.p), BigInt::from(w.q));
    let one = BigRational::from_integer(BigInt::from(1));
    let denom = &one - &r;
    if denom.is_zero() {
        return None;
    }
    Some(-one.clone() - one / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    NotDFinite,
    NoConclusion,
    HypothesisFailed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub small_step: bool,
    pub singular: Option<bool>,
    pub half_plane_witness: Option<(i64, i64)>,
    pub period: Option<u32>,
    /// Side of the box `[0, b]^2` checked for reachability of every cell.
    pub nondegeneracy_box: usize,
    pub nondegenerate_in_box: bool,
    /// `e_n` are integers with `e_n <= |S|^n`.
    pub integer_exponentially_bounded: bool,
    /// Steps beyond `{-1, 0, 1}`: the asymptotic form is not established there.
    pub caveat_non_small_steps: bool,
}

/// All certified quantities of the pipeline for one step set.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub critical_point: CriticalPoint,
    pub e_rho: Eliminant,
    pub e_c: Eliminant,
    pub rho: AlgebraicNumber,
    pub c: AlgebraicNumber,
    pub alpha: DyadicInterval,
    pub certificate: IrrationalityCertificate,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub hypotheses: Hypotheses,
    pub analysis: Option<Analysis>,
    pub diagnostics: Vec<String>,
}

impl Verdict {
    pub fn alpha(&self) -> Option<&DyadicInterval> {
        self.analysis.as_ref().map(|a| &a.alpha)
    }
}

pub const NONDEGENERACY_BOX: usize = 8;

pub fn hypotheses(s: &StepSet) -> Hypotheses {
    let half = is_half_plane_confined(s);
    Hypotheses {
        small_step: s.is_small_step(),
        singular: is_singular(s).ok(),
        half_plane_witness: half,
        period: if half.is_none() {
            detect_period(s).ok()
        } else {
            None
        },
        nondegeneracy_box: NONDEGENERACY_BOX,
        nondegenerate_in_box: nondegenerate_in_box(s, NONDEGENERACY_BOX),
        integer_exponentially_bounded: true,
        caveat_non_small_steps: !s.is_small_step(),
    }
}

/// `alpha` enclosure tight enough to print `sig` significant digits.
pub fn alpha_enclosure(c: &AlgebraicNumber, bits: u32) -> Result<DyadicInterval> {
    let iv = c.refine(bits + 8).isolator.with_prec(bits + 8);
    Ok(alpha_from_c(&iv)?.with_prec(bits))
}

/// Critical point, eliminants, matched roots, alpha and certificate.
pub fn analyze(s: &StepSet, bits: u32) -> Result<Analysis> {
    let cp = solve_critical_point(s, bits)?;
    let rho_iv = eval_rho(s, &cp)?;
    let c_iv = eval_c(s, &cp)?;
    let e_rho = eliminant_rho(s)?;
    let e_c = eliminant_c(s)?;
    let tighter = |f: fn(&StepSet, &CriticalPoint) -> Result<DyadicInterval>| {
        move |b: u32| {
            solve_critical_point(s, b.max(bits))
                .ok()
                .and_then(|cp| f(s, &cp).ok())
        }
    };
    let rho = match_root_with(&e_rho.poly, &rho_iv, tighter(eval_rho))?;
    let c = match_root_with(&e_c.poly, &c_iv, tighter(eval_c))?;
    let alpha = alpha_enclosure(&c, bits.max(DEFAULT_PRECISION))?;
    let certificate = certify_alpha_irrational(&e_c, &c);
    Ok(Analysis {
        critical_point: cp,
        e_rho,
        e_c,
        rho,
        c,
        alpha,
        certificate,
    })
}

pub fn non_dfinite_verdict(s: &StepSet) -> Verdict {
    verdict_at(s, DEFAULT_PRECISION)
}

pub fn verdict_at(s: &StepSet, bits: u32) -> Verdict {
    let hyp = hypotheses(s);
    let mut diagnostics = Vec::new();
    if let Some((a, b)) = hyp.half_plane_witness {
        diagnostics.push(format!("steps lie in the half-plane {a}*x + {b}*y >= 0"));
        return Verdict {
            conclusion: Conclusion::HypothesisFailed,
            hypotheses: hyp,
            analysis: None,
            diagnostics,
        };
    }
    match analyze(s, bits) {
        Ok(a) => {
            let conclusion = match a.certificate.method {
                CertificateMethod::CyclotomicSweep => Conclusion::NotDFinite,
                CertificateMethod::RationalWitness => {
                    diagnostics.push("arccos(c)/pi is rational: no conclusion either way".into());
                    Conclusion::NoConclusion
                }
                CertificateMethod::Inconclusive => Conclusion::Inconclusive,
            };
            assert!(
                conclusion != Conclusion::NotDFinite || a.certificate.witness.is_none(),
                "a rational witness can never support a non-D-finite verdict"
            );
            Verdict {
                conclusion,
                hypotheses: hyp,
                analysis: Some(a),
                diagnostics,
            }
        }
        Err(e) => {
            diagnostics.push(e.to_string());
            let conclusion = match e {
                Error::PrecisionExhausted { .. } | Error::AmbiguousRoot => Conclusion::Inconclusive,
                _ => Conclusion::NoConclusion,
            };
            Verdict {
                conclusion,
                hypotheses: hyp,
                analysis: None,
                diagnostics,
            }
        }
    }
}

/// Reduced `p/q` for tests and reports.
pub fn reduced(p: i64, q: i64) -> (i64, i64) {
    let g = p.gcd(&q);
    (p / g, q / g)
}
