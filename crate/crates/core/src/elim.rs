//! Integer eliminants for the growth constant and the correlation
//! coefficient, by iterated resultants.

use crate::error::{Error, Result};
use crate::poly::{resultant, squarefree_part, BiPoly, IntPoly, MultiPoly, Poly, Var};
use crate::stepset::{char_poly, partials, LaurentPoly2, StepSet};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Rho,
    C,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Rho => "rho",
            Target::C => "c",
        })
    }
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rho" => Ok(Target::Rho),
            "c" => Ok(Target::C),
            other => Err(Error::Parse(format!(
                "unknown target `{other}` (expected rho or c)"
            ))),
        }
    }
}

/// Which variable was eliminated first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationOrder {
    YThenX,
    XThenY,
    /// `P` was already free of `x` and `y`.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub order: EliminationOrder,
    /// Exponent of the pure power of `t` removed before taking the squarefree part.
    pub t_power_stripped: u32,
    /// Integer content removed, in decimal.
    pub content_stripped: String,
    /// Degree of the raw double resultant.
    pub raw_degree: usize,
    /// Set when the step set is not small-step; the scheme is unchanged but
    /// untested beyond small steps.
    pub non_small_steps: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eliminant {
    pub poly: IntPoly,
    pub target: Target,
    pub provenance: Provenance,
}

/// Sum of `sign * L * t^e` over the parts, multiplied by the monomial that
/// clears every negative power of `x` and `y`.
fn clear_laurent(parts: &[(&LaurentPoly2, u32, i64)]) -> MultiPoly {
    let (mut mi, mut mj) = (0i64, 0i64);
    for (l, _, _) in parts {
        for (i, j, _) in l.terms() {
            mi = mi.min(i);
            mj = mj.min(j);
        }
    }
    let mut out = MultiPoly::zero();
    for (l, e, sign) in parts {
        for (i, j, c) in l.terms() {
            out.add_term(
                [(i - mi) as u32, (j - mj) as u32, *e],
                c * BigInt::from(*sign),
            );
        }
    }
    out
}

/// `numer(t - chi)`.
fn p_rho(chi: &LaurentPoly2) -> MultiPoly {
    let mut one = LaurentPoly2::zero();
    one.add_term(0, 0, BigInt::one());
    clear_laurent(&[(&one, 1, 1), (chi, 0, -1)]).canonical()
}

/// `numer(t^2 chi_xx chi_yy - chi_xy^2)`, the numerator of
/// `t^2 - chi_xy^2 / (chi_xx chi_yy)` before cancellation.
fn p_c(chi: &LaurentPoly2) -> Result<MultiPoly> {
    let p = partials(chi);
    if p.chi_xx.is_zero() {
        return Err(Error::ZeroHessianTerm(
            "d2chi/dx2 vanishes identically".into(),
        ));
    }
    if p.chi_yy.is_zero() {
        return Err(Error::ZeroHessianTerm(
            "d2chi/dy2 vanishes identically".into(),
        ));
    }
    let hess = p.chi_xx.mul(&p.chi_yy);
    let mixed = p.chi_xy.mul(&p.chi_xy);
    Ok(clear_laurent(&[(&hess, 2, 1), (&mixed, 0, -1)]).canonical())
}

/// Divide out the largest monomial `x^a y^b`; the critical point has
/// `x, y > 0`, so those factors only carry spurious solutions.
fn strip_xy_monomial(p: &MultiPoly) -> MultiPoly {
    let mx = p.terms().map(|(e, _)| e[0]).min().unwrap_or(0);
    let my = p.terms().map(|(e, _)| e[1]).min().unwrap_or(0);
    let mut out = MultiPoly::zero();
    for (e, c) in p.terms() {
        out.add_term([e[0] - mx, e[1] - my, e[2]], c.clone());
    }
    out
}

/// Drop the factor `X^k` of a polynomial in the remaining variable.
fn strip_outer_power(p: &BiPoly) -> BiPoly {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    Poly::new(p.coeffs()[k..].to_vec())
}

/// `Res_outer(Res_inner(A, P), Res_inner(B, P))` as a polynomial in `t`.
fn double_resultant(
    a: &MultiPoly,
    b: &MultiPoly,
    p: &MultiPoly,
    first: Var,
    second: Var,
) -> IntPoly {
    let order = [first, second, Var::T];
    let ra = strip_outer_power(&resultant(&a.to_nested(order), &p.to_nested(order)));
    let rb = strip_outer_power(&resultant(&b.to_nested(order), &p.to_nested(order)));
    resultant(&ra, &rb)
}

fn univariate_t(p: &MultiPoly) -> IntPoly {
    let nested = p.to_nested([Var::X, Var::Y, Var::T]);
    nested.coeff(0).coeff(0)
}

fn finish(raw: IntPoly, target: Target, order: EliminationOrder, s: &StepSet) -> Result<Eliminant> {
    let raw_degree = raw.degree().unwrap_or(0);
    let content = raw.content();
    let val = raw.x_valuation();
    let (body, stripped) = match target {
        Target::Rho => (raw.strip_x_powers(), val as u32),
        // c = 0 is a legitimate value, so one factor t is kept
        Target::C if val > 1 => {
            let core = raw.strip_x_powers();
            (core.shift(1), (val - 1) as u32)
        }
        Target::C => (raw.clone(), 0),
    };
    let poly = squarefree_part(&body.primitive_part())?;
    Ok(Eliminant {
        poly,
        target,
        provenance: Provenance {
            order,
            t_power_stripped: stripped,
            content_stripped: content.to_string(),
            raw_degree,
            non_small_steps: !s.is_small_step(),
        },
    })
}

fn eliminate(s: &StepSet, p: MultiPoly, target: Target) -> Result<Eliminant> {
    if !p.depends_on(Var::X) && !p.depends_on(Var::Y) {
        return finish(univariate_t(&p), target, EliminationOrder::Direct, s);
    }
    let parts = partials(&char_poly(s));
    let a = strip_xy_monomial(&parts.chi_x);
    let b = strip_xy_monomial(&parts.chi_y);
    let p = strip_xy_monomial(&p);
    let attempts = [
        (Var::Y, Var::X, EliminationOrder::YThenX),
        (Var::X, Var::Y, EliminationOrder::XThenY),
    ];
    for (first, second, order) in attempts {
        let raw = double_resultant(&a, &b, &p, first, second);
        if !raw.is_zero() && raw.degree() != Some(0) {
            return finish(raw, target, order, s);
        }
        if !raw.is_zero() {
            // a nonzero constant cannot vanish at the target
            return Err(Error::DegenerateElimination);
        }
    }
    Err(Error::DegenerateElimination)
}

/// Squarefree eliminant vanishing at `rho = chi(x0, y0)`.
pub fn eliminant_rho(s: &StepSet) -> Result<Eliminant> {
    eliminate(s, p_rho(&char_poly(s)), Target::Rho)
}

/// Squarefree eliminant vanishing at `c` and `-c`.
pub fn eliminant_c(s: &StepSet) -> Result<Eliminant> {
    eliminate(s, p_c(&char_poly(s))?, Target::C)
}

pub fn eliminant(s: &StepSet, target: Target) -> Result<Eliminant> {
    match target {
        Target::Rho => eliminant_rho(s),
        Target::C => eliminant_c(s),
    }
}

/// Polynomial in `t` with only the listed coefficients, for tests and fixtures.
pub fn t_poly(coeffs: &[i64]) -> IntPoly {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{divides, gcd};

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    const EX: &str = "(-1,0),(0,1),(1,0),(1,-1),(0,-1)";
    const SIMPLE: &str = "(1,0),(-1,0),(0,1),(0,-1)";
    const KREWERAS: &str = "(-1,0),(0,-1),(1,1)";

    #[test]
    fn worked_example_rho() {
        let e = eliminant_rho(&set(EX)).unwrap();
        let mu = t_poly(&[-43, -18, 1, 1]);
        assert!(divides(&mu, &e.poly).unwrap());
        let with_spurious = &t_poly(&[1, 1]) * &mu;
        assert!(divides(&with_spurious, &e.poly).unwrap());
        assert!(e.poly.is_canonical());
        assert_eq!(gcd(&e.poly, &e.poly.derivative()).degree(), Some(0));
    }

    #[test]
    fn worked_example_c() {
        let e = eliminant_c(&set(EX)).unwrap();
        for f in [
            t_poly(&[1, 0, 4]),
            t_poly(&[1, 6, 8, 8]),
            t_poly(&[-1, 6, -8, 8]),
        ] {
            assert!(divides(&f, &e.poly).unwrap(), "{f:?}");
        }
    }

    #[test]
    fn simple_and_kreweras() {
        assert!(divides(
            &t_poly(&[-4, 1]),
            &eliminant_rho(&set(SIMPLE)).unwrap().poly
        )
        .unwrap());
        assert!(divides(&t_poly(&[0, 1]), &eliminant_c(&set(SIMPLE)).unwrap().poly).unwrap());
        assert!(divides(
            &t_poly(&[-3, 1]),
            &eliminant_rho(&set(KREWERAS)).unwrap().poly
        )
        .unwrap());
        assert!(divides(
            &t_poly(&[-1, 2]),
            &eliminant_c(&set(KREWERAS)).unwrap().poly
        )
        .unwrap());
    }

    #[test]
    fn zero_hessian_term() {
        // only vertical steps in x: chi_xx vanishes
        assert!(matches!(
            eliminant_c(&set("(0,1),(0,-1),(1,0)")),
            Err(Error::ZeroHessianTerm(_))
        ));
    }

    #[test]
    fn target_parsing() {
        assert_eq!("rho".parse::<Target>().unwrap(), Target::Rho);
        assert!("z".parse::<Target>().is_err());
    }
}
