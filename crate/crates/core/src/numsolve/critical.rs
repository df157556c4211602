use super::dyadic::Dyadic;
use super::interval::DyadicInterval;
use super::precision_schedule;
use crate::error::{Error, Result};
use crate::stepset::{char_poly, is_half_plane_confined, partials, LaurentPoly2, StepSet};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Certified enclosure of the positive critical point of `chi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub x0: DyadicInterval,
    pub y0: DyadicInterval,
    pub certified: bool,
    pub bits: u32,
}

/// Summary of how the critical point was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationInfo {
    pub method: String,
    pub bits: u32,
    pub hessian_positive_definite: bool,
}

type Box2 = (DyadicInterval, DyadicInterval);

fn steps_of(s: &StepSet) -> Vec<(i64, i64)> {
    s.steps().iter().map(|st| (st.dx, st.dy)).collect()
}

/// `sum_k w(i,j) x^i y^j` over the steps.
fn weighted_sum(
    steps: &[(i64, i64)],
    x: &DyadicInterval,
    y: &DyadicInterval,
    w: impl Fn(i64, i64) -> i64,
) -> DyadicInterval {
    let prec = x.prec.max(y.prec);
    let mut acc = DyadicInterval::from_int(0, prec);
    for &(i, j) in steps {
        let k = w(i, j);
        if k == 0 {
            continue;
        }
        let m = x.powi(i).unwrap().mul(&y.powi(j).unwrap());
        acc = acc.add(&m.scale_int(&BigInt::from(k)));
    }
    acc
}

/// Interval value of a Laurent polynomial; `x`, `y` must exclude 0 when
/// negative powers occur.
pub fn eval_laurent(
    p: &LaurentPoly2,
    x: &DyadicInterval,
    y: &DyadicInterval,
) -> Result<DyadicInterval> {
    let prec = x.prec.max(y.prec);
    let mut acc = DyadicInterval::from_int(0, prec);
    for (i, j, c) in p.terms() {
        let m = x.powi(i)?.mul(&y.powi(j)?);
        acc = acc.add(&m.scale_int(c));
    }
    Ok(acc)
}

/// `G = (x chi_x, y chi_y)`.
fn g_val(steps: &[(i64, i64)], x: &DyadicInterval, y: &DyadicInterval) -> [DyadicInterval; 2] {
    [
        weighted_sum(steps, x, y, |i, _| i),
        weighted_sum(steps, x, y, |_, j| j),
    ]
}

/// Jacobian of `G` with respect to `(x, y)`.
fn g_jac(
    steps: &[(i64, i64)],
    x: &DyadicInterval,
    y: &DyadicInterval,
) -> Result<[[DyadicInterval; 2]; 2]> {
    let xi = x.recip()?;
    let yi = y.recip()?;
    let a = weighted_sum(steps, x, y, |i, _| i * i).mul(&xi);
    let b = weighted_sum(steps, x, y, |i, j| i * j).mul(&yi);
    let c = weighted_sum(steps, x, y, |i, j| i * j).mul(&xi);
    let d = weighted_sum(steps, x, y, |_, j| j * j).mul(&yi);
    Ok([[a, b], [c, d]])
}

fn inverse(m: &[[DyadicInterval; 2]; 2]) -> Result<[[DyadicInterval; 2]; 2]> {
    let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    let inv = det.recip()?;
    Ok([
        [m[1][1].mul(&inv), m[0][1].neg().mul(&inv)],
        [m[1][0].neg().mul(&inv), m[0][0].mul(&inv)],
    ])
}

/// Damped Newton on the convex `f(u, v) = sum e^(iu + jv)` from `(0, 0)`.
fn float_seed(steps: &[(i64, i64)]) -> (f64, f64) {
    let grad = |u: f64, v: f64| {
        let (mut f, mut gu, mut gv, mut huu, mut huv, mut hvv) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for &(i, j) in steps {
            let (i, j) = (i as f64, j as f64);
            let e = (i * u + j * v).exp();
            f += e;
            gu += i * e;
            gv += j * e;
            huu += i * i * e;
            huv += i * j * e;
            hvv += j * j * e;
        }
        (f, gu, gv, huu, huv, hvv)
    };
    let norm = |u: f64, v: f64| {
        let (f, gu, gv, ..) = grad(u, v);
        (gu * gu + gv * gv).sqrt() / f
    };
    let (mut u, mut v) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let (_, gu, gv, huu, huv, hvv) = grad(u, v);
        let n0 = norm(u, v);
        if n0 < 1e-15 {
            break;
        }
        let det = huu * hvv - huv * huv;
        if det.abs() < 1e-300 {
            break;
        }
        let du = -(hvv * gu - huv * gv) / det;
        let dv = -(-huv * gu + huu * gv) / det;
        let mut t = 1.0;
        while t > 1e-12 && !(norm(u + t * du, v + t * dv) < n0) {
            t /= 2.0;
        }
        if t <= 1e-12 {
            break;
        }
        u += t * du;
        v += t * dv;
    }
    (u.exp(), v.exp())
}

/// Point Newton steps on `G` at working precision `wp`.
fn polish(steps: &[(i64, i64)], seed: (f64, f64), wp: u32) -> Option<(Dyadic, Dyadic)> {
    let mut x = Dyadic::from_f64(seed.0);
    let mut y = Dyadic::from_f64(seed.1);
    let iters = (wp as f64 / 40.0).log2().ceil().max(0.0) as u32 + 4;
    for _ in 0..iters {
        let xi = DyadicInterval::point(x.clone(), wp);
        let yi = DyadicInterval::point(y.clone(), wp);
        let g = g_val(steps, &xi, &yi);
        let jinv = inverse(&g_jac(steps, &xi, &yi).ok()?).ok()?;
        let dx = jinv[0][0].mul(&g[0]).add(&jinv[0][1].mul(&g[1]));
        let dy = jinv[1][0].mul(&g[0]).add(&jinv[1][1].mul(&g[1]));
        x = x.sub(&dx.mid()).round(wp, super::Round::Down);
        y = y.sub(&dy.mid()).round(wp, super::Round::Down);
        if !x.is_positive() || !y.is_positive() {
            return None;
        }
    }
    Some((x, y))
}

/// Krawczyk operator on the box `b` centred at `m`.
fn krawczyk(steps: &[(i64, i64)], m: &(Dyadic, Dyadic), b: &Box2, wp: u32) -> Result<Box2> {
    let mx = DyadicInterval::point(m.0.clone(), wp);
    let my = DyadicInterval::point(m.1.clone(), wp);
    let gm = g_val(steps, &mx, &my);
    let yinv = inverse(&g_jac(steps, &mx, &my)?)?;
    let y: [[DyadicInterval; 2]; 2] = [
        [
            DyadicInterval::point(yinv[0][0].mid(), wp),
            DyadicInterval::point(yinv[0][1].mid(), wp),
        ],
        [
            DyadicInterval::point(yinv[1][0].mid(), wp),
            DyadicInterval::point(yinv[1][1].mid(), wp),
        ],
    ];
    let jb = g_jac(steps, &b.0, &b.1)?;
    let one = DyadicInterval::from_int(1, wp);
    let zero = DyadicInterval::from_int(0, wp);
    // I - Y J(B)
    let mut r: [[DyadicInterval; 2]; 2] = [[zero.clone(), zero.clone()], [zero.clone(), zero]];
    for i in 0..2 {
        for j in 0..2 {
            let yj = y[i][0].mul(&jb[0][j]).add(&y[i][1].mul(&jb[1][j]));
            r[i][j] = if i == j { one.sub(&yj) } else { yj.neg() };
        }
    }
    let d = [b.0.sub(&mx), b.1.sub(&my)];
    let k0 = mx
        .sub(&y[0][0].mul(&gm[0]).add(&y[0][1].mul(&gm[1])))
        .add(&r[0][0].mul(&d[0]).add(&r[0][1].mul(&d[1])));
    let k1 = my
        .sub(&y[1][0].mul(&gm[0]).add(&y[1][1].mul(&gm[1])))
        .add(&r[1][0].mul(&d[0]).add(&r[1][1].mul(&d[1])));
    Ok((k0, k1))
}

fn try_certify(steps: &[(i64, i64)], seed: (f64, f64), bits: u32) -> Option<Box2> {
    let wp = bits + 32;
    let m = polish(steps, seed, wp)?;
    let r = Dyadic::pow2(-(bits as i64 / 2) - 2);
    let mut b: Box2 = (
        DyadicInterval::new(m.0.sub(&r), m.0.add(&r), wp),
        DyadicInterval::new(m.1.sub(&r), m.1.add(&r), wp),
    );
    if !b.0.is_positive() || !b.1.is_positive() {
        return None;
    }
    let k = krawczyk(steps, &m, &b, wp).ok()?;
    if !(k.0.strictly_inside(&b.0) && k.1.strictly_inside(&b.1)) {
        return None;
    }
    b = (k.0, k.1);
    // further Krawczyk steps keep enclosing the unique zero
    for _ in 0..3 {
        let c = (b.0.mid(), b.1.mid());
        let Ok(k) = krawczyk(steps, &c, &b, wp) else {
            break;
        };
        match (k.0.intersect(&b.0), k.1.intersect(&b.1)) {
            (Some(a), Some(c)) => b = (a, c),
            _ => break,
        }
    }
    Some((b.0.with_prec(bits), b.1.with_prec(bits)))
}

/// Certified enclosure of the unique positive solution of
/// `chi_x = chi_y = 0`, escalating precision from `bits` up to the cap.
pub fn solve_critical_point(s: &StepSet, bits: u32) -> Result<CriticalPoint> {
    if let Some((a, b)) = is_half_plane_confined(s) {
        return Err(Error::HalfPlaneConfined { a, b });
    }
    let steps = steps_of(s);
    let seed = float_seed(&steps);
    let mut last = bits;
    for p in precision_schedule(bits) {
        last = p;
        if let Some((x0, y0)) = try_certify(&steps, seed, p) {
            let cp = CriticalPoint {
                x0,
                y0,
                certified: true,
                bits: p,
            };
            if hessian_positive_definite(s, &cp) {
                return Ok(cp);
            }
        }
    }
    Err(Error::PrecisionExhausted {
        bits: last,
        what: "critical point certification".into(),
    })
}

/// Convexity witness: the Hessian of `chi(e^u, e^v)` at the enclosure is
/// positive definite.
pub fn hessian_positive_definite(s: &StepSet, cp: &CriticalPoint) -> bool {
    let steps = steps_of(s);
    let a = weighted_sum(&steps, &cp.x0, &cp.y0, |i, _| i * i);
    let b = weighted_sum(&steps, &cp.x0, &cp.y0, |i, j| i * j);
    let d = weighted_sum(&steps, &cp.x0, &cp.y0, |_, j| j * j);
    a.is_positive() && a.mul(&d).sub(&b.square()).is_positive()
}

/// Enclosures of `x chi_x` and `y chi_y` at the critical point; both contain 0.
pub fn gradient_residual(s: &StepSet, cp: &CriticalPoint) -> [DyadicInterval; 2] {
    g_val(&steps_of(s), &cp.x0, &cp.y0)
}

/// `rho = chi(x0, y0)`.
pub fn eval_rho(s: &StepSet, cp: &CriticalPoint) -> Result<DyadicInterval> {
    eval_laurent(&char_poly(s), &cp.x0, &cp.y0)
}

/// `c = chi_xy / sqrt(chi_xx chi_yy)`, intersected with `[-1, 1]`.
pub fn eval_c(s: &StepSet, cp: &CriticalPoint) -> Result<DyadicInterval> {
    let p = partials(&char_poly(s));
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
    let xx = eval_laurent(&p.chi_xx, &cp.x0, &cp.y0)?;
    let yy = eval_laurent(&p.chi_yy, &cp.x0, &cp.y0)?;
    let xy = eval_laurent(&p.chi_xy, &cp.x0, &cp.y0)?;
    let prod = xx.mul(&yy);
    if !prod.is_positive() {
        return Err(Error::ZeroHessianTerm(
            "d2chi/dx2 * d2chi/dy2 not certified positive".into(),
        ));
    }
    let c = xy.div(&prod.sqrt()?)?;
    let unit = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1), c.prec);
    c.intersect(&unit)
        .ok_or_else(|| Error::DomainError("c enclosure lies outside [-1, 1]".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    #[test]
    fn simple_and_kreweras_at_one() {
        for s in ["(1,0),(-1,0),(0,1),(0,-1)", "(-1,0),(0,-1),(1,1)"] {
            let cp = solve_critical_point(&set(s), 64).unwrap();
            assert!(cp.certified);
            assert!(cp.x0.contains(&Dyadic::one()) && cp.y0.contains(&Dyadic::one()));
        }
        let simple = set("(1,0),(-1,0),(0,1),(0,-1)");
        let cp = solve_critical_point(&simple, 128).unwrap();
        assert!(eval_rho(&simple, &cp)
            .unwrap()
            .contains(&Dyadic::from_int(4)));
        assert!(eval_c(&simple, &cp).unwrap().contains(&Dyadic::zero()));
        let kw = set("(-1,0),(0,-1),(1,1)");
        let cp = solve_critical_point(&kw, 128).unwrap();
        assert!(eval_c(&kw, &cp).unwrap().contains(&Dyadic::pow2(-1)));
    }

    #[test]
    fn worked_example_point() {
        let s = set("(-1,0),(0,1),(1,0),(1,-1),(0,-1)");
        let cp = solve_critical_point(&s, 128).unwrap();
        // fixed-point oracle on x = sqrt(y / (1 + y)), y = sqrt(1 + x)
        let (mut x, mut y) = (1.0f64, 1.0f64);
        for _ in 0..200 {
            x = (y / (1.0 + y)).sqrt();
            y = (1.0 + x).sqrt();
        }
        assert!((cp.x0.to_f64() - x).abs() < 1e-12);
        assert!((cp.y0.to_f64() - y).abs() < 1e-12);
        assert!(cp.x0.width() <= Dyadic::pow2(-64));
        let rho = eval_rho(&s, &cp).unwrap();
        assert_eq!(rho.to_decimal(10).as_deref(), Some("4.729031538"));
        assert!(hessian_positive_definite(&s, &cp));
        let [g0, g1] = gradient_residual(&s, &cp);
        assert!(g0.contains_zero() && g1.contains_zero());
    }

    #[test]
    fn confined_and_zero_hessian() {
        assert_eq!(
            solve_critical_point(&set("(1,1)"), 64),
            Err(Error::HalfPlaneConfined { a: 1, b: 1 })
        );
    }

    #[test]
    fn doubling_precision_narrows() {
        let s = set("(-1,0),(0,1),(1,0),(1,-1),(0,-1)");
        let a = eval_rho(&s, &solve_critical_point(&s, 64).unwrap()).unwrap();
        let b = eval_rho(&s, &solve_critical_point(&s, 128).unwrap()).unwrap();
        assert!(b.width() <= a.width());
        assert!(b.intersects(&a));
        let q = BigRational::new(4729031538i64.into(), 1_000_000_000i64.into());
        assert!(
            (b.mid().to_rational() - q).abs() < BigRational::new(1.into(), 1_000_000_000i64.into())
        );
    }

    use num_traits::Signed;
}
