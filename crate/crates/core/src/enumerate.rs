//! Walk and excursion counting in the quarter plane.

use crate::error::{Error, Result};
use crate::numsolve::{eval_rho, gradient_residual, CriticalPoint, Dyadic, DyadicInterval};
use crate::stepset::StepSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_EXACT_CAP: usize = 400;
pub const FLOAT_CAP: usize = 5000;

/// Exact excursion counts `e_0..e_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcursionSeq {
    #[serde(with = "bigint_strings")]
    pub terms: Vec<BigInt>,
    pub period: u32,
}

/// Rescaled float counts `e_n / scale^n`; never used for verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatSeq {
    pub values: Vec<f64>,
    pub scale: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Counts {
    Exact(ExcursionSeq),
    Float(FloatSeq),
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Per-axis reach: largest positive and negative displacement of one step.
fn reach(s: &StepSet) -> ((i64, i64), (i64, i64)) {
    let mut r = ((0, 0), (0, 0));
    for st in s.steps() {
        r.0 .0 = r.0 .0.max(st.dx);
        r.0 .1 = r.0 .1.max(-st.dx);
        r.1 .0 = r.1 .0.max(st.dy);
        r.1 .1 = r.1 .1.max(-st.dy);
    }
    r
}

/// Cells that can still be on an excursion of length `total` after `n` steps.
fn bounds(s: &StepSet, n: usize, total: usize) -> (usize, usize) {
    let ((xp, xn), (yp, yn)) = reach(s);
    let left = (total - n) as i64;
    let n = n as i64;
    let w = (n * xp).min(left * xn).max(0) as usize;
    let h = (n * yp).min(left * yn).max(0) as usize;
    (w, h)
}

/// One DP layer on a dense `(w+1) x (h+1)` grid, row `i` holding `j`.
struct Layer<T> {
    w: usize,
    h: usize,
    cells: Vec<T>,
}

impl<T: Clone + Send + Sync> Layer<T> {
    fn get(&self, i: i64, j: i64) -> Option<&T> {
        if i < 0 || j < 0 || i as usize > self.w || j as usize > self.h {
            return None;
        }
        Some(&self.cells[i as usize * (self.h + 1) + j as usize])
    }
}

/// Generic pull-style DP: `next(i, j) = sum_s weight_s * prev(i - dx, j - dy)`.
/// Every cell sums in step order, so results are deterministic.
fn run_dp<T, F>(s: &StepSet, total: usize, zero: T, one: T, combine: F) -> Vec<T>
where
    T: Clone + Send + Sync,
    F: Fn(&mut T, &T, usize) + Sync,
{
    let steps: Vec<(i64, i64)> = s.steps().iter().map(|st| (st.dx, st.dy)).collect();
    let mut layer = Layer {
        w: 0,
        h: 0,
        cells: vec![one],
    };
    let mut out = vec![layer.cells[0].clone()];
    for n in 1..=total {
        let (w, h) = bounds(s, n, total);
        let rows: Vec<Vec<T>> = (0..=w)
            .into_par_iter()
            .map(|i| {
                (0..=h)
                    .map(|j| {
                        let mut acc = zero.clone();
                        for (k, &(dx, dy)) in steps.iter().enumerate() {
                            if let Some(v) = layer.get(i as i64 - dx, j as i64 - dy) {
                                combine(&mut acc, v, k);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        layer = Layer {
            w,
            h,
            cells: rows.into_iter().flatten().collect(),
        };
        out.push(layer.cells[0].clone());
    }
    out
}

/// Exact excursion counts up to `n_max` (at most `cap`).
pub fn count_excursions_exact(s: &StepSet, n_max: usize, cap: usize) -> Result<ExcursionSeq> {
    if n_max > cap {
        return Err(Error::CapExceeded { n: n_max, cap });
    }
    let terms = excursion_terms(s, n_max);
    Ok(ExcursionSeq {
        period: observed_period(&terms).unwrap_or(1),
        terms,
    })
}

fn excursion_terms(s: &StepSet, n_max: usize) -> Vec<BigInt> {
    run_dp(s, n_max, BigInt::zero(), BigInt::one(), |acc, v, _| {
        *acc += v;
    })
}

/// Float counts `e_n / scale^n` up to `n_max`.
pub fn count_excursions_float(s: &StepSet, n_max: usize, scale: f64) -> Result<FloatSeq> {
    if n_max > FLOAT_CAP {
        return Err(Error::CapExceeded {
            n: n_max,
            cap: FLOAT_CAP,
        });
    }
    let values = float_dp(s, n_max, 1.0 / scale);
    Ok(FloatSeq {
        values,
        scale,
        certified: false,
    })
}

/// Row-slice version of [`run_dp`] for `f64`, with every layer scaled by `inv`.
fn float_dp(s: &StepSet, total: usize, inv: f64) -> Vec<f64> {
    let steps: Vec<(i64, i64)> = s.steps().iter().map(|st| (st.dx, st.dy)).collect();
    let (mut w0, mut h0) = (0usize, 0usize);
    let mut old = vec![1.0f64];
    let mut out = vec![1.0];
    for n in 1..=total {
        let (w, h) = bounds(s, n, total);
        let mut new = vec![0.0f64; (w + 1) * (h + 1)];
        for &(dx, dy) in &steps {
            let j_lo = dy.max(0) as usize;
            let j_hi = (h as i64).min(h0 as i64 + dy);
            if j_hi < j_lo as i64 {
                continue;
            }
            let j_hi = j_hi as usize;
            let len = j_hi + 1 - j_lo;
            let sj = (j_lo as i64 - dy) as usize;
            for i in 0..=w {
                let si = i as i64 - dx;
                if si < 0 || si as usize > w0 {
                    continue;
                }
                let src = &old[si as usize * (h0 + 1) + sj..][..len];
                let dst = &mut new[i * (h + 1) + j_lo..][..len];
                for (d, v) in dst.iter_mut().zip(src) {
                    *d += v;
                }
            }
        }
        for v in new.iter_mut() {
            *v *= inv;
        }
        out.push(new[0]);
        old = new;
        w0 = w;
        h0 = h;
    }
    out
}

pub fn count_excursions(s: &StepSet, n_max: usize, mode: Mode, scale: f64) -> Result<Counts> {
    match mode {
        Mode::Exact => Ok(Counts::Exact(count_excursions_exact(
            s,
            n_max,
            DEFAULT_EXACT_CAP,
        )?)),
        Mode::Float => Ok(Counts::Float(count_excursions_float(s, n_max, scale)?)),
    }
}

/// Full table `f(i, j, n)` for `n <= n_max` (no pruning), as `(w, h, cells)`.
pub fn walk_table(s: &StepSet, n_max: usize) -> Vec<Vec<Vec<BigInt>>> {
    let steps: Vec<(i64, i64)> = s.steps().iter().map(|st| (st.dx, st.dy)).collect();
    let m = s.max_abs_coordinate().max(1) as usize;
    let side = n_max * m + 1;
    let mut table = vec![vec![vec![BigInt::zero(); side]; side]];
    table[0][0][0] = BigInt::one();
    for n in 1..=n_max {
        let prev = &table[n - 1];
        let mut next = vec![vec![BigInt::zero(); side]; side];
        for (i, row) in next.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for &(dx, dy) in &steps {
                    let (pi, pj) = (i as i64 - dx, j as i64 - dy);
                    if pi >= 0 && pj >= 0 && (pi as usize) < side && (pj as usize) < side {
                        *cell += &prev[pi as usize][pj as usize];
                    }
                }
            }
        }
        table.push(next);
    }
    table
}

/// gcd of the `n >= 1` with `e_n != 0`.
fn observed_period(terms: &[BigInt]) -> Option<u32> {
    let g = terms
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, e)| !e.is_zero())
        .fold(0u32, |g, (n, _)| g.gcd(&(n as u32)));
    (g > 0).then_some(g)
}

/// Hermite basis `(a, b), (0, c)` of the lattice spanned by `vs`.
fn lattice_basis(vs: &[(i64, i64)]) -> (i64, i64, i64) {
    let mut rows: Vec<(i64, i64)> = vs.iter().copied().filter(|v| *v != (0, 0)).collect();
    loop {
        let mut nz: Vec<usize> = (0..rows.len()).filter(|&k| rows[k].0 != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        nz.sort_by_key(|&k| rows[k].0.abs());
        let p = rows[nz[0]];
        for &k in &nz[1..] {
            let q = rows[k].0 / p.0;
            rows[k] = (rows[k].0 - q * p.0, rows[k].1 - q * p.1);
        }
    }
    let (mut a, mut b) = rows.iter().copied().find(|r| r.0 != 0).unwrap_or((0, 0));
    let c = rows
        .iter()
        .filter(|r| r.0 == 0)
        .fold(0i64, |g, r| g.gcd(&r.1));
    if a < 0 {
        a = -a;
        b = -b;
    }
    if c != 0 {
        b = b.rem_euclid(c);
    }
    (a, b, c)
}

fn in_lattice((a, b, c): (i64, i64, i64), (x, y): (i64, i64)) -> bool {
    let rest = if a == 0 {
        if x != 0 {
            return false;
        }
        y
    } else {
        if x % a != 0 {
            return false;
        }
        y - (x / a) * b
    };
    if c == 0 {
        rest == 0
    } else {
        rest % c == 0
    }
}

/// Smallest `n >= 1` such that some `n`-step word sums to zero, ignoring the
/// quarter-plane constraint; `None` when no such `n` exists.
pub fn structural_period(s: &StepSet) -> Option<u32> {
    let st = s.steps();
    let s0 = (st[0].dx, st[0].dy);
    let diffs: Vec<(i64, i64)> = st.iter().map(|t| (t.dx - s0.0, t.dy - s0.1)).collect();
    let basis = lattice_basis(&diffs);
    (1..=64u32).find(|&n| in_lattice(basis, (n as i64 * s0.0, n as i64 * s0.1)))
}

/// Period of the excursion sequence: the structural lattice period,
/// cross-checked against the gcd of nonzero lengths up to 16.
pub fn detect_period(s: &StepSet) -> Result<u32> {
    let structural = structural_period(s).unwrap_or(1);
    let terms = excursion_terms(s, 16);
    match observed_period(&terms) {
        Some(obs) if obs != structural => Err(Error::PeriodMismatch {
            structural,
            observed: obs,
        }),
        _ => Ok(structural),
    }
}

/// Whether every cell of `[0, bound]^2` is reachable by some quarter-plane walk.
pub fn nondegenerate_in_box(s: &StepSet, bound: usize) -> bool {
    let side = 2 * bound + 2 * s.max_abs_coordinate() as usize + 2;
    let mut seen = vec![vec![false; side]; side];
    seen[0][0] = true;
    let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
    while let Some((i, j)) = queue.pop_front() {
        for st in s.steps() {
            let (ni, nj) = (i as i64 + st.dx, j as i64 + st.dy);
            if ni < 0 || nj < 0 || ni as usize >= side || nj as usize >= side {
                continue;
            }
            let (ni, nj) = (ni as usize, nj as usize);
            if !seen[ni][nj] {
                seen[ni][nj] = true;
                queue.push_back((ni, nj));
            }
        }
    }
    (0..=bound).all(|i| (0..=bound).all(|j| seen[i][j]))
}

/// Enclosure of `P[walk at origin at time n, never left the quarter plane]`
/// under the step weights `x0^i y0^j / rho`.
pub fn weighted_excursion_prob(
    s: &StepSet,
    cp: &CriticalPoint,
    n: usize,
) -> Result<DyadicInterval> {
    if n > DEFAULT_EXACT_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: DEFAULT_EXACT_CAP,
        });
    }
    let rho = eval_rho(s, cp)?;
    let prec = cp.x0.prec.max(cp.y0.prec);
    let weights: Vec<DyadicInterval> = s
        .steps()
        .iter()
        .map(|st| {
            let m = cp.x0.powi(st.dx)?.mul(&cp.y0.powi(st.dy)?);
            m.div(&rho)
        })
        .collect::<Result<_>>()?;
    let zero = DyadicInterval::point(Dyadic::zero(), prec);
    let one = DyadicInterval::point(Dyadic::one(), prec);
    let vals = run_dp(s, n, zero, one, |acc, v, k| {
        *acc = acc.add(&v.mul(&weights[k]));
    });
    Ok(vals[n].clone())
}

/// Weighted drift `(E[Y1], E[Y2])` under the Cramér weights; both contain 0.
pub fn drift_check(s: &StepSet, cp: &CriticalPoint) -> Result<(DyadicInterval, DyadicInterval)> {
    let rho = eval_rho(s, cp)?;
    let [gx, gy] = gradient_residual(s, cp);
    Ok((gx.div(&rho)?, gy.div(&rho)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsolve::solve_critical_point;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    const EX: &str = "(-1,0),(0,1),(1,0),(1,-1),(0,-1)";
    const SIMPLE: &str = "(1,0),(-1,0),(0,1),(0,-1)";

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn known_sequences() {
        let e = count_excursions_exact(&set(EX), 8, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(e.terms, ints(&[1, 0, 2, 1, 10, 14, 75, 178, 738]));
        assert_eq!(e.period, 1);
        let e = count_excursions_exact(&set("(1,1)"), 4, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(e.terms, ints(&[1, 0, 0, 0, 0]));
        let e = count_excursions_exact(&set(SIMPLE), 6, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(e.terms, ints(&[1, 0, 2, 0, 10, 0, 70]));
        assert_eq!(e.period, 2);
        assert_eq!(
            count_excursions_exact(&set(SIMPLE), 401, DEFAULT_EXACT_CAP),
            Err(Error::CapExceeded { n: 401, cap: 400 })
        );
    }

    #[test]
    fn pruned_dp_matches_full_table() {
        let s = set(EX);
        let table = walk_table(&s, 12);
        let e = excursion_terms(&s, 12);
        for n in 0..=12 {
            assert_eq!(table[n][0][0], e[n]);
        }
    }

    #[test]
    fn periods() {
        assert_eq!(detect_period(&set(SIMPLE)).unwrap(), 2);
        assert_eq!(detect_period(&set(EX)).unwrap(), 1);
        assert_eq!(detect_period(&set("(-1,0),(0,-1),(1,1)")).unwrap(), 3);
        assert_eq!(structural_period(&set("(1,1),(-1,-1)")), Some(2));
    }

    #[test]
    fn float_matches_exact() {
        let s = set(EX);
        let exact = excursion_terms(&s, 40);
        let fl = count_excursions_float(&s, 40, 4.7).unwrap();
        for n in 0..=40 {
            let e: f64 = exact[n].to_string().parse().unwrap();
            let want = e / 4.7f64.powi(n as i32);
            assert!(
                (fl.values[n] - want).abs() <= 1e-12 * want.max(1e-300),
                "n = {n}"
            );
        }
    }

    #[test]
    fn weighted_identity_small_cases() {
        let s = set(SIMPLE);
        let cp = solve_critical_point(&s, 64).unwrap();
        let p = weighted_excursion_prob(&s, &cp, 2).unwrap();
        assert!(p.contains(&Dyadic::pow2(-3)));
        assert!(weighted_excursion_prob(&s, &cp, 0)
            .unwrap()
            .contains(&Dyadic::one()));
        let (a, b) = drift_check(&s, &cp).unwrap();
        assert!(a.contains_zero() && b.contains_zero());
        assert!(a.width() < Dyadic::pow2(-60));
    }

    #[test]
    fn reachability_box() {
        assert!(nondegenerate_in_box(&set(EX), 10));
        assert!(!nondegenerate_in_box(&set("(1,1),(-1,-1)"), 3));
    }
}
