//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use qwalk::poly::IntPoly;
use qwalk::{Step, StepSet};
use rand::Rng;

/// Excursion counts `e_0..e_n` by depth-first search over all paths.
pub fn brute_excursions(s: &StepSet, n: usize) -> Vec<u64> {
    fn walk(steps: &[(i64, i64)], x: i64, y: i64, left: usize, len: usize, out: &mut [u64]) {
        if x == 0 && y == 0 {
            out[len] += 1;
        }
        if left == 0 {
            return;
        }
        for &(dx, dy) in steps {
            let (nx, ny) = (x + dx, y + dy);
            // a path this far out cannot return within the remaining steps
            if nx < 0 || ny < 0 || nx > left as i64 || ny > left as i64 {
                continue;
            }
            walk(steps, nx, ny, left - 1, len + 1, out);
        }
    }
    let steps: Vec<(i64, i64)> = s.steps().iter().map(|t| (t.dx, t.dy)).collect();
    let mut out = vec![0u64; n + 1];
    walk(&steps, 0, 0, n, 0, &mut out);
    out
}

pub fn random_small_stepset(rng: &mut impl Rng) -> StepSet {
    let dirs: Vec<Step> = (-1..=1)
        .flat_map(|dx| (-1..=1).map(move |dy| Step::new(dx, dy)))
        .filter(|s| *s != Step::new(0, 0))
        .collect();
    let mask: u32 = rng.gen_range(1..256);
    StepSet::new(
        dirs.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s),
    )
    .unwrap()
}

fn to_rational(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            r[i + k] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn variations(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots from the Sturm sequence.
pub fn sturm_count(p: &IntPoly) -> usize {
    let p0 = trim(to_rational(p));
    let p1: Vec<BigRational> = trim(
        p0.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    );
    let mut seq = vec![p0, p1];
    while seq.last().unwrap().len() > 1 {
        let n = seq.len();
        let r: Vec<BigRational> = rem(&seq[n - 2], &seq[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let sign = |c: &BigRational| {
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    };
    let at_pos: Vec<i32> = seq.iter().map(|q| sign(q.last().unwrap())).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|q| {
            let s = sign(q.last().unwrap());
            if (q.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    variations(&at_neg) - variations(&at_pos)
}

/// Determinant of the Sylvester matrix of `a` and `b`.
pub fn sylvester_det(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return BigInt::from(1);
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (p, d, copies) in [(a, m, n), (b, n, m)] {
        for k in 0..copies {
            let mut row = vec![BigRational::zero(); size];
            for i in 0..=d {
                // highest coefficient first
                row[k + i] = BigRational::from_integer(p.coeff(d - i));
            }
            rows.push(row);
        }
    }
    let mut det = BigRational::from_integer(BigInt::from(1));
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            let f = &rows[r][col] / &p;
            if f.is_zero() {
                continue;
            }
            for c in col..size {
                let v = &f * &rows[col][c];
                rows[r][c] -= v;
            }
        }
    }
    det.to_integer()
}
