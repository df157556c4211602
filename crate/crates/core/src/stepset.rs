//! Step sets, their characteristic Laurent polynomial, and the structural
//! predicates that gate the classification pipeline.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub dx: i64,
    pub dy: i64,
}

impl Step {
    pub const fn new(dx: i64, dy: i64) -> Self {
        Step { dx, dy }
    }

    fn is_small(self) -> bool {
        self.dx.abs() <= 1 && self.dy.abs() <= 1
    }

    pub fn transpose(self) -> Self {
        Step::new(self.dy, self.dx)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// Nonempty set of nonzero integer steps, kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct StepSet {
    steps: Vec<Step>,
}

impl StepSet {
    pub fn new(steps: impl IntoIterator<Item = Step>) -> Result<Self> {
        let mut steps: Vec<Step> = steps.into_iter().collect();
        if steps.is_empty() {
            return Err(Error::InvalidStep("empty step set".into()));
        }
        if steps.iter().any(|s| s.dx == 0 && s.dy == 0) {
            return Err(Error::InvalidStep("(0,0) is not a step".into()));
        }
        steps.sort();
        if let Some(w) = steps.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidStep(format!("duplicate step {}", w[0])));
        }
        Ok(StepSet { steps })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(dx, dy)| Step::new(dx, dy)))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains(&self, s: Step) -> bool {
        self.steps.binary_search(&s).is_ok()
    }

    pub fn is_small_step(&self) -> bool {
        self.steps.iter().all(|s| s.is_small())
    }

    /// Reflection across the diagonal.
    pub fn transpose(&self) -> Self {
        Self::new(self.steps.iter().map(|s| s.transpose())).expect("transpose keeps validity")
    }

    /// The 255 nonempty subsets of the eight small steps.
    pub fn all_small() -> Vec<StepSet> {
        let dirs: Vec<Step> = (-1..=1)
            .flat_map(|dx| (-1..=1).map(move |dy| Step::new(dx, dy)))
            .filter(|s| *s != Step::new(0, 0))
            .collect();
        (1u32..256)
            .map(|mask| {
                StepSet::new(
                    dirs.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, s)| *s),
                )
                .unwrap()
            })
            .collect()
    }

    /// Largest absolute coordinate over all steps.
    pub fn max_abs_coordinate(&self) -> i64 {
        self.steps
            .iter()
            .map(|s| s.dx.abs().max(s.dy.abs()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for StepSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_stepset(s)
    }
}

impl TryFrom<String> for StepSet {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        parse_stepset(&s)
    }
}

impl From<StepSet> for String {
    fn from(s: StepSet) -> String {
        s.to_string()
    }
}

/// Parse `"(dx,dy),(dx,dy),..."`; whitespace is ignored.
pub fn parse_stepset(text: &str) -> Result<StepSet> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::Parse(format!("{why} in step list {text:?}"));
    let mut rest = s.as_str();
    let mut steps = Vec::new();
    loop {
        rest = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
        let (pair, tail) = rest.split_at(close);
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| bad("expected 'dx,dy'"))?;
        let dx = a.parse::<i64>().map_err(|_| bad("bad integer"))?;
        let dy = b.parse::<i64>().map_err(|_| bad("bad integer"))?;
        steps.push(Step::new(dx, dy));
        rest = &tail[1..];
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| bad("expected ','"))?;
    }
    StepSet::new(steps)
}

/// Canonical text form, sorted lexicographically.
pub fn format_stepset(s: &StepSet) -> String {
    s.to_string()
}

/// Exact Laurent polynomial in `x`, `y` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn d_dx(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i - 1, j, c * i);
        }
        out
    }

    pub fn d_dy(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j - 1, c * j);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// Smallest exponents of `x` and `y` over all terms.
    pub fn min_exponents(&self) -> (i64, i64) {
        let mi = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let mj = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (mi, mj)
    }

    /// Clear negative powers by the smallest monomial denominator (positive
    /// monomial factors are kept); every term gets `t`-exponent `t_exp`.
    pub fn numerator_terms(&self, t_exp: u32) -> MultiPoly {
        let (mi, mj) = self.min_exponents();
        let (mi, mj) = (mi.min(0), mj.min(0));
        let mut out = MultiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term([(i - mi) as u32, (j - mj) as u32, t_exp], c.clone());
        }
        out
    }

    /// Numerator as an ordinary polynomial in `x`, `y`: primitive, positive
    /// graded-lex leading coefficient.
    pub fn numerator(&self) -> MultiPoly {
        self.numerator_terms(0).canonical()
    }

    /// Evaluate at rationals (zero coordinates only if no negative powers).
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                let c: f64 = c.to_string().parse().unwrap();
                c * x.powi(i as i32) * y.powi(j as i32)
            })
            .sum()
    }
}

impl fmt::Display for LaurentPoly2 {
    /// E.g. `x^-1+y^-1+x+y+x*y^-1`, in increasing exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 || neg {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            for (v, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            match (mag.is_one(), factors.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `chi(x, y) = sum over steps of x^dx y^dy`.
pub fn char_poly(s: &StepSet) -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for st in s.steps() {
        p.add_term(st.dx, st.dy, BigInt::one());
    }
    p
}

/// Numerators of the first partials and the exact second partials of `chi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partials {
    pub chi_x: MultiPoly,
    pub chi_y: MultiPoly,
    pub chi_xx: LaurentPoly2,
    pub chi_xy: LaurentPoly2,
    pub chi_yy: LaurentPoly2,
}

pub fn partials(chi: &LaurentPoly2) -> Partials {
    let dx = chi.d_dx();
    let dy = chi.d_dy();
    Partials {
        chi_x: dx.numerator(),
        chi_y: dy.numerator(),
        chi_xx: dx.d_dx(),
        chi_xy: dx.d_dy(),
        chi_yy: dy.d_dy(),
    }
}

/// Singular: no step among `(-1,0)`, `(-1,-1)`, `(0,-1)`.
pub fn is_singular(s: &StepSet) -> Result<bool> {
    if !s.is_small_step() {
        return Err(Error::NotSmallStep);
    }
    Ok(![Step::new(-1, 0), Step::new(-1, -1), Step::new(0, -1)]
        .iter()
        .any(|&st| s.contains(st)))
}

fn cross(a: Step, b: Step) -> i128 {
    a.dx as i128 * b.dy as i128 - a.dy as i128 * b.dx as i128
}

fn dot(a: Step, b: Step) -> i128 {
    a.dx as i128 * b.dx as i128 + a.dy as i128 * b.dy as i128
}

fn angle_cmp(a: Step, b: Step) -> Ordering {
    let half = |s: Step| u8::from(!(s.dy > 0 || (s.dy == 0 && s.dx > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

fn primitive_direction(s: Step) -> Step {
    let g = s.dx.gcd(&s.dy);
    Step::new(s.dx / g, s.dy / g)
}

fn is_witness(s: &StepSet, w: Step) -> bool {
    (w.dx, w.dy) != (0, 0) && s.steps().iter().all(|&st| dot(w, st) >= 0)
}

/// A nonzero `(a, b)` with `a*dx + b*dy >= 0` for every step, if one exists.
///
/// Steps are confined to a closed half-plane exactly when some angular gap
/// between consecutive step directions is at least `pi`.
pub fn is_half_plane_confined(s: &StepSet) -> Option<(i64, i64)> {
    let mut dirs: Vec<Step> = s
        .steps()
        .iter()
        .map(|&st| primitive_direction(st))
        .collect();
    dirs.sort_by(|a, b| angle_cmp(*a, *b));
    dirs.dedup();
    let n = dirs.len();
    for k in 0..n {
        let a = dirs[k];
        let b = dirs[(k + 1) % n];
        let c = cross(a, b);
        let wide = n == 1 || c < 0 || (c == 0 && dot(a, b) < 0);
        if !wide {
            continue;
        }
        // every step lies on the arc from b counterclockwise to a
        let sum = Step::new(a.dx + b.dx, a.dy + b.dy);
        if (sum.dx, sum.dy) != (0, 0) && is_witness(s, sum) {
            let w = primitive_direction(sum);
            return Some((w.dx, w.dy));
        }
        let normal = primitive_direction(Step::new(-b.dy, b.dx));
        debug_assert!(is_witness(s, normal));
        return Some((normal.dx, normal.dy));
    }
    None
}

/// Coordinate-wise sum of the steps.
pub fn drift(s: &StepSet) -> (i64, i64) {
    s.steps()
        .iter()
        .fold((0, 0), |(a, b), st| (a + st.dx, b + st.dy))
}

fn check_classifiable(s: &StepSet) -> Result<()> {
    if is_singular(s)? {
        return Err(Error::PredicateOutOfScope);
    }
    Ok(())
}

/// Invariance under `dx -> -dx` or under `dy -> -dy`.
pub fn has_axial_symmetry(s: &StepSet) -> Result<bool> {
    check_classifiable(s)?;
    let fx = s
        .steps()
        .iter()
        .all(|st| s.contains(Step::new(-st.dx, st.dy)));
    let fy = s
        .steps()
        .iter()
        .all(|st| s.contains(Step::new(st.dx, -st.dy)));
    Ok(fx || fy)
}

/// Finite-group criterion for nonsingular small-step sets: an axial
/// symmetry, or zero drift with cardinality different from 5.
pub fn group_finite_predicate(s: &StepSet) -> Result<bool> {
    let sym = has_axial_symmetry(s)?;
    Ok(sym || (drift(s) == (0, 0) && s.len() != 5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> StepSet {
        parse_stepset(text).unwrap()
    }

    const TAG23: &str = "(-1,0),(0,1),(1,0),(1,-1),(0,-1)";
    const SIMPLE: &str = "(1,0),(-1,0),(0,1),(0,-1)";

    #[test]
    fn parse_examples() {
        let s = set(TAG23);
        assert_eq!(s.len(), 5);
        assert_eq!(s.to_string(), "(-1,0),(0,-1),(0,1),(1,-1),(1,0)");
        assert_eq!(set(SIMPLE).len(), 4);
        assert!(matches!(parse_stepset("(0,0)"), Err(Error::InvalidStep(_))));
        assert!(matches!(
            parse_stepset("(1,0),(1,0)"),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(parse_stepset("(1,0"), Err(Error::Parse(_))));
        assert!(matches!(parse_stepset("(a,0)"), Err(Error::Parse(_))));
        assert!(matches!(parse_stepset("(1,0)(0,1)"), Err(Error::Parse(_))));
        assert!(matches!(parse_stepset(""), Err(Error::Parse(_))));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&set(TAG23)).to_string(), "x^-1+y^-1+y+x*y^-1+x");
        assert_eq!(char_poly(&set(SIMPLE)).to_string(), "x^-1+y^-1+y+x");
        assert_eq!(char_poly(&set("(1,1)")).to_string(), "x*y");
    }

    #[test]
    fn partial_examples() {
        let p = partials(&char_poly(&set(TAG23)));
        assert_eq!(p.chi_x.to_string(), "x^2*y+x^2-y");
        assert_eq!(p.chi_y.to_string(), "y^2-x-1");
        assert_eq!(p.chi_xy.to_string(), "-y^-2");
        let p = partials(&char_poly(&set(SIMPLE)));
        assert_eq!(p.chi_x.to_string(), "x^2-1");
        assert_eq!(p.chi_y.to_string(), "y^2-1");
        assert!(p.chi_xy.is_zero());
        let p = partials(&char_poly(&set("(1,1)")));
        assert_eq!(p.chi_x.to_string(), "y");
        assert_eq!(p.chi_y.to_string(), "x");
    }

    #[test]
    fn singular_examples() {
        assert!(!is_singular(&set(TAG23)).unwrap());
        assert!(is_singular(&set("(-1,1),(1,1),(1,-1)")).unwrap());
        assert!(!is_singular(&set(SIMPLE)).unwrap());
        assert_eq!(is_singular(&set("(2,0),(-1,0)")), Err(Error::NotSmallStep));
    }

    #[test]
    fn half_plane_examples() {
        assert_eq!(is_half_plane_confined(&set("(1,1)")), Some((1, 1)));
        assert_eq!(
            is_half_plane_confined(&set("(-1,1),(1,1),(1,-1)")),
            Some((1, 1))
        );
        assert_eq!(is_half_plane_confined(&set(TAG23)), None);
        assert_eq!(is_half_plane_confined(&set(SIMPLE)), None);
        // opposite directions only: a line
        let w = is_half_plane_confined(&set("(1,0),(-1,0)")).unwrap();
        assert_eq!(w.0, 0);
        // large steps
        assert_eq!(is_half_plane_confined(&set("(2,-1),(-1,2),(-1,-1)")), None);
    }

    #[test]
    fn group_predicates() {
        let s = set(TAG23);
        assert_eq!(drift(&s), (1, -1));
        assert!(!has_axial_symmetry(&s).unwrap());
        assert!(!group_finite_predicate(&s).unwrap());
        let simple = set(SIMPLE);
        assert!(has_axial_symmetry(&simple).unwrap());
        assert!(group_finite_predicate(&simple).unwrap());
        // the three zero-drift scarecrows
        for text in [
            "(-1,0),(0,-1),(1,1),(-1,1),(1,-1)",
            "(-1,-1),(0,1),(1,0),(-1,1),(1,-1)",
        ] {
            let s = set(text);
            assert_eq!(drift(&s), (0, 0));
            assert!(!group_finite_predicate(&s).unwrap(), "{text}");
        }
        assert_eq!(
            group_finite_predicate(&set("(-1,1),(1,1),(1,-1)")),
            Err(Error::PredicateOutOfScope)
        );
    }

    #[test]
    fn all_small_count() {
        let all = StepSet::all_small();
        assert_eq!(all.len(), 255);
        assert!(all.iter().all(|s| s.is_small_step()));
    }
}
