use super::{BiPoly, IntPoly, Poly, TriPoly};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    T,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::T => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
        }
    }
}

/// Sparse integer polynomial in `x`, `y`, `t` with nonnegative exponents.
/// Used to build the elimination inputs before converting them to the
/// nested dense form in a chosen variable order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: impl Into<BigInt>, exps: [u32; 3]) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, coeff.into());
        p
    }

    pub fn add_term(&mut self, exps: [u32; 3], coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.degree_in(v).is_some_and(|d| d > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| super::int_gcd(&acc, c))
    }

    /// Leading term under graded lexicographic order (`x > y > t`).
    pub fn leading_term(&self) -> Option<([u32; 3], &BigInt)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e[0] + e[1] + e[2], e[0], e[1], e[2]))
            .map(|(e, c)| (*e, c))
    }

    /// Primitive, with positive graded-lex leading coefficient.
    pub fn canonical(&self) -> Self {
        let content = self.content();
        if content.is_zero() {
            return Self::zero();
        }
        let negate = self.leading_term().is_some_and(|(_, c)| c.is_negative());
        let divisor = if negate { -content } else { content };
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c / &divisor)).collect(),
        }
    }

    /// Dense nested form, `order[0]` outermost.
    pub fn to_nested(&self, order: [Var; 3]) -> TriPoly {
        let [o, m, i] = order.map(Var::index);
        let mut buckets: BTreeMap<u32, BTreeMap<u32, BTreeMap<u32, BigInt>>> = BTreeMap::new();
        for (e, c) in &self.terms {
            *buckets
                .entry(e[o])
                .or_default()
                .entry(e[m])
                .or_default()
                .entry(e[i])
                .or_insert_with(BigInt::zero) += c;
        }
        let outer_deg = buckets.keys().max().copied().unwrap_or(0) as usize;
        let mut outer = vec![BiPoly::zero(); outer_deg + 1];
        for (eo, mids) in buckets {
            let mid_deg = mids.keys().max().copied().unwrap_or(0) as usize;
            let mut mid = vec![IntPoly::zero(); mid_deg + 1];
            for (em, inner) in mids {
                let in_deg = inner.keys().max().copied().unwrap_or(0) as usize;
                let mut coeffs = vec![BigInt::zero(); in_deg + 1];
                for (ei, c) in inner {
                    coeffs[ei as usize] = c;
                }
                mid[em as usize] = Poly::new(coeffs);
            }
            outer[eo as usize] = Poly::new(mid);
        }
        Poly::new(outer)
    }

    /// Evaluate at integer points.
    pub fn eval_int(&self, x: &BigInt, y: &BigInt, t: &BigInt) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
            acc + c * x.pow(e[0]) * y.pow(e[1]) * t.pow(e[2])
        })
    }
}

impl fmt::Display for MultiPoly {
    /// Graded-lex descending, e.g. `x^2*y+x^2-y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + e[1] + e[2], e[0], e[1], e[2])));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mut factors = Vec::new();
            for v in [Var::X, Var::Y, Var::T] {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    p => factors.push(format!("{}^{}", v.name(), p)),
                }
            }
            let mag = c.magnitude();
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let unit = *mag == num_bigint::BigUint::from(1u32);
            match (unit, factors.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}
