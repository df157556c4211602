//! Pipeline orchestration, reference fixtures, table regression checks and
//! the JSON classification report.

pub mod fixtures;

pub use fixtures::{fixture, fixtures, poly_rows, Fixture, PolyRow};

use crate::asymptotics::{fit_on_class, AsymptoticFit};
use crate::elim::Provenance;
use crate::enumerate::{
    count_excursions_exact, count_excursions_float, detect_period, ExcursionSeq, DEFAULT_EXACT_CAP,
};
use crate::error::{Error, Result};
use crate::irrational::{analyze, verdict_at, Analysis, Conclusion, IrrationalityCertificate};
use crate::numsolve::{
    hessian_positive_definite, match_root, AlgebraicNumber, CertificationInfo, DyadicInterval,
    DEFAULT_PRECISION,
};
use crate::poly::{divides, IntPoly};
use crate::stepset::{char_poly, group_finite_predicate, is_singular, StepSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

pub const SCHEMA_VERSION: &str = "1";
/// Number of leading terms compared against the fixtures.
pub const PREFIX_LEN: usize = 9;

/// `e_0..e_8`.
pub fn prefix(s: &StepSet) -> Vec<BigInt> {
    count_excursions_exact(s, PREFIX_LEN - 1, DEFAULT_EXACT_CAP)
        .expect("prefix is below the cap")
        .terms
}

/// Fixture whose printed prefix equals that of `s`.
pub fn match_fixture(s: &StepSet) -> Option<&'static Fixture> {
    let p = prefix(s);
    fixtures().iter().find(|f| f.sequence == p)
}

/// Every fixture with the small-step sets realising it, in table order.
/// Sets are kept when they are nonsingular with an infinite group and their
/// prefix equals the row's sequence.
pub fn recover_fixture_stepsets() -> Result<Vec<(&'static Fixture, Vec<StepSet>)>> {
    static CACHE: OnceLock<Result<Vec<(&'static Fixture, Vec<StepSet>)>>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let candidates: Vec<(StepSet, Vec<BigInt>)> = StepSet::all_small()
                .into_par_iter()
                .filter(|s| is_singular(s) == Ok(false) && group_finite_predicate(s) == Ok(false))
                .map(|s| {
                    let p = prefix(&s);
                    (s, p)
                })
                .collect();
            fixtures()
                .iter()
                .map(|f| {
                    let mut sets: Vec<StepSet> = candidates
                        .iter()
                        .filter(|(_, p)| *p == f.sequence)
                        .map(|(s, _)| s.clone())
                        .collect();
                    sets.sort_by_key(|s| s.to_string());
                    if sets.is_empty() {
                        Err(Error::UnmatchedFixture(f.tag.clone()))
                    } else {
                        Ok((f, sets))
                    }
                })
                .collect()
        })
        .clone()
}

/// Step sets of one fixture, by row tag.
pub fn fixture_stepsets(tag: &str) -> Result<Vec<StepSet>> {
    let f = fixture(tag).ok_or_else(|| Error::UnmatchedFixture(tag.to_string()))?;
    Ok(recover_fixture_stepsets()?
        .into_iter()
        .find(|(g, _)| g.number == f.number)
        .map(|(_, s)| s)
        .unwrap_or_default())
}

/// Pipeline results at default precision, keyed by the step set's text.
/// Results are cached for the life of the process; missing sets are
/// analysed in parallel.
pub fn analyses_for(sets: &[StepSet]) -> BTreeMap<String, Result<Analysis>> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, Result<Analysis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let missing: Vec<&StepSet> = {
        let c = cache.lock().unwrap();
        let mut m: Vec<&StepSet> = sets
            .iter()
            .filter(|s| !c.contains_key(&s.to_string()))
            .collect();
        m.sort_by_key(|s| s.to_string());
        m.dedup();
        m
    };
    let fresh: Vec<(String, Result<Analysis>)> = missing
        .into_par_iter()
        .map(|s| (s.to_string(), analyze(s, DEFAULT_PRECISION)))
        .collect();
    let mut c = cache.lock().unwrap();
    c.extend(fresh);
    sets.iter()
        .map(|s| {
            let k = s.to_string();
            let v = c[&k].clone();
            (k, v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub tag: String,
    pub steps: Vec<String>,
    pub failures: Vec<String>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub table: u8,
    pub rows: Vec<RowCheck>,
}

impl TableCheck {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.rows.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "table {}: {}/{} rows pass",
            self.table,
            self.passed(),
            self.rows.len()
        )
    }
}

/// Numbers named by a tag filter; `"(3,6)"` names both members.
fn filter_numbers(tags: &[String]) -> Vec<u32> {
    tags.iter()
        .flat_map(|t| {
            t.trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .split(',')
                .filter_map(|p| p.trim().trim_end_matches('*').parse::<u32>().ok())
                .collect::<Vec<_>>()
        })
        .collect()
}

fn analysis_of(m: &BTreeMap<String, Result<Analysis>>, s: &StepSet) -> Result<Analysis> {
    m[&s.to_string()].clone()
}

fn check_table1_row(
    f: &Fixture,
    sets: &[StepSet],
    m: &BTreeMap<String, Result<Analysis>>,
) -> Vec<String> {
    let mut fails = Vec::new();
    for s in sets {
        let p = prefix(s);
        if p != f.sequence {
            fails.push(format!("{s}: sequence {p:?}"));
        }
        let want = if f.periodic { 2 } else { 1 };
        match detect_period(s) {
            Ok(p) if p == want => {}
            Ok(p) => fails.push(format!("{s}: period {p}, expected {want}")),
            Err(e) => fails.push(format!("{s}: {e}")),
        }
        let a = match analysis_of(m, s) {
            Ok(a) => a,
            Err(e) => {
                fails.push(format!("{s}: {e}"));
                continue;
            }
        };
        let rho = a.rho.refine(80).isolator;
        if !rho.matches_printed(&f.rho_decimal) {
            fails.push(format!(
                "{s}: rho {} vs {}",
                a.rho.to_decimal(10),
                f.rho_decimal
            ));
        }
        if !a.alpha.neg().matches_printed(&f.alpha_decimal) {
            fails.push(format!(
                "{s}: |alpha| {} vs {}",
                a.alpha.neg(),
                f.alpha_decimal
            ));
        }
    }
    fails
}

fn check_root(name: &str, mu: &IntPoly, e: &IntPoly, x: &AlgebraicNumber) -> Vec<String> {
    let mut fails = Vec::new();
    if !divides(mu, e).unwrap_or(false) {
        fails.push(format!("mu_{name} does not divide E_{name}"));
    }
    if !x.is_root_of(mu) {
        fails.push(format!("{name} is not a root of mu_{name}"));
    }
    let target = x.refine(80).isolator;
    match match_root(mu, &target) {
        Ok(r) if r.isolator.intersects(&target) => {}
        Ok(_) => fails.push(format!("root of mu_{name} misses the {name} enclosure")),
        Err(err) => fails.push(format!("mu_{name}: {err}")),
    }
    fails
}

fn check_table2_row(
    row: &PolyRow,
    sets: &[StepSet],
    m: &BTreeMap<String, Result<Analysis>>,
) -> Vec<String> {
    let mut fails = Vec::new();
    for s in sets {
        match analysis_of(m, s) {
            Ok(a) => {
                for f in check_root("rho", &row.mu_rho, &a.e_rho.poly, &a.rho)
                    .into_iter()
                    .chain(check_root("c", &row.mu_c, &a.e_c.poly, &a.c))
                {
                    fails.push(format!("{s}: {f}"));
                }
            }
            Err(e) => fails.push(format!("{s}: {e}")),
        }
    }
    fails
}

/// Regression check of one reference table, optionally restricted to some
/// tags. Rows are returned in table order.
pub fn check_tables(table: u8, tags: Option<&[String]>) -> Result<TableCheck> {
    if table != 1 && table != 2 {
        return Err(Error::Parse(format!("no table {table} (expected 1 or 2)")));
    }
    let wanted = tags.map(filter_numbers);
    let keep = |numbers: &[u32]| {
        wanted
            .as_ref()
            .map_or(true, |w| numbers.iter().any(|n| w.contains(n)))
    };
    let recovered = recover_fixture_stepsets()?;
    let involved: Vec<StepSet> = recovered
        .iter()
        .filter(|(f, _)| match table {
            1 => keep(&[f.number]),
            _ => poly_rows()
                .iter()
                .any(|r| r.members.contains(&f.number) && keep(&r.members)),
        })
        .flat_map(|(_, s)| s.iter().cloned())
        .collect();
    let m = &analyses_for(&involved);
    let sets_of = |n: u32| -> Vec<StepSet> {
        recovered
            .iter()
            .find(|(f, _)| f.number == n)
            .map(|(_, s)| s.clone())
            .unwrap_or_default()
    };
    let rows = if table == 1 {
        recovered
            .par_iter()
            .filter(|(f, _)| keep(&[f.number]))
            .map(|(f, sets)| RowCheck {
                tag: f.tag.clone(),
                steps: sets.iter().map(|s| s.to_string()).collect(),
                failures: check_table1_row(f, sets, m),
            })
            .collect()
    } else {
        poly_rows()
            .par_iter()
            .filter(|r| keep(&r.members))
            .map(|r| {
                let mut sets: Vec<StepSet> = r.members.iter().flat_map(|&n| sets_of(n)).collect();
                sets.sort_by_key(|s| s.to_string());
                sets.dedup();
                RowCheck {
                    tag: r.label.clone(),
                    steps: sets.iter().map(|s| s.to_string()).collect(),
                    failures: check_table2_row(r, &sets, m),
                }
            })
            .collect()
    };
    Ok(TableCheck { table, rows })
}

/// Monic form with rational coefficients and no `*`, e.g. `t^3+t^2+3/4t+1/8`.
pub fn table_style(p: &IntPoly) -> String {
    let Some(lc) = p.coeffs().last().cloned() else {
        return "0".to_string();
    };
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let q = BigRational::new(c.clone(), lc.clone());
        if q.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = q.abs();
        let coeff = if mag.is_one() && i > 0 {
            String::new()
        } else if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        out.push_str(&coeff);
        match i {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{i}")),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalReport {
    /// Exact dyadic endpoints, `m` or `m/2^k`.
    pub lo: String,
    pub hi: String,
    /// Ten significant digits when both endpoints round alike.
    pub decimal: Option<String>,
}

impl From<&DyadicInterval> for IntervalReport {
    fn from(iv: &DyadicInterval) -> Self {
        IntervalReport {
            lo: iv.lo.to_string(),
            hi: iv.hi.to_string(),
            decimal: iv.to_decimal(10),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicReport {
    #[serde(with = "crate::poly::serde_t")]
    pub annihilator: IntPoly,
    pub provenance: Provenance,
    pub interval: IntervalReport,
    pub decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointReport {
    pub x0: IntervalReport,
    pub y0: IntervalReport,
    pub certification: CertificationInfo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    /// Always `"non-certified"`.
    pub status: String,
    pub n_max: usize,
    pub fit: Option<AsymptoticFit>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: String,
    pub steps: String,
    pub chi: String,
    pub small_step: bool,
    pub singular: Option<bool>,
    pub half_plane: Option<(i64, i64)>,
    pub period: Option<u32>,
    pub nondegeneracy_box: usize,
    pub nondegenerate_in_box: bool,
    pub caveats: Vec<String>,
    pub excursions: Option<ExcursionSeq>,
    pub critical_point: Option<CriticalPointReport>,
    pub rho: Option<AlgebraicReport>,
    pub c: Option<AlgebraicReport>,
    pub alpha: Option<IntervalReport>,
    pub certificate: Option<IrrationalityCertificate>,
    pub verdict: Conclusion,
    pub asymptotic_fit: Option<FitReport>,
    pub matched_tag: Option<String>,
    pub failure: Option<String>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Exact excursion terms reported, `e_0..e_max_n`.
    pub max_n: usize,
    pub precision: u32,
    /// Length of the float enumeration behind the asymptotic fit; `None` skips it.
    pub fit_n: Option<usize>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_n: 20,
            precision: DEFAULT_PRECISION,
            fit_n: Some(600),
        }
    }
}

fn algebraic_report(x: &AlgebraicNumber, provenance: &Provenance) -> AlgebraicReport {
    AlgebraicReport {
        annihilator: x.annihilator.clone(),
        provenance: provenance.clone(),
        interval: IntervalReport::from(&x.refine(64).isolator),
        decimal: x.to_decimal(10),
    }
}

fn fit_report(s: &StepSet, rho: f64, period: u32, n_max: usize) -> FitReport {
    let fit = count_excursions_float(s, n_max, rho)
        .and_then(|seq| fit_on_class(&seq.values, seq.scale, rho, period, 0));
    FitReport {
        status: "non-certified".into(),
        n_max,
        error: fit.as_ref().err().map(|e| e.to_string()),
        fit: fit.ok(),
    }
}

/// Label of the table row sharing the prefix of `s`: `"23"`, or `"(3,6)"`
/// when a transposed pair shares the row.
pub fn matched_tag(s: &StepSet) -> Option<String> {
    match_fixture(s).map(|f| f.group.clone())
}

/// Full pipeline for one step set.
pub fn classify(s: &StepSet, opts: &ClassifyOptions) -> ClassificationReport {
    let v = verdict_at(s, opts.precision);
    let h = &v.hypotheses;
    let mut diagnostics = v.diagnostics.clone();
    let mut caveats = Vec::new();
    if h.caveat_non_small_steps {
        caveats.push("steps outside {-1,0,1}: the asymptotic form is not established".into());
    }
    caveats.push(format!(
        "nondegeneracy checked on [0,{}]^2 only",
        h.nondegeneracy_box
    ));
    let excursions = match count_excursions_exact(s, opts.max_n, DEFAULT_EXACT_CAP) {
        Ok(e) => Some(e),
        Err(e) => {
            diagnostics.push(e.to_string());
            None
        }
    };
    let a = v.analysis.as_ref();
    let critical_point = a.map(|a| CriticalPointReport {
        x0: (&a.critical_point.x0).into(),
        y0: (&a.critical_point.y0).into(),
        certification: CertificationInfo {
            method: "krawczyk".into(),
            bits: a.critical_point.bits,
            hessian_positive_definite: hessian_positive_definite(s, &a.critical_point),
        },
    });
    let asymptotic_fit = match (a, opts.fit_n) {
        (Some(a), Some(n)) => Some(fit_report(s, a.rho.to_f64(), h.period.unwrap_or(1), n)),
        _ => None,
    };
    let failure = if a.is_none() {
        v.diagnostics.first().cloned()
    } else {
        None
    };
    ClassificationReport {
        schema: SCHEMA_VERSION.into(),
        steps: s.to_string(),
        chi: char_poly(s).to_string(),
        small_step: h.small_step,
        singular: h.singular,
        half_plane: h.half_plane_witness,
        period: h.period,
        nondegeneracy_box: h.nondegeneracy_box,
        nondegenerate_in_box: h.nondegenerate_in_box,
        caveats,
        excursions,
        critical_point,
        rho: a.map(|a| algebraic_report(&a.rho, &a.e_rho.provenance)),
        c: a.map(|a| algebraic_report(&a.c, &a.e_c.provenance)),
        alpha: a.map(|a| (&a.alpha).into()),
        certificate: a.map(|a| a.certificate.clone()),
        verdict: v.conclusion,
        asymptotic_fit,
        matched_tag: if s.is_small_step() {
            matched_tag(s)
        } else {
            None
        },
        failure,
        diagnostics,
    }
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        out.push(format!("steps        {}", self.steps));
        out.push(format!("chi          {}", self.chi));
        out.push(format!("verdict      {}", verdict_name(self.verdict)));
        if let Some(t) = &self.matched_tag {
            out.push(format!("table tag    {t}"));
        }
        if let Some(p) = self.period {
            out.push(format!("period       {p}"));
        }
        if let Some((a, b)) = self.half_plane {
            out.push(format!("half-plane   {a}*x + {b}*y >= 0"));
        }
        if let Some(e) = &self.excursions {
            let terms: Vec<String> = e.terms.iter().map(|t| t.to_string()).collect();
            out.push(format!("excursions   {}", terms.join(", ")));
        }
        for (name, x) in [("rho", &self.rho), ("c", &self.c)] {
            if let Some(x) = x {
                out.push(format!(
                    "{name:<13}{}  root of {}",
                    x.decimal,
                    table_style(&x.annihilator)
                ));
            }
        }
        if let Some(a) = self.alpha.as_ref().and_then(|a| a.decimal.as_ref()) {
            out.push(format!("alpha        {a}"));
        }
        if let Some(c) = &self.certificate {
            out.push(format!(
                "certificate  {:?}, degree {}, {} values of N checked, flagged {:?}",
                c.method,
                c.degree_bound,
                c.checked_n.len(),
                c.flagged_n
            ));
            if let Some(w) = &c.witness {
                out.push(format!("witness      arccos(c)/pi = {}/{}", w.p, w.q));
            }
        }
        if let Some(FitReport { fit: Some(f), .. }) = &self.asymptotic_fit {
            out.push(format!(
                "fit          alpha ~ {:.4}, K ~ {:.4} at n = {} (non-certified)",
                f.alpha_hat, f.k_hat, f.n_used
            ));
        }
        for c in &self.caveats {
            out.push(format!("caveat       {c}"));
        }
        for d in &self.diagnostics {
            out.push(format!("note         {d}"));
        }
        out.join("\n")
    }
}

pub fn verdict_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::NotDFinite => "not D-finite",
        Conclusion::NoConclusion => "no conclusion",
        Conclusion::HypothesisFailed => "hypothesis failed",
        Conclusion::Inconclusive => "inconclusive",
    }
}

/// Process exit code for a verdict.
pub fn exit_code(c: Conclusion) -> i32 {
    match c {
        Conclusion::NotDFinite | Conclusion::NoConclusion => 0,
        Conclusion::HypothesisFailed => 2,
        Conclusion::Inconclusive => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> StepSet {
        s.parse().unwrap()
    }

    const EX: &str = "(-1,0),(0,1),(1,0),(1,-1),(0,-1)";

    #[test]
    fn table_style_reproduces_fixture_text() {
        for r in poly_rows() {
            assert_eq!(table_style(&r.mu_rho), r.mu_rho_text, "{}", r.label);
            assert_eq!(table_style(&r.mu_c), r.mu_c_text, "{}", r.label);
        }
    }

    #[test]
    fn recovery_matches_every_row() {
        let rec = recover_fixture_stepsets().unwrap();
        assert_eq!(rec.len(), 51);
        let ex = set(EX);
        let (_, sets) = rec.iter().find(|(f, _)| f.tag == "23").unwrap();
        assert!(sets.contains(&ex));
        // rows 3 and 6 share their prefix, so each holds both transpose pairs
        let (_, sets) = rec.iter().find(|(f, _)| f.tag == "3").unwrap();
        assert_eq!(sets.len(), 4);
        assert!(sets.iter().all(|s| sets.contains(&s.transpose())));
        let (_, six) = rec.iter().find(|(f, _)| f.tag == "6").unwrap();
        assert_eq!(sets, six);
    }

    #[test]
    fn classify_worked_example() {
        let opts = ClassifyOptions {
            fit_n: Some(300),
            ..Default::default()
        };
        let r = classify(&set(EX), &opts);
        assert_eq!(r.verdict, Conclusion::NotDFinite);
        assert_eq!(r.rho.as_ref().unwrap().decimal, "4.729031538");
        assert_eq!(
            r.alpha.as_ref().unwrap().decimal.as_deref(),
            Some("-3.320191962")
        );
        assert_eq!(r.matched_tag.as_deref(), Some("23"));
        assert_eq!(r.asymptotic_fit.as_ref().unwrap().status, "non-certified");
        let json = r.to_json();
        assert_eq!(ClassificationReport::from_json(&json).unwrap(), r);
        assert_eq!(classify(&set(EX), &opts).to_json(), json);
    }

    #[test]
    fn classify_controls() {
        let opts = ClassifyOptions {
            fit_n: None,
            ..Default::default()
        };
        let r = classify(&set("(1,0),(-1,0),(0,1),(0,-1)"), &opts);
        assert_eq!(r.verdict, Conclusion::NoConclusion);
        assert_eq!(r.alpha.unwrap().decimal.as_deref(), Some("-3.000000000"));
        assert_eq!(r.matched_tag, None);
        let r = classify(&set("(-1,1),(1,1),(1,-1)"), &opts);
        assert_eq!(r.verdict, Conclusion::HypothesisFailed);
        assert_eq!(r.singular, Some(true));
        assert!(r.half_plane.is_some());
        assert!(r.failure.is_some());
        assert_eq!(exit_code(r.verdict), 2);
    }
}
