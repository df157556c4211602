//! Empirical fit of `e_n ~ K rho^n n^alpha` from float enumeration.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MIN_TERMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub alpha_hat: f64,
    #[serde(rename = "K_hat")]
    pub k_hat: f64,
    pub n_used: usize,
    pub period: u32,
    /// Richardson correction `alpha_hat - alpha_N`.
    pub residual: f64,
    pub certified: bool,
}

/// Fit on the class `n = 0 mod period`. `values[n] = e_n / scale^n`.
pub fn fit_asymptotics(values: &[f64], scale: f64, rho: f64, period: u32) -> Result<AsymptoticFit> {
    fit_on_class(values, scale, rho, period, 0)
}

/// Fit on the residue class `n = residue mod period`.
pub fn fit_on_class(
    values: &[f64],
    scale: f64,
    rho: f64,
    period: u32,
    residue: u32,
) -> Result<AsymptoticFit> {
    let p = period.max(1) as usize;
    let last = values.len().saturating_sub(1);
    let start = (last / 8).max(p);
    let class: Vec<usize> = (start..=last)
        .filter(|n| n % p == residue as usize % p)
        .collect();
    if class.len() < MIN_TERMS {
        return Err(Error::InsufficientTerms {
            needed: MIN_TERMS,
            got: class.len(),
        });
    }
    if let Some(&n) = class.iter().find(|&&n| !(values[n] > 0.0)) {
        return Err(Error::NonPositiveTerm(n));
    }
    let shift = (scale / rho).ln();
    // a_n = log(e_n / rho^n)
    let a = |n: usize| values[n].ln() + n as f64 * shift;
    let local = |n: usize| (a(n) - a(n - p)) / ((n as f64).ln() - ((n - p) as f64).ln());
    let n_top = *class.last().unwrap();
    let n_half = class
        .iter()
        .copied()
        .min_by_key(|&n| n.abs_diff(n_top / 2))
        .unwrap();
    let a_top = local(n_top);
    let a_half = local(n_half);
    // alpha_n = alpha + C / n: eliminate C between n_top and n_half
    let (nt, nh) = (n_top as f64, n_half as f64);
    let alpha_hat = (nt * a_top - nh * a_half) / (nt - nh);
    let decile: Vec<usize> = class
        .iter()
        .copied()
        .filter(|&n| n * 10 >= 9 * n_top)
        .collect();
    let mean = decile
        .iter()
        .map(|&n| a(n) - alpha_hat * (n as f64).ln())
        .sum::<f64>()
        / decile.len() as f64;
    Ok(AsymptoticFit {
        alpha_hat,
        k_hat: mean.exp(),
        n_used: n_top,
        period,
        residual: alpha_hat - a_top,
        certified: false,
    })
}
