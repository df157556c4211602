//! Certified numerics: dyadic interval arithmetic, real root isolation and
//! the critical point of the characteristic polynomial.

mod critical;
mod dyadic;
mod elementary;
mod interval;
mod roots;

pub use critical::{
    eval_c, eval_laurent, eval_rho, gradient_residual, hessian_positive_definite,
    solve_critical_point, CertificationInfo, CriticalPoint,
};
pub use dyadic::{Dyadic, Round};
pub use elementary::{alpha_from_c, arccos, atan, pi};
pub use interval::{format_sig, parse_decimal, DyadicInterval};
pub use roots::{isolate_real_roots, match_root, match_root_with, refine, AlgebraicNumber};

pub const DEFAULT_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// Precision cap, overridable through `QWALK_PRECISION_CAP`.
pub fn precision_cap() -> u32 {
    std::env::var("QWALK_PRECISION_CAP")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&v| v >= 16)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

/// `start, 2*start, ...` up to and including the cap.
pub fn precision_schedule(start: u32) -> Vec<u32> {
    let cap = precision_cap();
    let mut out = Vec::new();
    let mut p = start.max(16);
    while p < cap {
        out.push(p);
        p *= 2;
    }
    out.push(cap.max(start.min(cap)));
    out.dedup();
    out
}
