//! Certified non-D-finiteness of quarter-plane excursion generating functions.
//!
//! The pipeline takes a step set, enumerates its excursions exactly, locates
//! the positive critical point of the characteristic polynomial, eliminates
//! annihilating polynomials for the growth constant `rho` and the correlation
//! coefficient `c`, and proves `arccos(c)/pi` irrational by a cyclotomic
//! sweep. An irrational singular exponent rules out D-finiteness.

pub mod asymptotics;
pub mod elim;
pub mod enumerate;
pub mod error;
pub mod irrational;
pub mod numsolve;
pub mod poly;
pub mod report;
pub mod stepset;

pub use error::{Error, Result};
pub use stepset::{LaurentPoly2, Step, StepSet};
