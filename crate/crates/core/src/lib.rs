//! Exact formal power series over a finite color set, together with the two
//! inversion formulas for `rho(dq; z) = z(dq) exp(-A(q; z))`: the rooted-tree
//! fixed point and the Lagrange-Good determinant formula.
//!
//! Every identity relating the two is checked coefficient-by-coefficient
//! against brute-force enumeration of enriched maps, rooted trees and crowns
//! (see [`combinat`]), and the [`harness`] module bundles those checks into
//! reproducible randomized suites.
//!
//! Coefficients are stored in the symmetric-function convention: a series is
//! the sequence `f_0, f_1(x_1), f_2(x_1, x_2), ...` of symmetric functions on
//! the color set, so `F(z) = f_0 + sum_n 1/n! sum_{x} f_n(x_1..x_n) z_{x_1}..z_{x_n}`.
//! The ordinary monomial coefficient of `z^m` (a multi-index) is `f_n / m!`.

pub mod combinat;
pub mod error;
pub mod harness;
pub mod inversion;
pub mod rational;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{IdentityReport, Status, Witness};
pub use series::{
    CoefficientKey, Color, ColorSet, FamilySeries, KernelFamily, MeasureSeries, TruncatedSeries,
};
