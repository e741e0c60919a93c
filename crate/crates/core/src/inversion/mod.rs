//! Inversion of `rho(dq; z) = z(dq) exp(-A(q; z))` by the tree fixed point and
//! by the Lagrange-Good determinant formula, plus the identities linking them.

mod determinant;
mod lagrange;
mod univariate;

use std::sync::{Arc, OnceLock};

use num_traits::One;

pub use determinant::{series_determinant, DeterminantBundle};
pub use univariate::{univariate_lagrange_check, univariate_routes, UnivariateRoutes};

use crate::error::Result;
use crate::rational::Rational;
use crate::series::{compose_family, ColorSet, FamilySeries, KernelFamily, MeasureSeries, TruncatedSeries};

/// The map to invert, given by its kernel family `A`.
#[derive(Debug, Clone)]
pub struct InversionProblem {
    a: KernelFamily,
    determinant: OnceLock<TruncatedSeries>,
    trees: OnceLock<TreeSolution>,
}

/// The tree solution `T(q; nu)` of the fixed point equation and the inverse
/// `zeta(dq; nu) = T(q; nu) nu(dq)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSolution {
    pub t: FamilySeries,
    pub zeta: MeasureSeries,
}

impl InversionProblem {
    pub fn new(a: KernelFamily) -> Self {
        InversionProblem { a, determinant: OnceLock::new(), trees: OnceLock::new() }
    }

    pub fn kernel(&self) -> &KernelFamily {
        &self.a
    }

    pub fn colors(&self) -> &Arc<ColorSet> {
        self.a.colors()
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    /// The density `exp(-A(q; z))` of `rho`.
    pub fn rho_density(&self) -> Result<FamilySeries> {
        FamilySeries::new(
            self.a.tables().iter().map(|t| t.neg().exponential()).collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn build_rho(&self) -> Result<MeasureSeries> {
        Ok(self.rho_density()?.radon_lift())
    }

    /// Right-hand side of the fixed point equation:
    /// `q -> exp(A(q; .) composed with T(x; nu) nu(dx))`.
    pub fn fixed_point_rhs(&self, t: &FamilySeries) -> Result<FamilySeries> {
        t.map(|q, _| compose_family(self.a.series(q), t)?.exponential())
    }

    /// Picard iteration from `T = 1`. Order `n` of the output only depends on
    /// orders below `n` of the input, so `N` rounds reach the fixed point.
    pub fn solve_tree_fixed_point(&self) -> Result<TreeSolution> {
        if let Some(sol) = self.trees.get() {
            return Ok(sol.clone());
        }
        let mut t = FamilySeries::constant(self.colors(), self.order(), Rational::one());
        for _ in 0..self.order() {
            t = self.fixed_point_rhs(&t)?;
        }
        let sol = TreeSolution { zeta: t.radon_lift(), t };
        Ok(self.trees.get_or_init(|| sol).clone())
    }

    /// The truncated Fredholm determinant `det(Id - A_z)`.
    pub fn fredholm_determinant(&self) -> Result<TruncatedSeries> {
        if let Some(d) = self.determinant.get() {
            return Ok(d.clone());
        }
        let d = determinant::fredholm(&self.a)?;
        Ok(self.determinant.get_or_init(|| d).clone())
    }
}
