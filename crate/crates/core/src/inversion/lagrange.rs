use num_traits::Zero;

use super::InversionProblem;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{IdentityReport, ReportBuilder};
use crate::series::{compose_family, compose_measure, CoefficientKey, Color, MeasureSeries, TruncatedSeries};

impl InversionProblem {
    fn check_tuple(&self, q: &[Color]) -> Result<()> {
        if q.is_empty() {
            return Err(Error::EmptyInput);
        }
        if q.len() > self.order() {
            return Err(Error::KeyTooLarge { size: q.len(), order: self.order() });
        }
        if let Some(c) = q.iter().find(|c| c.index() >= self.colors().len()) {
            return Err(Error::UnknownColor(format!("#{}", c.0)));
        }
        Ok(())
    }

    /// `exp(sum_i A(q_i; .))` truncated at `#q`.
    pub fn pinned_exponential(&self, q: &[Color]) -> Result<TruncatedSeries> {
        self.a.sum_at(q)?.truncate(q.len()).exponential()
    }

    /// The order-zero term of `delta^n [Phi exp(sum_i A(q_i; .)) det(Id - A_z)]`
    /// at the tuple `q`, i.e. the `n`-th coefficient of `Phi(zeta)` at `q`.
    pub fn lagrange_good_coefficient(&self, phi: &TruncatedSeries, q: &[Color]) -> Result<Rational> {
        self.check_tuple(q)?;
        if phi.order() < q.len() {
            return Err(Error::KeyTooLarge { size: q.len(), order: phi.order() });
        }
        let n = q.len();
        let det = self.fredholm_determinant()?.truncate(n);
        let product = phi.truncate(n).multiply(&self.pinned_exponential(q)?)?.multiply(&det)?;
        product.coefficient_at(q)
    }

    /// `sum_{I subset [n]} E^n_{#I}(q; q_I) D_{n-#I}(q_rest)`, which vanishes.
    pub fn magic_sum(&self, q: &[Color]) -> Result<Rational> {
        self.check_tuple(q)?;
        let n = q.len();
        let e = self.pinned_exponential(q)?;
        let d = self.fredholm_determinant()?;
        let key = CoefficientKey::new(q.iter().copied());
        let full = (1u32 << n) - 1;
        let mut acc = Rational::zero();
        for mask in 0..=full {
            acc += e.coefficient(&key.select(mask)) * d.coefficient(&key.select(full & !mask));
        }
        Ok(acc)
    }

    /// The `n`-th coefficient of `zeta(B; nu)` at `q` from the determinant formula.
    pub fn inverse_via_determinant(&self, subset: &[Color], q: &[Color]) -> Result<Rational> {
        let phi = TruncatedSeries::atom_sum(self.colors(), self.order(), subset);
        self.lagrange_good_coefficient(&phi, q)
    }

    /// The same coefficient from rooted trees:
    /// `sum_r 1_B(q_r) t_{n-1}(q_r; q without q_r)`.
    pub fn inverse_via_trees(&self, subset: &[Color], q: &[Color]) -> Result<Rational> {
        self.check_tuple(q)?;
        let sol = self.solve_tree_fixed_point()?;
        let key = CoefficientKey::new(q.iter().copied());
        let mut acc = Rational::zero();
        for r in 0..key.len() {
            let root = key.colors()[r];
            if subset.contains(&root) {
                acc += sol.t.member(root).coefficient(&key.without(r));
            }
        }
        Ok(acc)
    }

    /// `Psi = Phi(zeta)` computed by composing with the tree solution.
    pub fn compose_with_trees(&self, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
        let sol = self.solve_tree_fixed_point()?;
        compose_family(phi, &sol.t)
    }

    /// Compares `Phi(zeta)` against the determinant formula at every tuple of
    /// size `1..=min(max_n, N)`.
    pub fn lagrange_good_report(&self, phi: &TruncatedSeries, max_n: usize, parameters: &str) -> Result<IdentityReport> {
        let psi = self.compose_with_trees(phi)?;
        let mut report = ReportBuilder::new("lagrange-good", parameters, self.colors());
        for key in self.colors().keys_up_to(max_n.min(self.order())).into_iter().skip(1) {
            let got = self.lagrange_good_coefficient(phi, key.colors())?;
            report.check(&key, "Phi(zeta) vs determinant formula", &psi.coefficient(&key), &got);
        }
        Ok(report.finish())
    }

    pub fn magic_report(&self, max_n: usize, parameters: &str) -> Result<IdentityReport> {
        let mut report = ReportBuilder::new("magic", parameters, self.colors());
        for key in self.colors().keys_up_to(max_n.min(self.order())).into_iter().skip(1) {
            report.check(&key, "magic sum", &Rational::zero(), &self.magic_sum(key.colors())?);
        }
        Ok(report.finish())
    }

    /// `rho o zeta` and `zeta o rho` against the identity measure.
    pub fn round_trip_check(&self, parameters: &str) -> Result<IdentityReport> {
        let sol = self.solve_tree_fixed_point()?;
        let rho = self.build_rho()?;
        let rho_zeta = compose_measure(&rho, &sol.t)?;
        let zeta_rho = compose_measure(&sol.zeta, &self.rho_density()?)?;
        let identity = MeasureSeries::identity(self.colors(), self.order());
        let mut report = ReportBuilder::new("round-trip", parameters, self.colors());
        for (label, composed) in [("rho∘zeta", &rho_zeta), ("zeta∘rho", &zeta_rho)] {
            for q in self.colors().colors() {
                let detail = format!("{label} atom {}", self.colors().name(q));
                for key in self.colors().keys_up_to(self.order()) {
                    report.check(
                        &key,
                        &detail,
                        &identity.atom(q).coefficient(&key),
                        &composed.atom(q).coefficient(&key),
                    );
                }
            }
        }
        Ok(report.finish())
    }

    /// Residual of the fixed point equation: `rhs(T) - T`, which vanishes.
    pub fn fixed_point_residual(&self) -> Result<bool> {
        let sol = self.solve_tree_fixed_point()?;
        Ok(self.fixed_point_rhs(&sol.t)? == sol.t)
    }

    /// Tree-side and determinant-side inverse coefficients on every tuple.
    pub fn corollary_report(&self, subset: &[Color], max_n: usize, parameters: &str) -> Result<IdentityReport> {
        let mut report = ReportBuilder::new("inverse-coefficients", parameters, self.colors());
        for key in self.colors().keys_up_to(max_n.min(self.order())).into_iter().skip(1) {
            report.check(
                &key,
                "trees vs determinant",
                &self.inverse_via_trees(subset, key.colors())?,
                &self.inverse_via_determinant(subset, key.colors())?,
            );
        }
        Ok(report.finish())
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use num_traits::One;
    use crate::rational::{frac, int};
    use crate::series::{ColorSet, KernelFamily};

    fn sample(d: usize, order: usize) -> InversionProblem {
        let c = Arc::new(ColorSet::alphabetic(d).unwrap());
        InversionProblem::new(KernelFamily::from_fn(&c, order, |q, k| {
            frac((q.0 as i64 + 3 * k.len() as i64 + 2 * k.multiplicity(Color(0)) as i64) % 5 - 2, 3)
        }))
    }

    fn constant_phi_vanishes(problem: &InversionProblem, q: &[Color]) -> Result<bool> {
        let one = TruncatedSeries::constant(problem.colors(), problem.order(), Rational::one());
        Ok(problem.lagrange_good_coefficient(&one, q)?.is_zero())
    }

    fn cayley(order: usize) -> InversionProblem {
        let c = Arc::new(ColorSet::alphabetic(1).unwrap());
        InversionProblem::new(KernelFamily::from_entries(&c, order, [("a", vec!["a"], int(1))]).unwrap())
    }

    #[test]
    fn constant_phi_gives_zero() {
        let p = sample(2, 4);
        for key in p.colors().keys_up_to(4).into_iter().skip(1) {
            assert!(constant_phi_vanishes(&p, key.colors()).unwrap());
        }
    }

    #[test]
    fn zero_kernel_returns_phi() {
        let c = Arc::new(ColorSet::alphabetic(2).unwrap());
        let p = InversionProblem::new(KernelFamily::zero(&c, 3));
        let phi = TruncatedSeries::from_fn(&c, 3, |k| int(k.len() as i64 + 2 * k.multiplicity(Color(1)) as i64));
        for key in c.keys_up_to(3).into_iter().skip(1) {
            assert_eq!(p.lagrange_good_coefficient(&phi, key.colors()).unwrap(), phi.coefficient(&key));
        }
    }

    #[test]
    fn cayley_inverse_coefficients() {
        let p = cayley(5);
        for n in 1..=5usize {
            let q = vec![Color(0); n];
            let expected = int(n.pow(n as u32 - 1) as i64);
            assert_eq!(p.inverse_via_determinant(&[Color(0)], &q).unwrap(), expected);
            assert_eq!(p.inverse_via_trees(&[Color(0)], &q).unwrap(), expected);
        }
    }

    #[test]
    fn inverse_examples() {
        let p = sample(2, 3);
        assert_eq!(p.inverse_via_determinant(&[Color(0)], &[Color(0)]).unwrap(), int(1));
        assert!(p.inverse_via_determinant(&[Color(1)], &[Color(0), Color(0)]).unwrap().is_zero());
        assert!(p.corollary_report(&[Color(1)], 3, "").unwrap().passed());
    }

    #[test]
    fn magic_examples() {
        let p = sample(2, 4);
        for key in p.colors().keys_up_to(4).into_iter().skip(1) {
            assert!(p.magic_sum(key.colors()).unwrap().is_zero());
        }
        assert!(matches!(p.magic_sum(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn identities_on_sample() {
        let p = sample(2, 4);
        let phi = TruncatedSeries::from_fn(p.colors(), 4, |k| frac(1 + k.len() as i64, 1 + k.multiplicity(Color(1)) as i64));
        assert!(p.lagrange_good_report(&phi, 4, "").unwrap().passed());
        assert!(p.round_trip_check("").unwrap().passed());
        assert!(p.fixed_point_residual().unwrap());
    }

    #[test]
    fn round_trip_unit_kernel() {
        assert!(cayley(6).round_trip_check("").unwrap().passed());
    }
}
