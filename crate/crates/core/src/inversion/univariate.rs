use std::sync::Arc;

use num_traits::Zero;

use super::InversionProblem;
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};
use crate::report::{IdentityReport, ReportBuilder};
use crate::series::{compose_family, CoefficientKey, Color, ColorSet, KernelFamily, TruncatedSeries};

/// Ordinary (monomial) polynomial coefficients truncated at a fixed degree.
type Poly = Vec<Rational>;

fn poly_mul(p: &Poly, q: &Poly, degree: usize) -> Poly {
    let mut out = vec![Rational::zero(); degree + 1];
    for (i, a) in p.iter().enumerate().take(degree + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate().take(degree + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// `exp(h)` for `h(0) = 0` via `g' = h' g`.
fn poly_exp(h: &Poly, degree: usize) -> Poly {
    let mut g = vec![Rational::zero(); degree + 1];
    g[0] = Rational::from_integer(1.into());
    for m in 1..=degree {
        let mut acc = Rational::zero();
        for j in 1..=m.min(h.len().saturating_sub(1)) {
            acc += Rational::from_integer(j.into()) * &h[j] * &g[m - j];
        }
        g[m] = acc / Rational::from_integer(m.into());
    }
    g
}

fn poly_derivative(p: &Poly) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect()
}

fn coeff(p: &[Rational], k: usize) -> Rational {
    p.get(k).cloned().unwrap_or_else(Rational::zero)
}

/// `[nu^k] f(zeta(nu))` for `k = 1..=n` by three independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateRoutes {
    /// Composition with the tree solution.
    pub trees: Vec<Rational>,
    /// `[z^k] f(z) rho'(z) / (rho(z)/z)^{k+1}`.
    pub with_rho_prime: Vec<Rational>,
    /// `(1/k) [z^{k-1}] f'(z) / (rho(z)/z)^k`.
    pub with_f_prime: Vec<Rational>,
}

/// Computes the routes for `rho(z) = z exp(-A(z))` with
/// `A(z) = sum_{k>=1} a_k z^k / k!` (so `a[0]` is `a_1`) and
/// `f(z) = sum_k f_k z^k / k!`.
pub fn univariate_routes(a: &[Rational], f: &[Rational], n: usize) -> Result<UnivariateRoutes> {
    if n == 0 {
        return Err(Error::InvalidConfig("order must be at least 1".into()));
    }
    let colors = Arc::new(ColorSet::alphabetic(1)?);
    let c = Color(0);
    let kernel = KernelFamily::from_fn(&colors, n, |_, key| coeff(a, key.len() - 1));
    let problem = InversionProblem::new(kernel);
    let f_series = TruncatedSeries::from_fn(&colors, n, |key| coeff(f, key.len()));
    let psi = compose_family(&f_series, &problem.solve_tree_fixed_point()?.t)?;
    let trees = (1..=n)
        .map(|k| psi.coefficient(&CoefficientKey::new(vec![c; k])) / factorial(k))
        .collect();

    // monomial forms of A and f
    let a_mono: Poly = (0..=n).map(|k| if k == 0 { Rational::zero() } else { coeff(a, k - 1) / factorial(k) }).collect();
    let f_mono: Poly = (0..=n).map(|k| coeff(f, k) / factorial(k)).collect();
    let e = poly_exp(&a_mono.iter().map(|x| -x).collect(), n);
    // rho' = e + z e'
    let e_prime = poly_derivative(&e);
    let rho_prime: Poly = (0..=n).map(|k| coeff(&e, k) + if k == 0 { Rational::zero() } else { coeff(&e_prime, k - 1) }).collect();
    let f_prime = poly_derivative(&f_mono);

    let mut with_rho_prime = Vec::with_capacity(n);
    let mut with_f_prime = Vec::with_capacity(n);
    for k in 1..=n {
        // (rho/z)^{-m} = exp(m A)
        let inv_pow = |m: usize| {
            let scaled: Poly = a_mono.iter().map(|x| x * Rational::from_integer(m.into())).collect();
            poly_exp(&scaled, n)
        };
        let lhs = poly_mul(&poly_mul(&f_mono, &rho_prime, n), &inv_pow(k + 1), n);
        with_rho_prime.push(coeff(&lhs, k));
        let rhs = poly_mul(&f_prime, &inv_pow(k), n);
        with_f_prime.push(coeff(&rhs, k - 1) / Rational::from_integer(k.into()));
    }
    Ok(UnivariateRoutes { trees, with_rho_prime, with_f_prime })
}

/// Checks that the three routes agree at every order `1..=n`.
pub fn univariate_lagrange_check(a: &[Rational], f: &[Rational], n: usize, parameters: &str) -> Result<IdentityReport> {
    let routes = univariate_routes(a, f, n)?;
    let colors = ColorSet::alphabetic(1)?;
    let mut report = ReportBuilder::new("univariate", parameters, &colors);
    for k in 1..=n {
        let key = CoefficientKey::new(vec![Color(0); k]);
        let trees = &routes.trees[k - 1];
        report.check(&key, "trees vs rho' form", trees, &routes.with_rho_prime[k - 1]);
        report.check(&key, "trees vs f' form", trees, &routes.with_f_prime[k - 1]);
    }
    Ok(report.finish())
}
