use std::collections::HashMap;

use num_traits::Zero;

use super::InversionProblem;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{IdentityReport, ReportBuilder};
use crate::series::{CoefficientKey, Color, KernelFamily, TruncatedSeries};

/// All permutations of `0..r` with their parity (true for odd).
fn permutations(r: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..r).collect();
    fn rec(items: &mut [usize], k: usize, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if k == items.len() {
            out.push((items.to_vec(), odd));
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, odd ^ (i != k), out);
            items.swap(k, i);
        }
    }
    rec(&mut items, 0, false, &mut out);
    out
}

/// Determinant of a square matrix of series by the permutation sum.
pub fn series_determinant(matrix: &[Vec<TruncatedSeries>]) -> Result<TruncatedSeries> {
    let first = matrix.first().and_then(|row| row.first()).ok_or(Error::EmptyInput)?;
    let mut det = TruncatedSeries::zero(first.colors(), first.order());
    'perm: for (sigma, odd) in permutations(matrix.len()) {
        let mut term = TruncatedSeries::one(first.colors(), first.order());
        for (i, &j) in sigma.iter().enumerate() {
            let entry = &matrix[i][j];
            if entry.is_zero() {
                continue 'perm;
            }
            term = term.multiply(entry)?;
        }
        det = if odd { det.sub(&term)? } else { det.add(&term)? };
    }
    Ok(det)
}

/// `K_z(p', p)`: the series with coefficient `A_{m+1}(p; p', y)` at `y`,
/// truncated at `order`.
fn kernel_entry(a: &KernelFamily, pinned: Color, p: Color, order: usize) -> Result<TruncatedSeries> {
    Ok(a.series(p).variational_derivative(&[pinned])?.truncate(order))
}

/// `D_0 = 1` and
/// `D_n(x) = sum_{R nonempty} (-1)^{#R} [det(K_z(x_i, x_j))_{i,j in R}]_{n-#R}(x_rest)`.
pub(super) fn fredholm(a: &KernelFamily) -> Result<TruncatedSeries> {
    let order = a.order();
    let colors = a.colors().clone();
    let mut minors: HashMap<CoefficientKey, TruncatedSeries> = HashMap::new();
    let mut out = TruncatedSeries::one(&colors, order);
    for key in colors.keys_up_to(order).into_iter().skip(1) {
        let n = key.len();
        let full = (1u32 << n) - 1;
        let mut acc = Rational::zero();
        for mask in 1..=full {
            let rows = key.select(mask);
            let r = rows.len();
            if !minors.contains_key(&rows) {
                let m = rows.colors();
                let matrix = (0..r)
                    .map(|i| (0..r).map(|j| kernel_entry(a, m[i], m[j], order - r)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?;
                minors.insert(rows.clone(), series_determinant(&matrix)?);
            }
            let value = minors[&rows].coefficient(&key.select(full & !mask));
            if r % 2 == 0 {
                acc += value;
            } else {
                acc -= value;
            }
        }
        out.set(key, acc);
    }
    Ok(out)
}

/// The Fredholm determinant together with the finite-matrix determinants for
/// a list of color subsets.
#[derive(Debug, Clone)]
pub struct DeterminantBundle {
    pub fredholm: TruncatedSeries,
    pub finite: Vec<(Vec<Color>, TruncatedSeries)>,
}

impl DeterminantBundle {
    /// Compares every finite-matrix determinant with the Fredholm series at
    /// all keys inside its subset, and nested subsets with each other.
    pub fn agreement_report(&self, parameters: &str) -> IdentityReport {
        let colors = self.fredholm.colors();
        let order = self.fredholm.order();
        let mut report = ReportBuilder::new("determinant-reduction", parameters, colors);
        for (subset, finite) in &self.finite {
            let label = colors.render(subset).join("");
            for key in colors.keys_within(subset, order) {
                report.check(
                    &key,
                    &format!("Q={{{label}}} vs fredholm"),
                    &self.fredholm.coefficient(&key),
                    &finite.coefficient(&key),
                );
            }
            for (inner, inner_det) in &self.finite {
                if inner.len() < subset.len() && inner.iter().all(|c| subset.contains(c)) {
                    let inner_label = colors.render(inner).join("");
                    for key in colors.keys_within(inner, order) {
                        report.check(
                            &key,
                            &format!("Q={{{inner_label}}} vs Q={{{label}}}"),
                            &inner_det.coefficient(&key),
                            &finite.coefficient(&key),
                        );
                    }
                }
            }
        }
        report.finish()
    }
}

impl InversionProblem {
    /// The kernel entry `K_z(p', p)` at full order `N - 1`.
    pub fn kernel_series(&self, pinned: Color, p: Color) -> Result<TruncatedSeries> {
        kernel_entry(&self.a, pinned, p, self.order() - 1)
    }

    /// `det(delta_{qq'} - z({q}) K_z(q', q))_{q, q' in Q}` as a series.
    pub fn finite_matrix_determinant(&self, subset: &[Color]) -> Result<TruncatedSeries> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let colors = self.colors();
        let order = self.order();
        let mut q: Vec<Color> = subset.to_vec();
        q.sort();
        q.dedup();
        if let Some(bad) = q.iter().find(|c| c.index() >= colors.len()) {
            return Err(Error::UnknownColor(format!("#{}", bad.0)));
        }
        let matrix = q
            .iter()
            .map(|&row| {
                let atom = TruncatedSeries::atom_sum(colors, order, &[row]);
                q.iter()
                    .map(|&col| {
                        // pad K_z(col, row) back to order N; its top coefficient never matters
                        let k = self.a.series(row).variational_derivative(&[col])?;
                        let k = TruncatedSeries::from_fn(colors, order, |key| {
                            if key.len() < order { k.coefficient(key) } else { Rational::zero() }
                        });
                        let entry = atom.multiply(&k)?.neg();
                        if row == col {
                            entry.add(&TruncatedSeries::one(colors, order))
                        } else {
                            Ok(entry)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        series_determinant(&matrix)
    }

    pub fn determinant_bundle(&self, subsets: &[Vec<Color>]) -> Result<DeterminantBundle> {
        Ok(DeterminantBundle {
            fredholm: self.fredholm_determinant()?,
            finite: subsets
                .iter()
                .map(|s| Ok((s.clone(), self.finite_matrix_determinant(s)?)))
                .collect::<Result<_>>()?,
        })
    }
}
