use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use super::{CoefficientKey, Color, ColorSet, TruncatedSeries};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The coefficient tables `A_n(q; x_1..x_n)`, `1 <= n <= N`, of the family
/// `A(q; z)`. The constant terms `A_0(q)` are always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelFamily {
    tables: Vec<TruncatedSeries>,
}

impl KernelFamily {
    pub fn zero(colors: &Arc<ColorSet>, order: usize) -> Self {
        KernelFamily { tables: colors.colors().map(|_| TruncatedSeries::zero(colors, order)).collect() }
    }

    /// Builds a family from one series `A(q; .)` per color.
    pub fn from_series(tables: Vec<TruncatedSeries>) -> Result<Self> {
        let family = super::FamilySeries::new(tables)?;
        if family.members().iter().any(|t| !t.constant_term().is_zero()) {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(KernelFamily { tables: family.members().to_vec() })
    }

    /// Builds a family from `(q, x, value)` entries naming colors by label.
    pub fn from_entries<I, S>(colors: &Arc<ColorSet>, order: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<S>, Rational)>,
        S: AsRef<str>,
    {
        let mut out = KernelFamily::zero(colors, order);
        let mut seen = BTreeSet::new();
        for (q, x, value) in entries {
            let q = colors.color(q.as_ref())?;
            let key = CoefficientKey::new(colors.resolve(&x)?);
            if key.is_empty() {
                return Err(Error::NonzeroConstantTerm);
            }
            if key.len() > order {
                return Err(Error::KeyTooLarge { size: key.len(), order });
            }
            if !seen.insert((q, key.clone())) {
                return Err(Error::DuplicateKey(format!("{}; {}", colors.name(q), key.display(colors))));
            }
            out.tables[q.index()].set(key, value);
        }
        Ok(out)
    }

    /// Evaluates `f(q, key)` on every color and every key of size `1..=order`.
    pub fn from_fn(
        colors: &Arc<ColorSet>,
        order: usize,
        mut f: impl FnMut(Color, &CoefficientKey) -> Rational,
    ) -> Self {
        KernelFamily {
            tables: colors
                .colors()
                .map(|q| {
                    TruncatedSeries::from_fn(colors, order, |k| {
                        if k.is_empty() {
                            Rational::zero()
                        } else {
                            f(q, k)
                        }
                    })
                })
                .collect(),
        }
    }

    pub fn colors(&self) -> &Arc<ColorSet> {
        self.tables[0].colors()
    }

    pub fn order(&self) -> usize {
        self.tables[0].order()
    }

    /// `A_{#key}(q; key)`; zero for the empty key and for keys above the order.
    pub fn a(&self, q: Color, key: &CoefficientKey) -> Rational {
        self.tables[q.index()].coefficient(key)
    }

    pub(crate) fn get(&self, q: Color, key: &CoefficientKey) -> Option<&Rational> {
        self.tables[q.index()].get(key)
    }

    /// The series `A(q; .)`.
    pub fn series(&self, q: Color) -> &TruncatedSeries {
        &self.tables[q.index()]
    }

    pub fn tables(&self) -> &[TruncatedSeries] {
        &self.tables
    }

    /// `sum_i A(q_i; .)`.
    pub fn sum_at(&self, tuple: &[Color]) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(self.colors(), self.order());
        for &q in tuple {
            out = out.add(self.series(q))?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        KernelFamily { tables: self.tables.iter().map(TruncatedSeries::neg).collect() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        KernelFamily { tables: self.tables.iter().map(|t| t.truncate(order)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.tables.iter().all(TruncatedSeries::is_zero)
    }

    /// Non-zero entries `(q, key, value)` ordered by color, then key.
    pub fn entries(&self) -> impl Iterator<Item = (Color, &CoefficientKey, &Rational)> {
        self.tables
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.entries().map(move |(k, v)| (Color(i as u16), k, v)))
    }
}
