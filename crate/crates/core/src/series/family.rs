use std::sync::Arc;

use num_traits::{One, Zero};

use super::{advance_odometer, check_compatible, CoefficientKey, Color, ColorSet, TruncatedSeries};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A color-indexed family `F(q; z)` of scalar series sharing one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySeries {
    members: Vec<TruncatedSeries>,
}

impl FamilySeries {
    /// Takes one member per color, in color order.
    pub fn new(members: Vec<TruncatedSeries>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyInput)?;
        if members.len() != first.colors().len() {
            return Err(Error::ColorSetMismatch);
        }
        for m in &members[1..] {
            check_compatible(first, m)?;
        }
        Ok(FamilySeries { members })
    }

    pub fn from_fn(colors: &Arc<ColorSet>, mut f: impl FnMut(Color) -> TruncatedSeries) -> Result<Self> {
        FamilySeries::new(colors.colors().map(&mut f).collect())
    }

    pub fn constant(colors: &Arc<ColorSet>, order: usize, value: Rational) -> Self {
        FamilySeries {
            members: colors
                .colors()
                .map(|_| TruncatedSeries::constant(colors, order, value.clone()))
                .collect(),
        }
    }

    pub fn colors(&self) -> &Arc<ColorSet> {
        self.members[0].colors()
    }

    pub fn order(&self) -> usize {
        self.members[0].order()
    }

    pub fn member(&self, q: Color) -> &TruncatedSeries {
        &self.members[q.index()]
    }

    pub fn members(&self) -> &[TruncatedSeries] {
        &self.members
    }

    pub fn map(&self, mut f: impl FnMut(Color, &TruncatedSeries) -> Result<TruncatedSeries>) -> Result<Self> {
        let members = self
            .colors()
            .colors()
            .map(|q| f(q, self.member(q)))
            .collect::<Result<Vec<_>>>()?;
        FamilySeries::new(members)
    }

    fn value(&self, q: Color, key: &CoefficientKey) -> Option<&Rational> {
        self.members[q.index()].get(key)
    }

    /// `I(z) = int F(q; z) z(dq)`, with `I_0 = 0` and
    /// `I_n(x) = sum_r F_{n-1}(x_r; x without x_r)`.
    pub fn integrate(&self) -> TruncatedSeries {
        TruncatedSeries::from_fn(self.colors(), self.order(), |key| {
            let mut acc = Rational::zero();
            for r in 0..key.len() {
                if let Some(v) = self.value(key.colors()[r], &key.without(r)) {
                    acc += v;
                }
            }
            acc
        })
    }

    /// The measure-valued series `F(q; z) z(dq)`. Its member at `q` has
    /// coefficient `m_q(x) F_{n-1}(q; x minus one q)` at `x`, where `m_q` counts
    /// the occurrences of `q`.
    pub fn radon_lift(&self) -> MeasureSeries {
        let colors = self.colors().clone();
        let order = self.order();
        let members = colors
            .colors()
            .map(|q| {
                TruncatedSeries::from_fn(&colors, order, |key| {
                    match key.remove_one(q).and_then(|rest| self.value(q, &rest)) {
                        Some(v) => v * Rational::from_integer(key.multiplicity(q).into()),
                        None => Rational::zero(),
                    }
                })
            })
            .collect();
        MeasureSeries { members }
    }
}

/// A measure-valued series on a finite color set: the member at `q` is the
/// series multiplying the atom at `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSeries {
    members: Vec<TruncatedSeries>,
}

impl MeasureSeries {
    pub fn new(members: Vec<TruncatedSeries>) -> Result<Self> {
        let family = FamilySeries::new(members)?;
        Ok(MeasureSeries { members: family.members })
    }

    /// The measure `z` itself: `F = 1` lifted.
    pub fn identity(colors: &Arc<ColorSet>, order: usize) -> Self {
        FamilySeries::constant(colors, order, Rational::one()).radon_lift()
    }

    pub fn colors(&self) -> &Arc<ColorSet> {
        self.members[0].colors()
    }

    pub fn order(&self) -> usize {
        self.members[0].order()
    }

    pub fn atom(&self, q: Color) -> &TruncatedSeries {
        &self.members[q.index()]
    }

    pub fn members(&self) -> &[TruncatedSeries] {
        &self.members
    }

    /// The scalar series obtained by evaluating on the subset `subset`.
    pub fn evaluate(&self, subset: &[Color]) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(self.colors(), self.order());
        for &q in subset {
            if q.index() >= self.members.len() {
                return Err(Error::UnknownColor(format!("#{}", q.0)));
            }
            out = out.add(&self.members[q.index()])?;
        }
        Ok(out)
    }

    /// Recovers `G` from a measure of the form `G(q; z) z(dq)`. Fails if the
    /// measure is not of that form.
    pub fn density(&self) -> Result<FamilySeries> {
        let colors = self.colors().clone();
        let order = self.order();
        let dens_order = order.saturating_sub(1);
        let g = FamilySeries::from_fn(&colors, |q| {
            TruncatedSeries::from_fn(&colors, dens_order, |rest| {
                if order == 0 {
                    return Rational::zero();
                }
                let key = rest.union(&CoefficientKey::new([q]));
                self.atom(q).coefficient(&key) / Rational::from_integer(key.multiplicity(q).into())
            })
        })?;
        let lifted = if order == 0 {
            FamilySeries::constant(&colors, 0, Rational::zero()).radon_lift()
        } else {
            g.pad_to(order).radon_lift()
        };
        if &lifted != self {
            return Err(Error::InvalidStructure(
                "measure series is not of the form G(q; z) z(dq)".into(),
            ));
        }
        Ok(g)
    }
}

impl FamilySeries {
    /// Re-embeds the family at a larger truncation order (new coefficients are zero).
    fn pad_to(&self, order: usize) -> FamilySeries {
        let colors = self.colors().clone();
        FamilySeries {
            members: self
                .members
                .iter()
                .map(|m| {
                    TruncatedSeries::from_fn(&colors, order, |k| {
                        if k.len() <= m.order() {
                            m.coefficient(k)
                        } else {
                            Rational::zero()
                        }
                    })
                })
                .collect(),
        }
    }
}

/// `G(K)` for the measure `K(dq; z) = F(q; z) z(dq)`:
/// `H_0 = G_0` and
/// `H_n(x) = sum_{J nonempty} G_{#J}(x_J) sum_{(V_j) assigning [n]\J to J} prod_j F_{#V_j}(x_j; x_{V_j})`.
pub fn compose_family(g: &TruncatedSeries, f: &FamilySeries) -> Result<TruncatedSeries> {
    check_compatible(g, &f.members[0])?;
    let order = g.order();
    Ok(TruncatedSeries::from_fn(g.colors(), order, |key| {
        let n = key.len();
        if n == 0 {
            return g.constant_term();
        }
        let mut acc = Rational::zero();
        for mask in 1u32..(1 << n) {
            let Some(gj) = g.get(&key.select(mask)) else { continue };
            let roots: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let rest: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
            let mut choice = vec![0usize; rest.len()];
            let mut inner = Rational::zero();
            loop {
                let mut term = Rational::one();
                for (slot, &root) in roots.iter().enumerate() {
                    let fiber: Vec<usize> = rest
                        .iter()
                        .zip(&choice)
                        .filter(|(_, &c)| c == slot)
                        .map(|(&i, _)| i)
                        .collect();
                    match f.value(key.colors()[root], &key.select_positions(&fiber)) {
                        Some(v) => term *= v,
                        None => {
                            term = Rational::zero();
                            break;
                        }
                    }
                }
                inner += term;
                if !advance_odometer(&mut choice, roots.len()) {
                    break;
                }
            }
            acc += gj * inner;
        }
        acc
    }))
}

/// Density of `Gamma o K` where `Gamma = G(q; z) z(dq)` and `K = F(q; z) z(dq)`:
/// `J(q) = (G_q o K) F(q)`.
pub fn compose_density(g: &FamilySeries, f: &FamilySeries) -> Result<FamilySeries> {
    g.map(|q, gq| compose_family(gq, f)?.multiply(f.member(q)))
}

/// `Gamma o K` for `K = F(q; z) z(dq)`.
pub fn compose_measure(gamma: &MeasureSeries, f: &FamilySeries) -> Result<MeasureSeries> {
    if gamma.order() != f.order() {
        return Err(Error::OrderMismatch(gamma.order(), f.order()));
    }
    let g = gamma.density()?.pad_to(f.order());
    Ok(compose_density(&g, f)?.radon_lift())
}
