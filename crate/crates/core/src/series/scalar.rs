use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{check_compatible, CoefficientKey, Color, ColorSet};
use crate::combinat::set_partitions;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A scalar formal power series truncated at `order`, stored as a sparse table
/// of symmetric coefficients `f_n(x_1..x_n)` keyed by color multiset.
///
/// Absent keys are zero and zero values are never stored, so two series are
/// equal exactly when their tables are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    colors: Arc<ColorSet>,
    order: usize,
    table: BTreeMap<CoefficientKey, Rational>,
}

impl TruncatedSeries {
    pub fn zero(colors: &Arc<ColorSet>, order: usize) -> Self {
        TruncatedSeries { colors: colors.clone(), order, table: BTreeMap::new() }
    }

    pub fn constant(colors: &Arc<ColorSet>, order: usize, value: Rational) -> Self {
        let mut s = Self::zero(colors, order);
        s.set(CoefficientKey::empty(), value);
        s
    }

    pub fn one(colors: &Arc<ColorSet>, order: usize) -> Self {
        Self::constant(colors, order, Rational::one())
    }

    /// The linear series `z(B) = sum_{q in B} z_q`.
    pub fn atom_sum(colors: &Arc<ColorSet>, order: usize, subset: &[Color]) -> Self {
        let mut s = Self::zero(colors, order);
        if order >= 1 {
            for &q in subset {
                s.set(CoefficientKey::new([q]), Rational::one());
            }
        }
        s
    }

    /// Builds a series from `(color names, value)` entries. Names may be given
    /// in any order; two entries landing on the same multiset are rejected.
    pub fn from_entries<I, S>(colors: &Arc<ColorSet>, order: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<S>, Rational)>,
        S: AsRef<str>,
    {
        let mut s = Self::zero(colors, order);
        let mut seen = std::collections::BTreeSet::new();
        for (names, value) in entries {
            let key = CoefficientKey::new(colors.resolve(&names)?);
            if key.len() > order {
                return Err(Error::KeyTooLarge { size: key.len(), order });
            }
            if !seen.insert(key.clone()) {
                return Err(Error::DuplicateKey(key.display(colors).to_string()));
            }
            s.set(key, value);
        }
        Ok(s)
    }

    /// Evaluates `f` on every key of size `0..=order`.
    pub fn from_fn(
        colors: &Arc<ColorSet>,
        order: usize,
        mut f: impl FnMut(&CoefficientKey) -> Rational,
    ) -> Self {
        let mut s = Self::zero(colors, order);
        for key in colors.keys_up_to(order) {
            let v = f(&key);
            s.set(key, v);
        }
        s
    }

    pub fn colors(&self) -> &Arc<ColorSet> {
        &self.colors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&CoefficientKey::empty())
    }

    /// Non-zero entries in graded lexicographic key order.
    pub fn entries(&self) -> impl Iterator<Item = (&CoefficientKey, &Rational)> {
        self.table.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub(crate) fn set(&mut self, key: CoefficientKey, value: Rational) {
        debug_assert!(key.len() <= self.order);
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub(crate) fn get(&self, key: &CoefficientKey) -> Option<&Rational> {
        self.table.get(key)
    }

    pub fn coefficient(&self, key: &CoefficientKey) -> Rational {
        self.table.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// `f_n(q_1..q_n)` for the given tuple, in any order.
    pub fn coefficient_at(&self, tuple: &[Color]) -> Result<Rational> {
        if tuple.len() > self.order {
            return Err(Error::KeyTooLarge { size: tuple.len(), order: self.order });
        }
        Ok(self.coefficient(&CoefficientKey::new(tuple.iter().copied())))
    }

    pub fn coefficient_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Rational> {
        let tuple = self.colors.resolve(names)?;
        self.coefficient_at(&tuple)
    }

    /// Drops every coefficient above `order` (which must not exceed the
    /// current order).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "truncation can only lower the order");
        TruncatedSeries {
            colors: self.colors.clone(),
            order,
            table: self
                .table
                .iter()
                .filter(|(k, _)| k.len() <= order)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(&self.colors, self.order);
        for (k, v) in &self.table {
            out.set(k.clone(), v * factor);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let mut out = self.clone();
        for (k, v) in &other.table {
            let sum = out.coefficient(k) + v;
            out.set(k.clone(), sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product via the subset sum
    /// `(KG)_n(x) = sum_{J subset [n]} K_{#J}(x_J) G_{n-#J}(x_{[n]\J})`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.colors, self.order));
        }
        Ok(Self::from_fn(&self.colors, self.order, |key| {
            let n = key.len();
            let full = (1u32 << n) - 1;
            let mut acc = Rational::zero();
            for mask in 0..=full {
                let Some(a) = self.get(&key.select(mask)) else { continue };
                let Some(b) = other.get(&key.select(full & !mask)) else { continue };
                acc += a * b;
            }
            acc
        }))
    }

    /// Product of `r` factors computed directly as a sum over ordered
    /// partitions `(V_1..V_r)` of `[n]` with empty parts allowed. Independent
    /// of [`multiply`](Self::multiply), which makes it usable as an oracle.
    pub fn multiply_many(factors: &[TruncatedSeries]) -> Result<Self> {
        let first = factors.first().ok_or(Error::EmptyInput)?;
        for f in &factors[1..] {
            check_compatible(first, f)?;
        }
        let r = factors.len();
        Ok(Self::from_fn(&first.colors, first.order, |key| {
            let n = key.len();
            let mut acc = Rational::zero();
            // part[i] is the factor that position i is assigned to
            let mut part = vec![0usize; n];
            loop {
                let mut term = Rational::one();
                for (l, factor) in factors.iter().enumerate() {
                    let positions: Vec<usize> = (0..n).filter(|&i| part[i] == l).collect();
                    match factor.get(&key.select_positions(&positions)) {
                        Some(v) => term *= v,
                        None => {
                            term = Rational::zero();
                            break;
                        }
                    }
                }
                acc += term;
                if !advance_odometer(&mut part, r) {
                    break;
                }
            }
            acc
        }))
    }

    /// `exp(K)` for `K_0 = 0`, via the recurrence on the block containing the
    /// first argument: `(exp K)_n(x) = sum_{S containing 1} K_{#S}(x_S) (exp K)_{n-#S}(x_{[n]\S})`.
    pub fn exponential(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(&self.colors, self.order);
        for key in self.colors.keys_up_to(self.order).into_iter().skip(1) {
            let n = key.len();
            let full = (1u32 << n) - 1;
            let mut acc = Rational::zero();
            // masks containing position 0
            for rest in 0..(1u32 << (n - 1)) {
                let mask = 1 | (rest << 1);
                let Some(k) = self.get(&key.select(mask)) else { continue };
                let Some(e) = out.get(&key.select(full & !mask)) else { continue };
                acc += k * e;
            }
            out.set(key, acc);
        }
        Ok(out)
    }

    /// `F o K` for a single-variable exponential series
    /// `F(t) = sum_m f_m t^m / m!` given by `outer = [f_0, f_1, ...]`, as a sum
    /// over set partitions of the arguments. Missing trailing `f_m` are zero.
    pub fn compose_univariate(outer: &[Rational], inner: &Self) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let f = |m: usize| outer.get(m).cloned().unwrap_or_else(Rational::zero);
        let partitions: Vec<Vec<Vec<Vec<usize>>>> =
            (0..=inner.order).map(set_partitions).collect();
        Ok(Self::from_fn(&inner.colors, inner.order, |key| {
            let n = key.len();
            if n == 0 {
                return f(0);
            }
            let mut acc = Rational::zero();
            for partition in &partitions[n] {
                let fm = f(partition.len());
                if fm.is_zero() {
                    continue;
                }
                let mut term = fm;
                for block in partition {
                    match inner.get(&key.select_positions(block)) {
                        Some(v) => term *= v,
                        None => {
                            term = Rational::zero();
                            break;
                        }
                    }
                }
                acc += term;
            }
            acc
        }))
    }

    /// Variational derivative pinning `pins`: the result has order
    /// `N - #pins` and coefficient `K_{#pins+n}(pins, x)` at `x`. Its constant
    /// term is the coefficient of `self` at `pins`.
    pub fn variational_derivative(&self, pins: &[Color]) -> Result<Self> {
        if pins.len() > self.order {
            return Err(Error::TooManyPins { pins: pins.len(), order: self.order });
        }
        let pinned = CoefficientKey::new(pins.iter().copied());
        let order = self.order - pins.len();
        Ok(Self::from_fn(&self.colors, order, |key| self.coefficient(&pinned.union(key))))
    }

    /// Zeroes every coefficient involving a color outside `subset`.
    pub fn restrict(&self, subset: &[Color]) -> Result<Self> {
        for &c in subset {
            if c.index() >= self.colors.len() {
                return Err(Error::UnknownColor(format!("#{}", c.0)));
            }
        }
        let mut out = Self::zero(&self.colors, self.order);
        for (k, v) in &self.table {
            if k.colors().iter().all(|c| subset.contains(c)) {
                out.set(k.clone(), v.clone());
            }
        }
        Ok(out)
    }

    /// Transports the series along a bijective renaming of colors.
    pub fn relabel(&self, target: &Arc<ColorSet>, rename: impl Fn(&str) -> String) -> Result<Self> {
        if target.len() != self.colors.len() {
            return Err(Error::ColorSetMismatch);
        }
        let map: Vec<Color> = self
            .colors
            .colors()
            .map(|c| target.color(&rename(self.colors.name(c))))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target, self.order);
        for (k, v) in &self.table {
            out.set(CoefficientKey::new(k.colors().iter().map(|c| map[c.index()])), v.clone());
        }
        Ok(out)
    }
}

/// Steps `digits` (each in `0..base`) to the next tuple in lexicographic order
/// with the last digit fastest. Returns false after the final tuple.
pub(crate) fn advance_odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn cs(d: usize) -> Arc<ColorSet> {
        Arc::new(ColorSet::alphabetic(d).unwrap())
    }

    fn z(colors: &Arc<ColorSet>, order: usize) -> TruncatedSeries {
        let all: Vec<Color> = colors.colors().collect();
        TruncatedSeries::atom_sum(colors, order, &all)
    }

    #[test]
    fn make_series_examples() {
        let c1 = cs(1);
        let zero = TruncatedSeries::from_entries(&c1, 2, Vec::<(Vec<&str>, Rational)>::new()).unwrap();
        assert!(zero.is_zero());
        let s = TruncatedSeries::from_entries(&c1, 2, [(vec!["a"], int(1))]).unwrap();
        assert_eq!(s, z(&c1, 2));

        let c2 = cs(2);
        let s = TruncatedSeries::from_entries(&c2, 2, [(vec!["b", "a"], frac(1, 2))]).unwrap();
        let key = CoefficientKey::new([Color(0), Color(1)]);
        assert_eq!(s.entries().next().unwrap(), (&key, &frac(1, 2)));
    }

    #[test]
    fn make_series_errors() {
        let c2 = cs(2);
        let dup = TruncatedSeries::from_entries(
            &c2,
            2,
            [(vec!["a", "b"], int(1)), (vec!["b", "a"], int(2))],
        );
        assert!(matches!(dup, Err(Error::DuplicateKey(_))));
        let unknown = TruncatedSeries::from_entries(&c2, 2, [(vec!["x"], int(1))]);
        assert!(matches!(unknown, Err(Error::UnknownColor(_))));
        let big = TruncatedSeries::from_entries(&c2, 1, [(vec!["a", "a"], int(1))]);
        assert!(matches!(big, Err(Error::KeyTooLarge { size: 2, order: 1 })));
    }

    #[test]
    fn add_examples() {
        let c = cs(2);
        let k = TruncatedSeries::from_entries(&c, 3, [(vec!["a"], int(1)), (vec!["a", "b"], int(3))])
            .unwrap();
        assert_eq!(k.add(&TruncatedSeries::zero(&c, 3)).unwrap(), k);
        assert!(k.add(&k.neg()).unwrap().is_zero());
        let half = TruncatedSeries::from_entries(&c, 3, [(vec!["a"], frac(1, 2))]).unwrap();
        assert_eq!(k.add(&half).unwrap().coefficient_named(&["a"]).unwrap(), frac(3, 2));
        assert_eq!(k.add(&TruncatedSeries::zero(&c, 2)), Err(Error::OrderMismatch(3, 2)));
        assert_eq!(k.add(&TruncatedSeries::zero(&cs(3), 3)), Err(Error::ColorSetMismatch));
    }

    #[test]
    fn multiply_examples() {
        let c = cs(2);
        let g = TruncatedSeries::from_entries(
            &c,
            3,
            [(vec![], int(2)), (vec!["a"], int(5)), (vec!["a", "b"], frac(-1, 3))],
        )
        .unwrap();
        assert_eq!(TruncatedSeries::one(&c, 3).multiply(&g).unwrap(), g);

        let k = TruncatedSeries::from_entries(&c, 3, [(vec![], int(3)), (vec!["b"], int(7))]).unwrap();
        let kg = k.multiply(&g).unwrap();
        // (KG)_1(x) = K_0 G_1(x) + K_1(x) G_0
        assert_eq!(kg.coefficient_named(&["a"]).unwrap(), int(15));
        assert_eq!(kg.coefficient_named(&["b"]).unwrap(), int(14));

        // d = 1: z * z has f_2(a, a) = 2 (two subsets of size one)
        let c1 = cs(1);
        let zz = z(&c1, 2).multiply(&z(&c1, 2)).unwrap();
        assert_eq!(zz.coefficient_named(&["a", "a"]).unwrap(), int(2));
    }

    #[test]
    fn multiply_many_examples() {
        let c1 = cs(1);
        let zs = vec![z(&c1, 3); 3];
        let p = TruncatedSeries::multiply_many(&zs).unwrap();
        // ordered partitions of {1,2,3} into three singletons: 3! = 6
        assert_eq!(p.coefficient_named(&["a", "a", "a"]).unwrap(), int(6));
        assert_eq!(TruncatedSeries::multiply_many(&zs[..1]).unwrap(), zs[0]);
        let ones = vec![TruncatedSeries::one(&c1, 3); 4];
        assert_eq!(TruncatedSeries::multiply_many(&ones).unwrap(), TruncatedSeries::one(&c1, 3));
        assert_eq!(TruncatedSeries::multiply_many(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn exponential_examples() {
        let c1 = cs(1);
        assert_eq!(TruncatedSeries::zero(&c1, 4).exponential().unwrap(), TruncatedSeries::one(&c1, 4));
        let e = z(&c1, 5).exponential().unwrap();
        for n in 0..=5 {
            assert_eq!(e.coefficient_at(&vec![Color(0); n]).unwrap(), int(1));
        }
        let c2 = cs(2);
        let k = TruncatedSeries::from_entries(
            &c2,
            2,
            [(vec!["a"], int(2)), (vec!["b"], int(3)), (vec!["a", "b"], int(5))],
        )
        .unwrap();
        let e = k.exponential().unwrap();
        // K_2(x1, x2) + K_1(x1) K_1(x2)
        assert_eq!(e.coefficient_named(&["a", "b"]).unwrap(), int(11));
        assert_eq!(e.coefficient_named(&["a", "a"]).unwrap(), int(4));
        let bad = TruncatedSeries::one(&c2, 2);
        assert_eq!(bad.exponential(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn compose_univariate_examples() {
        let c = cs(2);
        let k = TruncatedSeries::from_entries(
            &c,
            3,
            [(vec!["a"], int(2)), (vec!["a", "b"], int(-1)), (vec!["b", "b", "a"], frac(1, 2))],
        )
        .unwrap();
        let identity = [int(0), int(1)];
        assert_eq!(TruncatedSeries::compose_univariate(&identity, &k).unwrap(), k);
        assert_eq!(
            TruncatedSeries::compose_univariate(&[int(1)], &k).unwrap(),
            TruncatedSeries::one(&c, 3)
        );
        let exp = vec![int(1); 4];
        assert_eq!(TruncatedSeries::compose_univariate(&exp, &k).unwrap(), k.exponential().unwrap());
    }

    #[test]
    fn variational_derivative_examples() {
        let c = cs(2);
        let konst = TruncatedSeries::constant(&c, 3, int(4));
        assert!(konst.variational_derivative(&[Color(0)]).unwrap().is_zero());
        let zb = TruncatedSeries::atom_sum(&c, 3, &[Color(1)]);
        assert_eq!(zb.variational_derivative(&[Color(1)]).unwrap(), TruncatedSeries::one(&c, 2));
        assert!(zb.variational_derivative(&[Color(0)]).unwrap().is_zero());
        assert_eq!(
            konst.variational_derivative(&[Color(0); 4]),
            Err(Error::TooManyPins { pins: 4, order: 3 })
        );
        let k = TruncatedSeries::from_entries(&c, 3, [(vec!["a", "b", "b"], int(9))]).unwrap();
        let d = k.variational_derivative(&[Color(1), Color(0)]).unwrap();
        assert_eq!(d.order(), 1);
        assert_eq!(d.coefficient_named(&["b"]).unwrap(), int(9));
        assert_eq!(k.variational_derivative(&[Color(0), Color(1), Color(1)]).unwrap().constant_term(), int(9));
    }

    #[test]
    fn coefficient_at_examples() {
        let c1 = cs(1);
        let e = z(&c1, 3).exponential().unwrap();
        assert_eq!(e.coefficient_at(&[]).unwrap(), int(1));
        assert_eq!(e.coefficient_at(&[Color(0), Color(0)]).unwrap(), int(1));
        assert_eq!(e.coefficient_at(&[Color(0); 4]), Err(Error::KeyTooLarge { size: 4, order: 3 }));
        let c = cs(3);
        let k = TruncatedSeries::from_entries(&c, 3, [(vec!["c", "a", "b"], int(5))]).unwrap();
        assert_eq!(k.coefficient_at(&[Color(1), Color(2), Color(0)]).unwrap(), int(5));
        assert_eq!(k.coefficient_at(&[Color(2), Color(0), Color(1)]).unwrap(), int(5));
    }

    #[test]
    fn restrict_examples() {
        let c = cs(2);
        let k = TruncatedSeries::from_entries(
            &c,
            2,
            [(vec![], int(1)), (vec!["a"], int(2)), (vec!["a", "b"], int(3)), (vec!["b"], int(4))],
        )
        .unwrap();
        assert_eq!(k.restrict(&[Color(0), Color(1)]).unwrap(), k);
        assert_eq!(k.restrict(&[]).unwrap(), TruncatedSeries::one(&c, 2));
        let ra = k.restrict(&[Color(0)]).unwrap();
        assert_eq!(ra.coefficient_at(&[Color(0)]).unwrap(), int(2));
        assert_eq!(ra.coefficient_at(&[Color(1)]).unwrap(), int(0));
        assert!(matches!(k.restrict(&[Color(7)]), Err(Error::UnknownColor(_))));
    }

    #[test]
    fn zero_order_series() {
        let c = cs(2);
        let a = TruncatedSeries::constant(&c, 0, int(3));
        assert_eq!(a.multiply(&a).unwrap(), TruncatedSeries::constant(&c, 0, int(9)));
        assert_eq!(TruncatedSeries::zero(&c, 0).exponential().unwrap(), TruncatedSeries::one(&c, 0));
    }
}
