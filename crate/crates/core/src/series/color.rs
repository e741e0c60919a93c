use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a color inside its [`ColorSet`]. Indices follow the lexicographic
/// order of the color names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u16);

impl Color {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, non-empty set of distinct color labels, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorSet {
    names: Vec<String>,
}

impl ColorSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidColorSet("at least one color is required".into()));
        }
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::InvalidColorSet("color names must be non-empty".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidColorSet("too many colors".into()));
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidColorSet(format!("duplicate color `{}`", w[0])));
        }
        Ok(ColorSet { names })
    }

    /// `d` colors named `a`, `b`, `c`, ... (then `c26`, `c27`, ... past `z`).
    pub fn alphabetic(d: usize) -> Result<Self> {
        let names = (0..d).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("c{i}")
            }
        });
        ColorSet::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, color: Color) -> &str {
        &self.names[color.index()]
    }

    pub fn color(&self, name: &str) -> Result<Color> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map(|i| Color(i as u16))
            .map_err(|_| Error::UnknownColor(name.to_string()))
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        (0..self.names.len()).map(|i| Color(i as u16))
    }

    pub fn resolve<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Color>> {
        names.iter().map(|n| self.color(n.as_ref())).collect()
    }

    pub fn render(&self, colors: &[Color]) -> Vec<String> {
        colors.iter().map(|&c| self.name(c).to_string()).collect()
    }

    /// All multisets of exactly `n` colors, in lexicographic order.
    pub fn keys_of_size(&self, n: usize) -> Vec<CoefficientKey> {
        let d = self.len() as u16;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(
            start: u16,
            d: u16,
            left: usize,
            current: &mut Vec<Color>,
            out: &mut Vec<CoefficientKey>,
        ) {
            if left == 0 {
                out.push(CoefficientKey(current.clone()));
                return;
            }
            for c in start..d {
                current.push(Color(c));
                rec(c, d, left - 1, current, out);
                current.pop();
            }
        }
        rec(0, d, n, &mut current, &mut out);
        out
    }

    /// All keys of size `0..=order`, in graded lexicographic order.
    pub fn keys_up_to(&self, order: usize) -> Vec<CoefficientKey> {
        (0..=order).flat_map(|n| self.keys_of_size(n)).collect()
    }

    /// Keys of size `0..=order` whose colors all lie in `subset`.
    pub fn keys_within(&self, subset: &[Color], order: usize) -> Vec<CoefficientKey> {
        self.keys_up_to(order)
            .into_iter()
            .filter(|k| k.colors().iter().all(|c| subset.contains(c)))
            .collect()
    }
}

/// A multiset of colors stored as a sorted tuple. Permutations of the same
/// tuple produce the same key.
///
/// Keys are ordered by size first and lexicographically within a size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoefficientKey(Vec<Color>);

impl CoefficientKey {
    pub fn new(colors: impl IntoIterator<Item = Color>) -> Self {
        let mut colors: Vec<Color> = colors.into_iter().collect();
        colors.sort_unstable();
        CoefficientKey(colors)
    }

    pub fn empty() -> Self {
        CoefficientKey(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    /// Multiset union.
    pub fn union(&self, other: &CoefficientKey) -> CoefficientKey {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                merged.push(self.0[i]);
                i += 1;
            } else {
                merged.push(other.0[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        CoefficientKey(merged)
    }

    /// The sub-multiset at the positions whose bits are set in `mask`.
    pub(crate) fn select(&self, mask: u32) -> CoefficientKey {
        CoefficientKey(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect(),
        )
    }

    pub(crate) fn select_positions(&self, positions: &[usize]) -> CoefficientKey {
        CoefficientKey::new(positions.iter().map(|&i| self.0[i]))
    }

    pub fn without(&self, position: usize) -> CoefficientKey {
        let mut rest = self.0.clone();
        rest.remove(position);
        CoefficientKey(rest)
    }

    pub fn multiplicity(&self, color: Color) -> usize {
        self.0.iter().filter(|&&c| c == color).count()
    }

    /// The key with one occurrence of `color` removed, if there is one.
    pub fn remove_one(&self, color: Color) -> Option<CoefficientKey> {
        let at = self.0.iter().position(|&c| c == color)?;
        Some(self.without(at))
    }

    pub fn display<'a>(&'a self, colors: &'a ColorSet) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a CoefficientKey, &'a ColorSet);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, &c) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", self.1.name(c))?;
                }
                write!(f, ")")
            }
        }
        Shown(self, colors)
    }
}

impl Ord for CoefficientKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CoefficientKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
