use std::collections::BTreeMap;

use serde::Serialize;

/// One bigraded summand `Q^mult` in Maslov grading `maslov`, Alexander grading `alexander`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HfkClass {
    #[serde(rename = "m")]
    pub maslov: i64,
    #[serde(rename = "a")]
    pub alexander: i64,
    pub mult: u32,
}

impl HfkClass {
    pub fn new(maslov: i64, alexander: i64, mult: u32) -> Self {
        HfkClass { maslov, alexander, mult }
    }
}

/// A candidate bigraded knot Floer dimension profile.
///
/// Classes are kept sorted by decreasing Alexander grading, then decreasing
/// Maslov grading, with duplicates merged. Until the Maslov grading has been
/// pinned, the absolute Maslov values are only meaningful up to a common shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HfkShape {
    classes: Vec<HfkClass>,
    maslov_pinned: bool,
}

impl HfkShape {
    pub fn new<I: IntoIterator<Item = HfkClass>>(classes: I, maslov_pinned: bool) -> Self {
        let mut merged: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        for c in classes {
            if c.mult > 0 {
                *merged.entry((c.alexander, c.maslov)).or_insert(0) += c.mult;
            }
        }
        let classes =
            merged.into_iter().rev().map(|((a, m), mult)| HfkClass { maslov: m, alexander: a, mult }).collect();
        HfkShape { classes, maslov_pinned }
    }

    /// Single delta shape `m - a = delta` with the given Alexander multiplicities.
    pub fn from_profile(profile: &BTreeMap<i64, u32>, delta: i64) -> Self {
        Self::new(profile.iter().map(|(&a, &mult)| HfkClass::new(a + delta, a, mult)), false)
    }

    /// `Q_(M,g) + Q_(M-1,g-1) + Q_(M-g,0) + Q_(M-2g+1,1-g) + Q_(M-2g,-g)`.
    pub fn five_class(genus: i64, top_maslov: i64) -> Self {
        let m = top_maslov;
        let g = genus;
        Self::new(
            [
                HfkClass::new(m, g, 1),
                HfkClass::new(m - 1, g - 1, 1),
                HfkClass::new(m - g, 0, 1),
                HfkClass::new(m - 2 * g + 1, 1 - g, 1),
                HfkClass::new(m - 2 * g, -g, 1),
            ],
            false,
        )
    }

    pub fn classes(&self) -> &[HfkClass] {
        &self.classes
    }

    pub fn maslov_pinned(&self) -> bool {
        self.maslov_pinned
    }

    pub fn total_dim(&self) -> u32 {
        self.classes.iter().map(|c| c.mult).sum()
    }

    pub fn dim_at(&self, alexander: i64) -> u32 {
        self.classes.iter().filter(|c| c.alexander == alexander).map(|c| c.mult).sum()
    }

    pub fn dim0(&self) -> u32 {
        self.dim_at(0)
    }

    /// Top Alexander grading with a nonzero class; 0 for the empty shape.
    pub fn genus(&self) -> i64 {
        self.classes.iter().map(|c| c.alexander).max().unwrap_or(0)
    }

    pub fn top_dim(&self) -> u32 {
        self.dim_at(self.genus())
    }

    /// Common value of `m - a`, if there is one.
    pub fn single_delta(&self) -> Option<i64> {
        let mut deltas = self.classes.iter().map(|c| c.maslov - c.alexander);
        let first = deltas.next()?;
        deltas.all(|d| d == first).then_some(first)
    }

    /// Maslov grading of the top class.
    pub fn maslov_offset(&self) -> i64 {
        let g = self.genus();
        self.classes.iter().filter(|c| c.alexander == g).map(|c| c.maslov).max().unwrap_or(0)
    }

    /// `mult(m, a) = mult(m - 2a, -a)` for every class.
    pub fn is_symmetric(&self) -> bool {
        self.classes.iter().all(|c| {
            self.classes
                .iter()
                .find(|d| d.maslov == c.maslov - 2 * c.alexander && d.alexander == -c.alexander)
                .is_some_and(|d| d.mult == c.mult)
        })
    }

    pub fn alexander_profile(&self) -> BTreeMap<i64, u32> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.alexander).or_insert(0) += c.mult;
        }
        out
    }

    /// Shifts all Maslov gradings so the top class sits at `top`, and marks the shape pinned.
    pub fn pinned_at(&self, top: i64) -> Self {
        let shift = top - self.maslov_offset();
        Self::new(self.classes.iter().map(|c| HfkClass { maslov: c.maslov + shift, ..*c }), true)
    }

    /// `(m, a) -> (-m, -a)`.
    pub fn mirrored(&self) -> Self {
        Self::new(
            self.classes.iter().map(|c| HfkClass { maslov: -c.maslov, alexander: -c.alexander, mult: c.mult }),
            self.maslov_pinned,
        )
    }

    /// Every class has multiplicity one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.classes.iter().all(|c| c.mult == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_class_derived_fields() {
        let s = HfkShape::five_class(2, 0);
        assert_eq!(s.genus(), 2);
        assert_eq!(s.dim0(), 1);
        assert_eq!(s.total_dim(), 5);
        assert_eq!(s.single_delta(), Some(-2));
        assert_eq!(s.maslov_offset(), 0);
        assert!(s.is_symmetric());
        let got: Vec<(i64, i64)> = s.classes().iter().map(|c| (c.maslov, c.alexander)).collect();
        assert_eq!(got, vec![(0, 2), (-1, 1), (-2, 0), (-3, -1), (-4, -2)]);
    }

    #[test]
    fn symmetry_detects_wrong_maslov() {
        let s = HfkShape::new([HfkClass::new(1, 1, 1), HfkClass::new(0, 0, 3), HfkClass::new(0, -1, 1)], false);
        assert!(!s.is_symmetric());
        assert_eq!(s.single_delta(), None);
    }

    #[test]
    fn pinning_and_mirroring() {
        let s = HfkShape::five_class(3, 10).pinned_at(0);
        assert!(s.maslov_pinned());
        assert_eq!(s.maslov_offset(), 0);
        let m = s.mirrored();
        assert_eq!(m.genus(), 3);
        assert_eq!(m.maslov_offset(), 6);
        assert!(m.is_symmetric());
        assert_eq!(m.mirrored(), s);
    }

    #[test]
    fn profile_constructor_merges() {
        let profile: BTreeMap<i64, u32> = [(1, 1), (0, 3), (-1, 1)].into_iter().collect();
        let s = HfkShape::from_profile(&profile, 0);
        assert_eq!(s.dim0(), 3);
        assert_eq!(s.top_dim(), 1);
        assert!(s.is_symmetric());
        assert_eq!(s.alexander_profile(), profile);
    }
}
