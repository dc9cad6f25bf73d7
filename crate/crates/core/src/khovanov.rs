//! Cube-of-resolutions complex and rational Khovanov homology.
//!
//! Conventions: at crossing `X(a,b,c,d)` the 0-smoothing (Kauffman
//! A-smoothing) joins `a-b` and `c-d`, the 1-smoothing joins `a-d` and
//! `b-c`. A vertex of the cube is a bitmask with bit `i` for crossing `i`.
//! Generators label each circle with `1` (degree +1) or `x` (degree -1);
//! `h = |v| - n_-` and `q = deg + |v| + n_+ - 2 n_-`, plus one in the
//! reduced theory, which keeps the generators whose marked circle carries `x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{compose, rank, SparseIntMatrix};
use crate::pd::{PdError, PlanarDiagram};
use crate::poly::{LaurentPoly, Var};

/// Hard ceiling for building the full cube; callers should guard lower.
pub const MAX_COMPLEX_CROSSINGS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KhError {
    #[error(transparent)]
    Diagram(#[from] PdError),
    #[error("diagram has {0} crossings; the cube is limited to {MAX_COMPLEX_CROSSINGS}")]
    TooLarge(usize),
    #[error("d^2 != 0 at homological degree {h}, quantum degree {q}")]
    ChainCondition { h: i64, q: i64 },
}

/// Circles of one complete resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDecomposition {
    pub vertex: u64,
    /// `circle_of_arc[l]` for arc label `l`; index 0 unused.
    pub circle_of_arc: Vec<usize>,
    pub n_circles: usize,
    pub marked_circle: usize,
}

impl CircleDecomposition {
    pub fn n_circles(&self) -> usize {
        self.n_circles
    }

    pub fn circle_of(&self, arc: u32) -> usize {
        self.circle_of_arc[arc as usize]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so roots are minimal labels
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Resolves every crossing of `d` according to `vertex` and finds the circles.
/// Circles are numbered in order of their smallest arc label.
pub fn smooth(d: &PlanarDiagram, vertex: u64) -> CircleDecomposition {
    let n_arcs = d.n_arcs();
    let mut uf = UnionFind::new(n_arcs + 1);
    for (i, x) in d.crossings().iter().enumerate() {
        let [a, b, c, dd] = x.arcs.map(|l| l as usize);
        if vertex >> i & 1 == 0 {
            uf.union(a, b);
            uf.union(c, dd);
        } else {
            uf.union(a, dd);
            uf.union(b, c);
        }
    }
    let mut circle_of_arc = vec![usize::MAX; n_arcs + 1];
    let mut root_index: BTreeMap<usize, usize> = BTreeMap::new();
    for l in 1..=n_arcs {
        let r = uf.find(l);
        let next = root_index.len();
        circle_of_arc[l] = *root_index.entry(r).or_insert(next);
    }
    let n_circles = root_index.len();
    let marked_circle = circle_of_arc[d.basepoint() as usize];
    CircleDecomposition { vertex, circle_of_arc, n_circles, marked_circle }
}

/// Parses a vertex written as a bitstring, crossing 0 first (`"010"`).
pub fn vertex_from_bits(bits: &str) -> Option<u64> {
    let mut v = 0u64;
    for (i, ch) in bits.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => v |= 1 << i,
            _ => return None,
        }
    }
    Some(v)
}

/// A rational number with denominator dividing 2, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl HalfInt {
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Chain complex split into quantum-grading blocks.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    /// `h -> [(q, dim C^{h,q})]`, q ascending.
    pub groups: BTreeMap<i64, Vec<(i64, usize)>>,
    /// `(h, q) ->` differential `C^{h,q} -> C^{h+1,q}`; absent blocks are zero.
    pub differentials: BTreeMap<(i64, i64), SparseIntMatrix>,
    pub reduced: bool,
}

impl GradedComplex {
    pub fn dim(&self, h: i64, q: i64) -> usize {
        self.groups
            .get(&h)
            .and_then(|g| g.iter().find(|(qq, _)| *qq == q))
            .map_or(0, |(_, n)| *n)
    }

    pub fn total_dim(&self) -> usize {
        self.groups.values().flatten().map(|(_, n)| n).sum()
    }

    /// The `(h, q)` block, or a zero matrix of the right shape.
    pub fn differential(&self, h: i64, q: i64) -> SparseIntMatrix {
        self.differentials
            .get(&(h, q))
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zeros(self.dim(h + 1, q), self.dim(h, q)))
    }

    /// Checks `d^{h+1} d^h = 0` on every block.
    pub fn check_d_squared(&self) -> Result<(), KhError> {
        for (&(h, q), d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(h + 1, q)) {
                let dd = compose(next, d).expect("block shapes agree");
                if !dd.is_zero() {
                    return Err(KhError::ChainCondition { h, q });
                }
            }
        }
        Ok(())
    }
}

fn label_bit(label: u32, circle: usize, n_circles: usize) -> u32 {
    label >> (n_circles - 1 - circle) & 1
}

fn with_bit(label: u32, circle: usize, n_circles: usize, value: u32) -> u32 {
    let pos = n_circles - 1 - circle;
    (label & !(1 << pos)) | (value << pos)
}

/// Builds the cube complex of `d`. Basis order inside each block is
/// lexicographic in (vertex bitstring, circle labels with `1 < x`).
pub fn build_complex(d: &PlanarDiagram, reduced: bool) -> Result<GradedComplex, KhError> {
    let violations = d.validate();
    if !violations.is_empty() {
        return Err(PdError::Invalid(violations).into());
    }
    let n = d.crossing_count();
    if n > MAX_COMPLEX_CROSSINGS {
        return Err(KhError::TooLarge(n));
    }
    let n_plus = d.n_plus() as i64;
    let n_minus = d.n_minus() as i64;
    let shift = n_plus - 2 * n_minus + i64::from(reduced);

    let states: Vec<CircleDecomposition> = (0..1u64 << n).map(|v| smooth(d, v)).collect();

    // vertices in lexicographic bitstring order (crossing 0 is the leading bit)
    let mut order: Vec<u64> = (0..1u64 << n).collect();
    order.sort_by_key(|v| v.reverse_bits());

    let keep = |s: &CircleDecomposition, label: u32| {
        !reduced || label_bit(label, s.marked_circle, s.n_circles) == 1
    };
    let q_of = |s: &CircleDecomposition, label: u32| {
        let xs = label.count_ones() as i64;
        let deg = s.n_circles as i64 - 2 * xs;
        deg + s.vertex.count_ones() as i64 + shift
    };

    // index[v][label] = position inside its (h, q) block
    let mut index: Vec<Vec<u32>> = vec![Vec::new(); states.len()];
    let mut sizes: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for &v in &order {
        let s = &states[v as usize];
        let h = v.count_ones() as i64 - n_minus;
        let mut idx = vec![u32::MAX; 1 << s.n_circles];
        for label in 0..(1u32 << s.n_circles) {
            if !keep(s, label) {
                continue;
            }
            let slot = sizes.entry((h, q_of(s, label))).or_insert(0);
            idx[label as usize] = *slot as u32;
            *slot += 1;
        }
        index[v as usize] = idx;
    }

    let mut triplets: BTreeMap<(i64, i64), Vec<(usize, usize, i64)>> = BTreeMap::new();
    for &v in &order {
        let s = &states[v as usize];
        let h = v.count_ones() as i64 - n_minus;
        for i in 0..n {
            if v >> i & 1 == 1 {
                continue;
            }
            let w = v | 1 << i;
            let t = &states[w as usize];
            let sign = if (v & ((1u64 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let [a, _, c, _] = d.crossings()[i].arcs;
            let (ca, cc) = (s.circle_of(a), s.circle_of(c));

            // where each circle of s goes in t, via its smallest arc
            let mut image = vec![usize::MAX; s.n_circles];
            for (l, &k) in s.circle_of_arc.iter().enumerate().skip(1) {
                if image[k] == usize::MAX {
                    image[k] = t.circle_of_arc[l];
                }
            }

            for label in 0..(1u32 << s.n_circles) {
                if !keep(s, label) {
                    continue;
                }
                let q = q_of(s, label);
                let col = index[v as usize][label as usize] as usize;
                // labels of untouched circles carried over
                let mut base = 0u32;
                for k in 0..s.n_circles {
                    if k != ca && k != cc {
                        base = with_bit(base, image[k], t.n_circles, label_bit(label, k, s.n_circles));
                    }
                }
                let mut push = |target: u32| {
                    let row = index[w as usize][target as usize];
                    debug_assert!(row != u32::MAX, "image left the reduced subcomplex");
                    debug_assert_eq!(q_of(t, target), q);
                    triplets.entry((h, q)).or_default().push((row as usize, col, sign));
                };
                if ca != cc {
                    // merge: 1*1 = 1, 1*x = x*1 = x, x*x = 0
                    let (la, lc) = (label_bit(label, ca, s.n_circles), label_bit(label, cc, s.n_circles));
                    if la + lc < 2 {
                        push(with_bit(base, t.circle_of(a), t.n_circles, la + lc));
                    }
                } else {
                    // split: 1 -> 1x + x1, x -> xx
                    let (ta, tb) = (t.circle_of(a), t.circle_of(d.crossings()[i].arcs[1]));
                    debug_assert_ne!(ta, tb);
                    if label_bit(label, ca, s.n_circles) == 0 {
                        push(with_bit(with_bit(base, ta, t.n_circles, 0), tb, t.n_circles, 1));
                        push(with_bit(with_bit(base, ta, t.n_circles, 1), tb, t.n_circles, 0));
                    } else {
                        push(with_bit(with_bit(base, ta, t.n_circles, 1), tb, t.n_circles, 1));
                    }
                }
            }
        }
    }

    let mut groups: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    for (&(h, q), &size) in &sizes {
        groups.entry(h).or_default().push((q, size));
    }
    let differentials = triplets
        .into_iter()
        .map(|((h, q), t)| {
            let rows = sizes.get(&(h + 1, q)).copied().unwrap_or(0);
            let cols = sizes[&(h, q)];
            let m = SparseIntMatrix::from_triplets(rows, cols, t).expect("indices in range");
            ((h, q), m)
        })
        .filter(|(_, m)| !m.is_zero())
        .collect();
    let complex = GradedComplex { groups, differentials, reduced };
    complex.check_d_squared()?;
    Ok(complex)
}

/// Bigraded Betti numbers; ranks of distinct blocks are computed in parallel.
pub fn homology(c: &GradedComplex) -> Result<BigradedDimensions, KhError> {
    c.check_d_squared()?;
    let ranks: BTreeMap<(i64, i64), usize> =
        c.differentials.par_iter().map(|(k, m)| (*k, rank(m))).collect::<Vec<_>>().into_iter().collect();
    let mut dims = BTreeMap::new();
    for (&h, qs) in &c.groups {
        for &(q, n) in qs {
            let out = ranks.get(&(h, q)).copied().unwrap_or(0);
            let inc = ranks.get(&(h - 1, q)).copied().unwrap_or(0);
            let b = n - out - inc;
            if b > 0 {
                dims.insert((q, h), b as u64);
            }
        }
    }
    Ok(BigradedDimensions { dims })
}

/// Reduced (`reduced = true`) or unreduced Khovanov homology of `d`.
pub fn khovanov_homology(d: &PlanarDiagram, reduced: bool) -> Result<BigradedDimensions, KhError> {
    homology(&build_complex(d, reduced)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Record {
    q: i64,
    h: i64,
    dim: u64,
}

/// `(q, h) -> dim`, positive entries only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigradedDimensions {
    dims: BTreeMap<(i64, i64), u64>,
}

impl BigradedDimensions {
    pub fn from_entries<I: IntoIterator<Item = ((i64, i64), u64)>>(entries: I) -> Self {
        let mut dims = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *dims.entry(k).or_insert(0) += v;
            }
        }
        BigradedDimensions { dims }
    }

    pub fn get(&self, q: i64, h: i64) -> u64 {
        self.dims.get(&(q, h)).copied().unwrap_or(0)
    }

    /// `((q, h), dim)` ascending in `(q, h)`.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.dims.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.values().sum()
    }

    /// `{ q/2 - h }` over the support.
    pub fn delta_support(&self) -> BTreeSet<HalfInt> {
        self.dims.keys().map(|&(q, h)| HalfInt(q - 2 * h)).collect()
    }

    /// Total dimension `dim` and a single delta grading.
    pub fn is_thin_candidate(&self, dim: u64) -> bool {
        self.total_dim() == dim && self.delta_support().len() == 1
    }

    /// `sum (-1)^h dim q^q`.
    pub fn graded_euler_char(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            Var::Q,
            self.entries().map(|((q, h), n)| (q, if h.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })),
        )
    }

    /// `(q, h) -> (-q, -h)`.
    pub fn mirrored(&self) -> Self {
        Self::from_entries(self.entries().map(|((q, h), n)| ((-q, -h), n)))
    }

    /// Compact JSON: `[{"q":..,"h":..,"dim":..},...]` sorted by `(q, h)`.
    pub fn to_json(&self) -> String {
        let records: Vec<Record> = self.entries().map(|((q, h), dim)| Record { q, h, dim }).collect();
        serde_json::to_string(&records).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let records: Vec<Record> = serde_json::from_str(text)?;
        Ok(Self::from_entries(records.into_iter().map(|r| ((r.q, r.h), r.dim))))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("round trip")
    }
}

/// Formats a delta support as `{a,b}`.
pub fn format_delta_support(s: &BTreeSet<HalfInt>) -> String {
    let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", items.join(","))
}
