//! Truncated CFK-infinity plane built from a single-delta filtered complex.
//!
//! Vertical arrows are the filtered differential placed in every column; the
//! horizontal arrows are its image under the symmetry `(m, a) -> (m - 2a, -a)`
//! placed in every row.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::complex::FilteredComplex;
use super::HfkError;

/// Inclusive bounds on the plane coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Window {
    pub fn symmetric(r: i64) -> Self {
        Window { i_min: -r, i_max: r, j_min: -r, j_max: r }
    }

    /// `+-6`, widened for large genus so that several full translates fit.
    pub fn for_genus(genus: i64) -> Self {
        Self::symmetric(6.max(genus + 2))
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        (self.i_min..=self.i_max).contains(&i) && (self.j_min..=self.j_max).contains(&j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowKind {
    Vertical,
    Horizontal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlaneNode {
    #[serde(rename = "gen")]
    pub label: String,
    #[serde(skip)]
    pub generator: usize,
    pub i: i64,
    pub j: i64,
}

impl std::fmt::Display for PlaneNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@({},{})", self.label, self.i, self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneArrow {
    pub source: usize,
    pub target: usize,
    pub kind: ArrowKind,
    pub coeff: BigRational,
}

/// One arrow of the infinite periodic pattern, relative to its source node.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PatternArrow {
    source: usize,
    target: usize,
    di: i64,
    dj: i64,
    kind: ArrowKind,
    coeff: BigRational,
}

#[derive(Clone, Debug)]
pub struct PlaneComplex {
    nodes: Vec<PlaneNode>,
    arrows: Vec<PlaneArrow>,
    window: Window,
    pattern: Vec<PatternArrow>,
    index: HashMap<(usize, i64, i64), usize>,
}

/// A nonzero entry of `D^2` on an interior node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub source: PlaneNode,
    pub target: PlaneNode,
    pub coeff: String,
}

impl PlaneComplex {
    pub fn nodes(&self) -> &[PlaneNode] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[PlaneArrow] {
        &self.arrows
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn node_at(&self, generator: usize, i: i64, j: i64) -> Option<usize> {
        self.index.get(&(generator, i, j)).copied()
    }

    /// Every arrow whose `(1,1)`-translate has both ends in the window maps to an arrow.
    pub fn is_translation_invariant(&self) -> bool {
        let present: HashMap<(usize, usize, ArrowKind), &BigRational> =
            self.arrows.iter().map(|a| ((a.source, a.target, a.kind), &a.coeff)).collect();
        self.arrows.iter().all(|a| {
            let (s, t) = (&self.nodes[a.source], &self.nodes[a.target]);
            match (self.node_at(s.generator, s.i + 1, s.j + 1), self.node_at(t.generator, t.i + 1, t.j + 1)) {
                (Some(s2), Some(t2)) => present.get(&(s2, t2, a.kind)) == Some(&&a.coeff),
                _ => true,
            }
        })
    }

    /// No pattern arrow moves in both coordinates.
    pub fn has_diagonal_arrows(&self) -> bool {
        self.pattern.iter().any(|p| p.di != 0 && p.dj != 0)
    }

    /// A node is interior when every pattern arrow out of it, and out of each of its
    /// targets, lands in the window.
    fn is_interior(&self, node: usize) -> bool {
        let n = &self.nodes[node];
        let mut frontier = vec![(n.generator, n.i, n.j)];
        for _ in 0..2 {
            let mut next = Vec::new();
            for (g, i, j) in frontier {
                for p in self.pattern.iter().filter(|p| p.source == g) {
                    let (ti, tj) = (i + p.di, j + p.dj);
                    if !self.window.contains(ti, tj) {
                        return false;
                    }
                    next.push((p.target, ti, tj));
                }
            }
            frontier = next;
        }
        true
    }
}

/// Builds the truncated plane.
pub fn build_plane_complex(c: &FilteredComplex, window: Window) -> Result<PlaneComplex, HfkError> {
    let gens = c.generators();
    let deltas: Vec<i64> = gens.iter().map(|g| g.maslov - g.alexander).collect();
    if deltas.windows(2).any(|w| w[0] != w[1]) {
        return Err(HfkError::NotSingleDelta);
    }
    let sigma: Vec<usize> = gens
        .iter()
        .map(|g| {
            let mut partners =
                (0..gens.len()).filter(|&k| gens[k].alexander == -g.alexander && gens[k].maslov == g.maslov - 2 * g.alexander);
            match (partners.next(), partners.next()) {
                (Some(k), None) => Ok(k),
                _ => Err(HfkError::Symmetry(g.label.clone())),
            }
        })
        .collect::<Result<_, _>>()?;

    let (a_min, a_max) = (
        gens.iter().map(|g| g.alexander).min().unwrap_or(0),
        gens.iter().map(|g| g.alexander).max().unwrap_or(0),
    );
    let lo = (window.i_min).max(window.j_min - a_min);
    let hi = (window.i_max).min(window.j_max - a_max);
    let translates = (hi - lo + 1).max(0);
    if translates < 2 {
        return Err(HfkError::WindowTooSmall(translates));
    }

    let mut pattern = Vec::new();
    for (s, t, coeff) in c.arrows() {
        let len = gens[s].alexander - gens[t].alexander;
        if len != 1 {
            return Err(HfkError::ArrowLength { from: gens[s].label.clone(), length: len });
        }
        pattern.push(PatternArrow { source: s, target: t, di: 0, dj: -1, kind: ArrowKind::Vertical, coeff: coeff.clone() });
        pattern.push(PatternArrow {
            source: sigma[s],
            target: sigma[t],
            di: -1,
            dj: 0,
            kind: ArrowKind::Horizontal,
            coeff,
        });
    }

    let mut nodes = Vec::new();
    let mut index = HashMap::new();
    for i in (window.i_min..=window.i_max).rev() {
        for (k, g) in gens.iter().enumerate() {
            let j = i + g.alexander;
            if window.contains(i, j) {
                index.insert((k, i, j), nodes.len());
                nodes.push(PlaneNode { label: g.label.clone(), generator: k, i, j });
            }
        }
    }
    let mut arrows = Vec::new();
    for (src, node) in nodes.iter().enumerate() {
        for p in pattern.iter().filter(|p| p.source == node.generator) {
            if let Some(&tgt) = index.get(&(p.target, node.i + p.di, node.j + p.dj)) {
                arrows.push(PlaneArrow { source: src, target: tgt, kind: p.kind, coeff: p.coeff.clone() });
            }
        }
    }
    Ok(PlaneComplex { nodes, arrows, window, pattern, index })
}

/// First nonzero entry of `D^2` on an interior node, in node order.
pub fn d_squared_witness(p: &PlaneComplex) -> Option<Witness> {
    let mut out_arrows: Vec<Vec<&PlaneArrow>> = vec![Vec::new(); p.nodes.len()];
    for a in &p.arrows {
        out_arrows[a.source].push(a);
    }
    for src in 0..p.nodes.len() {
        if !p.is_interior(src) {
            continue;
        }
        let mut sq: BTreeMap<usize, BigRational> = BTreeMap::new();
        for a in &out_arrows[src] {
            for b in &out_arrows[a.target] {
                *sq.entry(b.target).or_insert_with(BigRational::zero) += &a.coeff * &b.coeff;
            }
        }
        if let Some((tgt, v)) = sq.into_iter().find(|(_, v)| !v.is_zero()) {
            return Some(Witness { source: p.nodes[src].clone(), target: p.nodes[tgt].clone(), coeff: v.to_string() });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfk::complex::generators_of;
    use crate::hfk::HfkShape;
    use num_traits::One;

    fn complex(g: i64, arrows: &[(usize, usize)]) -> FilteredComplex {
        let a: Vec<_> = arrows.iter().map(|&(s, t)| (s, t, BigRational::one())).collect();
        FilteredComplex::from_arrows(generators_of(&HfkShape::five_class(g, 0)).unwrap(), &a).unwrap()
    }

    #[test]
    fn figure_pattern_has_witness() {
        let p = build_plane_complex(&complex(2, &[(0, 1), (3, 4)]), Window::symmetric(4)).unwrap();
        assert!(!p.has_diagonal_arrows());
        assert!(p.is_translation_invariant());
        let w = d_squared_witness(&p).unwrap();
        // x1 -> x2 -> x1 one step down-left, or x4 -> x5 -> x4
        assert!(["x1", "x4"].contains(&w.source.label.as_str()), "{w:?}");
        assert_eq!(w.target.label, w.source.label);
        assert_eq!((w.target.i, w.target.j), (w.source.i - 1, w.source.j - 1));
        let x1 = p.node_at(0, 0, 2).unwrap();
        let x2 = p.node_at(1, 0, 1).unwrap();
        assert!(p.arrows().iter().any(|a| a.source == x1 && a.target == x2 && a.kind == ArrowKind::Vertical));
    }

    #[test]
    fn horizontal_arrows_match_the_figure() {
        let p = build_plane_complex(&complex(2, &[(0, 1), (3, 4)]), Window::symmetric(4)).unwrap();
        let x2 = p.node_at(1, 0, 1).unwrap();
        let x1 = p.node_at(0, -1, 1).unwrap();
        assert!(p.arrows().iter().any(|a| a.source == x2 && a.target == x1 && a.kind == ArrowKind::Horizontal));
        let x5 = p.node_at(4, 1, -1).unwrap();
        let x4 = p.node_at(3, 0, -1).unwrap();
        assert!(p.arrows().iter().any(|a| a.source == x5 && a.target == x4 && a.kind == ArrowKind::Horizontal));
    }

    #[test]
    fn tau_two_complex_squares_to_zero() {
        let p = build_plane_complex(&complex(2, &[(1, 2), (3, 4)]), Window::symmetric(6)).unwrap();
        assert!(d_squared_witness(&p).is_none());
        let p = build_plane_complex(&complex(2, &[(0, 1), (2, 3)]), Window::symmetric(6)).unwrap();
        assert!(d_squared_witness(&p).is_none());
    }

    #[test]
    fn zero_differential_has_no_arrows() {
        let gens = generators_of(&HfkShape::five_class(2, 0)).unwrap();
        let p = build_plane_complex(&FilteredComplex::zero(gens), Window::symmetric(6)).unwrap();
        assert!(p.arrows().is_empty());
        assert!(d_squared_witness(&p).is_none());
    }

    #[test]
    fn higher_genus_witness() {
        for g in 3..=8 {
            let p = build_plane_complex(&complex(g, &[(0, 1), (3, 4)]), Window::for_genus(g)).unwrap();
            assert!(d_squared_witness(&p).is_some(), "genus {g}");
        }
    }

    #[test]
    fn small_window_rejected() {
        let c = complex(2, &[(0, 1), (3, 4)]);
        assert!(matches!(build_plane_complex(&c, Window::symmetric(2)), Err(HfkError::WindowTooSmall(1))));
    }
}
