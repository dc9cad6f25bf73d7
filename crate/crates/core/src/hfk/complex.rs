//! Alexander-filtered differentials on a knot Floer shape, and tau.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::shape::HfkShape;
use super::HfkError;

/// A basis element with its Maslov and Alexander gradings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    #[serde(rename = "m")]
    pub maslov: i64,
    #[serde(rename = "a")]
    pub alexander: i64,
}

/// A nonzero matrix entry `source -> coeff * target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: String,
    pub target: String,
    pub coeff: String,
}

/// `(V, d)` where `d` lowers Maslov grading by one and does not raise Alexander grading.
///
/// The matrix is indexed `[target][source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    generators: Vec<Generator>,
    d: Vec<Vec<BigRational>>,
}

impl FilteredComplex {
    pub fn new(generators: Vec<Generator>, d: Vec<Vec<BigRational>>) -> Result<Self, HfkError> {
        let n = generators.len();
        if d.len() != n || d.iter().any(|r| r.len() != n) {
            return Err(HfkError::Shape(format!("differential must be {n}x{n}")));
        }
        for (t, row) in d.iter().enumerate() {
            for (s, e) in row.iter().enumerate() {
                if !e.is_zero() && !arrow_allowed(&generators[s], &generators[t]) {
                    return Err(HfkError::Grading {
                        from: generators[s].label.clone(),
                        to: generators[t].label.clone(),
                    });
                }
            }
        }
        let c = FilteredComplex { generators, d };
        if let Some((s, t)) = c.d_squared_entry() {
            return Err(HfkError::ChainCondition {
                from: c.generators[s].label.clone(),
                to: c.generators[t].label.clone(),
            });
        }
        Ok(c)
    }

    /// The zero differential.
    pub fn zero(generators: Vec<Generator>) -> Self {
        let n = generators.len();
        FilteredComplex { generators, d: vec![vec![BigRational::zero(); n]; n] }
    }

    /// From `(source, target, coeff)` index triples.
    pub fn from_arrows(generators: Vec<Generator>, arrows: &[(usize, usize, BigRational)]) -> Result<Self, HfkError> {
        let n = generators.len();
        let mut d = vec![vec![BigRational::zero(); n]; n];
        for (s, t, c) in arrows {
            d[*t][*s] += c.clone();
        }
        Self::new(generators, d)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn entry(&self, target: usize, source: usize) -> &BigRational {
        &self.d[target][source]
    }

    /// Nonzero entries as `(source, target, coeff)`, ordered by source then target.
    pub fn arrows(&self) -> Vec<(usize, usize, BigRational)> {
        let n = self.len();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if !self.d[t][s].is_zero() {
                    out.push((s, t, self.d[t][s].clone()));
                }
            }
        }
        out
    }

    pub fn labelled_arrows(&self) -> Vec<Arrow> {
        self.arrows()
            .into_iter()
            .map(|(s, t, c)| Arrow {
                source: self.generators[s].label.clone(),
                target: self.generators[t].label.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    /// `x1->x2, x4->x5` style summary of the support.
    pub fn support_string(&self) -> String {
        let arrows = self.arrows();
        if arrows.is_empty() {
            return "0".to_string();
        }
        arrows
            .iter()
            .map(|(s, t, _)| format!("{}->{}", self.generators[*s].label, self.generators[*t].label))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn d_squared_entry(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for s in 0..n {
            for t in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    if !self.d[k][s].is_zero() && !self.d[t][k].is_zero() {
                        acc += &self.d[t][k] * &self.d[k][s];
                    }
                }
                if !acc.is_zero() {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        rank(self.d.clone())
    }

    pub fn homology_dim(&self) -> usize {
        self.len() - 2 * self.rank()
    }

    /// `dim H_m` for every Maslov grading `m` with nonzero homology.
    pub fn homology_by_maslov(&self) -> BTreeMap<i64, usize> {
        let levels: BTreeSet<i64> = self.generators.iter().map(|g| g.maslov).collect();
        let mut out = BTreeMap::new();
        for &m in &levels {
            let here: Vec<usize> = self.indices(|g| g.maslov == m);
            let below: Vec<usize> = self.indices(|g| g.maslov == m - 1);
            let above: Vec<usize> = self.indices(|g| g.maslov == m + 1);
            let out_rank = rank(self.submatrix(&below, &here));
            let in_rank = rank(self.submatrix(&here, &above));
            let h = here.len() - out_rank - in_rank;
            if h > 0 {
                out.insert(m, h);
            }
        }
        out
    }

    /// Smallest Alexander level `a` such that the cycles supported in `{alexander <= a}`
    /// reach every homology class.
    pub fn tau(&self) -> Result<i64, HfkError> {
        let h = self.homology_dim();
        if h != 1 {
            return Err(HfkError::HomologyDimension(h));
        }
        let n = self.len();
        let z_total = n - self.rank();
        // columns of d span the boundaries
        let boundaries: Vec<Vec<BigRational>> = (0..n).map(|s| (0..n).map(|t| self.d[t][s].clone()).collect()).collect();
        let levels: BTreeSet<i64> = self.generators.iter().map(|g| g.alexander).collect();
        for &a in &levels {
            let sub = self.indices(|g| g.alexander <= a);
            let mut span = boundaries.clone();
            for v in kernel(&self.submatrix(&(0..n).collect::<Vec<_>>(), &sub)) {
                let mut full = vec![BigRational::zero(); n];
                for (k, &idx) in sub.iter().enumerate() {
                    full[idx] = v[k].clone();
                }
                span.push(full);
            }
            if rank(span) == z_total {
                return Ok(a);
            }
        }
        unreachable!("the full filtration level contains every cycle")
    }

    fn indices(&self, pred: impl Fn(&Generator) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&k| pred(&self.generators[k])).collect()
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|&r| cols.iter().map(|&c| self.d[r][c].clone()).collect()).collect()
    }
}

/// Generators `x1..xk` of a multiplicity-free shape, by decreasing Maslov grading.
pub fn generators_of(shape: &HfkShape) -> Result<Vec<Generator>, HfkError> {
    if !shape.is_multiplicity_free() {
        return Err(HfkError::Shape("every class must be one-dimensional".into()));
    }
    let mut classes: Vec<_> = shape.classes().to_vec();
    classes.sort_by(|x, y| y.maslov.cmp(&x.maslov).then(y.alexander.cmp(&x.alexander)));
    Ok(classes
        .iter()
        .enumerate()
        .map(|(k, c)| Generator { label: format!("x{}", k + 1), maslov: c.maslov, alexander: c.alexander })
        .collect())
}

pub fn arrow_allowed(source: &Generator, target: &Generator) -> bool {
    target.maslov == source.maslov - 1 && target.alexander <= source.alexander
}

/// Nonzero values tried for each allowed arrow.
pub fn coefficient_samples() -> Vec<BigRational> {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    vec![r(1, 1), r(-1, 1), r(2, 1), r(-2, 1), r(1, 2), r(-1, 2)]
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub generators: Vec<Generator>,
    /// Grading-compatible `(source, target)` pairs.
    pub allowed: Vec<(usize, usize)>,
    /// Every connected support is a tree, so any nonzero choice rescales to all ones.
    pub forest: bool,
    pub matrices_tried: u64,
    pub chain_complexes: u64,
    /// Canonical representatives with one-dimensional homology, in enumeration order.
    pub complexes: Vec<FilteredComplex>,
}

/// All grading-compatible differentials with `d^2 = 0` and one-dimensional homology,
/// up to rescaling generators.
pub fn enumerate_differentials(shape: &HfkShape) -> Result<Enumeration, HfkError> {
    if shape.total_dim() != 5 || !shape.is_multiplicity_free() {
        return Err(HfkError::Shape("differential enumeration needs five one-dimensional classes".into()));
    }
    let generators = generators_of(shape)?;
    let n = generators.len();
    let mut allowed = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if arrow_allowed(&generators[s], &generators[t]) {
                allowed.push((s, t));
            }
        }
    }
    let forest = is_forest(n, &allowed);
    let samples = coefficient_samples();
    let choices = samples.len() + 1;
    let total = (choices as u64).pow(allowed.len() as u32);
    let mut matrices_tried = 0u64;
    let mut chain_complexes = 0u64;
    let mut seen: BTreeMap<Vec<(usize, usize, BigRational)>, usize> = BTreeMap::new();
    let mut complexes = Vec::new();
    for code in 0..total {
        matrices_tried += 1;
        let mut d = vec![vec![BigRational::zero(); n]; n];
        let mut rest = code;
        for &(s, t) in &allowed {
            let pick = (rest % choices as u64) as usize;
            rest /= choices as u64;
            if pick > 0 {
                d[t][s] = samples[pick - 1].clone();
            }
        }
        let Ok(c) = FilteredComplex::new(generators.clone(), d) else {
            continue;
        };
        chain_complexes += 1;
        if c.homology_dim() != 1 {
            continue;
        }
        let canon = canonical_form(&c);
        if seen.contains_key(&canon) {
            continue;
        }
        seen.insert(canon.clone(), complexes.len());
        complexes.push(FilteredComplex::from_arrows(generators.clone(), &canon)?);
    }
    Ok(Enumeration { generators, allowed, forest, matrices_tried, chain_complexes, complexes })
}

/// Rescales generators along a BFS spanning forest of the support so that tree arrows
/// have coefficient one; the remaining entries are invariants of the rescaling class.
pub fn canonical_form(c: &FilteredComplex) -> Vec<(usize, usize, BigRational)> {
    let n = c.len();
    let arrows = c.arrows();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (s, t, _)) in arrows.iter().enumerate() {
        adj[*s].push(k);
        adj[*t].push(k);
    }
    // new basis y_k = scale[k] * x_k; entry becomes d[t][s] * scale[s] / scale[t]
    let mut scale: Vec<Option<BigRational>> = vec![None; n];
    for root in 0..n {
        if scale[root].is_some() {
            continue;
        }
        scale[root] = Some(BigRational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &k in &adj[v] {
                let (s, t, e) = &arrows[k];
                let other = if *s == v { *t } else { *s };
                if scale[other].is_some() {
                    continue;
                }
                let sv = scale[v].clone().unwrap();
                scale[other] = Some(if *s == v { e * &sv } else { &sv / e });
                queue.push_back(other);
            }
        }
    }
    arrows
        .into_iter()
        .map(|(s, t, e)| {
            let v = &e * scale[s].as_ref().unwrap() / scale[t].as_ref().unwrap();
            (s, t, v)
        })
        .collect()
}

fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Row echelon rank over Q.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for k in c..cols {
                let sub = &f * &m[r][k];
                m[i][k] -= sub;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Basis of `{ v : m v = 0 }`, from the reduced row echelon form.
pub fn kernel(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for k in 0..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let sub = &f * &a[r][k];
                    a[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}
