//! Exact ranks of sparse integer matrices.
//!
//! Ranks are over the rationals. Elimination runs on `i64` with checked
//! arithmetic first and restarts on `BigInt` if any entry would overflow,
//! so the reported rank never depends on machine width.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} composed with {right_rows}x{right_cols}")]
    DimensionMismatch { left_rows: usize, left_cols: usize, right_rows: usize, right_cols: usize },
    #[error("chain condition violated: outgoing map composed with incoming map is nonzero at ({row}, {col})")]
    ChainCondition { row: usize, col: usize },
    #[error("entry ({row}, {col}) out of range for a {n_rows}x{n_cols} matrix")]
    OutOfRange { row: usize, col: usize, n_rows: usize, n_cols: usize },
}

/// Row-major sparse matrix with arbitrary-precision integer entries.
/// Rows are sorted by column and never store zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseIntMatrix { n_rows, n_cols, rows: vec![Vec::new(); n_rows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        SparseIntMatrix { n_rows: n, n_cols: n, rows }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I, V>(n_rows: usize, n_cols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); n_rows];
        for (r, c, v) in triplets {
            if r >= n_rows || c >= n_cols {
                return Err(LinalgError::OutOfRange { row: r, col: c, n_rows, n_cols });
            }
            rows[r].push((c, v.into()));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !Zero::is_zero(v));
            *row = merged;
        }
        Ok(SparseIntMatrix { n_rows, n_cols, rows })
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let n_rows = dense.len();
        let n_cols = dense.first().map_or(0, |r| r.len());
        let triplets = dense.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| (i, j, *v))
        });
        Self::from_triplets(n_rows, n_cols, triplets).expect("dense input is in range")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        self.rows[row]
            .binary_search_by_key(&col, |e| e.0)
            .map_or_else(|_| BigInt::zero(), |i| self.rows[row][i].1.clone())
    }

    pub fn row(&self, row: usize) -> &[(usize, BigInt)] {
        &self.rows[row]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.n_cols];
        for (i, j, v) in self.entries() {
            rows[j].push((i, v.clone()));
        }
        SparseIntMatrix { n_rows: self.n_cols, n_cols: self.n_rows, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.n_cols]; self.n_rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }
}

/// Product `a * b` (apply `b` first, then `a`).
pub fn compose(a: &SparseIntMatrix, b: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
    if a.n_cols != b.n_rows {
        return Err(LinalgError::DimensionMismatch {
            left_rows: a.n_rows,
            left_cols: a.n_cols,
            right_rows: b.n_rows,
            right_cols: b.n_cols,
        });
    }
    let mut rows = Vec::with_capacity(a.n_rows);
    let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
    for arow in &a.rows {
        acc.clear();
        for (k, av) in arow {
            for (j, bv) in &b.rows[*k] {
                *acc.entry(*j).or_default() += av * bv;
            }
        }
        rows.push(acc.iter().filter(|(_, v)| !Zero::is_zero(*v)).map(|(j, v)| (*j, v.clone())).collect());
    }
    Ok(SparseIntMatrix { n_rows: a.n_rows, n_cols: b.n_cols, rows })
}

/// Rank over the rationals.
pub fn rank(m: &SparseIntMatrix) -> usize {
    let small: Option<Vec<Vec<(usize, i64)>>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
        .collect();
    if let Some(rows) = small {
        if let Some(r) = eliminate(rows, m.n_cols) {
            return r;
        }
    }
    eliminate(m.rows.clone(), m.n_cols).expect("bigint elimination cannot overflow")
}

/// `dim ker(d_out) - rank(d_in)` at the chain group between the two maps.
pub fn betti(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix) -> Result<usize, LinalgError> {
    let product = compose(d_out, d_in)?;
    if let Some((row, col, _)) = product.entries().next() {
        return Err(LinalgError::ChainCondition { row, col });
    }
    let n = d_out.n_cols;
    Ok(n - rank(d_out) - rank(d_in))
}

trait ExactInt: Clone {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `self + f * other`
    fn add_mul(&self, f: &Self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, d: &Self) -> Self;
}

impl ExactInt for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add_mul(&self, f: &Self, other: &Self) -> Option<Self> {
        f.checked_mul(*other).and_then(|p| self.checked_add(p))
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        if *self == i64::MIN || *other == i64::MIN {
            return None;
        }
        Some(Integer::gcd(self, other))
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl ExactInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn add_mul(&self, f: &Self, other: &Self) -> Option<Self> {
        Some(self + f * other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        Some(Integer::gcd(self, other))
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

type Row<T> = Vec<(usize, T)>;

/// Structured elimination: repeatedly take the shortest live row as pivot row,
/// pivoting on its sparsest column (unit entries preferred). Returns `None`
/// on arithmetic overflow.
fn eliminate<T: ExactInt>(rows: Vec<Row<T>>, n_cols: usize) -> Option<usize> {
    let mut rows: Vec<Row<T>> = rows;
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut alive = vec![false; rows.len()];
    for (i, r) in rows.iter().enumerate() {
        if r.is_empty() {
            continue;
        }
        alive[i] = true;
        queue.insert((r.len(), i));
        for (c, _) in r {
            col_rows[*c].push(i as u32);
        }
    }

    let mut rank = 0;
    while let Some((_, id)) = queue.pop_first() {
        alive[id] = false;
        let pivot_row = std::mem::take(&mut rows[id]);
        let (pc, pv) = pivot_row
            .iter()
            .min_by_key(|(c, v)| (col_rows[*c].len(), !v.is_unit()))
            .map(|(c, v)| (*c, v.clone()))
            .expect("queued rows are nonempty");
        rank += 1;

        let targets = std::mem::take(&mut col_rows[pc]);
        for r in targets {
            let r = r as usize;
            if !alive[r] {
                continue;
            }
            let Ok(pos) = rows[r].binary_search_by_key(&pc, |e| e.0) else { continue };
            let e = rows[r][pos].1.clone();
            let old_len = rows[r].len();
            let new_row = combine(&rows[r], &pivot_row, &e, &pv)?;
            queue.remove(&(old_len, r));
            for (c, _) in &new_row {
                if rows[r].binary_search_by_key(c, |x| x.0).is_err() {
                    col_rows[*c].push(r as u32);
                }
            }
            if new_row.is_empty() {
                alive[r] = false;
            } else {
                queue.insert((new_row.len(), r));
            }
            rows[r] = new_row;
        }
    }
    Some(rank)
}

/// Removes the pivot column from `row` using `pivot` (entry `e` in `row`, `p` in `pivot`).
fn combine<T: ExactInt>(row: &Row<T>, pivot: &Row<T>, e: &T, p: &T) -> Option<Row<T>> {
    // unit pivot: row - (e/p) pivot, with 1/p = p
    // otherwise:  p*row - e*pivot, then divide out the content
    let (row_scale, f) = if p.is_unit() {
        (None, e.mul(p)?.neg()?)
    } else {
        (Some(p), e.neg()?)
    };
    let mut out: Row<T> = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (c, v) = if take_row {
            let v = match row_scale {
                Some(s) => row[i].1.mul(s)?,
                None => row[i].1.clone(),
            };
            i += 1;
            (row[i - 1].0, v)
        } else if take_piv {
            let v = f.mul(&pivot[j].1)?;
            j += 1;
            (pivot[j - 1].0, v)
        } else {
            let base = match row_scale {
                Some(s) => row[i].1.mul(s)?,
                None => row[i].1.clone(),
            };
            let v = base.add_mul(&f, &pivot[j].1)?;
            i += 1;
            j += 1;
            (row[i - 1].0, v)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    if row_scale.is_some() {
        let mut g: Option<T> = None;
        for (_, v) in &out {
            g = Some(match g {
                None => v.gcd(v)?,
                Some(g) => g.gcd(v)?,
            });
            if g.as_ref().is_some_and(|g| g.is_unit()) {
                break;
            }
        }
        if let Some(g) = g {
            if !g.is_unit() && !g.is_zero() {
                for (_, v) in out.iter_mut() {
                    *v = v.div_exact(&g);
                }
            }
        }
    }
    Some(out)
}
