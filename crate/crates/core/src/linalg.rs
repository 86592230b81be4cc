//! Exact sparse elimination over the rationals, Smith invariant factors over
//! the integers, and a plain-text triplet format.
//!
//! Rows are kept as primitive integer vectors (content 1),
//! which keeps entries small for relation matrices whose coefficients are
//! mostly ±1.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formal::Q;

/// Row-major sparse matrix with rational entries; each row is sorted by
/// column and holds no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { cols, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            m.push_row(vec![(i, Q::one())]);
        }
        m
    }

    /// Build from dense integer rows.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(cols);
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(j, &x)| (j, Q::from_integer(x.into()))).collect());
        }
        m
    }

    /// Append a row; entries may be unsorted and repeat columns.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Q)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, Q)> = Vec::with_capacity(entries.len());
        for (j, v) in entries {
            assert!(j < self.cols, "column {j} out of range");
            match row.last_mut() {
                Some((k, w)) if *k == j => *w += v,
                _ => row.push((j, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows.len()];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Clear denominators and divide out the content; the first entry is made
/// positive.
fn primitive(row: &[(usize, Q)]) -> IntRow {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut ints: IntRow = row.iter().map(|(j, v)| (*j, v.numer() * (&lcm / v.denom()))).collect();
    normalize(&mut ints);
    ints
}

fn normalize(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        return;
    }
    let g = if row[0].1.is_negative() { -g } else { g };
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn coeff(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// `p * target - c * pivot` where `p` is the pivot's entry and `c` the
/// target's entry in the pivot column, which therefore vanishes.
fn eliminate(target: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let p = coeff(pivot, col).expect("pivot entry").clone();
    let c = coeff(target, col).expect("target entry").clone();
    let g = p.gcd(&c);
    let (p, c) = (&p / &g, &c / &g);
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ti = target.get(i).map_or(usize::MAX, |e| e.0);
        let pj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (k, v) = if ti < pj {
            i += 1;
            (ti, &p * &target[i - 1].1)
        } else if pj < ti {
            j += 1;
            (pj, -(&c * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ti, &p * &target[i - 1].1 - &c * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((k, v));
        }
    }
    if !out.is_empty() {
        let g = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if !g.is_one() {
            for (_, v) in out.iter_mut() {
                *v /= &g;
            }
        }
    }
    out
}

/// Result of eliminating a matrix: pivot rows in pivot order. Each pivot row
/// vanishes at the pivot columns of all earlier rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    cols: usize,
    pivots: Vec<usize>,
    rows: Vec<IntRow>,
}

/// Default ceiling on stored nonzeros during elimination.
pub const DEFAULT_MAX_ENTRIES: usize = 50_000_000;

/// Gaussian elimination with a sparsity-driven pivot choice: the active row
/// with fewest entries (lowest index on ties), then its column occurring in
/// the fewest active rows (lowest column on ties).
pub fn row_reduce(m: &SparseMatrix) -> Result<Echelon> {
    row_reduce_with_limit(m, DEFAULT_MAX_ENTRIES)
}

pub fn row_reduce_with_limit(m: &SparseMatrix, max_entries: usize) -> Result<Echelon> {
    let mut rows: Vec<IntRow> = m.rows.iter().map(|r| primitive(r)).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    // active rows keyed by (length, index)
    let mut active: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut stored = 0;
    for (i, r) in rows.iter().enumerate() {
        if r.is_empty() {
            continue;
        }
        for (j, _) in r {
            col_rows[*j].insert(i);
        }
        active.insert((r.len(), i));
        stored += r.len();
    }
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();
    while let Some(&(len, i)) = active.iter().next() {
        active.remove(&(len, i));
        let row = std::mem::take(&mut rows[i]);
        for (j, _) in &row {
            col_rows[*j].remove(&i);
        }
        let col = row.iter().map(|(j, _)| *j).min_by_key(|&j| (col_rows[j].len(), j)).unwrap();
        let targets: Vec<usize> = col_rows[col].iter().copied().collect();
        for t in targets {
            let old = std::mem::take(&mut rows[t]);
            active.remove(&(old.len(), t));
            for (j, _) in &old {
                col_rows[*j].remove(&t);
            }
            let new = eliminate(&old, &row, col);
            stored = stored + new.len() - old.len();
            if stored > max_entries {
                return Err(Error::ResourceLimit(format!("elimination exceeded {max_entries} stored entries")));
            }
            for (j, _) in &new {
                col_rows[*j].insert(t);
            }
            if !new.is_empty() {
                active.insert((new.len(), t));
            }
            rows[t] = new;
        }
        pivots.push(col);
        pivot_rows.push(row);
    }
    Ok(Echelon { cols: m.cols, pivots, rows: pivot_rows })
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Pivot columns in the order they were chosen.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, ascending; they index a basis of the
    /// quotient by the row space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&j| !is_pivot[j]).collect()
    }

    /// Subtract row-space elements until `v` vanishes at every pivot
    /// column. The result is `v` modulo the row space, supported on free
    /// columns.
    pub fn reduce(&self, v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let mut dense: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (j, x) in v {
            *dense.entry(*j).or_insert_with(Q::zero) += x;
        }
        dense.retain(|_, x| !x.is_zero());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let Some(x) = dense.get(&p).cloned() else { continue };
            let pv = Q::from_integer(coeff(row, p).unwrap().clone());
            let factor = x / pv;
            for (j, r) in row {
                let e = dense.entry(*j).or_insert_with(Q::zero);
                *e -= &factor * Q::from_integer(r.clone());
                if e.is_zero() {
                    dense.remove(j);
                }
            }
        }
        dense.into_iter().collect()
    }
}

/// Rank of the matrix over the rationals.
pub fn rank(m: &SparseMatrix) -> Result<usize> {
    Ok(row_reduce(m)?.rank())
}

/// Default ceiling on dense entries for [`integer_normal_form`].
pub const DEFAULT_MAX_DENSE: usize = 4_000_000;

/// Nonzero Smith invariant factors `d1 | d2 | ...`, all positive.
pub fn integer_normal_form(m: &SparseMatrix) -> Result<Vec<BigInt>> {
    integer_normal_form_with_limit(m, DEFAULT_MAX_DENSE)
}

pub fn integer_normal_form_with_limit(m: &SparseMatrix, max_dense: usize) -> Result<Vec<BigInt>> {
    for (i, j, v) in m.triplets() {
        if !v.is_integer() {
            return Err(Error::NonIntegralEntry { row: i, col: j });
        }
    }
    let (r, c) = (m.num_rows(), m.num_cols());
    if r.saturating_mul(c) > max_dense {
        return Err(Error::ResourceLimit(format!("{r}x{c} matrix exceeds {max_dense} dense entries")));
    }
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); c]; r];
    for (i, j, v) in m.triplets() {
        a[i][j] = v.to_integer();
    }
    let mut factors = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let qt = a[i][t].div_floor(&a[t][t]);
                for j in t..c {
                    let s = &qt * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let qt = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let s = &qt * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold any offending row into row t
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..c {
                            let s = a[i][j].clone();
                            a[t][j] += s;
                        }
                    }
                }
            }
            // move the smallest entry of row/column t to the corner
            let mut best = (t, t);
            for i in t..r {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors.sort();
    Ok(factors)
}

/// Write the matrix as `row col num/den` lines after `# key value` headers.
pub fn write_triplets(m: &SparseMatrix, header: &[(String, String)]) -> String {
    let mut s = String::new();
    for (k, v) in header {
        writeln!(s, "# {k} {v}").unwrap();
    }
    writeln!(s, "# rows {} cols {}", m.num_rows(), m.num_cols()).unwrap();
    for (i, j, v) in m.triplets() {
        writeln!(s, "{i} {j} {}/{}", v.numer(), v.denom()).unwrap();
    }
    s
}

/// Parse the triplet format; returns the matrix and the other header lines.
pub fn read_triplets(text: &str) -> Result<(SparseMatrix, Vec<(String, String)>)> {
    let mut header = Vec::new();
    let mut dims: Option<(usize, usize)> = None;
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    let err = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
    for (n, line) in text.lines().enumerate() {
        let ln = n + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let words: Vec<&str> = rest.split_whitespace().collect();
            if let ["rows", r, "cols", c] = words.as_slice() {
                let r = r.parse().map_err(|_| err(ln, "bad row count"))?;
                let c = c.parse().map_err(|_| err(ln, "bad column count"))?;
                dims = Some((r, c));
            } else if let Some((k, v)) = rest.trim().split_once(' ') {
                header.push((k.to_string(), v.trim().to_string()));
            } else if !rest.trim().is_empty() {
                header.push((rest.trim().to_string(), String::new()));
            }
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = words.as_slice() else { return Err(err(ln, "expected `row col value`")) };
        let i: usize = i.parse().map_err(|_| err(ln, "bad row index"))?;
        let j: usize = j.parse().map_err(|_| err(ln, "bad column index"))?;
        let v: Q = v.parse().map_err(|_| err(ln, "bad rational value"))?;
        entries.push((i, j, v));
    }
    let (r, c) = dims.ok_or_else(|| err(0, "missing `# rows R cols C` header"))?;
    let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); r];
    for (i, j, v) in entries {
        if i >= r || j >= c {
            return Err(err(0, &format!("entry ({i}, {j}) outside {r}x{c}")));
        }
        rows[i].push((j, v));
    }
    let mut m = SparseMatrix::new(c);
    for row in rows {
        m.push_row(row);
    }
    Ok((m, header))
}
