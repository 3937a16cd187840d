//! Sparse vectors and column-major sparse matrices over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::scalar::{Field, Scalar};

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> SparseVec {
        SparseVec {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds a vector from unsorted terms, summing repeated indices.
    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(terms: I) -> SparseVec {
        let mut entries: Vec<(usize, Scalar)> = terms.into_iter().collect();
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => {
                    if let Some((_, last)) = out.last() {
                        if last.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((i, c));
                }
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        SparseVec { entries: out }
    }

    /// Wraps entries already sorted by strictly increasing index.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> SparseVec {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let v = x + &(y * c);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &-c.field().one()),
        }
    }

    /// Relabels indices through `map`; the map must be injective on the support.
    pub fn reindexed(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_terms(self.entries.iter().map(|(i, c)| (map(*i), c.clone())))
    }

    pub fn dot(&self, other: &SparseVec) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                let p = x * y;
                acc = Some(match acc {
                    None => p,
                    Some(s) => &s + &p,
                });
                a += 1;
                b += 1;
            }
        }
        acc
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, c)))
            .finish()
    }
}

/// A sparse matrix stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            field,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> SparseMatrix {
        SparseMatrix {
            rows: n,
            cols: n,
            field,
            columns: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>, field: Field) -> Result<SparseMatrix> {
        for (j, c) in columns.iter().enumerate() {
            if let Some(max) = c.max_index() {
                if max >= rows {
                    return Err(Error::Dimension(format!(
                        "column {j} has entry in row {max}, but the matrix has {rows} rows"
                    )));
                }
            }
            if let Some((_, s)) = c.leading() {
                if s.field() != field {
                    return Err(Error::Dimension(format!(
                        "column {j} has entries over {} in a matrix over {field}",
                        s.field()
                    )));
                }
            }
        }
        Ok(SparseMatrix {
            rows,
            cols: columns.len(),
            field,
            columns,
        })
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: Field,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<SparseMatrix> {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if c >= cols {
                return Err(Error::Dimension(format!("column {c} out of range {cols}")));
            }
            buckets[c].push((r, v));
        }
        let columns = buckets.into_iter().map(SparseVec::from_terms).collect();
        SparseMatrix::from_columns(rows, columns, field)
    }

    /// Dense constructor from small integer rows, mostly for tests.
    pub fn from_rows_i64(rows: &[Vec<i64>], field: Field) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, field.from_i64(*v)))
        });
        SparseMatrix::from_triplets(nrows, ncols, field, triplets).expect("well-formed dense rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.columns.get(col).and_then(|c| c.get(row))
    }

    /// All nonzero entries as `(row, col, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (j, c) in v.iter() {
            for (i, a) in self.columns[*j].iter() {
                terms.push((*i, a * c));
            }
        }
        SparseVec::from_terms(terms)
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            field: self.field,
            columns,
        })
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                buckets[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            columns: buckets
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "cannot subtract {:?} from {:?}",
                rhs.shape(),
                self.shape()
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            columns,
        })
    }

    /// Rows as sparse vectors over column indices.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        self.transpose().into_columns()
    }

    /// Column `j` of the dense representation, for debugging and tests.
    pub fn to_dense_strings(&self) -> Vec<Vec<String>> {
        let mut out = vec![vec!["0".to_string(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.to_string();
        }
        out
    }

    pub fn rank(&self) -> usize {
        crate::linalg::echelon::rank(self)
    }

    pub fn kernel_basis(&self) -> SparseMatrix {
        crate::linalg::echelon::kernel_basis(self)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        if self.rows <= 12 && self.cols <= 12 {
            for row in self.to_dense_strings() {
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_terms_combines_and_drops_zeros() {
        let q = Field::Rationals;
        let v = SparseVec::from_terms(vec![
            (3, q.from_i64(1)),
            (1, q.from_i64(2)),
            (3, q.from_i64(-1)),
            (1, q.from_i64(1)),
            (0, q.from_i64(0)),
        ]);
        assert_eq!(v.entries(), &[(1, q.from_i64(3))]);
    }

    #[test]
    fn add_scaled_cancels() {
        let q = Field::Rationals;
        let a = SparseVec::from_terms(vec![(0, q.from_i64(1)), (2, q.from_i64(2))]);
        let b = SparseVec::from_terms(vec![(2, q.from_i64(1)), (5, q.from_i64(1))]);
        let c = a.add_scaled(&b, &q.from_i64(-2));
        assert_eq!(c.entries(), &[(0, q.from_i64(1)), (5, q.from_i64(-2))]);
    }

    #[test]
    fn bounds_are_enforced() {
        let q = Field::Rationals;
        let err = SparseMatrix::from_columns(2, vec![SparseVec::unit(2, q)], q);
        assert!(err.is_err());
    }

    #[test]
    fn product_and_transpose() {
        let q = Field::Rationals;
        let a = SparseMatrix::from_rows_i64(&[vec![1, 2], vec![0, 1]], q);
        let b = SparseMatrix::from_rows_i64(&[vec![1, 0], vec![3, 1]], q);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_rows_i64(&[vec![7, 2], vec![3, 1]], q));
        assert_eq!(a.transpose().transpose(), a);
    }
}
