use std::fmt;

use super::bitvec::BitVector;
use crate::error::{Error, ParseError, Result};

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    /// A matrix with no rows but a fixed column count.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// # Panics
    ///
    /// Panics if the rows do not all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self { cols, rows }
    }

    /// Builds a matrix from nested 0/1 integers; convenient for fixtures.
    pub fn from_u8(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                BitVector::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        Self { cols, rows }
    }

    /// Parses rows given as 0/1 strings.
    pub fn from_bit_strings<S: AsRef<str>>(cols: usize, rows: &[S]) -> Result<Self> {
        let mut out = Self::empty(cols);
        for (i, s) in rows.iter().enumerate() {
            let v = BitVector::parse_bits(s.as_ref())
                .map_err(|e| ParseError::new(e.position, format!("row {i}: {}", e.message)))?;
            if v.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: v.len(),
                });
            }
            out.rows.push(v);
        }
        Ok(out)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut BitVector {
        &mut self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(
            row.len(),
            self.cols,
            "row length does not match column count"
        );
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Self {
            cols: self.cols,
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.nrows(), "inner dimensions do not conform");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_in(&other.rows[k]);
                }
                acc
            })
            .collect();
        Self {
            cols: other.cols,
            rows,
        }
    }

    /// `self * other^T`, computed with row dot products.
    pub fn mul_transpose(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column counts do not conform");
        let rows = self
            .rows
            .iter()
            .map(|a| {
                let mut out = BitVector::zeros(other.nrows());
                for (j, b) in other.rows.iter().enumerate() {
                    if a.dot(b) {
                        out.set(j, true);
                    }
                }
                out
            })
            .collect();
        Self {
            cols: other.nrows(),
            rows,
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack of mismatched widths");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self {
            cols: self.cols,
            rows,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nrows(), other.nrows(), "hstack of mismatched heights");
        Self {
            cols: self.cols + other.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(self.nrows() * other.nrows(), cols);
        for (i, a) in self.rows.iter().enumerate() {
            for (k, b) in other.rows.iter().enumerate() {
                let row = &mut out.rows[i * other.nrows() + k];
                for j in a.iter_ones() {
                    for l in b.iter_ones() {
                        row.set(j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form with the lowest nonzero column as pivot.
    /// Zero rows are kept at the bottom so the shape is preserved.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_in(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.cols);
        self.rows.iter().filter(|r| basis.insert(r)).count()
    }

    /// Basis of `{v : M v^T = 0}`, one row per free column of the RREF.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Self::empty(self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.rows[i].get(f) {
                    v.set(p, true);
                }
            }
            out.rows.push(v);
        }
        out
    }

    pub fn in_row_space(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols);
        let basis = RowBasis::from_rows(self.cols, &self.rows);
        basis.contains(v)
    }

    /// Solves `self * x = rhs` (a column system), returning the solution with
    /// all free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self, rhs: &BitVector) -> Option<BitVector> {
        assert_eq!(rhs.len(), self.nrows());
        let mut aug = Self::empty(self.cols + 1);
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = BitVector::zeros(self.cols + 1);
            for j in r.iter_ones() {
                row.set(j, true);
            }
            row.set(self.cols, rhs.get(i));
            aug.rows.push(row);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if aug.rows[i].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Indices of a maximal independent subset of rows, greedily in row order.
    pub fn independent_row_indices(&self) -> Vec<usize> {
        let mut basis = RowBasis::new(self.cols);
        (0..self.nrows())
            .filter(|&i| basis.insert(&self.rows[i]))
            .collect()
    }

    pub fn to_bit_strings(&self) -> Vec<String> {
        self.rows.iter().map(BitVector::to_bit_string).collect()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BitVector::weight).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained echelon basis of a row space.
///
/// Rows are kept sorted by pivot (their lowest set bit), so reducing a vector
/// against the basis clears every pivot column and yields a canonical coset
/// representative.
#[derive(Clone, Debug)]
pub struct RowBasis {
    cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let mut b = Self::new(cols);
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Canonical residue of `v` modulo the span; zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        r
    }

    pub fn reduce_in_place(&self, v: &mut BitVector) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_in(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                let at = self.pivots.partition_point(|&q| q < p);
                self.pivots.insert(at, p);
                self.rows.insert(at, r);
                true
            }
        }
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.cols, self.rows.clone())
    }
}
