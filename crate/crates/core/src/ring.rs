//! The binary circulant ring `F2[x]/(x^L - 1)`, matrices over it, and the
//! lift to binary circulant blocks.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::gf2::{BitMatrix, BitVector};

/// `sum_j c_j x^j` reduced modulo `x^L - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: BitVector,
}

impl RingElement {
    pub fn zero(l: usize) -> Self {
        Self {
            coeffs: BitVector::zeros(l),
        }
    }

    pub fn one(l: usize) -> Self {
        Self::monomial(l, 0)
    }

    pub fn monomial(l: usize, j: usize) -> Self {
        let mut e = Self::zero(l);
        e.coeffs.set(j % l, true);
        e
    }

    /// Sum of `x^j` over `exponents`; repeated exponents cancel.
    pub fn from_exponents(l: usize, exponents: &[usize]) -> Self {
        let mut e = Self::zero(l);
        for &j in exponents {
            e.coeffs.flip(j % l);
        }
        e
    }

    pub fn from_coeffs(coeffs: BitVector) -> Self {
        Self { coeffs }
    }

    /// Circulant size `L`.
    pub fn l(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.coeffs.support()
    }

    /// Parses `0`, `1`, `x`, `x^j` and sums of these joined by `+`.
    pub fn parse(s: &str, l: usize) -> Result<Self, ParseError> {
        let mut e = Self::zero(l);
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::new(0, "empty ring element"));
        }
        let mut pos = 0;
        for term in s.split('+') {
            let t = term.trim();
            let at = pos + (term.len() - term.trim_start().len());
            pos += term.len() + 1;
            let j = match t {
                "0" => continue,
                "1" => 0,
                "x" => 1,
                _ => {
                    let digits = t.strip_prefix("x^").ok_or_else(|| {
                        ParseError::new(at, format!("expected 0, 1, x or x^j, found {t:?}"))
                    })?;
                    digits
                        .parse::<usize>()
                        .map_err(|_| ParseError::new(at + 2, format!("bad exponent {digits:?}")))?
                }
            };
            if l == 0 {
                return Err(ParseError::new(at, "circulant size must be positive"));
            }
            e.coeffs.flip(j % l);
        }
        Ok(e)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_l(self.l(), other.l())?;
        Ok(Self {
            coeffs: &self.coeffs ^ &other.coeffs,
        })
    }

    /// Cyclic convolution mod 2.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_l(self.l(), other.l())?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let l = self.l();
        let mut out = Self::zero(l);
        for i in self.coeffs.iter_ones() {
            for j in other.coeffs.iter_ones() {
                out.coeffs.flip((i + j) % l);
            }
        }
        out
    }

    /// `x^j -> x^{(L - j) mod L}`.
    pub fn conj(&self) -> Self {
        let l = self.l();
        let mut out = Self::zero(l);
        for j in self.coeffs.iter_ones() {
            out.coeffs.set((l - j) % l, true);
        }
        out
    }

    /// The `L x L` circulant: row `i` has ones at `(i + j) mod L` for each
    /// monomial `x^j`.
    pub fn lift(&self) -> BitMatrix {
        let l = self.l();
        let mut m = BitMatrix::zeros(l, l);
        for j in self.coeffs.iter_ones() {
            for i in 0..l {
                m.set(i, (i + j) % l, true);
            }
        }
        m
    }
}

fn check_l(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::RingMismatch { left, right });
    }
    Ok(())
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter_ones()
            .map(|j| match j {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{j}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (L={})", self.l())
    }
}

pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.mul(b)
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    l: usize,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(rows: usize, cols: usize, l: usize) -> Self {
        Self {
            l,
            rows,
            cols,
            entries: vec![RingElement::zero(l); rows * cols],
        }
    }

    pub fn identity(n: usize, l: usize) -> Self {
        let mut m = Self::zeros(n, n, l);
        for i in 0..n {
            m.set(i, i, RingElement::one(l));
        }
        m
    }

    /// Row-major entries; every entry must have circulant size `l`.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        l: usize,
        entries: Vec<RingElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(e) = entries.iter().find(|e| e.l() != l) {
            return Err(Error::RingMismatch {
                left: l,
                right: e.l(),
            });
        }
        Ok(Self {
            l,
            rows,
            cols,
            entries,
        })
    }

    /// Parses a grid of entries in the monomial grammar, one row per slice.
    pub fn parse_rows(rows: &[&[&str]], l: usize) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::Dimension {
                    expected: ncols,
                    found: r.len(),
                });
            }
            for s in *r {
                entries.push(RingElement::parse(s, l)?);
            }
        }
        Self::from_entries(nrows, ncols, l, entries)
    }

    /// Binary matrix read as a ring matrix (`1 -> x^0`).
    pub fn from_binary(m: &BitMatrix, l: usize) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols(), l);
        for i in 0..m.nrows() {
            for j in m.row(i).iter_ones() {
                out.set(i, j, RingElement::one(l));
            }
        }
        out
    }

    /// Quasi-cyclic exponent table: `-1` is zero, `e >= 0` is `x^e`.
    pub fn from_exponent_table(table: &[Vec<i64>], l: usize) -> Result<Self> {
        let rows = table.len();
        let cols = table.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in table {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: r.len(),
                });
            }
            for &e in r {
                entries.push(match e {
                    -1 => RingElement::zero(l),
                    e if e >= 0 => RingElement::monomial(l, e as usize),
                    e => {
                        return Err(Error::InvalidConfig(format!(
                            "exponent {e} is neither -1 nor non-negative"
                        )))
                    }
                });
            }
        }
        Self::from_entries(rows, cols, l, entries)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElement) {
        assert_eq!(e.l(), self.l, "entry has the wrong circulant size");
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.l);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise `x^j -> x^{-j}` without transposing.
    pub fn conj_entries(&self) -> Self {
        Self {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(RingElement::conj).collect(),
        }
    }

    /// Transpose with every entry conjugated.
    pub fn conjugate_transpose(&self) -> Self {
        self.transpose().conj_entries()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_l(self.l, other.l)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| RingElement::from_coeffs(a.coeffs() ^ b.coeffs()))
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_l(self.l, other.l)?;
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.l);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BitVector::zeros(self.l);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc.xor_in(a.mul_unchecked(b).coeffs());
                    }
                }
                out.set(i, j, RingElement::from_coeffs(acc));
            }
        }
        Ok(out)
    }

    /// Kronecker product; block `(i, j)` is `self[i][j] * other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        check_l(self.l, other.l)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c, self.l);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for m in 0..other.cols {
                        let b = other.get(k, m);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + m, a.mul_unchecked(b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        check_l(self.l, other.l)?;
        if self.rows != other.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols, self.l);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Replaces each entry by its circulant; shape `(rows L) x (cols L)`.
    pub fn lift(&self) -> BitMatrix {
        let l = self.l;
        let mut m = BitMatrix::zeros(self.rows * l, self.cols * l);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for e in self.get(i, j).exponents() {
                    for r in 0..l {
                        m.set(i * l + r, j * l + (r + e) % l, true);
                    }
                }
            }
        }
        m
    }

    /// Row-major entries as text, one matrix row per line.
    pub fn to_text_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "RingMatrix {}x{} over L={} [",
            self.rows, self.cols, self.l
        )?;
        for line in self.to_text_rows() {
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

pub fn ring_matmul(a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
    a.matmul(b)
}

pub fn conjugate_transpose(a: &RingMatrix) -> RingMatrix {
    a.conjugate_transpose()
}

pub fn lift(a: &RingMatrix) -> BitMatrix {
    a.lift()
}
