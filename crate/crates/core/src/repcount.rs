//! Counting the ways `r` symplectic gauge pairs can be chosen inside a
//! `2r`-dimensional symplectic space.
//!
//! An ordered representation is a tuple `(g_1, g_1', ..., g_r, g_r')` whose
//! members pair up (`<g_l, g_l'> = 1`) and otherwise commute. Two tuples
//! describe the same gauge block when they differ by a row permutation that
//! preserves this pairing pattern.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowBasis};

/// Largest `r` for which the multiplicity is enumerated over `(2r)!` orders.
pub const MAX_ENUMERATED_R: usize = 4;
/// Largest `r` for the exhaustive tuple count.
pub const MAX_BRUTE_FORCE_R: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepCountResult {
    pub r: usize,
    /// Ordered tuples.
    pub raw: u128,
    pub multiplicity: u128,
    pub unique: u128,
    /// Set when the multiplicity is the conjectured `2^r r!` rather than an
    /// enumerated value.
    pub provisional: bool,
    /// For the exhaustive count: the distinct numbers of admissible choices
    /// seen at each position of the tuple.
    pub filter_counts: Vec<Vec<usize>>,
}

impl RepCountResult {
    pub fn summary(&self) -> String {
        format!("{} / {} = {}", self.raw, self.multiplicity, self.unique)
    }
}

fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidConfig("r must be at least 1".into()));
    }
    Ok(())
}

/// `prod_{l<r} (2^{2r-2l} - 1) * prod_{m odd < 2r} 2^{2r-m}`.
pub fn raw_count(r: usize) -> Result<u128> {
    check_r(r)?;
    let overflow = || Error::Refused(format!("ordered count for r = {r} overflows 128 bits"));
    let mut raw: u128 = 1;
    for l in 0..r {
        let e = (2 * r - 2 * l) as u32;
        let f = 1u128
            .checked_shl(e)
            .filter(|_| e < 128)
            .ok_or_else(overflow)?
            - 1;
        raw = raw.checked_mul(f).ok_or_else(overflow)?;
    }
    for m in (1..2 * r).step_by(2) {
        let e = (2 * r - m) as u32;
        let f = 1u128
            .checked_shl(e)
            .filter(|_| e < 128)
            .ok_or_else(overflow)?;
        raw = raw.checked_mul(f).ok_or_else(overflow)?;
    }
    Ok(raw)
}

pub fn formula_count(r: usize) -> Result<RepCountResult> {
    let raw = raw_count(r)?;
    let (multiplicity, provisional) = multiplicity(r)?;
    Ok(RepCountResult {
        r,
        raw,
        multiplicity,
        unique: raw / multiplicity,
        provisional,
        filter_counts: Vec::new(),
    })
}

/// The pairing pattern of a gauge block: rows `2l` and `2l + 1` pair.
fn pairing_pattern(r: usize) -> Vec<Vec<bool>> {
    (0..2 * r)
        .map(|i| (0..2 * r).map(|j| i / 2 == j / 2 && i != j).collect())
        .collect()
}

/// Row permutations of a valid block that keep its pairing pattern, and
/// whether the value is conjectured rather than enumerated.
pub fn multiplicity(r: usize) -> Result<(u128, bool)> {
    check_r(r)?;
    if r > MAX_ENUMERATED_R {
        let mut m: u128 = 1 << r;
        for i in 2..=r as u128 {
            m = m
                .checked_mul(i)
                .ok_or_else(|| Error::Refused(format!("2^r r! overflows for r = {r}")))?;
        }
        return Ok((m, true));
    }
    // Gram matrix of the standard block (x_1, z_1, x_2, z_2, ...).
    let block = standard_block(r);
    let gram: Vec<Vec<bool>> = block
        .iter()
        .map(|a| block.iter().map(|b| symplectic(*a, *b, r)).collect())
        .collect();
    let mut perm: Vec<usize> = (0..2 * r).collect();
    let mut count = 0u128;
    loop {
        let keeps = (0..2 * r).all(|i| (0..2 * r).all(|j| gram[perm[i]][perm[j]] == gram[i][j]));
        if keeps {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok((count, false))
}

fn standard_block(r: usize) -> Vec<usize> {
    (0..r)
        .flat_map(|l| [1usize << l, 1usize << (r + l)])
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Symplectic product of two vectors of the `2r`-dimensional space encoded
/// as integers: bit `j` is coordinate `j` of `[x_1..x_r | z_1..z_r]`.
fn symplectic(a: usize, b: usize, r: usize) -> bool {
    let mask = (1usize << r) - 1;
    let (ax, az) = (a & mask, a >> r);
    let (bx, bz) = (b & mask, b >> r);
    ((ax & bz).count_ones() + (az & bx).count_ones()) % 2 == 1
}

/// All pairwise symplectic products of the `2^{2r}` vectors of the space,
/// indexed by the integer encoding of [`symplectic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    pub r: usize,
    pub table: BitMatrix,
}

impl PairTable {
    pub fn new(r: usize) -> Result<Self> {
        check_r(r)?;
        if r > 6 {
            return Err(Error::Refused(format!(
                "pair table for r = {r} is too large"
            )));
        }
        let size = 1usize << (2 * r);
        let mut table = BitMatrix::zeros(size, size);
        for a in 0..size {
            for b in 0..size {
                table.set(a, b, symplectic(a, b, r));
            }
        }
        Ok(Self { r, table })
    }

    pub fn size(&self) -> usize {
        self.table.nrows()
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.table.get(a, b)
    }

    /// The table after mapping every vector `v` to `v M` for a `2r x 2r`
    /// matrix `M`: entry `(a, b)` is the product of the images of `a`, `b`.
    pub fn relabeled(&self, m: &BitMatrix) -> Self {
        let size = self.size();
        let image: Vec<usize> = (0..size).map(|v| apply(v, m)).collect();
        let mut table = BitMatrix::zeros(size, size);
        for a in 0..size {
            for b in 0..size {
                table.set(a, b, self.get(image[a], image[b]));
            }
        }
        Self { r: self.r, table }
    }
}

fn apply(v: usize, m: &BitMatrix) -> usize {
    let mut out = BitVector::zeros(m.ncols());
    for i in 0..m.nrows() {
        if v >> i & 1 == 1 {
            out.xor_in(m.row(i));
        }
    }
    out.iter_ones().map(|j| 1usize << j).sum()
}

/// Exhaustive count of ordered representations, with the multiplicity
/// measured by [`multiplicity`].
pub fn brute_force_count(r: usize) -> Result<RepCountResult> {
    check_r(r)?;
    if r > MAX_BRUTE_FORCE_R {
        return Err(Error::Refused(format!(
            "exhaustive representation count is limited to r <= {MAX_BRUTE_FORCE_R}"
        )));
    }
    let table = PairTable::new(r)?;
    let pattern = pairing_pattern(r);
    let mut state = Enumeration {
        table: &table,
        pattern: &pattern,
        tuple: Vec::with_capacity(2 * r),
        raw: 0,
        filter_counts: vec![Vec::new(); 2 * r],
    };
    state.extend();
    let (multiplicity, provisional) = multiplicity(r)?;
    let mut filter_counts = state.filter_counts;
    for c in &mut filter_counts {
        c.sort_unstable();
        c.dedup();
    }
    Ok(RepCountResult {
        r,
        raw: state.raw,
        multiplicity,
        unique: state.raw / multiplicity,
        provisional,
        filter_counts,
    })
}

struct Enumeration<'a> {
    table: &'a PairTable,
    pattern: &'a [Vec<bool>],
    tuple: Vec<usize>,
    raw: u128,
    filter_counts: Vec<Vec<usize>>,
}

impl Enumeration<'_> {
    fn extend(&mut self) {
        let depth = self.tuple.len();
        if depth == self.pattern.len() {
            if self.spans() {
                self.raw += 1;
            }
            return;
        }
        let admissible: Vec<usize> = (1..self.table.size())
            .filter(|v| !self.tuple.contains(v))
            .filter(|&v| {
                self.tuple
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| self.table.get(u, v) == self.pattern[i][depth])
            })
            .collect();
        self.filter_counts[depth].push(admissible.len());
        for v in admissible {
            self.tuple.push(v);
            self.extend();
            self.tuple.pop();
        }
    }

    fn spans(&self) -> bool {
        let dim = 2 * self.table.r;
        let mut basis = RowBasis::new(dim);
        for &v in &self.tuple {
            let bits: Vec<usize> = (0..dim).filter(|j| v >> j & 1 == 1).collect();
            basis.insert(&BitVector::from_support(dim, &bits));
        }
        basis.rank() == dim
    }
}
