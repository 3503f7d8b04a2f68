//! Symplectic tableaux `U = [L_X; S; L_Z; S']` for CSS seed codes and the
//! subsystem codes derived from them.
//!
//! Row layout for a tableau on `n` qubits with `k` logical qubits:
//!
//! | rows            | region                  |
//! |-----------------|-------------------------|
//! | `0..k`          | X logicals              |
//! | `k..n`          | stabilizers (and X-side gauge generators) |
//! | `n..n+k`        | Z logicals              |
//! | `n+k..2n`       | destabilizers (and Z-side gauge generators) |
//!
//! Row `i` and row `i + n` form a symplectic pair; every other pair of rows
//! commutes. Gauge generators occupy a pair `(i, i + n)` with `i` in the
//! stabilizer region.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowBasis};
use crate::pauli::{swap_halves, symplectic_gram, SymplecticForm};

/// A CSS code given by its X and Z check matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    n: usize,
    hx: BitMatrix,
    hz: BitMatrix,
}

impl CssCode {
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        if hx.ncols() != hz.ncols() {
            return Err(Error::Dimension {
                expected: hx.ncols(),
                found: hz.ncols(),
            });
        }
        for (i, x) in hx.rows().iter().enumerate() {
            for (j, z) in hz.rows().iter().enumerate() {
                if x.dot(z) {
                    return Err(Error::NotOrthogonal { x_row: i, z_row: j });
                }
            }
        }
        Ok(Self {
            n: hx.ncols(),
            hx,
            hz,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// Number of logical qubits, `n - rank(H_X) - rank(H_Z)`.
    pub fn k(&self) -> usize {
        self.n - self.hx.rank() - self.hz.rank()
    }
}

/// `[[n, k, r, d]]` parameters together with the stabilizer count `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    pub d: Option<usize>,
}

impl CodeParams {
    pub fn summary(&self) -> String {
        let d = self.d.map_or_else(|| "?".to_string(), |d| d.to_string());
        if self.r == 0 {
            format!("[[{},{},{}]]", self.n, self.k, d)
        } else {
            format!("[[{},{},{},{}]]", self.n, self.k, self.r, d)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    k: usize,
    rows: BitMatrix,
    gauge_rows: Vec<usize>,
}

impl Tableau {
    /// Wraps raw rows after checking the shape and the gauge pairing.
    /// Symplecticity is checked separately by [`verify_symplectic`].
    pub fn new(n: usize, k: usize, rows: BitMatrix, gauge_rows: Vec<usize>) -> Result<Self> {
        if rows.nrows() != 2 * n || rows.ncols() != 2 * n {
            return Err(Error::InvalidTableau(format!(
                "expected {0}x{0} rows, got {1}x{2}",
                2 * n,
                rows.nrows(),
                rows.ncols()
            )));
        }
        if k > n {
            return Err(Error::InvalidTableau(format!("k = {k} exceeds n = {n}")));
        }
        let mut gauge_rows = gauge_rows;
        gauge_rows.sort_unstable();
        gauge_rows.dedup();
        for &g in &gauge_rows {
            let (lo, hi) = if g < n { (g, g + n) } else { (g - n, g) };
            if lo < k || lo >= n || hi >= 2 * n {
                return Err(Error::InvalidTableau(format!(
                    "gauge row {g} is outside the stabilizer/destabilizer regions"
                )));
            }
            if gauge_rows.binary_search(&lo).is_err() || gauge_rows.binary_search(&hi).is_err() {
                return Err(Error::InvalidTableau(format!(
                    "gauge row {g} is missing its symplectic partner"
                )));
            }
        }
        Ok(Self {
            n,
            k,
            rows,
            gauge_rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &BitMatrix {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        self.rows.row(i)
    }

    /// Sorted indices of gauge rows, both halves of each pair.
    pub fn gauge_rows(&self) -> &[usize] {
        &self.gauge_rows
    }

    pub fn is_gauge_row(&self, i: usize) -> bool {
        self.gauge_rows.binary_search(&i).is_ok()
    }

    /// Number of gauge qubits.
    pub fn r(&self) -> usize {
        self.gauge_rows.len() / 2
    }

    pub fn logical_x_rows(&self) -> std::ops::Range<usize> {
        0..self.k
    }

    pub fn stabilizer_region(&self) -> std::ops::Range<usize> {
        self.k..self.n
    }

    pub fn logical_z_rows(&self) -> std::ops::Range<usize> {
        self.n..self.n + self.k
    }

    pub fn destabilizer_region(&self) -> std::ops::Range<usize> {
        self.n + self.k..2 * self.n
    }

    /// Stabilizer-region rows that are not gauge generators.
    pub fn stabilizer_indices(&self) -> Vec<usize> {
        self.stabilizer_region()
            .filter(|&i| !self.is_gauge_row(i))
            .collect()
    }

    /// X-side gauge generator rows (in the stabilizer region).
    pub fn gauge_x_indices(&self) -> Vec<usize> {
        self.gauge_rows
            .iter()
            .copied()
            .filter(|&i| i < self.n)
            .collect()
    }

    pub fn stabilizers(&self) -> BitMatrix {
        self.rows.select_rows(&self.stabilizer_indices())
    }

    pub fn logical_x(&self) -> BitMatrix {
        self.rows
            .select_rows(&self.logical_x_rows().collect::<Vec<_>>())
    }

    pub fn logical_z(&self) -> BitMatrix {
        self.rows
            .select_rows(&self.logical_z_rows().collect::<Vec<_>>())
    }

    /// Generators of the gauge group: stabilizers plus every gauge row.
    pub fn gauge_group(&self) -> BitMatrix {
        let mut idx = self.stabilizer_indices();
        idx.extend(self.gauge_rows.iter().copied());
        idx.sort_unstable();
        self.rows.select_rows(&idx)
    }

    /// Parameters read off the row layout; `d` is left unset.
    pub fn params(&self) -> CodeParams {
        CodeParams {
            n: self.n,
            k: self.k,
            r: self.r(),
            s: self.n - self.k - self.r(),
            d: None,
        }
    }

    pub(crate) fn rows_mut(&mut self) -> &mut BitMatrix {
        &mut self.rows
    }

    pub(crate) fn set_gauge_rows(&mut self, rows: Vec<usize>) {
        let mut rows = rows;
        rows.sort_unstable();
        self.gauge_rows = rows;
    }
}

/// Builds the tableau of a CSS stabilizer code.
///
/// Dependent checks are dropped (first occurrence wins). Logical operators
/// are canonical coset representatives: each is reduced against the echelon
/// basis of the same-type checks, then the X and Z lists are paired by
/// symplectic Gram-Schmidt.
pub fn build_css_tableau(code: &CssCode) -> Result<Tableau> {
    let n = code.n;
    let x_checks = code.hx.select_rows(&code.hx.independent_row_indices());
    let z_checks = code.hz.select_rows(&code.hz.independent_row_indices());
    let s = x_checks.nrows() + z_checks.nrows();
    if s > n {
        return Err(Error::OverComplete { independent: s, n });
    }
    let k = n - s;

    let mut lx = logical_representatives(&code.hz, &x_checks);
    let mut lz = logical_representatives(&code.hx, &z_checks);
    if lx.len() != k || lz.len() != k {
        return Err(Error::Internal(format!(
            "found {} X and {} Z logicals, expected {k}",
            lx.len(),
            lz.len()
        )));
    }
    pair_logicals(&mut lx, &mut lz)?;

    let zero = BitVector::zeros(n);
    let mut rows = BitMatrix::zeros(2 * n, 2 * n);
    for (i, l) in lx.iter().enumerate() {
        *rows.row_mut(i) = l.concat(&zero);
    }
    for (i, h) in x_checks.rows().iter().enumerate() {
        *rows.row_mut(k + i) = h.concat(&zero);
    }
    for (i, h) in z_checks.rows().iter().enumerate() {
        *rows.row_mut(k + x_checks.nrows() + i) = zero.concat(h);
    }
    for (i, l) in lz.iter().enumerate() {
        *rows.row_mut(n + i) = zero.concat(l);
    }
    let mut t = Tableau::new(n, k, rows, Vec::new())?;
    let free: Vec<usize> = t.destabilizer_region().collect();
    complete_destabilizers(&mut t, &free)?;
    Ok(t)
}

/// Representatives of `ker(dual) / rowspace(checks)`, each reduced modulo the
/// checks.
fn logical_representatives(dual: &BitMatrix, checks: &BitMatrix) -> Vec<BitVector> {
    let kernel = dual.kernel();
    let check_basis = RowBasis::from_rows(checks.ncols(), checks.rows());
    let mut seen = check_basis.clone();
    kernel
        .rows()
        .iter()
        .filter(|v| seen.insert(v))
        .map(|v| check_basis.reduce(v))
        .collect()
}

fn pair_logicals(lx: &mut [BitVector], lz: &mut [BitVector]) -> Result<()> {
    let k = lx.len();
    for i in 0..k {
        let j = (i..k)
            .find(|&j| lx[i].dot(&lz[j]))
            .ok_or_else(|| Error::Internal("logical operators do not pair".into()))?;
        lz.swap(i, j);
        for j in 0..k {
            if j != i && lx[i].dot(&lz[j]) {
                let pivot = lz[i].clone();
                lz[j].xor_in(&pivot);
            }
        }
        for j in 0..k {
            if j != i && lx[j].dot(&lz[i]) {
                let pivot = lx[i].clone();
                lx[j].xor_in(&pivot);
            }
        }
    }
    Ok(())
}

/// Recomputes the destabilizer rows listed in `free` (each must be `n + i`
/// for a stabilizer slot `i`) so that the tableau becomes symplectic, keeping
/// every other row fixed.
///
/// Each free row is first solved against the fixed rows (free variables set
/// to zero), then the free rows are made mutually commuting in ascending
/// order by adding the stabilizers they are paired with.
pub fn complete_destabilizers(t: &mut Tableau, free: &[usize]) -> Result<()> {
    let n = t.n;
    let mut free: Vec<usize> = free.to_vec();
    free.sort_unstable();
    free.dedup();
    if free.is_empty() {
        return Ok(());
    }
    for &f in &free {
        if f < n + t.k || f >= 2 * n {
            return Err(Error::InvalidTableau(format!(
                "row {f} is not in the destabilizer region"
            )));
        }
    }
    let fixed: Vec<usize> = (0..2 * n)
        .filter(|i| free.binary_search(i).is_err())
        .collect();
    let fixed_rows = t.rows.select_rows(&fixed);
    if fixed_rows.rank() != fixed.len() {
        return Err(Error::DependentRows);
    }
    // Row m of `system` is (fixed row m) Ω, so `system x = e` imposes the
    // symplectic products of x with every fixed row.
    let system = BitMatrix::from_rows(2 * n, fixed_rows.rows().iter().map(swap_halves).collect());
    let solver = Solver::new(&system);
    let mut solved: Vec<BitVector> = Vec::with_capacity(free.len());
    for &f in &free {
        let partner = f - n;
        let pos = fixed
            .binary_search(&partner)
            .map_err(|_| Error::InvalidTableau(format!("stabilizer {partner} is not fixed")))?;
        let d = solver
            .solve_unit(pos)
            .ok_or_else(|| Error::Internal("destabilizer system is inconsistent".into()))?;
        solved.push(d);
    }
    let original = solved.clone();
    for j in 0..free.len() {
        for i in 0..j {
            if crate::pauli::symplectic_product_unchecked(&original[i], &original[j]) {
                let s = t.rows.row(free[i] - n).clone();
                solved[j].xor_in(&s);
            }
        }
    }
    for (&f, d) in free.iter().zip(solved) {
        *t.rows.row_mut(f) = d;
    }
    Ok(())
}

/// Gaussian elimination with the row transform recorded, so a full-row-rank
/// system can be solved for many unit right-hand sides.
struct Solver {
    reduced: BitMatrix,
    transform: BitMatrix,
    pivots: Vec<usize>,
}

impl Solver {
    fn new(a: &BitMatrix) -> Self {
        let m = a.nrows();
        let mut reduced = a.clone();
        let mut transform = BitMatrix::identity(m);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.ncols() {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| reduced.get(i, c)) else {
                continue;
            };
            swap_rows(&mut reduced, r, p);
            swap_rows(&mut transform, r, p);
            let pr = reduced.row(r).clone();
            let pt = transform.row(r).clone();
            for i in 0..m {
                if i != r && reduced.get(i, c) {
                    reduced.row_mut(i).xor_in(&pr);
                    transform.row_mut(i).xor_in(&pt);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Self {
            reduced,
            transform,
            pivots,
        }
    }

    /// Solves `a x = e_unit`.
    fn solve_unit(&self, unit: usize) -> Option<BitVector> {
        let m = self.transform.nrows();
        let mut x = BitVector::zeros(self.reduced.ncols());
        for i in 0..m {
            let rhs = self.transform.get(i, unit);
            match self.pivots.get(i) {
                Some(&p) => {
                    if rhs {
                        x.set(p, true);
                    }
                }
                None => {
                    if rhs {
                        return None;
                    }
                }
            }
        }
        Some(x)
    }
}

fn swap_rows(m: &mut BitMatrix, a: usize, b: usize) {
    if a != b {
        let ra = m.row(a).clone();
        let rb = m.row(b).clone();
        *m.row_mut(a) = rb;
        *m.row_mut(b) = ra;
    }
}

/// `U Ω U^T == Ω` over GF(2).
pub fn verify_symplectic(t: &Tableau) -> bool {
    symplectic_gram(&t.rows, &t.rows) == SymplecticForm::new(t.n).matrix()
}

/// Symplectic check for a tableau carrying gauge rows; the gauge rows must
/// also come in `(i, i + n)` pairs inside the stabilizer/destabilizer regions.
pub fn verify_subsystem(t: &Tableau) -> bool {
    let n = t.n;
    let paired = t.gauge_rows.iter().all(|&g| {
        let (lo, hi) = if g < n { (g, g + n) } else { (g - n, g) };
        lo >= t.k && t.is_gauge_row(lo) && t.is_gauge_row(hi)
    });
    paired && verify_symplectic(t)
}

/// Basis of the center `{v ∈ rowspace(G) : v Ω G^T = 0}`, in reduced
/// row-echelon form.
pub fn center_of(gauge: &BitMatrix, n: usize) -> BitMatrix {
    assert_eq!(gauge.ncols(), 2 * n, "gauge rows must have length 2n");
    if gauge.nrows() == 0 {
        return BitMatrix::empty(2 * n);
    }
    let gram = symplectic_gram(gauge, gauge);
    // The Gram matrix is symmetric, so its kernel is also its left kernel.
    let coefficients = gram.kernel();
    let elements = coefficients.mul(gauge);
    let (reduced, pivots) = elements.rref();
    reduced.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

/// `(n, k, r, s)` of the group generated by `gauge`.
pub fn compute_group_params(gauge: &BitMatrix, n: usize) -> Result<CodeParams> {
    let g = gauge.rank();
    let s = center_of(gauge, n).nrows();
    if !(g - s).is_multiple_of(2) {
        return Err(Error::Internal(format!(
            "rank {g} and center rank {s} differ by an odd amount"
        )));
    }
    let r = (g - s) / 2;
    if s + r > n {
        return Err(Error::Internal(format!(
            "s + r = {} exceeds n = {n}",
            s + r
        )));
    }
    Ok(CodeParams {
        n,
        k: n - s - r,
        r,
        s,
        d: None,
    })
}

/// XORs the `sources` rows into the `target` row (all in the stabilizer
/// region) and re-derives the destabilizers.
pub fn multiply_stabilizer_rows(t: &Tableau, target: usize, sources: &[usize]) -> Result<Tableau> {
    let region = t.stabilizer_region();
    for &i in std::iter::once(&target).chain(sources) {
        if !region.contains(&i) || t.is_gauge_row(i) {
            return Err(Error::InvalidConfig(format!(
                "row {i} is not a stabilizer row (stabilizers occupy {}..{})",
                region.start, region.end
            )));
        }
    }
    let mut out = t.clone();
    let mut acc = t.rows.row(target).clone();
    for &s in sources {
        acc.xor_in(t.rows.row(s));
    }
    if acc == *t.rows.row(target) {
        return Ok(out);
    }
    *out.rows.row_mut(target) = acc;
    if out.stabilizers().rank() != t.stabilizers().rank() {
        return Err(Error::DependentRows);
    }
    let free: Vec<usize> = out
        .destabilizer_region()
        .filter(|&i| !out.is_gauge_row(i))
        .collect();
    complete_destabilizers(&mut out, &free)?;
    Ok(out)
}
