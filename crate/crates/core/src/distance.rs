//! Bounded brute-force code distance.
//!
//! A Pauli `P` is a dressed logical when it commutes with every stabilizer
//! and lies outside the gauge group; a bare logical must also commute with the
//! whole gauge group. Both tests are linear in `P`, so each single-qubit
//! Pauli gets a precomputed vector `[syndrome | residue modulo the gauge
//! group]` and candidates are scored by XOR-ing these.
//!
//! Candidates are visited by ascending weight, then ascending support, then
//! type assignment with `X < Y < Z`; the first hit is the witness.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::gf2::{walk_supports, BitMatrix, BitVector, RowBasis};
use crate::par::{self, Execution};
use crate::split::PauliKind;
use crate::tableau::Tableau;

pub const MAX_UNFORCED_QUBITS: usize = 150;
pub const MAX_UNFORCED_WEIGHT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    Bare,
    Dressed,
}

#[derive(Debug, Clone)]
pub struct DistanceQuery {
    pub n: usize,
    pub stabilizers: BitMatrix,
    /// Generators of the gauge group; the stabilizers are added implicitly.
    pub gauge: BitMatrix,
    pub weight_limit: usize,
    pub mode: DistanceMode,
    pub force: bool,
    /// Restrict to pure-X and pure-Z candidates when every row is single-type.
    pub css_shortcut: bool,
    pub execution: Execution,
}

impl DistanceQuery {
    pub fn new(stabilizers: BitMatrix, gauge: BitMatrix, weight_limit: usize) -> Self {
        Self {
            n: stabilizers.ncols() / 2,
            stabilizers,
            gauge,
            weight_limit,
            mode: DistanceMode::Dressed,
            force: false,
            css_shortcut: true,
            execution: Execution::Serial,
        }
    }

    /// Stabilizers and gauge group read off a tableau.
    pub fn from_tableau(t: &Tableau, weight_limit: usize) -> Self {
        Self::new(t.stabilizers(), t.gauge_group(), weight_limit)
    }

    pub fn with_mode(mut self, mode: DistanceMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_force(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn with_css_shortcut(mut self, on: bool) -> Self {
        self.css_shortcut = on;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOutcome {
    /// `None` when no logical of weight up to the limit exists.
    pub distance: Option<usize>,
    pub witness: Option<BitVector>,
    pub weight_limit: usize,
}

/// Single-qubit Pauli types in search order.
const TYPES: [(bool, bool); 3] = [(true, false), (true, true), (false, true)];

struct Scorer {
    n: usize,
    /// `contrib[q][t]` for qubit `q` and type index `t` into [`TYPES`].
    contrib: Vec<[BitVector; 3]>,
    syndrome_len: usize,
    types: Vec<usize>,
}

impl Scorer {
    fn new(q: &DistanceQuery) -> Self {
        let n = q.n;
        let checks: Vec<&BitVector> = match q.mode {
            DistanceMode::Dressed => q.stabilizers.rows().iter().collect(),
            DistanceMode::Bare => q.stabilizers.rows().iter().chain(q.gauge.rows()).collect(),
        };
        let group = RowBasis::from_rows(2 * n, q.stabilizers.rows().iter().chain(q.gauge.rows()));
        let css = q.css_shortcut
            && q.stabilizers
                .rows()
                .iter()
                .chain(q.gauge.rows())
                .all(|r| r.is_zero() || PauliKind::of(r).is_some());
        let types = if css { vec![0, 2] } else { vec![0, 1, 2] };
        let contrib = (0..n)
            .map(|qubit| {
                TYPES.map(|(x, z)| {
                    let mut p = BitVector::zeros(2 * n);
                    p.set(qubit, x);
                    p.set(n + qubit, z);
                    let syndrome: Vec<bool> = checks
                        .iter()
                        .map(|c| (x && c.get(n + qubit)) ^ (z && c.get(qubit)))
                        .collect();
                    BitVector::from_bools(&syndrome).concat(&group.reduce(&p))
                })
            })
            .collect();
        Self {
            n,
            contrib,
            syndrome_len: checks.len(),
            types,
        }
    }

    fn is_logical(&self, acc: &BitVector) -> bool {
        acc.prefix_is_zero(self.syndrome_len) && !acc.is_zero()
    }

    /// First hit among supports of weight `w` starting at qubit `first`.
    fn first_hit(&self, w: usize, first: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let zero = BitVector::zeros(self.syndrome_len + 2 * self.n);
        let unit: Vec<BitVector> = vec![BitVector::zeros(0); self.n];
        let empty = BitVector::zeros(0);
        let mut hit = None;
        walk_supports(
            self.n,
            w,
            first..first + 1,
            &unit,
            &empty,
            &mut |support, _| {
                let mut types = Vec::with_capacity(w);
                if self.assign(support, &zero, &mut types) {
                    hit = Some((support.to_vec(), types));
                    return false;
                }
                true
            },
        );
        hit
    }

    /// Depth-first over type assignments in `X < Y < Z` order.
    fn assign(&self, support: &[usize], acc: &BitVector, types: &mut Vec<usize>) -> bool {
        let depth = types.len();
        if depth == support.len() {
            return self.is_logical(acc);
        }
        let q = support[depth];
        for &t in &self.types {
            let next = acc ^ &self.contrib[q][t];
            types.push(t);
            if self.assign(support, &next, types) {
                return true;
            }
            types.pop();
        }
        false
    }

    fn witness(&self, support: &[usize], types: &[usize]) -> BitVector {
        let mut p = BitVector::zeros(2 * self.n);
        for (&q, &t) in support.iter().zip(types) {
            let (x, z) = TYPES[t];
            p.set(q, x);
            p.set(self.n + q, z);
        }
        p
    }
}

/// Smallest weight of a dressed (or bare) logical up to the weight limit.
pub fn dressed_distance(q: &DistanceQuery) -> Result<DistanceOutcome> {
    let n = q.n;
    if q.stabilizers.ncols() != 2 * n || q.gauge.ncols() != 2 * n {
        return Err(Error::Dimension {
            expected: 2 * n,
            found: q.gauge.ncols(),
        });
    }
    if q.weight_limit > n {
        return Err(Error::InvalidConfig(format!(
            "weight limit {} exceeds n = {n}",
            q.weight_limit
        )));
    }
    if !q.force && (n > MAX_UNFORCED_QUBITS || q.weight_limit > MAX_UNFORCED_WEIGHT) {
        return Err(Error::Refused(format!(
            "distance search on n = {n} up to weight {} is out of scale; pass force to run it",
            q.weight_limit
        )));
    }
    let scorer = Scorer::new(q);
    for w in 1..=q.weight_limit {
        // Chunks whose first qubit lies beyond a known hit cannot win.
        let best_first = AtomicUsize::new(usize::MAX);
        let hit = par::min_over(q.execution, 0..n + 1 - w, |first| {
            if first > best_first.load(Ordering::Relaxed) {
                return None;
            }
            let hit = scorer.first_hit(w, first)?;
            best_first.fetch_min(first, Ordering::Relaxed);
            Some(hit)
        });
        if let Some((support, types)) = hit {
            return Ok(DistanceOutcome {
                distance: Some(w),
                witness: Some(scorer.witness(&support, &types)),
                weight_limit: q.weight_limit,
            });
        }
    }
    Ok(DistanceOutcome {
        distance: None,
        witness: None,
        weight_limit: q.weight_limit,
    })
}

/// Distance of a stabilizer code (no gauge rows).
pub fn stabilizer_distance(t: &Tableau, weight_limit: usize) -> Result<DistanceOutcome> {
    if t.r() != 0 {
        return Err(Error::InvalidConfig(
            "stabilizer distance needs a tableau without gauge rows".into(),
        ));
    }
    dressed_distance(&DistanceQuery::from_tableau(t, weight_limit))
}
