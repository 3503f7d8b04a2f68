//! Splitting stabilizers of a seed tableau into low-weight gauge operators.
//!
//! Two searches share the same machinery:
//!
//! - [`split_generators`] finds `r` independent, symplectically paired X/Z
//!   gauge generators and writes them into the tableau in place of the
//!   replaced stabilizer rows;
//! - [`split_operators`] collects gauge operators that need be neither
//!   independent nor paired, `gaugesPerStab` of them per target stabilizer.
//!
//! Candidates are single-type Paulis of a fixed weight `w`, enumerated in
//! lexicographic support order. Each target stabilizer is decomposed by the
//! combination of pool members whose product with the target (the residual)
//! has the smallest Pauli weight, ties going to the lowest combination.

use crate::error::{Error, Result};
use crate::gf2::{binomial, walk_supports, BitMatrix, BitVector, RowBasis};
use crate::par::{self, Execution};
use crate::pauli::symplectic_product_unchecked;
use crate::tableau::{
    complete_destabilizers, compute_group_params, verify_subsystem, CodeParams, Tableau,
};

pub const DEFAULT_GAUGES_PER_STAB: usize = 2;
pub const DEFAULT_MAX_SIZE: usize = 64;
pub const DEFAULT_COMBINATION_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    /// Independent, paired gauge generators.
    Generators,
    /// Arbitrary gauge operators.
    Operators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PauliKind {
    X,
    Z,
}

impl PauliKind {
    /// Places an `n`-bit support vector in the X or Z half.
    pub fn embed(self, half: &BitVector) -> BitVector {
        let zero = BitVector::zeros(half.len());
        match self {
            PauliKind::X => half.concat(&zero),
            PauliKind::Z => zero.concat(half),
        }
    }

    /// The active half of a length-2n vector.
    pub fn half(self, v: &BitVector) -> BitVector {
        let n = v.len() / 2;
        match self {
            PauliKind::X => v.slice(0, n),
            PauliKind::Z => v.slice(n, n),
        }
    }

    /// Kind of a nonzero single-type vector.
    pub fn of(v: &BitVector) -> Option<Self> {
        let n = v.len() / 2;
        let x = !v.slice(0, n).is_zero();
        let z = !v.slice(n, n).is_zero();
        match (x, z) {
            (true, false) => Some(PauliKind::X),
            (false, true) => Some(PauliKind::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SplitConfig {
    /// Initial candidate weight.
    pub w: usize,
    /// Cap on the candidate pool.
    pub max_size: usize,
    /// Number of pool members combined per target.
    pub gauges_per_stab: usize,
    /// 0-based tableau rows in the stabilizer region to replace.
    pub replace_rows: Vec<usize>,
    /// Largest `C(|pool|, gauges_per_stab)` that may be scanned.
    pub combination_budget: u128,
    pub execution: Execution,
}

impl SplitConfig {
    pub fn new(w: usize, replace_rows: Vec<usize>) -> Self {
        Self {
            w,
            max_size: DEFAULT_MAX_SIZE,
            gauges_per_stab: DEFAULT_GAUGES_PER_STAB,
            replace_rows,
            combination_budget: DEFAULT_COMBINATION_BUDGET,
            execution: Execution::Serial,
        }
    }

    pub fn with_max_size(mut self, max_size: usize) -> Self {
        self.max_size = max_size;
        self
    }

    pub fn with_gauges_per_stab(mut self, gauges_per_stab: usize) -> Self {
        self.gauges_per_stab = gauges_per_stab;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.combination_budget = budget;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self, t: &Tableau) -> Result<()> {
        let n = t.n();
        if self.w == 0 || self.w >= n {
            return Err(Error::InvalidConfig(format!(
                "candidate weight must satisfy 1 <= w < n = {n}, got {}",
                self.w
            )));
        }
        if self.gauges_per_stab == 0 {
            return Err(Error::InvalidConfig(
                "gauges per stabilizer must be positive".into(),
            ));
        }
        if self.max_size == 0 {
            return Err(Error::InvalidConfig(
                "max pool size must be positive".into(),
            ));
        }
        if !t.gauge_rows().is_empty() {
            return Err(Error::InvalidConfig(
                "input tableau already carries gauge rows".into(),
            ));
        }
        let mut seen = self.replace_rows.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.replace_rows.len() {
            return Err(Error::InvalidConfig(
                "replace rows contain duplicates".into(),
            ));
        }
        let region = t.stabilizer_region();
        if let Some(bad) = self.replace_rows.iter().find(|i| !region.contains(i)) {
            return Err(Error::InvalidConfig(format!(
                "replace row {bad} is outside the stabilizer rows {}..{}",
                region.start, region.end
            )));
        }
        Ok(())
    }

    fn sorted_replace_rows(&self) -> Vec<usize> {
        let mut rows = self.replace_rows.clone();
        rows.sort_unstable();
        rows
    }
}

/// A pool member: its support and its length-2n vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub support: Vec<usize>,
    pub vector: BitVector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GaugeSet {
    pub g_x: Vec<BitVector>,
    pub g_z: Vec<BitVector>,
}

/// Decomposition of one target stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEntry {
    pub kind: PauliKind,
    pub target_row: usize,
    pub target_weight: usize,
    /// Indices into the pool of the same kind.
    pub gauge_indices: Vec<usize>,
    pub gauges: Vec<BitVector>,
    pub residual: BitVector,
    pub residual_weight: usize,
}

impl SplitEntry {
    /// A decomposition helps only if the residual is lighter than the target.
    pub fn useful(&self) -> bool {
        self.residual_weight < self.target_weight
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub mode: SplitMode,
    pub entries: Vec<SplitEntry>,
    pub x_weight: usize,
    pub z_weight: usize,
    pub x_pool: Vec<Candidate>,
    pub z_pool: Vec<Candidate>,
}

impl SplitReport {
    fn empty(mode: SplitMode, w: usize) -> Self {
        Self {
            mode,
            entries: Vec::new(),
            x_weight: w,
            z_weight: w,
            x_pool: Vec::new(),
            z_pool: Vec::new(),
        }
    }

    pub fn entries_of(&self, kind: PauliKind) -> impl Iterator<Item = &SplitEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    /// Largest per-target residual weight among targets of `kind`.
    pub fn max_residual(&self, kind: PauliKind) -> Option<usize> {
        self.entries_of(kind).map(|e| e.residual_weight).max()
    }

    pub fn residual_weights(&self, kind: PauliKind) -> Vec<usize> {
        self.entries_of(kind).map(|e| e.residual_weight).collect()
    }
}

/// Rows of `U` that candidates must commute with: the X logicals, the
/// stabilizers that are kept, and the Z logicals, in tableau order.
#[derive(Debug, Clone)]
pub struct Commutant {
    pub rows: BitMatrix,
    pub tableau_rows: Vec<usize>,
    pub num_logical_x: usize,
    pub num_stabilizers: usize,
}

impl Commutant {
    pub fn logical_x(&self) -> &[BitVector] {
        &self.rows.rows()[..self.num_logical_x]
    }

    pub fn stabilizers(&self) -> &[BitVector] {
        &self.rows.rows()[self.num_logical_x..self.num_logical_x + self.num_stabilizers]
    }

    pub fn logical_z(&self) -> &[BitVector] {
        &self.rows.rows()[self.num_logical_x + self.num_stabilizers..]
    }
}

/// `U(1:(n+k))` with the replaced rows removed. Keeping them would make every
/// commuting candidate a member of `span(V)`.
pub fn commutant(t: &Tableau, cfg: &SplitConfig) -> Commutant {
    let replaced = cfg.sorted_replace_rows();
    let kept: Vec<usize> = (0..t.n() + t.k())
        .filter(|i| replaced.binary_search(i).is_err())
        .collect();
    Commutant {
        rows: t.rows().select_rows(&kept),
        num_logical_x: t.k(),
        num_stabilizers: t.n() - t.k() - replaced.len(),
        tableau_rows: kept,
    }
}

pub fn commutant_matrix(t: &Tableau, cfg: &SplitConfig) -> BitMatrix {
    commutant(t, cfg).rows
}

/// How many of the `partners` a candidate must anti-commute with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PartnerRule {
    Any,
    ExactlyOne,
    AtLeastOne,
}

struct Search<'a> {
    n: usize,
    kind: PauliKind,
    w: usize,
    /// Per-qubit syndrome against `[commute rows | partner rows]`.
    contrib: Vec<BitVector>,
    num_commute: usize,
    rule: PartnerRule,
    accept: &'a (dyn Fn(&BitVector) -> bool + Sync),
    independent: bool,
    max_size: usize,
}

impl<'a> Search<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        n: usize,
        kind: PauliKind,
        w: usize,
        commute: &[BitVector],
        partners: &[BitVector],
        rule: PartnerRule,
        accept: &'a (dyn Fn(&BitVector) -> bool + Sync),
        independent: bool,
        max_size: usize,
    ) -> Self {
        let len = commute.len() + partners.len();
        // A single-qubit X on q pairs with the Z bit of each row at q, and
        // vice versa.
        let offset = match kind {
            PauliKind::X => n,
            PauliKind::Z => 0,
        };
        let mut contrib = vec![BitVector::zeros(len); n];
        for (m, row) in commute.iter().chain(partners).enumerate() {
            for q in row.slice(offset, n).iter_ones() {
                contrib[q].set(m, true);
            }
        }
        Self {
            n,
            kind,
            w,
            contrib,
            num_commute: commute.len(),
            rule,
            accept,
            independent,
            max_size,
        }
    }

    fn passes_syndrome(&self, acc: &BitVector) -> bool {
        if !acc.prefix_is_zero(self.num_commute) {
            return false;
        }
        match self.rule {
            PartnerRule::Any => true,
            PartnerRule::ExactlyOne => acc.weight() == 1,
            PartnerRule::AtLeastOne => !acc.is_zero(),
        }
    }

    /// Walks supports whose first qubit is in `first`, keeping candidates
    /// that pass every filter until `stop` are held; `basis` carries the
    /// independence state.
    fn scan(
        &self,
        first: std::ops::Range<usize>,
        stop: usize,
        basis: &mut RowBasis,
        out: &mut Vec<Candidate>,
    ) {
        let zero = BitVector::zeros(self.contrib.first().map_or(0, |c| c.len()));
        walk_supports(
            self.n,
            self.w,
            first,
            &self.contrib,
            &zero,
            &mut |support, acc| {
                if !self.passes_syndrome(acc) {
                    return true;
                }
                let half = BitVector::from_support(self.n, support);
                let vector = self.kind.embed(&half);
                if !(self.accept)(&vector) {
                    return true;
                }
                if self.independent && !basis.insert(&half) {
                    return true;
                }
                out.push(Candidate {
                    support: support.to_vec(),
                    vector,
                });
                out.len() < stop
            },
        );
    }

    fn run(&self, exec: Execution) -> Vec<Candidate> {
        let mut basis = RowBasis::new(self.n);
        let mut out = Vec::new();
        if !exec.is_parallel() {
            self.scan(0..self.n, self.max_size, &mut basis, &mut out);
            return out;
        }
        // Chunks by first qubit. A candidate dependent on earlier members of
        // its own chunk is also dependent on the global pool, so filtering
        // locally first and re-filtering in order gives the serial result.
        // At most n independent candidates exist per chunk.
        let stop = if self.independent {
            self.n
        } else {
            self.max_size
        };
        let chunks = par::map_range(exec, 0..self.n, |f| {
            let mut basis = RowBasis::new(self.n);
            let mut local = Vec::new();
            self.scan(f..f + 1, stop, &mut basis, &mut local);
            local
        });
        for c in chunks.into_iter().flatten() {
            if out.len() >= self.max_size {
                break;
            }
            if self.independent && !basis.insert(&self.kind.half(&c.vector)) {
                continue;
            }
            out.push(c);
        }
        out
    }
}

/// X-type candidates `[a | 0]` of weight `w` commuting with the commutant.
///
/// In generator mode a candidate must lie outside `span(V)` and be
/// independent of the pool collected so far; in operator mode it must not be
/// a bare X logical (a nonzero logical class modulo the kept stabilizers).
pub fn find_x_candidates(
    com: &Commutant,
    w: usize,
    cfg: &SplitConfig,
    mode: SplitMode,
) -> Vec<Candidate> {
    find_candidates(com, PauliKind::X, w, &[], cfg, mode)
}

/// Z-type candidates `[0 | b]` of weight `w` that commute with the commutant
/// and anti-commute with exactly one (generator mode) or at least one
/// (operator mode) of `g_x`.
pub fn pair_z_gauges(
    com: &Commutant,
    g_x: &[BitVector],
    w: usize,
    cfg: &SplitConfig,
    mode: SplitMode,
) -> Vec<Candidate> {
    find_candidates(com, PauliKind::Z, w, g_x, cfg, mode)
}

fn find_candidates(
    com: &Commutant,
    kind: PauliKind,
    w: usize,
    partners: &[BitVector],
    cfg: &SplitConfig,
    mode: SplitMode,
) -> Vec<Candidate> {
    let n = com.rows.ncols() / 2;
    let v_basis = RowBasis::from_rows(2 * n, com.rows.rows());
    let stab_basis = RowBasis::from_rows(2 * n, com.stabilizers());
    let logicals = match kind {
        PauliKind::X => com.logical_x(),
        PauliKind::Z => com.logical_z(),
    };
    let coset_basis = RowBasis::from_rows(2 * n, com.stabilizers().iter().chain(logicals));
    let accept_generator = |v: &BitVector| !v_basis.contains(v);
    let accept_operator = |v: &BitVector| !(coset_basis.contains(v) && !stab_basis.contains(v));
    let (accept, independent): (&(dyn Fn(&BitVector) -> bool + Sync), bool) = match mode {
        SplitMode::Generators => (&accept_generator, true),
        SplitMode::Operators => (&accept_operator, false),
    };
    let rule = match (kind, mode) {
        (PauliKind::X, _) => PartnerRule::Any,
        // Without X gauges there is nothing to anti-commute with.
        (PauliKind::Z, _) if partners.is_empty() => PartnerRule::Any,
        (PauliKind::Z, SplitMode::Generators) => PartnerRule::ExactlyOne,
        (PauliKind::Z, SplitMode::Operators) => PartnerRule::AtLeastOne,
    };
    let search = Search::new(
        n,
        kind,
        w,
        com.rows.rows(),
        partners,
        rule,
        accept,
        independent,
        cfg.max_size,
    );
    search.run(cfg.execution)
}

/// Next candidate weight after an unsuccessful round, or failure once the
/// weight reaches `n`.
pub fn escalate(cfg: &SplitConfig, n: usize) -> Result<SplitConfig> {
    let mut next = cfg.clone();
    next.w = next_weight(cfg.w, n)?;
    Ok(next)
}

fn next_weight(w: usize, n: usize) -> Result<usize> {
    if w + 1 >= n {
        Err(Error::SplitFailed { last_weight: w })
    } else {
        Ok(w + 1)
    }
}

fn check_budget(pool: usize, choose: usize, budget: u128) -> Result<()> {
    let combinations = binomial(pool, choose);
    if combinations > budget {
        return Err(Error::ResourceBudget {
            pool,
            choose,
            combinations,
            budget,
        });
    }
    Ok(())
}

/// Minimum-weight residual of `target` over all `t`-subsets of `pool`
/// (single-type half vectors), with the lowest combination winning ties.
pub fn best_combination(
    target: &BitVector,
    pool: &[BitVector],
    t: usize,
    exec: Execution,
) -> Option<(usize, Vec<usize>)> {
    let m = pool.len();
    if t == 0 || t > m {
        return None;
    }
    par::min_over(exec, 0..m + 1 - t, |first| {
        let mut best: Option<(usize, Vec<usize>)> = None;
        walk_supports(m, t, first..first + 1, pool, target, &mut |combo, acc| {
            let w = acc.weight();
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, combo.to_vec()));
            }
            w > 0
        });
        best
    })
}

/// Decomposes every target (tableau row index) against `pool`.
///
/// The combination size is `gauges_per_stab`, clamped to the pool size.
pub fn choose_gauges(
    t: &Tableau,
    targets: &[usize],
    kind: PauliKind,
    pool: &[Candidate],
    cfg: &SplitConfig,
) -> Result<Vec<SplitEntry>> {
    let mut out = Vec::with_capacity(targets.len());
    let mut scanner = Scanner::new(kind, pool, cfg)?;
    for &row in targets {
        out.push(scanner.decompose(row, t.row(row)));
    }
    Ok(out)
}

/// Decomposes arbitrary target vectors against an arbitrary pool, for
/// scoring gauge operators that did not come from a search (closed-form
/// constructions, for instance). `target_row` is the index into `targets`.
pub fn evaluate_residuals(
    targets: &[BitVector],
    kind: PauliKind,
    pool: &[BitVector],
    cfg: &SplitConfig,
) -> Result<Vec<SplitEntry>> {
    let pool: Vec<Candidate> = pool
        .iter()
        .map(|v| Candidate {
            support: kind.half(v).support(),
            vector: v.clone(),
        })
        .collect();
    if pool.is_empty() {
        return Err(Error::InvalidConfig("empty gauge pool".into()));
    }
    let mut scanner = Scanner::new(kind, &pool, cfg)?;
    Ok(targets
        .iter()
        .enumerate()
        .map(|(i, v)| scanner.decompose(i, v))
        .collect())
}

struct Scanner<'a> {
    kind: PauliKind,
    pool: &'a [Candidate],
    halves: Vec<BitVector>,
    t: usize,
    exec: Execution,
}

impl<'a> Scanner<'a> {
    fn new(kind: PauliKind, pool: &'a [Candidate], cfg: &SplitConfig) -> Result<Self> {
        let t = cfg.gauges_per_stab.min(pool.len());
        check_budget(pool.len(), t, cfg.combination_budget)?;
        Ok(Self {
            kind,
            pool,
            halves: pool.iter().map(|c| kind.half(&c.vector)).collect(),
            t,
            exec: cfg.execution,
        })
    }

    fn decompose(&mut self, row: usize, target: &BitVector) -> SplitEntry {
        let half = self.kind.half(target);
        let (residual_weight, combo) =
            best_combination(&half, &self.halves, self.t, self.exec).expect("pool is non-empty");
        let mut residual = target.clone();
        for &i in &combo {
            residual.xor_in(&self.pool[i].vector);
        }
        SplitEntry {
            kind: self.kind,
            target_row: row,
            target_weight: half.weight(),
            gauges: combo.iter().map(|&i| self.pool[i].vector.clone()).collect(),
            gauge_indices: combo,
            residual,
            residual_weight,
        }
    }
}

/// Non-replaced stabilizer rows of the given kind, top to bottom.
fn targets_of(t: &Tableau, cfg: &SplitConfig, kind: PauliKind) -> Vec<usize> {
    let replaced = cfg.sorted_replace_rows();
    t.stabilizer_indices()
        .into_iter()
        .filter(|i| replaced.binary_search(i).is_err())
        .filter(|&i| PauliKind::of(t.row(i)) == Some(kind))
        .collect()
}

/// Result of the generator search.
#[derive(Debug, Clone)]
pub struct GeneratorSplit {
    pub tableau: Tableau,
    pub params: CodeParams,
    pub gauges: GaugeSet,
    pub report: SplitReport,
}

/// Replaces the configured stabilizer rows by `r` paired X/Z gauge
/// generators of the lowest workable weight.
pub fn split_generators(t: &Tableau, cfg: &SplitConfig) -> Result<GeneratorSplit> {
    cfg.validate(t)?;
    let n = t.n();
    let replace = cfg.sorted_replace_rows();
    let r = replace.len();
    if r == 0 {
        let params = compute_group_params(&t.gauge_group(), n)?;
        return Ok(GeneratorSplit {
            tableau: t.clone(),
            params,
            gauges: GaugeSet::default(),
            report: SplitReport::empty(SplitMode::Generators, cfg.w),
        });
    }
    let com = commutant(t, cfg);
    let x_targets = targets_of(t, cfg, PauliKind::X);
    let z_targets = targets_of(t, cfg, PauliKind::Z);
    let mut entries = Vec::new();

    let mut w = cfg.w;
    let (g_x, x_pool) = loop {
        let pool = find_x_candidates(&com, w, cfg, SplitMode::Generators);
        if !pool.is_empty() {
            let mut round = Vec::new();
            let g_x =
                collect_generators(t, &com, &x_targets, PauliKind::X, &pool, r, cfg, &mut round)?;
            if g_x.len() == r {
                entries.extend(round);
                break (g_x, pool);
            }
        }
        w = next_weight(w, n)?;
    };
    let x_weight = w;

    let mut w = cfg.w;
    let (g_z, z_pool) = loop {
        let pool = pair_z_gauges(&com, &g_x, w, cfg, SplitMode::Generators);
        if !pool.is_empty() {
            let mut round = Vec::new();
            let preferred =
                collect_generators(t, &com, &z_targets, PauliKind::Z, &pool, r, cfg, &mut round)?;
            if let Some(g_z) =
                assign_partners(&g_x, preferred.iter().chain(pool.iter().map(|c| &c.vector)))
            {
                entries.extend(round);
                break (g_z, pool);
            }
        }
        w = next_weight(w, n)?;
    };
    let z_weight = w;

    let mut out = t.clone();
    let mut gauge_rows = Vec::with_capacity(2 * r);
    for (j, &i) in replace.iter().enumerate() {
        *out.rows_mut().row_mut(i) = g_x[j].clone();
        *out.rows_mut().row_mut(n + i) = g_z[j].clone();
        gauge_rows.push(i);
        gauge_rows.push(n + i);
    }
    out.set_gauge_rows(gauge_rows);
    let free: Vec<usize> = out
        .destabilizer_region()
        .filter(|&i| !out.is_gauge_row(i))
        .collect();
    complete_destabilizers(&mut out, &free)?;
    if !verify_subsystem(&out) {
        return Err(Error::Internal("split tableau is not symplectic".into()));
    }
    let params = compute_group_params(&out.gauge_group(), n)?;
    if params != out.params() {
        return Err(Error::Internal(format!(
            "group parameters {params:?} disagree with the tableau layout {:?}",
            out.params()
        )));
    }
    Ok(GeneratorSplit {
        tableau: out,
        params,
        gauges: GaugeSet { g_x, g_z },
        report: SplitReport {
            mode: SplitMode::Generators,
            entries,
            x_weight,
            z_weight,
            x_pool,
            z_pool,
        },
    })
}

/// Scans targets top to bottom, keeping chosen gauges that are independent of
/// `V` and of the gauges already kept, until `r` are held; then tops up from
/// the pool in order.
#[allow(clippy::too_many_arguments)]
fn collect_generators(
    t: &Tableau,
    com: &Commutant,
    targets: &[usize],
    kind: PauliKind,
    pool: &[Candidate],
    r: usize,
    cfg: &SplitConfig,
    entries: &mut Vec<SplitEntry>,
) -> Result<Vec<BitVector>> {
    let mut joint = RowBasis::from_rows(com.rows.ncols(), com.rows.rows());
    let mut chosen = Vec::new();
    let mut scanner = Scanner::new(kind, pool, cfg)?;
    for &row in targets {
        if chosen.len() >= r {
            break;
        }
        let entry = scanner.decompose(row, t.row(row));
        for g in &entry.gauges {
            if chosen.len() < r && joint.insert(g) {
                chosen.push(g.clone());
            }
        }
        entries.push(entry);
    }
    for c in pool {
        if chosen.len() >= r {
            break;
        }
        if joint.insert(&c.vector) {
            chosen.push(c.vector.clone());
        }
    }
    Ok(chosen)
}

/// Gives each X gauge the first Z candidate that anti-commutes with it and
/// with no other X gauge. Because every candidate has a single partner, the
/// first-come assignment is a maximum matching.
fn assign_partners<'a>(
    g_x: &[BitVector],
    candidates: impl Iterator<Item = &'a BitVector>,
) -> Option<Vec<BitVector>> {
    let mut slots: Vec<Option<BitVector>> = vec![None; g_x.len()];
    let mut open = g_x.len();
    for c in candidates {
        if open == 0 {
            break;
        }
        let mut hits = g_x
            .iter()
            .enumerate()
            .filter(|(_, g)| symplectic_product_unchecked(g, c))
            .map(|(j, _)| j);
        let (Some(j), None) = (hits.next(), hits.next()) else {
            continue;
        };
        if slots[j].is_none() {
            slots[j] = Some(c.clone());
            open -= 1;
        }
    }
    slots.into_iter().collect()
}

/// Result of the operator search.
#[derive(Debug, Clone)]
pub struct OperatorSplit {
    pub n: usize,
    /// Tableau rows kept from the seed (logicals and non-replaced stabilizers).
    pub commutant: Commutant,
    pub gauges: GaugeSet,
    pub report: SplitReport,
}

impl OperatorSplit {
    /// Kept stabilizers together with every gauge operator.
    pub fn gauge_group(&self) -> BitMatrix {
        let mut rows: Vec<BitVector> = self.commutant.stabilizers().to_vec();
        rows.extend(self.gauges.g_x.iter().cloned());
        rows.extend(self.gauges.g_z.iter().cloned());
        BitMatrix::from_rows(2 * self.n, rows)
    }

    pub fn params(&self) -> Result<CodeParams> {
        compute_group_params(&self.gauge_group(), self.n)
    }
}

/// Collects `gauges_per_stab` gauge operators for every target stabilizer,
/// first for the X targets, then for the Z targets.
pub fn split_operators(t: &Tableau, cfg: &SplitConfig) -> Result<OperatorSplit> {
    cfg.validate(t)?;
    let n = t.n();
    let com = commutant(t, cfg);
    let x_targets = targets_of(t, cfg, PauliKind::X);
    let z_targets = targets_of(t, cfg, PauliKind::Z);
    let mut report = SplitReport::empty(SplitMode::Operators, cfg.w);
    let mut gauges = GaugeSet::default();

    if !x_targets.is_empty() {
        let mut w = cfg.w;
        let pool = loop {
            let pool = find_x_candidates(&com, w, cfg, SplitMode::Operators);
            if !pool.is_empty() {
                break pool;
            }
            w = next_weight(w, n)?;
        };
        let entries = choose_gauges(t, &x_targets, PauliKind::X, &pool, cfg)?;
        gauges.g_x = entries
            .iter()
            .flat_map(|e| e.gauges.iter().cloned())
            .collect();
        report.entries.extend(entries);
        report.x_weight = w;
        report.x_pool = pool;
    }

    if !z_targets.is_empty() {
        let mut distinct_x = gauges.g_x.clone();
        distinct_x.sort();
        distinct_x.dedup();
        let mut w = cfg.w;
        let pool = loop {
            let pool = pair_z_gauges(&com, &distinct_x, w, cfg, SplitMode::Operators);
            if !pool.is_empty() {
                break pool;
            }
            w = next_weight(w, n)?;
        };
        let entries = choose_gauges(t, &z_targets, PauliKind::Z, &pool, cfg)?;
        gauges.g_z = entries
            .iter()
            .flat_map(|e| e.gauges.iter().cloned())
            .collect();
        report.entries.extend(entries);
        report.z_weight = w;
        report.z_pool = pool;
    }

    Ok(OperatorSplit {
        n,
        commutant: com,
        gauges,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes;
    use crate::pauli::{symplectic_gram, PauliOperator};
    use crate::tableau::{build_css_tableau, multiply_stabilizer_rows};

    fn preprocessed_shor() -> Tableau {
        let mut t = build_css_tableau(&codes::shor()).unwrap();
        for (target, sources) in codes::shor_preprocess() {
            t = multiply_stabilizer_rows(&t, target, &sources).unwrap();
        }
        t
    }

    fn pauli(s: &str, n: usize) -> BitVector {
        PauliOperator::parse(s, n).unwrap().to_symplectic()
    }

    #[test]
    fn commutant_row_counts() {
        let t = preprocessed_shor();
        let cfg = SplitConfig::new(2, codes::shor_replace_rows());
        assert_eq!(commutant_matrix(&t, &cfg).nrows(), 6);
        assert_eq!(
            commutant_matrix(&t, &SplitConfig::new(2, vec![])).nrows(),
            10
        );
        let s = build_css_tableau(&codes::rotated_surface()).unwrap();
        assert_eq!(
            commutant_matrix(&s, &SplitConfig::new(3, vec![7, 8])).nrows(),
            8
        );
    }

    #[test]
    fn shor_pool_is_column_pairs() {
        let t = preprocessed_shor();
        let cfg = SplitConfig::new(2, codes::shor_replace_rows());
        let com = commutant(&t, &cfg);
        let pool = find_x_candidates(&com, 2, &cfg, SplitMode::Generators);
        assert!(!pool.is_empty());
        for c in &pool {
            assert_eq!(c.support.len(), 2);
            assert_eq!(c.support[1] % 3, c.support[0] % 3, "{:?}", c.support);
            assert!(
                symplectic_gram(&BitMatrix::from_rows(18, vec![c.vector.clone()]), &com.rows)
                    .is_zero()
            );
        }
    }

    #[test]
    fn complete_commutant_leaves_no_candidates() {
        let t = build_css_tableau(&codes::shor()).unwrap();
        let cfg = SplitConfig::new(2, vec![]);
        let com = commutant(&t, &cfg);
        for w in 1..=9 {
            assert!(find_x_candidates(&com, w, &cfg, SplitMode::Generators).is_empty());
        }
    }

    #[test]
    fn escalation_steps_and_fails() {
        let cfg = SplitConfig::new(2, vec![]);
        assert_eq!(escalate(&cfg, 9).unwrap().w, 3);
        let last = SplitConfig::new(8, vec![]);
        assert!(matches!(
            escalate(&last, 9),
            Err(Error::SplitFailed { last_weight: 8 })
        ));
    }

    #[test]
    fn best_combination_examples() {
        let n = 9;
        let sx1 = BitVector::from_support(n, &[0, 1, 3, 4]);
        let a = BitVector::from_support(n, &[0, 1, 2]);
        let b = BitVector::from_support(n, &[2, 3, 4]);
        let c = BitVector::from_support(n, &[5, 6, 7]);
        let pool = vec![c.clone(), a.clone(), b.clone()];
        assert_eq!(
            best_combination(&sx1, &pool, 2, Execution::Serial),
            Some((0, vec![1, 2]))
        );
        let (w, combo) =
            best_combination(&sx1, std::slice::from_ref(&a), 1, Execution::Serial).unwrap();
        assert_eq!((w, combo), (3, vec![0]));
        assert_eq!(
            best_combination(&sx1, std::slice::from_ref(&sx1), 1, Execution::Serial),
            Some((0, vec![0]))
        );
        assert_eq!(
            best_combination(&sx1, &pool, 2, Execution::Parallel),
            best_combination(&sx1, &pool, 2, Execution::Serial)
        );
    }

    #[test]
    fn bacon_shor_from_shor() {
        let t = preprocessed_shor();
        let cfg = SplitConfig::new(2, codes::shor_replace_rows());
        let out = split_generators(&t, &cfg).unwrap();
        assert_eq!((out.params.n, out.params.k, out.params.r), (9, 1, 4));
        assert!(verify_subsystem(&out.tableau));
        for g in out.gauges.g_x.iter().chain(&out.gauges.g_z) {
            assert_eq!(crate::pauli::symplectic_weight(g), 2);
        }
        let gram = symplectic_gram(
            &BitMatrix::from_rows(18, out.gauges.g_z.clone()),
            &BitMatrix::from_rows(18, out.gauges.g_x.clone()),
        );
        assert_eq!(gram, BitMatrix::identity(4));
        let parallel =
            split_generators(&t, &cfg.clone().with_execution(Execution::Parallel)).unwrap();
        assert_eq!(parallel.tableau, out.tableau);
        assert_eq!(parallel.report, out.report);
    }

    #[test]
    fn no_replacement_is_identity() {
        let t = build_css_tableau(&codes::shor()).unwrap();
        let out = split_generators(&t, &SplitConfig::new(2, vec![])).unwrap();
        assert_eq!(out.tableau, t);
        assert_eq!(out.params.r, 0);
    }

    #[test]
    fn operator_mode_with_stabilizers_as_pool() {
        // Nothing replaced: the only commuting X operators are the checks.
        let hx = BitMatrix::from_u8(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let code = crate::tableau::CssCode::new(hx, BitMatrix::empty(4)).unwrap();
        let t = build_css_tableau(&code).unwrap();
        let cfg = SplitConfig::new(2, vec![]).with_gauges_per_stab(1);
        let out = split_operators(&t, &cfg).unwrap();
        assert_eq!(out.report.x_pool.len(), 2);
        assert_eq!(out.report.residual_weights(PauliKind::X), vec![0, 0]);
        assert!(out.report.entries_of(PauliKind::Z).next().is_none());
    }

    #[test]
    fn operator_mode_fails_without_anticommuting_z() {
        let t = build_css_tableau(&codes::shor()).unwrap();
        let cfg = SplitConfig::new(2, vec![]);
        assert!(matches!(
            split_operators(&t, &cfg),
            Err(Error::SplitFailed { .. })
        ));
    }

    #[test]
    fn rejects_bad_config() {
        let t = build_css_tableau(&codes::shor()).unwrap();
        assert!(split_generators(&t, &SplitConfig::new(0, vec![])).is_err());
        assert!(split_generators(&t, &SplitConfig::new(9, vec![])).is_err());
        assert!(split_generators(&t, &SplitConfig::new(2, vec![0])).is_err());
        assert!(split_generators(&t, &SplitConfig::new(2, vec![3, 3])).is_err());
        assert!(
            split_generators(&t, &SplitConfig::new(2, vec![3]).with_gauges_per_stab(0)).is_err()
        );
    }

    #[test]
    fn budget_guard() {
        let t = preprocessed_shor();
        let cfg = SplitConfig::new(2, codes::shor_replace_rows()).with_budget(1);
        assert!(matches!(
            split_generators(&t, &cfg),
            Err(Error::ResourceBudget { .. })
        ));
    }

    #[test]
    fn pauli_helper_round_trip() {
        assert_eq!(PauliKind::of(&pauli("X1X4", 9)), Some(PauliKind::X));
        assert_eq!(PauliKind::of(&pauli("Y1", 9)), None);
    }
}
