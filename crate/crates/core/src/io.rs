//! Text and JSON formats.
//!
//! Row indices inside JSON documents are 0-based tableau rows. Command-line
//! flags and preprocess scripts count rows from 1, as the tableau is usually
//! written down.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, ParseError, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliOperator;
use crate::ring::{RingElement, RingMatrix};
use crate::split::{PauliKind, SplitEntry, SplitMode, SplitReport};
use crate::tableau::Tableau;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_ascii_whitespace()
        .map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
}

fn parse_usize(tok: Option<(usize, &str)>, what: &str, end: usize) -> Result<usize> {
    let (pos, t) = tok.ok_or_else(|| ParseError::new(end, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| ParseError::new(pos, format!("{what}: expected a count, found {t:?}")).into())
}

/// `"<rows> <cols>"`, then one line of `0`/`1` characters per row.
pub fn parse_matrix_text(s: &str) -> Result<BitMatrix> {
    let mut toks = tokens(s);
    let rows = parse_usize(toks.next(), "row count", s.len())?;
    let cols = parse_usize(toks.next(), "column count", s.len())?;
    let mut m = BitMatrix::empty(cols);
    for i in 0..rows {
        let (pos, t) = toks
            .next()
            .ok_or_else(|| ParseError::new(s.len(), format!("expected {rows} rows, found {i}")))?;
        let v =
            BitVector::parse_bits(t).map_err(|e| ParseError::new(pos + e.position, e.message))?;
        if v.len() != cols {
            return Err(ParseError::new(
                pos,
                format!("row {} has {} entries, expected {cols}", i + 1, v.len()),
            )
            .into());
        }
        m.push_row(v);
    }
    if let Some((pos, t)) = toks.next() {
        return Err(ParseError::new(pos, format!("unexpected trailing data {t:?}")).into());
    }
    Ok(m)
}

pub fn format_matrix_text(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for r in m.to_bit_strings() {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

/// `"<rows> <cols> <L>"`, then row-major entries, one whitespace-separated
/// token each (`x^3+x+1` style).
pub fn parse_ring_matrix_text(s: &str) -> Result<RingMatrix> {
    let mut toks = tokens(s);
    let rows = parse_usize(toks.next(), "row count", s.len())?;
    let cols = parse_usize(toks.next(), "column count", s.len())?;
    let l = parse_usize(toks.next(), "circulant size", s.len())?;
    if l == 0 {
        return Err(ParseError::new(0, "circulant size must be positive").into());
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows * cols {
        let (pos, t) = toks.next().ok_or_else(|| {
            ParseError::new(
                s.len(),
                format!("expected {} entries, found {i}", rows * cols),
            )
        })?;
        entries.push(
            RingElement::parse(t, l).map_err(|e| ParseError::new(pos + e.position, e.message))?,
        );
    }
    if let Some((pos, t)) = toks.next() {
        return Err(ParseError::new(pos, format!("unexpected trailing data {t:?}")).into());
    }
    RingMatrix::from_entries(rows, cols, l, entries)
}

pub fn format_ring_matrix_text(m: &RingMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.nrows(), m.ncols(), m.l());
    for line in m.to_text_rows() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Quasi-cyclic exponent table: `"<rows> <cols> <L>"`, then one integer per
/// entry, `-1` for zero and `e` for `x^e`.
pub fn parse_exponent_matrix_text(s: &str) -> Result<RingMatrix> {
    let mut toks = tokens(s);
    let rows = parse_usize(toks.next(), "row count", s.len())?;
    let cols = parse_usize(toks.next(), "column count", s.len())?;
    let l = parse_usize(toks.next(), "circulant size", s.len())?;
    let mut table = vec![Vec::with_capacity(cols); rows];
    for i in 0..rows * cols {
        let (pos, t) = toks.next().ok_or_else(|| {
            ParseError::new(
                s.len(),
                format!("expected {} entries, found {i}", rows * cols),
            )
        })?;
        let e: i64 = t
            .parse()
            .map_err(|_| ParseError::new(pos, format!("expected an exponent, found {t:?}")))?;
        table[i / cols].push(e);
    }
    RingMatrix::from_exponent_table(&table, l)
}

/// Parses `target <- s1 s2 ...` lines (1-based rows) into 0-based
/// `(target, sources)` directives. Blank lines and `#` comments are skipped.
pub fn parse_preprocess_script(s: &str) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in s.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let arrow = body
            .find("<-")
            .ok_or_else(|| ParseError::new(start, "expected \"target <- sources\""))?;
        let row = |pos: usize, t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => {
                    Err(ParseError::new(pos, format!("expected a 1-based row, found {t:?}")).into())
                }
            }
        };
        let lhs: Vec<(usize, &str)> = tokens(&body[..arrow]).collect();
        let [(pos, t)] = lhs[..] else {
            return Err(ParseError::new(start, "expected exactly one target row").into());
        };
        let target = row(start + pos, t)?;
        let rhs = &body[arrow + 2..];
        let sources = tokens(rhs)
            .map(|(pos, t)| row(start + arrow + 2 + pos, t))
            .collect::<Result<Vec<_>>>()?;
        if sources.is_empty() {
            return Err(ParseError::new(start + arrow, "no source rows").into());
        }
        out.push((target, sources));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regions {
    pub logical_x: [usize; 2],
    pub stabilizers: [usize; 2],
    pub logical_z: [usize; 2],
    pub destabilizers: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub n: usize,
    pub k: usize,
    /// Half-open row ranges.
    pub regions: Regions,
    pub rows: Vec<String>,
    pub gauge_rows: Vec<usize>,
}

fn range(r: std::ops::Range<usize>) -> [usize; 2] {
    [r.start, r.end]
}

impl TableauJson {
    pub fn from_tableau(t: &Tableau) -> Self {
        Self {
            n: t.n(),
            k: t.k(),
            regions: Regions {
                logical_x: range(t.logical_x_rows()),
                stabilizers: range(t.stabilizer_region()),
                logical_z: range(t.logical_z_rows()),
                destabilizers: range(t.destabilizer_region()),
            },
            rows: t.rows().to_bit_strings(),
            gauge_rows: t.gauge_rows().to_vec(),
        }
    }

    pub fn to_tableau(&self) -> Result<Tableau> {
        let rows = BitMatrix::from_bit_strings(2 * self.n, &self.rows)?;
        let t = Tableau::new(self.n, self.k, rows, self.gauge_rows.clone())?;
        if Self::from_tableau(&t).regions != self.regions {
            return Err(Error::InvalidTableau(
                "regions disagree with n and k".into(),
            ));
        }
        Ok(t)
    }
}

pub fn tableau_to_json(t: &Tableau) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TableauJson::from_tableau(t))?)
}

pub fn tableau_from_json(s: &str) -> Result<Tableau> {
    serde_json::from_str::<TableauJson>(s)?.to_tableau()
}

fn pauli_string(v: &BitVector) -> String {
    PauliOperator::from_symplectic(v).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntryJson {
    pub kind: String,
    pub target_row: usize,
    pub target_weight: usize,
    pub gauge_indices: Vec<usize>,
    pub gauge_paulis: Vec<String>,
    pub residual_pauli: String,
    pub residual_weight: usize,
}

impl From<&SplitEntry> for SplitEntryJson {
    fn from(e: &SplitEntry) -> Self {
        Self {
            kind: kind_name(e.kind).into(),
            target_row: e.target_row,
            target_weight: e.target_weight,
            gauge_indices: e.gauge_indices.clone(),
            gauge_paulis: e.gauges.iter().map(pauli_string).collect(),
            residual_pauli: pauli_string(&e.residual),
            residual_weight: e.residual_weight,
        }
    }
}

fn kind_name(k: PauliKind) -> &'static str {
    match k {
        PauliKind::X => "X",
        PauliKind::Z => "Z",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReportJson {
    pub mode: String,
    pub x_weight: usize,
    pub z_weight: usize,
    pub x_pool: Vec<String>,
    pub z_pool: Vec<String>,
    pub entries: Vec<SplitEntryJson>,
}

impl From<&SplitReport> for SplitReportJson {
    fn from(r: &SplitReport) -> Self {
        Self {
            mode: match r.mode {
                SplitMode::Generators => "generators",
                SplitMode::Operators => "operators",
            }
            .into(),
            x_weight: r.x_weight,
            z_weight: r.z_weight,
            x_pool: r.x_pool.iter().map(|c| pauli_string(&c.vector)).collect(),
            z_pool: r.z_pool.iter().map(|c| pauli_string(&c.vector)).collect(),
            entries: r.entries.iter().map(SplitEntryJson::from).collect(),
        }
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}
