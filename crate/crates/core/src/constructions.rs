//! Product constructions of subsystem and CSS codes, and the matrix catalog
//! they are usually fed with.
//!
//! The subsystem hypergraph product of a classical code with parity checks
//! `H` and generator `G` is the six-matrix template
//!
//! ```text
//! G_X = H (x) I    G_Z = I (x) H
//! L_X = I (x) G    L_Z = G (x) I
//! S_X = H (x) G    S_Z = G (x) H
//! ```
//!
//! The lifted variant instantiates the same template over `F2[x]/(x^L - 1)`
//! and replaces every entry by its circulant.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::{RingElement, RingMatrix};
use crate::split::PauliKind;
use crate::tableau::{compute_group_params, CodeParams, CssCode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    pub h: BitMatrix,
    pub g: BitMatrix,
}

impl ClassicalCode {
    pub fn n(&self) -> usize {
        self.h.ncols()
    }

    pub fn k(&self) -> usize {
        self.g.rank()
    }
}

/// Pairs `H` with a basis of its kernel.
pub fn generator_from_parity(h: &BitMatrix) -> ClassicalCode {
    ClassicalCode {
        h: h.clone(),
        g: h.kernel(),
    }
}

/// The six template matrices, each with one column per qubit. Rows are kept
/// as emitted by the template, dependent ones included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemCodeSpec {
    pub n: usize,
    pub g_x: BitMatrix,
    pub g_z: BitMatrix,
    pub l_x: BitMatrix,
    pub l_z: BitMatrix,
    pub s_x: BitMatrix,
    pub s_z: BitMatrix,
}

fn embed_all(m: &BitMatrix, kind: PauliKind) -> Vec<BitVector> {
    m.rows().iter().map(|r| kind.embed(r)).collect()
}

impl SubsystemCodeSpec {
    /// `[G_X | 0]` over `[0 | G_Z]`.
    pub fn gauge_group(&self) -> BitMatrix {
        let mut rows = embed_all(&self.g_x, PauliKind::X);
        rows.extend(embed_all(&self.g_z, PauliKind::Z));
        BitMatrix::from_rows(2 * self.n, rows)
    }

    pub fn stabilizer_candidates(&self) -> BitMatrix {
        let mut rows = embed_all(&self.s_x, PauliKind::X);
        rows.extend(embed_all(&self.s_z, PauliKind::Z));
        BitMatrix::from_rows(2 * self.n, rows)
    }

    pub fn params(&self) -> Result<CodeParams> {
        compute_group_params(&self.gauge_group(), self.n)
    }

    /// Distinct Pauli weights of the nonzero stabilizer candidates.
    pub fn stabilizer_weights(&self) -> Vec<usize> {
        distinct_weights([&self.s_x, &self.s_z])
    }

    pub fn gauge_weights(&self) -> Vec<usize> {
        distinct_weights([&self.g_x, &self.g_z])
    }

    /// Every X-type row against every Z-type row it must commute with: the
    /// stabilizer candidates against everything, the logicals against the
    /// gauge group. Only `L_X` against `L_Z` and `G_X` against `G_Z` are
    /// exempt.
    pub fn verify_commutation(&self) -> Result<()> {
        let pairs: [(&str, &BitMatrix, &str, &BitMatrix); 7] = [
            ("S_X", &self.s_x, "G_Z", &self.g_z),
            ("S_X", &self.s_x, "S_Z", &self.s_z),
            ("S_X", &self.s_x, "L_Z", &self.l_z),
            ("G_X", &self.g_x, "S_Z", &self.s_z),
            ("G_X", &self.g_x, "L_Z", &self.l_z),
            ("L_X", &self.l_x, "G_Z", &self.g_z),
            ("L_X", &self.l_x, "S_Z", &self.s_z),
        ];
        for (xn, x, zn, z) in pairs {
            let prod = x.mul_transpose(z);
            if let Some(i) = (0..prod.nrows()).find(|&i| !prod.row(i).is_zero()) {
                let j = prod.row(i).first_one().expect("nonzero row");
                return Err(Error::CommutationCheck(format!(
                    "{xn} row {i} anti-commutes with {zn} row {j}"
                )));
            }
        }
        Ok(())
    }

    /// The stabilizer code obtained by promoting the X gauge checks to
    /// stabilizers: `H_X = [S_X; G_X]`, `H_Z = S_Z`.
    ///
    /// Also returns the tableau rows that hold the X gauge checks which
    /// extend the span of `S_X`; these are the rows an operator search should
    /// treat as replaced.
    pub fn gauge_fixed_seed(&self) -> Result<(CssCode, Vec<usize>)> {
        let hx = self.s_x.vstack(&self.g_x);
        let code = CssCode::new(hx.clone(), self.s_z.clone())?;
        let sx = self.s_x.rank();
        let total = hx.rank();
        let k = code.k();
        Ok((code, (k + sx..k + total).collect()))
    }
}

fn distinct_weights<const N: usize>(ms: [&BitMatrix; N]) -> Vec<usize> {
    let mut w: Vec<usize> = ms
        .iter()
        .flat_map(|m| m.row_weights())
        .filter(|&w| w > 0)
        .collect();
    w.sort_unstable();
    w.dedup();
    w
}

/// Subsystem hypergraph product over GF(2).
pub fn shp(c: &ClassicalCode) -> Result<SubsystemCodeSpec> {
    let n = c.n();
    if c.g.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            found: c.g.ncols(),
        });
    }
    let i = BitMatrix::identity(n);
    let spec = SubsystemCodeSpec {
        n: n * n,
        g_x: c.h.kron(&i),
        g_z: i.kron(&c.h),
        l_x: i.kron(&c.g),
        l_z: c.g.kron(&i),
        s_x: c.h.kron(&c.g),
        s_z: c.g.kron(&c.h),
    };
    spec.verify_commutation()?;
    Ok(spec)
}

/// Which generator matrix fills the template slots for a ring pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orthogonality {
    /// `A G* = 0`: `G` is used as given.
    Conjugate,
    /// Only `A G^T = 0` holds: the entrywise conjugate of `G` is used, which
    /// satisfies the conjugate relation.
    Plain,
}

/// Decides how `G` pairs with `A`, naming the first offending entry of
/// `A G*` when neither relation holds.
pub fn ring_orthogonality(a: &RingMatrix, g: &RingMatrix) -> Result<Orthogonality> {
    let conj = a.matmul(&g.conjugate_transpose())?;
    if conj.is_zero() {
        return Ok(Orthogonality::Conjugate);
    }
    if a.matmul(&g.transpose())?.is_zero() {
        return Ok(Orthogonality::Plain);
    }
    let (row, col) = conj.first_nonzero().expect("nonzero product");
    Err(Error::RingOrthogonality { row, col })
}

/// Subsystem lifted product: the hypergraph-product template over the
/// circulant ring, lifted to binary matrices.
pub fn slp(a: &RingMatrix, g: &RingMatrix) -> Result<SubsystemCodeSpec> {
    if a.l() != g.l() {
        return Err(Error::RingMismatch {
            left: a.l(),
            right: g.l(),
        });
    }
    if a.ncols() != g.ncols() {
        return Err(Error::Dimension {
            expected: a.ncols(),
            found: g.ncols(),
        });
    }
    let g = match ring_orthogonality(a, g)? {
        Orthogonality::Conjugate => g.clone(),
        Orthogonality::Plain => g.conj_entries(),
    };
    let n = a.ncols();
    let i = RingMatrix::identity(n, a.l());
    let spec = SubsystemCodeSpec {
        n: a.l() * n * n,
        g_x: a.kron(&i)?.lift(),
        g_z: i.kron(a)?.lift(),
        l_x: i.kron(&g)?.lift(),
        l_z: g.kron(&i)?.lift(),
        s_x: a.kron(&g)?.lift(),
        s_z: g.kron(a)?.lift(),
    };
    spec.verify_commutation()?;
    Ok(spec)
}

/// Lifted product of `A` with its conjugate transpose:
/// `H_X = [A (x) I_n, I_m (x) A*]`, `H_Z = [I_n (x) A, A* (x) I_m]` for an
/// `m x n` base matrix, on `L (n^2 + m^2)` qubits.
pub fn lp(a: &RingMatrix) -> Result<CssCode> {
    let (m, n, l) = (a.nrows(), a.ncols(), a.l());
    let a_star = a.conjugate_transpose();
    let i_n = RingMatrix::identity(n, l);
    let i_m = RingMatrix::identity(m, l);
    let hx = a.kron(&i_n)?.hstack(&i_m.kron(&a_star)?)?;
    let hz = i_n.kron(a)?.hstack(&a_star.kron(&i_m)?)?;
    match CssCode::new(hx.lift(), hz.lift()) {
        Err(Error::NotOrthogonal { x_row, z_row }) => Err(Error::Internal(format!(
            "lifted product checks anti-commute at X row {x_row}, Z row {z_row}"
        ))),
        other => other,
    }
}

/// A catalog matrix: binary or over a circulant ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogMatrix {
    Binary(BitMatrix),
    Ring(RingMatrix),
}

impl CatalogMatrix {
    /// Binary matrices are read as constants over `L = 1`.
    pub fn into_ring(self) -> RingMatrix {
        match self {
            CatalogMatrix::Binary(m) => RingMatrix::from_binary(&m, 1),
            CatalogMatrix::Ring(m) => m,
        }
    }

    pub fn into_binary(self) -> Result<BitMatrix> {
        match self {
            CatalogMatrix::Binary(m) => Ok(m),
            CatalogMatrix::Ring(m) if m.l() == 1 => Ok(m.lift()),
            CatalogMatrix::Ring(m) => Err(Error::InvalidConfig(format!(
                "matrix over L = {} used where a binary matrix is expected",
                m.l()
            ))),
        }
    }
}

pub const CATALOG_NAMES: [&str; 10] = [
    "H10_5",
    "H_hamming",
    "A_2x3",
    "GA_1x3",
    "B_L2",
    "GB_L2",
    "A_27",
    "GA_27",
    "B_31",
    "GB_31",
];

const U11: &str = "x^28+x^25+x^18+x^16+x^5+x";
const U12: &str = "x^23+x^22+x^20+x^17+x^7+x^4";
const U13: &str = "x^29+x^25+x^21+x^12+x^5+x";
const U14: &str = "x^28+x^18+x^16+x^14+x^9+x^8";
const U21: &str = "x^27+x^24+x^19+x^11+x^10+x^2";
const U22: &str = "x^30+x^28+x^26+x^18+x^16+x^6";
const U23: &str = "x^20+x^14+x^9+x^8+x^7+x^4";

fn binary(rows: &[&str]) -> CatalogMatrix {
    let cols = rows[0].len();
    CatalogMatrix::Binary(BitMatrix::from_bit_strings(cols, rows).expect("catalog entry"))
}

fn ring(rows: &[&[&str]], l: usize) -> CatalogMatrix {
    CatalogMatrix::Ring(RingMatrix::parse_rows(rows, l).expect("catalog entry"))
}

/// `(x^31 - 1) / (x - 1)`: every coefficient set.
fn all_ones(l: usize) -> RingElement {
    RingElement::from_coeffs(BitVector::ones(l))
}

pub fn catalog(name: &str) -> Result<CatalogMatrix> {
    Ok(match name {
        "H10_5" => binary(&[
            "1111000000",
            "1000111000",
            "0100100110",
            "0010010101",
            "0001001011",
        ]),
        "H_hamming" => binary(&["1110100", "1101010", "1011001"]),
        "A_2x3" => binary(&["011", "110"]),
        "GA_1x3" => binary(&["111"]),
        "B_L2" => ring(&[&["1", "x", "x"], &["x", "x", "1"]], 2),
        "GB_L2" => ring(
            &[&["1+x", "1+x", "0"], &["1+x", "0", "1+x"], &["x", "0", "1"]],
            2,
        ),
        "A_27" => ring(&[&["1+x+x^2", "1+x", "x"]], 3),
        "GA_27" => ring(
            &[
                &["x^2", "x", "1"],
                &["x", "x^2", "x"],
                &["1", "0", "1+x+x^2"],
            ],
            3,
        ),
        "B_31" => CatalogMatrix::Ring(
            RingMatrix::from_exponent_table(
                &[
                    vec![1, 2, 4, 8, 16],
                    vec![5, 10, 20, 9, 18],
                    vec![25, 19, 7, 14, 28],
                ],
                31,
            )
            .expect("catalog entry"),
        ),
        "GB_31" => {
            let mut m = match ring(
                &[
                    &[U11, U12, U13, U14, "0"],
                    &[U21, U22, U23, "0", U14],
                    &["0", "0", "0", "0", "0"],
                    &["0", "0", "0", "0", "0"],
                    &["0", "0", "0", "0", "0"],
                    &["0", "0", "0", "0", "0"],
                ],
                31,
            ) {
                CatalogMatrix::Ring(m) => m,
                CatalogMatrix::Binary(_) => unreachable!(),
            };
            for i in 0..4 {
                m.set(2 + i, 0, all_ones(31));
                m.set(2 + i, 1 + i, all_ones(31));
            }
            CatalogMatrix::Ring(m)
        }
        _ => return Err(Error::UnknownCatalog(name.to_string())),
    })
}

pub fn catalog_binary(name: &str) -> Result<BitMatrix> {
    catalog(name)?.into_binary()
}

pub fn catalog_ring(name: &str) -> Result<RingMatrix> {
    Ok(catalog(name)?.into_ring())
}
