//! Small seed codes used by tests, benches and the CLI.
//!
//! Qubits are numbered row-major on a 3x3 grid:
//!
//! ```text
//! 0 1 2
//! 3 4 5
//! 6 7 8
//! ```

use crate::gf2::{BitMatrix, BitVector};
use crate::tableau::CssCode;

fn checks(n: usize, supports: &[&[usize]]) -> BitMatrix {
    BitMatrix::from_rows(
        n,
        supports
            .iter()
            .map(|s| BitVector::from_support(n, s))
            .collect(),
    )
}

/// The nine-qubit Shor code: two weight-6 X checks, six weight-2 Z checks.
pub fn shor() -> CssCode {
    let hx = checks(9, &[&[0, 1, 2, 3, 4, 5], &[3, 4, 5, 6, 7, 8]]);
    let hz = checks(9, &[&[0, 1], &[1, 2], &[3, 4], &[4, 5], &[6, 7], &[7, 8]]);
    CssCode::new(hx, hz).expect("Shor checks commute")
}

/// Stabilizer-row merges that turn two weight-2 Z checks of the Shor tableau
/// into weight-6 checks, as `(target, sources)` pairs of tableau rows.
pub fn shor_preprocess() -> Vec<(usize, Vec<usize>)> {
    vec![(3, vec![5, 7]), (4, vec![6, 8])]
}

/// Tableau rows of the Shor seed that are replaced by gauge generators after
/// [`shor_preprocess`]: the remaining weight-2 Z checks.
pub fn shor_replace_rows() -> Vec<usize> {
    vec![5, 6, 7, 8]
}

/// Distance-3 rotated surface code.
pub fn rotated_surface() -> CssCode {
    let hx = checks(9, &[&[0, 1, 3, 4], &[4, 5, 7, 8], &[1, 2], &[6, 7]]);
    let hz = checks(9, &[&[1, 2, 4, 5], &[3, 4, 6, 7], &[0, 3], &[5, 8]]);
    CssCode::new(hx, hz).expect("surface checks commute")
}

/// Generators `[x | z]` of the Bacon-Shor gauge group: vertical XX pairs and
/// horizontal ZZ pairs.
pub fn bacon_shor_gauge_group() -> BitMatrix {
    let n = 9;
    let zero = BitVector::zeros(n);
    let mut rows = Vec::new();
    for q in 0..6 {
        rows.push(BitVector::from_support(n, &[q, q + 3]).concat(&zero));
    }
    for r in 0..3 {
        for c in 0..2 {
            let q = 3 * r + c;
            rows.push(zero.concat(&BitVector::from_support(n, &[q, q + 1])));
        }
    }
    BitMatrix::from_rows(2 * n, rows)
}

/// Surface tableau rows replaced by gauge generators in the subsystem
/// surface example: the X check on qubits {6, 7} and the Z check on {0, 3}.
pub fn surface_replace_rows() -> Vec<usize> {
    vec![4, 7]
}
