//! Binary symplectic representation of n-qubit Pauli operators.
//!
//! A Pauli `E(a, b)` is stored as the pair `(a, b)` of X and Z exponents, or
//! as the length-2n vector `[a | b]`. Phases are not tracked: everything here
//! lives in the Pauli group modulo scalars, where group membership is plain
//! subspace membership.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn new(x: BitVector, z: BitVector) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::Dimension {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// Splits a length-2n vector `[a | b]`.
    ///
    /// # Panics
    ///
    /// Panics on odd length.
    pub fn from_symplectic(v: &BitVector) -> Self {
        assert!(
            v.len().is_multiple_of(2),
            "symplectic vectors have even length"
        );
        let n = v.len() / 2;
        Self {
            x: v.slice(0, n),
            z: v.slice(n, n),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &BitVector {
        &self.x
    }

    pub fn z_part(&self) -> &BitVector {
        &self.z
    }

    pub fn to_symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Product modulo phase: XOR of both halves.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same_size(self.num_qubits(), other.num_qubits())?;
        Ok(Self {
            x: &self.x ^ &other.x,
            z: &self.z ^ &other.z,
        })
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        check_same_size(self.num_qubits(), other.num_qubits())?;
        Ok(self.x.dot(&other.z) == self.z.dot(&other.x))
    }

    /// Parses factors such as `X3Z7Y2` with 1-based qubit indices.
    pub fn parse(s: &str, n: usize) -> Result<Self, ParseError> {
        let mut op = Self::identity(n);
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let kind = bytes[pos];
            if !matches!(kind, b'X' | b'Y' | b'Z') {
                return Err(ParseError::new(
                    pos,
                    format!("expected X, Y or Z, found {:?}", kind as char),
                ));
            }
            let start = pos + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(ParseError::new(start, "missing qubit index"));
            }
            let index: usize = s[start..end]
                .parse()
                .map_err(|_| ParseError::new(start, "qubit index does not fit"))?;
            if index == 0 || index > n {
                return Err(ParseError::new(
                    start,
                    format!("qubit index {index} outside 1..={n}"),
                ));
            }
            let q = index - 1;
            if matches!(kind, b'X' | b'Y') {
                op.x.flip(q);
            }
            if matches!(kind, b'Z' | b'Y') {
                op.z.flip(q);
            }
            pos = end;
        }
        Ok(op)
    }
}

fn check_same_size(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in self.x.or(&self.z).iter_ones() {
            let c = match (self.x.get(q), self.z.get(q)) {
                (true, true) => 'Y',
                (true, false) => 'X',
                _ => 'Z',
            };
            write!(f, "{c}{}", q + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "I[{}]", self.num_qubits())
        } else {
            write!(f, "{self}[{}]", self.num_qubits())
        }
    }
}

/// Parses with the qubit count taken from the largest index mentioned.
impl FromStr for PauliOperator {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|d| d.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Self::parse(s, n)
    }
}

/// The form `Ω = [[0, I], [I, 0]]` on `F_2^{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    pub n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn matrix(&self) -> BitMatrix {
        let n = self.n;
        let mut m = BitMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, true);
            m.set(n + i, i, true);
        }
        m
    }

    /// `u Ω v^T` for length-2n vectors.
    pub fn product(&self, u: &BitVector, v: &BitVector) -> Result<bool> {
        symplectic_product(u, v)
    }
}

/// `u Ω`, i.e. the two halves swapped.
pub fn swap_halves(u: &BitVector) -> BitVector {
    let n = u.len() / 2;
    u.slice(n, n).concat(&u.slice(0, n))
}

/// Symplectic inner product `a' b^T + b' a^T` of `[a|b]` and `[a'|b']`.
pub fn symplectic_product(u: &BitVector, v: &BitVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::Dimension {
            expected: u.len(),
            found: v.len(),
        });
    }
    if !u.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "symplectic vectors need even length, got {}",
            u.len()
        )));
    }
    Ok(symplectic_product_unchecked(u, v))
}

/// Same as [`symplectic_product`] for inputs already known to conform.
pub fn symplectic_product_unchecked(u: &BitVector, v: &BitVector) -> bool {
    let n = u.len() / 2;
    let mut parity = false;
    for i in u.iter_ones() {
        let partner = if i < n { i + n } else { i - n };
        parity ^= v.get(partner);
    }
    parity
}

pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.commutes_with(q)
}

pub fn pauli_weight(p: &PauliOperator) -> usize {
    p.weight()
}

/// Pauli weight of a length-2n vector: qubits touched by either half.
pub fn symplectic_weight(v: &BitVector) -> usize {
    let n = v.len() / 2;
    let words = v.words();
    if n.is_multiple_of(64) {
        let half = n / 64;
        return words[..half]
            .iter()
            .zip(&words[half..])
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum();
    }
    v.slice(0, n).or(&v.slice(n, n)).weight()
}

/// Matrix of pairwise symplectic products `A Ω B^T`.
pub fn symplectic_gram(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let swapped = BitMatrix::from_rows(b.ncols(), b.rows().iter().map(swap_halves).collect());
    a.mul_transpose(&swapped)
}
