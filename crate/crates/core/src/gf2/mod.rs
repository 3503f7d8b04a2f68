//! Dense linear algebra over GF(2).

mod bitvec;
mod combinatorics;
mod matrix;

pub use bitvec::BitVector;
pub use combinatorics::{binomial, combinations, enumerate_weight_w, walk_supports, Combinations};
pub use matrix::{BitMatrix, RowBasis};

/// Hamming weight of a vector.
pub fn hamming_weight(v: &BitVector) -> usize {
    v.weight()
}
