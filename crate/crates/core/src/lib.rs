//! Construction and verification of subsystem codes obtained by splitting the
//! stabilizers of a CSS seed code into low-weight gauge operators.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: dense GF(2) vectors and matrices;
//! - [`pauli`]: Paulis as binary symplectic vectors;
//! - [`tableau`]: symplectic tableaux of CSS seeds and subsystem parameters;
//! - [`split`]: the generator and operator splitting searches;
//! - [`distance`]: bounded brute-force distance;
//! - [`ring`] and [`constructions`]: circulant rings and product codes;
//! - [`repcount`]: counting representations of a gauge block;
//! - [`io`] and [`cli`]: file formats and the command-line front end.

pub mod cli;
pub mod codes;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod gf2;
pub mod io;
pub mod par;
pub mod pauli;
pub mod repcount;
pub mod ring;
pub mod split;
pub mod tableau;

pub use error::{Error, Result};
