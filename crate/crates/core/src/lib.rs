//! Exact homology of free commutative S-algebras: Dyer-Lashof words and
//! admissibility, free-algebra homology over F_p and Q, Leibniz
//! derivations and the TAQ differential, symmetric/cyclic group homology
//! with exact coefficient modules, and the closed-form tables for MU,
//! MSU, MO and HF_p.
//!
//! All arithmetic is exact: F_p via `u64` residues, Q via
//! `num_rational::BigRational`. Every iteration order is deterministic.

pub mod algebra;
pub mod binomial;
pub mod derivation;
pub mod error;
pub mod fp;
pub mod free;
pub mod matrix;
pub mod perm;
pub mod spectra;
pub mod symmetric;
pub mod word;

pub use error::{Error, Result};
pub use fp::{Field, PrimeField, Scalar};
pub use word::DLIndex;
