//! Asymmetric rigid rotor spectra through the Schwinger oscillator
//! transcription, su(1,1) and su_q(1,1) Yang-Baxter transfer operators, and
//! the Gaudin operators they generate.
//!
//! Layers, bottom up: [`linalg`] (dense complex matrices, Jacobi
//! eigensolver), [`fock`] (two-mode Fock sectors and the su(2), su(1,1),
//! su_q(1,1) generators), [`rotor`] (rotor Hamiltonians and level tables),
//! [`yang_baxter`] (R-matrices, L-operators, transfer operators),
//! [`gaudin`] (Gaudin pairs, limits, Ray reconstruction) and [`cli`].

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fock;
pub mod gaudin;
pub mod linalg;
pub mod rotor;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use fock::{FockSector, HalfInt, Mode, SectorOperator};
pub use linalg::{CMatrix, C64};
pub use yang_baxter::{Family, SpectralParams};
