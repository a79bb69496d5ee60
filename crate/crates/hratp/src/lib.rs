//! High-relative-accuracy linear algebra for totally positive matrices built on q-Abel bases.
//!
//! Matrices are handled through their bidiagonal decompositions (see [`bd_core`]).
//! Closed forms live in [`bd_catalog`], the accurate algorithms in [`tn_algorithms`], and
//! extended-precision references in [`oracle`].

#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

pub mod bd_catalog;
pub mod bd_core;
pub mod error;
pub mod experiment;
pub mod oracle;
pub mod qcalc;
pub mod scalar;
pub mod tn_algorithms;

pub use error::{HratpError, Result};
pub use scalar::Scalar;
