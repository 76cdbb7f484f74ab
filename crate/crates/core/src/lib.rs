//! Exact isospectral reductions of lambda-weighted directed networks and
//! matrices over the field of rational functions, with eigenvector and
//! generalized-eigenvector bookkeeping, reconstruction, and spectral
//! equivalence testing.
//!
//! All core computations are exact over the Gaussian rationals; spectra with
//! irrational eigenvalues fall back to verified numerics.

pub mod error;
pub mod ratfield;

pub mod linalg;
pub mod netgraph;
pub mod reduction;
pub mod spectra;

pub mod equivalence;
pub mod preservation;
pub mod reconstruct;

pub mod io;

pub use error::{Error, Result};
pub use ratfield::{GaussianRational, Poly, RatFunc};
