//! Computational engine for multi-interval configuration spaces over unitary
//! modular tensor categories.
//!
//! The crate is organized around five layers:
//!
//! * [`anyon`] — fusion rules, F/R symbol tables, derived quantities
//!   (quantum dimensions, twists, S-matrix) and a built-in model library;
//! * [`hom`] — orthonormal fusion-tree bases of hom spaces and the local
//!   moves (F-moves, braids, duality bends) that act on them;
//! * [`tangle`] — 3D grid-link scenes, their compilation to planar diagrams
//!   with crossings, and sweep-line evaluation to scalars;
//! * [`conf`] — configuration spaces `Conf(C)_{n,m}`, lattice symmetries,
//!   contractions, the `LL` form, the string Fourier transform and duality
//!   maps;
//! * [`verify`] — an executable registry of theorem checks with residual
//!   reports.
//!
//! All numerics are double-precision complex. Heavy inner loops (Gram-matrix
//! assembly, check batteries) are data-parallel via `rayon` when the
//! `parallel` feature is enabled (default); disabling it yields a fully
//! sequential build with identical results.

pub mod anyon;
pub mod conf;
pub mod export;
pub mod hom;
pub mod par;
pub mod rat;
pub mod tangle;
pub mod verify;

pub use num_complex::Complex64 as C64;

/// Convenience: absolute tolerance used by most internal assertions.
pub const DEFAULT_TOL: f64 = 1e-9;
