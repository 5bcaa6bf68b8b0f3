//! Exact rational arithmetic, matrices and subspaces over the rationals, and
//! bivariate polynomials.

pub mod bivar;
pub mod interp;
pub mod matrix;
pub mod rational;
pub mod sparse;
pub mod subspace;

pub use bivar::{binom_poly, BinomVar, BivarPoly};
pub use interp::{interpolate_grid, sample_grid, Grid};
pub use matrix::Mat;
pub use rational::{format_rat, frac, parse_rat, rat, Rat};
pub use sparse::{SparseEchelon, SparseRow};
pub use subspace::{kernel_basis, subspace_ops, Subspace, SubspacePair};
