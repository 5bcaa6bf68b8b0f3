//! Executable constructions for exact limit linear series on a curve with
//! two smooth components meeting at one node.
//!
//! - [`exactmath`]: rationals, matrices, subspaces, bivariate polynomials.
//! - [`schemes`]: the determinantal schemes `Q_{p,q,m}`, their unions, and
//!   closed-form bivariate Hilbert polynomials.
//! - [`oracle`]: brute-force bigraded Hilbert functions that certify the
//!   closed forms.
//! - [`limitseries`]: explicit limit series as linear-algebra data,
//!   exactness, diagonalization, and the schemes they determine.
//! - [`abelfiber`]: Abel-fiber components and limit-series existence from
//!   vanishing sequences.
//! - [`degeneration`]: the one-parameter degeneration of the diagonal of
//!   `P^r x P^r` onto a union of `Q` schemes.

pub mod abelfiber;
pub mod degeneration;
pub mod error;
pub mod exactmath;
pub mod limitseries;
pub mod oracle;
pub mod schemes;

pub use error::{Error, Result};
pub use oracle::Verdict;
