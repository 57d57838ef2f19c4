//! Exact algebra for deciding and evidencing finite separability of
//! two-generator commutative rings without identity over prime fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`intnum`]: integer gcd, Bezout certificates, squarefree factorization.
//! * [`fppoly`]: dense univariate polynomials over `F_p`.
//! * [`fpfactor`]: squarefree decomposition and complete factorization over `F_p`.
//! * [`bipoly`]: sparse bivariate polynomials, homogeneity and unitarity.
//! * [`qring`]: normal forms in `Z_p<a, b | f(a, b) = 0>`, finite quotients,
//!   subring closures and the separating-homomorphism search.
//! * [`decide`]: separability decisions and bounded integrality searches.
//! * [`torsion`]: torsion ideals of finite rings and their prime split.
//! * [`parse`]: the polynomial expression grammar shared by all front ends.
//!
//! Searches over independent cells (quotients, degree boxes, batches) run on
//! rayon when the `parallel` feature is enabled; see [`exec::Strategy`].

pub mod bipoly;
pub mod decide;
mod error;
pub mod exec;
pub mod fpfactor;
pub mod fppoly;
pub mod intnum;
pub mod linalg;
pub mod parse;
pub mod qring;
pub mod torsion;

pub use bipoly::{BiPoly, Monomial};
pub use error::{Error, Result};
pub use fppoly::{PrimeField, UniPoly};
