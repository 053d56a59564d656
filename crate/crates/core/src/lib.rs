//! Exact construction of the class-2 nilpotent Lie lattices `L(m,n)`, their
//! algebraic automorphism groups, and their local pro-isomorphic zeta
//! functions, together with independent cross-checks of every closed form.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: basis labels and structure constants of `L(m,n)`.
//! - [`autrep`]: the reductive and unipotent parts of the automorphism group
//!   as exact rational matrices.
//! - [`polyring`]: sparse Laurent polynomials in `q` (the residue field size)
//!   and `t` (standing for `p^{-s}`), and rational functions with factored
//!   denominators `(1 - q^a t^b)`.
//! - [`zeta`]: the closed-form local zeta functions and their identities.
//! - [`oracle`]: a first-principles cone sum used to check the closed forms.
//! - [`analysis`]: abscissae of convergence, the exceptional set and the
//!   auxiliary polynomials `f_m`, `g_m`, `h_m`.
//! - [`cli`]: the command-line front end.

pub mod analysis;
pub mod autrep;
pub mod cli;
pub mod combinat;
mod error;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod polyring;
pub mod zeta;

pub use error::{Error, Result};
