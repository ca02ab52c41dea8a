//! Exact verification of Casoratian identities for the orthogonal
//! polynomials of discrete quantum mechanics with real shifts.
//!
//! - [`exact`]: rationals, proportionality fits, arbitrary precision floats
//!   and tridiagonal eigenvalues.
//! - [`qseries`]: Pochhammer symbols and terminating hypergeometric series.
//! - [`families`]: the Racah and q-Racah families and their seventeen
//!   reductions, with symmetries and limit relations.
//! - [`twists`]: twist operations and pseudo virtual state polynomials.
//! - [`casoratian`]: the identity engine.
//! - [`darboux`]: the deformed Hamiltonian and its spectrum.

pub mod error;
pub mod exact;
pub mod qseries;
pub mod families;
pub mod twists;
pub mod casoratian;
pub mod darboux;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
mod book_exact_arithmetic {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/q-series.md")]
mod book_q_series {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/families.md")]
mod book_families {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/twists.md")]
mod book_twists {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/casoratian-identities.md")]
mod book_casoratian_identities {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/darboux.md")]
mod book_darboux {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/acceptance-and-cli.md")]
mod book_acceptance_and_cli {}
