//! Exact symbolic computation with quantum groups given by generators and
//! relations: normal forms by noncommutative rewriting, Hopf-axiom checks,
//! and order-by-order verification of the contraction of SU_q(2) to the
//! kappa-deformed Euclidean group E_kappa(2).

pub mod catalog;
pub mod contract;
pub mod error;
pub mod freealg;
pub mod hopf;
pub mod print;
pub mod random;
pub mod report;
pub mod rewrite;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
