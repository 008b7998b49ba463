//! Brute-force reference computations, kept independent of the closed-form
//! code paths they check: conic solvability for Hilbert symbols, matrix
//! enumeration for finite group orders, and characteristic-polynomial
//! matching for fibers. Also the fixed generator family of test classes.

pub mod conic;
pub mod family;
pub mod fibers;
pub mod matrices;

pub use conic::{hilbert_by_conic, ConicTable};
pub use family::{factor_pool, flip_closure, generator_family};
pub use fibers::FiberOracle;
pub use matrices::{count_isometries, FormKind};
