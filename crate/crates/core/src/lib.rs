//! Exact verification tools for the functional equation
//!
//! ```text
//! g(x+y) - g(x) - g(y) = x f(y) + y f(x)
//! ```
//!
//! over prime fields `Z_p`, and for the matching inequality over dyadic
//! rationals.
//!
//! * [`field`]: residue arithmetic in `Z_p`.
//! * [`table`]: functions as tables, parity parts, Cauchy differences.
//! * [`linear`]: the equation as a homogeneous linear system and its kernel.
//! * [`brute`]: exhaustive search, used as an oracle for the kernel.
//! * [`family`]: the closed-form solutions and their exhaustiveness.
//! * [`alien`]: alien solutions and the criteria that detect them.
//! * [`inequality`]: the inequality on finite grids in exact rationals.

pub mod alien;
pub mod brute;
mod echelon;
pub mod error;
pub mod family;
pub mod field;
pub mod inequality;
pub mod linear;
pub mod table;

pub use error::{Error, Result};
pub use field::{Elem, PrimeField};
pub use linear::SolutionSpace;
pub use table::{FnTable, PairTable};
