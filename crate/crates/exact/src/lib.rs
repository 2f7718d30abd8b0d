//! Exact linear algebra over ℤ and ℚ.
//!
//! Everything here works on arbitrary-precision integers and reduced
//! rationals. There is no floating point anywhere.

mod hnf;
mod kernel;
mod matrix;
mod rat;
mod snf;

pub use hnf::{hermite_normal_form, row_lattice_basis, row_lattice_basis_rat};
pub use kernel::{integer_kernel, rational_kernel, saturate, solve_in_basis};
pub use matrix::{IntMatrix, RatMatrix};
pub use rat::{fmt_rat, int, parse_rat, rat, rat_frac, ratvec, RatVector};
pub use snf::{smith_normal_form, Snf};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
