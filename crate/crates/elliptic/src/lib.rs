//! Elliptic surfaces `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6` over ℚ(t).
//!
//! Polynomials and rational functions are exact over ℚ. Singular fibers come
//! from Tate's algorithm at every irreducible factor of Δ and at ∞; sections
//! carry the group law, torsion orders and the height pairing.

mod factor;
mod group;
mod height;
mod model;
mod parse;
mod place;
mod poly;
mod ratfunc;
mod tate;

use thiserror::Error;

pub use factor::{factor, irreducible_factors, square_free_decomposition, zassenhaus, Factorization};
pub use group::{add, multiply, negate, on_curve, sub, torsion_order, SectionPoint};
pub use height::{component_index, contr_from_index, determinant, height, height_matrix, LocalTerm, Surface};
pub use model::{invariants_of, Change, Invariants, RationalModel, WeierstrassModel};
pub use parse::parse_ratfunc;
pub use place::Place;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use tate::{
    all_fibers, bad_local_models, candidate_places, euler_sum, fiber_symbols, local_model, minimalize_at, reducible_root_types,
    tate_classify, KodairaFiber, KodairaType, LocalModel,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EllipticError {
    #[error("singular model: the discriminant vanishes identically")]
    Singular,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("Tate's algorithm: {0}")]
    Tate(String),
    #[error("parse error: {0}")]
    Parse(String),
}
