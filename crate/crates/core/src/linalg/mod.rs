//! Exact linear algebra over Z and Q.

pub mod echelon;
pub mod matrix;
pub mod poly;
pub mod snf;

pub use echelon::{
    bareiss_echelon, independent_columns, kernel_basis, rank, rank_rat, IntEchelon, Lattice, SubspaceCoords,
};
pub use matrix::{content, int, primitive_part, rat, IntMatrix, Matrix, RatMatrix};
pub use poly::{cyclotomic, euler_phi, min_poly, min_poly_int, RatPoly};
pub use snf::{smith_normal_form, Snf};
