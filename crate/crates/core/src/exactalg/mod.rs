//! Exact arithmetic over ℚ[x] and ℚ(x): polynomials, gcds, squarefree machinery,
//! rational functions and the expression parser.

mod gcd;
pub(crate) mod modular;
mod parse;
mod poly;
mod ratfunc;

pub(crate) use gcd::extend_gcd_free_basis;
pub use gcd::{gcd_free_basis, poly_gcd, squarefree_decomposition, squarefree_part};
pub use parse::parse_expr;
pub use poly::Poly;
pub use ratfunc::{rf_arith, rf_normalize, rf_pow, ArithOp, RatFunc};
