//! `F_q`, `F_q[t]`, `K = F_q(t)`, its places, and polynomials over `K`.

pub mod factor;
pub mod field;
pub mod frac;
pub mod kfactor;
pub mod kpoly;
pub mod linalg;
pub mod place;
pub mod poly;
pub mod residue;

pub use factor::{is_irreducible, poly_factor, Factorization};
pub use field::{Field, Gf};
pub use frac::{Frac, P1};
pub use kfactor::{kpoly_factor, kpoly_is_irreducible, DEFAULT_FACTOR_BUDGET};
pub use kpoly::{discriminant, resultant, KPoly};
pub use place::{divisor, product_formula_check, valuation, Place};
pub use poly::PolyQ;
