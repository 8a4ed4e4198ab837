//! Arithmetic of totally T-adic algebraic functions of small height over
//! F_q(T): finite fields, polynomials in F_q[T][x], Laurent-series roots,
//! recombination, heights, explicit families and exhaustive or randomized
//! searches for minimal polynomials of minimal height.

pub mod constructions;
pub mod error;
pub mod factor;
pub mod gf;
pub mod heights;
pub mod localfield;
pub mod pipeline;
pub mod poly;
pub mod search;

pub use error::{Error, Result};
pub use gf::{field_of_order, make_field, Field, FieldElem};
pub use poly::{BiPoly, UniPoly};
