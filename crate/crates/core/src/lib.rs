//! Skeletal ribbon fusion categories over cyclotomic fields, commutative
//! algebra objects in Deligne products, and certificates for braid-reversed
//! equivalences.

pub mod algebra;
pub mod category;
pub mod constructions;
pub mod cyclo;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod mirror;
pub mod repa;

pub use category::{CategoryError, Engine, Expr, Morphism, Move, RibbonCategory, Side};
pub use cyclo::{CycError, CycNumber};
pub use matrix::Matrix;
