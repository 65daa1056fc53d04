//! Selberg trace formula and Selberg zeta functions for the Picard and
//! Eisenstein–Picard groups acting on hyperbolic 3-space.

pub mod arith;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod geometry;
pub mod lattice_lfn;
pub mod quad;
pub mod representation;
pub mod special;
pub mod trace_formula;
pub mod transform;
pub mod zeta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/trace_formula.md")]
    mod trace_formula {}
    #[doc = include_str!("../../../book/src/zeta.md")]
    mod zeta {}
    #[doc = include_str!("../../../book/src/eisenstein.md")]
    mod eisenstein {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
