//! Exact computations on weighted projective lines: Picard group arithmetic,
//! Cox rings, the canonical algebra and the quiver of the canonical bundle,
//! acyclicity of the pulled-back tilting bundle, and stability and
//! isomorphism tests for (framed) refined representations.

pub mod bundle_quiver;
pub mod canonical_algebra;
pub mod cli;
pub mod coxring;
pub mod degree_expr;
pub mod error;
pub mod export;
pub mod linalg;
pub mod moduli;
pub mod picard;
pub mod tilting;

pub use error::{Error, Result};
pub use picard::{Order, PicElt, Rational, WplData};
