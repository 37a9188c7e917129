//! Extremal one-sided approximations of exponential type.
//!
//! Majorants and minorants of `e^{-λ|x|}` in the homogeneous de Branges
//! spaces `H(E_ν)`, their optimal weighted `L¹` errors, radial functions
//! subordinated to the exponential, Hilbert-type quadratic forms and the
//! periodic analogues built from orthogonal polynomials on the unit circle.
//!
//! The Bessel layer is generic over [`Real`]; everything above it works in
//! `f64`, which is what the aliases below expose.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod freq;
pub mod hilbert;
pub mod measures;
pub mod opuc;
pub mod quad;
pub mod real;
pub mod special;

pub use error::{Error, Result};
pub use real::Real;

/// Order `ν > −1` in double precision.
pub type Order = bessel::Order<f64>;
/// Order `ν > −1` in single precision.
pub type Order32 = bessel::Order<f32>;

pub use bessel::{ZeroKind, ZeroTable};




pub use extremal::{ExtremalValueQuery, RadialExtremal, Side};
pub use freq::{Majorant, Minorant};
pub use hilbert::{FormSpec, PointConfig};
pub use measures::{MeasureSpec, Subordinated};
pub use opuc::{CircleMeasure, NodeSet, OpucBasis, TrigPoly};
