//! Exact computations with Drinfel'd twists of Cartan type H Lie algebras
//! over `Q` and their modular reductions.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod index;
pub mod lie;
pub mod modular;
pub mod par;
pub mod quant;
pub mod report;
pub mod scalar;
pub mod series;
pub mod suites;
pub mod twist;

pub use algebra::{FactorialKind, Monomial, TensorElement, UAlgebra, UElement};
pub use error::{Error, Result};
pub use index::MultiIndex;
pub use lie::{LieContext, LieElement, RMatrix, TwistKind, TwistPair};
pub use scalar::{Field, Fp, Scalar};
pub use series::{one_minus_et_power, Ring, TMode, TPoly};
pub use twist::{build_twist, verify_cocycle, SeriesReport, TwistElement, TwistVariant, TwistedStructure};
pub use quant::{QuantizationContext, Variant};
