//! Exact Diophantine approximation over the Laurent series field F_p((1/T)).
//!
//! Polynomials in F_p[T] play the integers, series in `1/T` play the reals.
//! Absolute values are never floating point: every `|α|` is a power of `q`
//! and is carried as its exponent.

pub mod algebraic;
pub mod cfrac;
pub mod error;
pub mod exponent;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod linforms;
pub mod oracle;
pub mod poly;
pub mod quadform;
pub mod rational;
pub mod transference;

pub use algebraic::{QuadraticSurd, Sign};
pub use cfrac::{CfExpansion, CfStatus};
pub use error::{Error, Result};
pub use exponent::{Certainty, QExp, Valuation};
pub use field::FieldConfig;
pub use laurent::{LaurentSeries, Precision};
pub use linforms::{GammaInstance, IntegralPoint, LinearFormsSolution};
pub use oracle::Element;
pub use poly::Poly;
pub use quadform::{Automorph, BinaryQuadraticForm};
pub use rational::RationalFn;
pub use transference::TransferCertificate;

/// `q^(-e)` with an integer exponent.
pub type QExponent = QExp<i64>;
/// `q^(-e)` with a rational exponent, for bounds such as `q^(-m/n)`.
pub type RationalQExponent = QExp<num_rational::Ratio<i64>>;
