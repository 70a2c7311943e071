//! Exact computation of r-truncated degenerate Stirling numbers of the second
//! kind and the degenerate special numbers around them, over the field ℚ(λ)
//! of rational functions in the degeneracy parameter or at a fixed rational λ.

pub mod bernoulli;
pub mod degen;
pub mod error;
pub mod field;
pub mod identities;
pub mod poly;
pub mod rational;
pub mod series;
pub mod stirling;

pub use error::{Error, Result};
pub use field::{ArithOp, FieldElem, LambdaMode, RatFunc};
pub use poly::{poly_gcd, LambdaPoly};
pub use rational::Rational;
pub use series::Series;
pub use stirling::{StirlingKind, StirlingTriangle};
pub use bernoulli::{BellInput, ClosedFormVariant};
pub use identities::{IdentityId, IdentityReport, Variant, Verifier};
