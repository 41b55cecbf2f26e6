//! Exact scalars in ℚ(t) and truncated multivariate series.

pub mod coefficient;
pub mod poly;
pub mod series;
pub mod special;
pub mod truncation;
pub mod univariate;

pub use coefficient::Coefficient;
pub use poly::Poly;
pub use series::{rat, FormalSeries, Mono};
pub use truncation::{Truncation, MAX_VARS, U_CEIL, U_FLOOR};
