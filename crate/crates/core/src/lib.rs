//! Continuous analogues of binomial coefficients and Catalan numbers, built
//! from volumes of spaces of directed paths, together with the discrete
//! lattice-path oracles they are checked against.
//!
//! Modules:
//! - [`specfn`]: series summation policy and modified Bessel functions.
//! - [`lattice`]: patterns, exact path counts, interior lattice points.
//! - [`oracle`]: component polytopes, exact simplex-product volumes, Monte Carlo.
//! - [`binom`]: the continuous binomial `{x<s>}` and its identities.
//! - [`dist`]: the continuous binomial distribution.
//! - [`catalan`]: volumes of the Dyck-type polytopes and the continuous Catalan function.

pub mod binom;
pub mod catalan;
pub mod dist;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod quad;
pub mod specfn;

pub use error::{Error, Result};
pub use lattice::{HalfspaceRegion, LatticePath, Pattern, PolytopeSystem, StepSet};
pub use oracle::{PolytopeSpec, VolumeEstimate, VolumeMethod};
pub use quad::{QuadConfig, Quadrature};
pub use specfn::{SeriesConfig, SeriesSum};
