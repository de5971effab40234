//! Exact tropical (max-plus) linear algebra and projective plane geometry.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: tropical scalars over exact rationals, both conventions.
//! * [`linalg`]: vectors, matrices, span membership by residuation, tropical
//!   determinants with two independent backends.
//! * [`projective`]: canonical points of `TP^{d−1}`.
//! * [`plane`]: tropical lines, stable lines and intersections, coaxiality.
//! * [`pencil`]: pencils, perspectivities and the two-stage projectivity
//!   construction between compatible pencils.
//! * [`crossratio`]: brackets, the tropical cross-ratio and its failure to
//!   be invariant under matrix action.
//! * [`collineation`]: semilinear maps, collineation oracles and the
//!   reconstruction of `(λ, μ)` from a collineation.
//! * [`cli`]: JSON subcommands and SVG rendering used by the `tropgeom` binary.

pub mod cli;
pub mod collineation;
pub mod crossratio;
pub mod error;
pub mod linalg;
pub mod pencil;
pub mod plane;
pub mod projective;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{TropMatrix, TropVector};
pub use plane::{PlanePoint, RayLabel, TropLine};
pub use projective::ProjPoint;
pub use scalar::{Convention, Rational, TropScalar};
