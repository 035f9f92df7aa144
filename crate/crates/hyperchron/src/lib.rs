//! Computational engine for the causal geometry of hyperspin space-times.
//!
//! Points of the space ℋ^{r²} are r×r weakly Hermitian complex matrices.
//! The chronometric form Δ(v) = r!·det(v) generalizes the Minkowski
//! interval (r = 2 is ordinary special relativity under the standard
//! two-spinor correspondence), and its eigenvalue signature induces a
//! causal taxonomy of separations. On top of that core this crate provides
//! the hyper-Poincaré group action x ↦ λxλ† + β with λ ∈ SL(r,ℂ),
//! geodesics and a proper-time functional, Killing conserved quantities,
//! hyper-relativistic mechanics (mass, angular momentum, spin), the r = 2n
//! symmetry-breaking decomposition with its embedded Minkowski subspace,
//! and the density-matrix projection back down to r = 2, together with
//! seeded verification suites over all of it.

#![forbid(unsafe_code)]

pub mod breaking;
pub mod chronometry;
pub mod error;
pub mod jsonio;
mod linalg;
pub mod mechanics;
pub mod projection;
pub mod sample;
pub mod suites;
pub mod symmetry;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerance;
