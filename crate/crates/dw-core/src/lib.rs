//! Dense complex-matrix radii and the bounds that control them.
//!
//! The crate computes the numerical radius, the operator norm, the
//! Davis-Wielandt radius and shell, and generalized operator radii of
//! matrix tuples; evaluates a family of closed-form bounds on each; and
//! checks the whole inequality chain over worked examples and seeded
//! random ensembles.
//!
//! Layout:
//! - [`matrix`]: dense storage, arithmetic, and the shared error type.
//! - [`eigen`]: Hermitian eigendecomposition (cyclic Jacobi sweeps).
//! - [`functional`]: operator norm, PSD fractional powers, modulus.
//! - [`radius`]: rotation-scan numerical radius, sphere-ascent
//!   Davis-Wielandt and tuple radii with certificates, a brute-force
//!   2-by-2 oracle, and shell sampling.
//! - [`bounds`]: closed-form bound evaluators and the chain report.
//! - [`blockops`]: block grids and scalar-matrix reduction bounds.
//! - [`verify`]: random ensembles, chain and block harnesses, pair
//!   probes, and the bundled-example regression table.
//!
//! Everything is deterministic given explicit seeds; no global state.

pub mod blockops;
pub mod bounds;
pub mod eigen;
pub mod functional;
pub mod matrix;
pub mod radius;
mod rng;
pub mod verify;

pub use matrix::{ComplexMatrix, MatrixError};
pub use radius::{
    dw_euclid, dw_oracle_2x2, dw_radius, euclid_radius, gen_radius_p, numerical_radius,
    sample_shell, AscentOptions, Certificate, Method, RadiusResult, ShellPoint,
};
pub use bounds::{assemble_report, BoundKind, BoundParams, BoundRecord, BoundsReport};
pub use blockops::{BlockMatrixSpec, ReductionRule};
pub use verify::{
    generate, reference_checks, run_block_chain, run_chain, run_ensemble, ChainOptions,
    ChainReport, EnsembleConfig, EnsembleKind,
};
