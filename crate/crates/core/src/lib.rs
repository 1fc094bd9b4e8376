//! su(N) Lie-Poisson geometry of finite-dimensional quantum states.
//!
//! The space of N×N Hermitian unit-trace matrices, written in Gell-Mann
//! coordinates, carries a linear (Kirillov-Kostant-Souriau) Poisson
//! structure `r^ij = 4 f_ijk α_k`. This crate constructs the generalized
//! Gell-Mann basis for any N ≥ 2, extracts the structure tensors f and d,
//! and builds on them: Hamiltonian flow of density matrices, Casimir
//! invariants (moments, characteristic coefficients, Sudbery chain
//! contractions), coadjoint-orbit classification, canonical mechanics on
//! C^N with its pushforward to Gell-Mann coordinates, and the
//! partial-trace geometry of bipartite pure states.
//!
//! Every identity used along the way has a numeric verification entry
//! point returning a [`VerificationReport`]; the `suite` module bundles
//! them for the CLI.
//!
//! With the default `parallel` feature, structure-tensor extraction and
//! sample-batch verifications run on rayon; disabling the feature gives a
//! bit-identical sequential fallback.

pub mod basis;
pub mod bipartite;
pub mod canonical;
pub mod casimir;
pub mod dynamics;
pub mod error;
pub mod orbit;
pub mod poisson;
pub mod report;
pub mod suite;

pub(crate) mod par;

pub use basis::{GellMannBasis, HermitianOperator, StructureTensors};
pub use bipartite::BipartiteState;
pub use canonical::CanonicalState;
pub use casimir::CasimirReport;
pub use dynamics::Trajectory;
pub use error::CoreError;
pub use orbit::OrbitSpectrum;
pub use poisson::{GellMannState, HamiltonianCoeffs};
pub use report::VerificationReport;
pub use suite::SuiteConfig;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense real matrix.
pub type RMatrix = nalgebra::DMatrix<f64>;
/// Dense real vector.
pub type RVector = nalgebra::DVector<f64>;
/// Dense complex vector.
pub type CVector = nalgebra::DVector<C64>;
