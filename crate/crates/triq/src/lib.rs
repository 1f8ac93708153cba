//! Three-qubit entanglement classification toolkit.
//!
//! `triq` constructs the eight canonical entangled three-qubit states
//! (GHZ±, GFR±, WRR±, WRr±) from the spin-composition basis of three
//! spin-1/2 particles, evaluates three entanglement criteria — the
//! conditional Tsallis entropy, the Peres–Horodecki partial-transpose
//! test, and the Wootters concurrence together with the residual
//! 3-tangle — and derives the robustness/fragility pattern of every
//! pair marginal under loss of the third qubit.
//!
//! Modules:
//! - [`linalg`]: dense complex kernel for dimensions up to 8 (tensor
//!   products, partial trace/transpose, Jacobi eigensolver, fractional
//!   matrix powers, spin-flip spectra).
//! - [`states`]: spin-composition basis, canonical states, parametric
//!   families, qubit permutations and symmetry tags.
//! - [`criteria`]: the three entanglement criteria, closed-form marginal
//!   and partial-transpose spectra, and the Lewenstein–Sanpera split of
//!   the BC marginal.
//! - [`classify`]: per-pair robustness reports, the four-row
//!   classification table, and the Heisenberg-Hamiltonian eigenstate
//!   verification.
//! - [`random`], [`batch`], [`report`]: seeded state sampling, batch
//!   evaluation (rayon-parallel with the default `parallel` feature,
//!   sequential otherwise), and text/JSON/CSV rendering for the CLI.

pub mod batch;
pub mod classify;
pub mod criteria;
pub mod linalg;
pub mod random;
pub mod report;
pub mod states;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum TriqError {
    /// A precondition on the input was violated (bad dimension,
    /// non-normalized amplitudes, unknown name, q <= 0, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An iterative numerical procedure failed to converge or produced
    /// values outside its documented tolerance.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    /// The denominator 1 + (1-q) S_q of a conditional Tsallis entropy
    /// vanished; reported instead of silently zeroed.
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    /// A verification step (Hamiltonian eigenstate residual) failed.
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    /// Two computations that must agree did not; signals a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// Closed forms requested for a family that has none.
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
}

pub type Result<T> = std::result::Result<T, TriqError>;
