//! Simulation of a dipole-coupled two-spin-1/2 system driven by multiple-pulse
//! spin-locking sequences, together with the quantum correlations of the
//! resulting states.
//!
//! Two pulse schemes are supported. Scheme A applies 90-degree x-pulses with
//! alternating delays `a*tbar` and `2*tbar`; scheme B applies x-pulses of a
//! fixed flip angle `phi` with equal delays `2*tbar`. Between pulses the pair
//! evolves freely under the secular dipolar Hamiltonian. All times are
//! dimensionless (`tbar = d * tau`, with the coupling constant `d` fixed to 1)
//! and pulses are treated as instantaneous rotations.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! pulsekit::PulseProgram --compile--> period propagator --propagate--> DensityMatrix
//!        |                                                              |
//!        +-> pulsekit::magnetization_x                                  +-> entangle::concurrence_*
//!                                                                       +-> discord::discord_*
//! ```
//!
//! [`entangle`] provides both a brute-force Wootters concurrence and the
//! closed forms for the two schemes, so one can always be cross-checked
//! against the other. [`discord`] does the same for the quantum discord of
//! scheme A: a high-temperature formula, an exact X-state formula, and a
//! measurement-angle optimizer. [`sweep`] evaluates grids of programs into
//! deterministic CSV reports.
//!
//! All numeric code is generic over the scalar type through the [`Scalar`]
//! trait (`f64` or `f32`); concrete `f64` aliases such as [`DensityMatrix64`]
//! are exported at the crate root. Double precision is the intended
//! configuration; the `f32` instantiation exists for storage-constrained
//! embedding and carries proportionally looser validation tolerances.

pub mod discord;
pub mod entangle;
pub mod hamiltonians;
pub mod pulsekit;
pub mod qmat;
pub mod sweep;

use core::fmt;
use core::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

pub use num_complex::Complex;

/// Floating-point scalar the whole crate is generic over.
///
/// The associated tolerance functions centralise every validation threshold;
/// they scale with the precision of the type so that the same invariants can
/// be asserted for `f64` and `f32`.
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Largest entrywise deviation accepted when validating `M == M.adjoint()`.
    fn hermiticity_tol() -> Self;
    /// Largest entrywise deviation accepted when validating `U.adjoint() * U == I`.
    fn unitarity_tol() -> Self;
    /// Most negative eigenvalue admitted in a density matrix.
    fn psd_tol() -> Self;
    /// Most negative eigenvalue of `rho * rho_tilde` still treated as roundoff dust.
    fn spectrum_dust_tol() -> Self;
    /// Eigenvalue dust clamped to zero before entropies are taken.
    fn entropy_dust_tol() -> Self;
    /// Measurement branch probabilities below this contribute nothing.
    fn branch_cutoff() -> Self;
}

impl Scalar for f64 {
    fn hermiticity_tol() -> Self {
        1e-12
    }
    fn unitarity_tol() -> Self {
        1e-10
    }
    fn psd_tol() -> Self {
        1e-10
    }
    fn spectrum_dust_tol() -> Self {
        1e-8
    }
    fn entropy_dust_tol() -> Self {
        1e-12
    }
    fn branch_cutoff() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn hermiticity_tol() -> Self {
        1e-5
    }
    fn unitarity_tol() -> Self {
        1e-4
    }
    fn psd_tol() -> Self {
        1e-4
    }
    fn spectrum_dust_tol() -> Self {
        1e-3
    }
    fn entropy_dust_tol() -> Self {
        1e-5
    }
    fn branch_cutoff() -> Self {
        1e-6
    }
}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("constant representable in the scalar type")
}

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A matrix failed the Hermitian symmetry check.
    #[error("matrix is not Hermitian: max |M - M^dag| entry = {deviation:e}")]
    NotHermitian { deviation: f64 },
    /// A matrix failed the unitarity check.
    #[error("matrix is not unitary: max |U^dag U - I| entry = {deviation:e}")]
    NotUnitary { deviation: f64 },
    /// A matrix is not a valid density matrix.
    #[error("not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },
    /// The spectrum of `rho * rho_tilde` dipped below the dust threshold.
    #[error("non-physical state: eigenvalue of rho*rho_tilde = {value:e} below the dust threshold")]
    NonPhysicalState { value: f64 },
    /// A pulse program violated a scheme invariant.
    #[error("invalid pulse program: {reason}")]
    InvalidProgram { reason: String },
    /// Magnetization outside the range |Mx| <= tanh(beta/2).
    #[error("magnetization {mx} exceeds tanh(beta/2) = {bound}")]
    MagnetizationOutOfRange { mx: f64, bound: f64 },
    /// A sweep specification is inconsistent.
    #[error("invalid sweep spec: {reason}")]
    InvalidSweepSpec { reason: String },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

// Concrete double-precision aliases. `f64` is the default throughout the CLI
// and the test suites.
pub type Complex64 = Complex<f64>;
pub type Matrix2x64 = qmat::ComplexMatrix2<f64>;
pub type Matrix4x64 = qmat::ComplexMatrix4<f64>;
pub type HermitianMatrix64 = qmat::HermitianMatrix4<f64>;
pub type UnitaryMatrix64 = qmat::UnitaryMatrix4<f64>;
pub type DensityMatrix64 = qmat::DensityMatrix<f64>;
pub type PulseProgram64 = pulsekit::PulseProgram<f64>;
pub type SweepSpec64 = sweep::SweepSpec<f64>;
pub type CorrelationReport64 = sweep::CorrelationReport<f64>;
