//! Declarative spin-locking pulse programs and their period propagators.
//!
//! A program names the scheme, its parameter, the dimensionless delay `tbar`
//! and the period count. Compilation turns one period of the sequence into a
//! single unitary through the toggling-frame construction: the accumulated
//! pulse rotations conjugate the free Hamiltonian, so a period becomes a
//! product of free evolutions under rotated dipolar Hamiltonians.
//!
//! The preparation pulse is absorbed into the thermal initial state, and the
//! single delay before the first locking pulse is split across period
//! boundaries, so each period is bracketed by half-delays. For scheme B the
//! toggling frame closes after `N` pulses only when `N*phi` is a multiple of
//! pi; at other flip angles compilation falls back to one literal
//! pulse-plus-delay cycle and [`propagate`] supplies the boundary
//! half-delays.

use num_complex::Complex;

use crate::hamiltonians::{h_dz, h_rotated, x_rotation, CouplingConstant, SpinOperators};
use crate::qmat::{expm_i, ComplexMatrix4, DensityMatrix, UnitaryMatrix4};
use crate::{real, Error, Result, Scalar};

/// Largest pulse count searched for a closing toggling frame.
const MAX_TOGGLING_PULSES: u32 = 256;

/// The two spin-locking variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme<T> {
    /// 90-degree pulses with alternating delays `a*tbar` and `2*tbar`.
    A { a: T },
    /// Pulses of flip angle `phi` in `(0, pi)` with equal delays `2*tbar`.
    B { phi: T },
}

/// A validated spin-locking program.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseProgram<T> {
    scheme: Scheme<T>,
    tbar: T,
    periods: u64,
}

impl<T: Scalar> PulseProgram<T> {
    pub fn new(scheme: Scheme<T>, tbar: T, periods: u64) -> Result<Self> {
        match scheme {
            Scheme::A { a } => {
                if !(a > T::zero()) || !a.is_finite() {
                    return Err(Error::InvalidProgram {
                        reason: format!("scheme A requires a > 0, got {a}"),
                    });
                }
            }
            Scheme::B { phi } => {
                let pi = T::from_f64(core::f64::consts::PI).unwrap();
                if !(phi > T::zero() && phi < pi) {
                    return Err(Error::InvalidProgram {
                        reason: format!("scheme B requires 0 < phi < pi, got {phi}"),
                    });
                }
            }
        }
        if !(tbar > T::zero()) || !tbar.is_finite() {
            return Err(Error::InvalidProgram {
                reason: format!("tbar must be positive, got {tbar}"),
            });
        }
        Ok(Self {
            scheme,
            tbar,
            periods,
        })
    }

    pub fn scheme_a(a: T, tbar: T, periods: u64) -> Result<Self> {
        Self::new(Scheme::A { a }, tbar, periods)
    }

    pub fn scheme_b(phi: T, tbar: T, periods: u64) -> Result<Self> {
        Self::new(Scheme::B { phi }, tbar, periods)
    }

    pub fn scheme(&self) -> Scheme<T> {
        self.scheme
    }

    pub fn tbar(&self) -> T {
        self.tbar
    }

    pub fn periods(&self) -> u64 {
        self.periods
    }

    pub fn with_periods(mut self, periods: u64) -> Self {
        self.periods = periods;
        self
    }
}

/// Whether a compiled propagator spans a full closed toggling period or one
/// literal pulse-plus-delay cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodKind {
    /// The toggling frame closes after `pulses` pulses; the propagator is the
    /// frame product bracketed by half-delays.
    Closed { pulses: u32 },
    /// Non-closing flip angle: one lab-frame cycle `exp(-i 2 tbar H_dz) exp(i phi Ix)`;
    /// boundary half-delays are applied by [`propagate`].
    OpenCycle,
}

/// One period of the sequence as a unitary.
#[derive(Debug, Clone, Copy)]
pub struct PeriodPropagator<T> {
    pub u: UnitaryMatrix4<T>,
    /// Dimensionless duration covered by `u` ((a+2)*tbar for scheme A,
    /// 2*N*tbar for a closed scheme-B period, 2*tbar for an open cycle).
    pub period_duration: T,
    pub kind: PeriodKind,
}

/// Smallest pulse count after which the toggling frame closes, if any:
/// the least `n` with `n*phi = 0 (mod pi)` within 1e-9.
fn toggling_closure(phi: f64) -> Option<u32> {
    (1..=MAX_TOGGLING_PULSES).find(|&n| (f64::from(n) * phi).sin().abs() < 1e-9)
}

/// Compiles one period of the program.
pub fn compile_period<T: Scalar>(p: &PulseProgram<T>) -> PeriodPropagator<T> {
    let d = CouplingConstant::unit();
    let hdz = h_dz(d);
    let tbar = p.tbar;
    match p.scheme {
        Scheme::A { a } => {
            let hdy = h_rotated(T::from_f64(core::f64::consts::FRAC_PI_2).unwrap(), d);
            let u = expm_i(&hdz, tbar) * expm_i(&hdy, a * tbar) * expm_i(&hdz, tbar);
            PeriodPropagator {
                u,
                period_duration: (a + real::<T>(2.0)) * tbar,
                kind: PeriodKind::Closed { pulses: 2 },
            }
        }
        Scheme::B { phi } => {
            let phi_f64 = phi.to_f64().unwrap_or(f64::NAN);
            match toggling_closure(phi_f64) {
                Some(n) => {
                    let two_tbar = real::<T>(2.0) * tbar;
                    let mut u = expm_i(&hdz, tbar);
                    for k in (1..n).rev() {
                        let frame = h_rotated(phi * real::<T>(f64::from(k)), d);
                        u = u * expm_i(&frame, two_tbar);
                    }
                    u = u * expm_i(&hdz, tbar);
                    PeriodPropagator {
                        u,
                        period_duration: real::<T>(f64::from(2 * n)) * tbar,
                        kind: PeriodKind::Closed { pulses: n },
                    }
                }
                None => {
                    let u = expm_i(&hdz, real::<T>(2.0) * tbar) * x_rotation(-phi);
                    PeriodPropagator {
                        u,
                        period_duration: real::<T>(2.0) * tbar,
                        kind: PeriodKind::OpenCycle,
                    }
                }
            }
        }
    }
}

/// Propagates a state through `periods` repetitions of the compiled period:
/// `U^M rho U^M.adjoint()`, with the period power taken spectrally so that
/// thousands of periods do not accumulate product roundoff. `periods = 0`
/// returns the state unchanged.
pub fn propagate<T: Scalar>(p: &PulseProgram<T>, rho0: &DensityMatrix<T>) -> DensityMatrix<T> {
    let per = compile_period(p);
    let um = per.u.power(p.periods);
    let total = match per.kind {
        PeriodKind::Closed { .. } => um,
        PeriodKind::OpenCycle => {
            // Bracket the cycle power with boundary half-delays so that open
            // and closed compilations agree wherever both apply.
            let hdz = h_dz(CouplingConstant::unit());
            expm_i(&hdz, -p.tbar) * um * expm_i(&hdz, p.tbar)
        }
    };
    DensityMatrix::new_unchecked(total.conjugate_matrix(rho0.matrix()))
}

/// Transverse magnetization `Tr(rho Ix)` in units of gamma*hbar.
pub fn magnetization_x<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let ops = SpinOperators::<T>::new();
    (*rho.matrix() * *ops.ix.matrix()).trace().re
}

/// The orthogonal involution that block-diagonalizes centrally symmetric
/// matrices (symmetric/antisymmetric combinations of mirrored basis states).
pub fn central_symmetry_transform<T: Scalar>() -> ComplexMatrix4<T> {
    let s = real::<T>(0.5).sqrt();
    let mut g = ComplexMatrix4::zeros();
    for (i, j, v) in [
        (0, 0, s),
        (0, 3, s),
        (1, 1, s),
        (1, 2, s),
        (2, 1, s),
        (2, 2, -s),
        (3, 0, s),
        (3, 3, -s),
    ] {
        g.set(i, j, Complex::new(v, T::zero()));
    }
    g
}
