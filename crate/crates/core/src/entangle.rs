//! Wootters concurrence: brute-force oracle, per-scheme closed forms, and
//! the critical-temperature helper.
//!
//! The oracle computes the spin-flipped product `rho * rho_tilde` for any
//! state; the closed forms evaluate the same quantity analytically for the
//! two locking schemes and exist so that each route can falsify the other.

use num_complex::Complex;

use crate::qmat::{
    eig_hermitian, pauli_y, tensor, ComplexMatrix4, DensityMatrix, HermitianMatrix4,
};
use crate::{real, Error, Result, Scalar};

/// Square roots of the eigenvalues of `rho * rho_tilde`, sorted descending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoottersSpectrum<T> {
    lambda: [T; 4],
}

impl<T: Scalar> WoottersSpectrum<T> {
    /// Wraps a set of non-negative roots, sorting them descending.
    pub fn new(mut lambda: [T; 4]) -> Self {
        lambda.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
        Self { lambda }
    }

    pub fn lambda(&self) -> [T; 4] {
        self.lambda
    }

    /// `max(0, 2*lambda_max - sum(lambda))`.
    pub fn concurrence(&self) -> T {
        let sum = self.lambda.iter().fold(T::zero(), |a, &b| a + b);
        (self.lambda[0] + self.lambda[0] - sum).max(T::zero())
    }
}

/// Spin-flipped state `(sigma_y x sigma_y) rho* (sigma_y x sigma_y)`.
pub fn spin_flipped<T: Scalar>(rho: &DensityMatrix<T>) -> ComplexMatrix4<T> {
    let yy = tensor(&pauli_y::<T>(), &pauli_y::<T>());
    yy * rho.matrix().conjugate() * yy
}

/// Wootters spectrum of an arbitrary state.
///
/// The eigenvalues of the non-Hermitian product `rho * rho_tilde` are taken
/// through the similar Hermitian proxy `sqrt(rho) rho_tilde sqrt(rho)`, which
/// keeps the numeric core on Hermitian routines with a guaranteed real
/// spectrum. Negative dust above `-1e-8` is clipped to zero; anything lower
/// reports a non-physical state.
pub fn wootters_spectrum<T: Scalar>(rho: &DensityMatrix<T>) -> Result<WoottersSpectrum<T>> {
    let herm = HermitianMatrix4::new(*rho.matrix())?;
    let eig = eig_hermitian(&herm);
    let v = eig.vectors.matrix();
    let mut roots = ComplexMatrix4::zeros();
    for k in 0..4 {
        roots.set(
            k,
            k,
            Complex::new(eig.values[k].max(T::zero()).sqrt(), T::zero()),
        );
    }
    let sqrt_rho = *v * roots * v.adjoint();
    let proxy = sqrt_rho * spin_flipped(rho) * sqrt_rho;
    // Symmetrize away the product roundoff before diagonalizing.
    let half = Complex::new(real::<T>(0.5), T::zero());
    let sym = (proxy + proxy.adjoint()).scale(half);
    let eig = eig_hermitian(&HermitianMatrix4::new(sym)?);
    let mut lambda = [T::zero(); 4];
    for k in 0..4 {
        let val = eig.values[k];
        if val < -T::spectrum_dust_tol() {
            return Err(Error::NonPhysicalState {
                value: val.to_f64().unwrap_or(f64::NAN),
            });
        }
        lambda[k] = val.max(T::zero()).sqrt();
    }
    Ok(WoottersSpectrum::new(lambda))
}

/// Brute-force concurrence of an arbitrary two-qubit state.
pub fn concurrence_oracle<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(wootters_spectrum(rho)?.concurrence())
}

/// Rotating phase accumulated by scheme A after `periods` periods:
/// `x = (3a - 6)/2 * M * tbar`.
pub fn scheme_a_phase<T: Scalar>(a: T, periods: u64, tbar: T) -> T {
    let three = real::<T>(3.0);
    let six = real::<T>(6.0);
    (three * a - six) * real::<T>(0.5) * real::<T>(periods as f64) * tbar
}

fn scheme_a_spectrum_from_phase<T: Scalar>(x: T, beta: T) -> WoottersSpectrum<T> {
    let th = (beta * real::<T>(0.5)).tanh();
    let one = T::one();
    let half = real::<T>(0.5);
    let quarter = real::<T>(0.25);
    let root = half
        * (((one + th * th) * (one + th * th)
            - real::<T>(4.0) * th * th * x.cos() * x.cos())
        .max(T::zero()))
        .sqrt();
    let swing = th * x.sin().abs();
    let l1 = half * (root + swing);
    let l2 = half * (root - swing).abs();
    let l34 = quarter * (one - th * th);
    WoottersSpectrum::new([l1, l2, l34, l34])
}

/// Closed-form Wootters spectrum for scheme A.
pub fn scheme_a_spectrum<T: Scalar>(a: T, periods: u64, tbar: T, beta: T) -> WoottersSpectrum<T> {
    scheme_a_spectrum_from_phase(scheme_a_phase(a, periods, tbar), beta)
}

/// Closed-form scheme-A concurrence
/// `max(0, tanh(beta/2) |sin x| - (1 - tanh^2(beta/2))/2)`.
pub fn concurrence_scheme_a<T: Scalar>(a: T, periods: u64, tbar: T, beta: T) -> T {
    concurrence_scheme_a_from_phase(scheme_a_phase(a, periods, tbar), beta)
}

/// Same closed form evaluated directly at a rotating phase `x`.
pub fn concurrence_scheme_a_from_phase<T: Scalar>(x: T, beta: T) -> T {
    let th = (beta * real::<T>(0.5)).tanh();
    let penalty = (T::one() - th * th) * real::<T>(0.5);
    (th * x.sin().abs() - penalty).max(T::zero())
}

/// The trigonometric auxiliaries entering the scheme-B quarter-angle closed
/// form, all evaluated at one `(periods, tbar, beta)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeBAuxiliaries<T> {
    pub p1: T,
    pub p3: T,
    pub p4: T,
    pub p6: T,
    pub p7: T,
    pub s: T,
    pub r: T,
    pub q: T,
    pub p: T,
    /// Per-period rotation angle `Phi = atan2(q, p)`; `q >= 0` places it in
    /// `[0, pi]`, which keeps the branch consistent with the brute-force
    /// propagation when `p` turns negative.
    pub period_phase: T,
}

/// Evaluates the quarter-angle auxiliaries.
pub fn scheme_b_auxiliaries<T: Scalar>(periods: u64, tbar: T, beta: T) -> SchemeBAuxiliaries<T> {
    let m = real::<T>(periods as f64);
    let th = (beta * real::<T>(0.5)).tanh();
    let quarter = real::<T>(0.25);
    let t3 = real::<T>(3.0) * tbar;
    let s = (t3 + t3).sin() - real::<T>(2.0) * t3.sin();
    let r = (t3 * real::<T>(1.5)).cos() - (t3 * real::<T>(0.5)).cos();
    let q_sq = (real::<T>(26.0) - real::<T>(24.0) * (t3 + t3).cos()
        - real::<T>(2.0) * (real::<T>(4.0) * t3).cos()
        + real::<T>(16.0) * (t3 * real::<T>(3.0)).cos()
        - real::<T>(16.0) * t3.cos())
        * quarter;
    let q = q_sq.max(T::zero()).sqrt();
    let p = real::<T>(4.0) * t3.cos() - (t3 + t3).cos() + T::one();
    let period_phase = q.atan2(p);
    // sin^2(M Phi)/q^2 and sin(2 M Phi)/q have removable singularities where
    // the period propagator revives; substitute the limits there.
    let (sin_sq_ratio, sin_two_ratio) = if q > real::<T>(1e-9) {
        let smp = (m * period_phase).sin();
        (smp * smp / q_sq, (real::<T>(2.0) * m * period_phase).sin() / q)
    } else {
        (m * m / (p * p), real::<T>(2.0) * m / p)
    };
    SchemeBAuxiliaries {
        p1: quarter + sin_sq_ratio * s * r * th,
        p3: quarter * sin_two_ratio * s * th,
        p4: quarter * (T::one() - real::<T>(2.0) * sin_sq_ratio * s * s) * th,
        p6: quarter * (th * th + real::<T>(4.0) * sin_sq_ratio * s * r * th),
        p7: quarter * (th * th - real::<T>(4.0) * sin_sq_ratio * s * r * th),
        s,
        r,
        q,
        p,
        period_phase,
    }
}

/// Closed-form Wootters spectrum for scheme B at `phi = pi/4`.
///
/// The two square-root combinations can individually dip below zero at
/// revival points of the period propagator; the spectrum consists of their
/// magnitudes.
pub fn scheme_b_quarter_spectrum<T: Scalar>(
    periods: u64,
    tbar: T,
    beta: T,
) -> WoottersSpectrum<T> {
    let aux = scheme_b_auxiliaries(periods, tbar, beta);
    let half = real::<T>(0.5);
    let sixteen = real::<T>(16.0);
    let e1 = real::<T>(2.0) * aux.p1 + aux.p6 - half - aux.p7;
    let e2 = half + aux.p6 + aux.p7;
    let e3 = real::<T>(2.0) * aux.p1 - aux.p6 - half + aux.p7;
    let e4 = half - aux.p6 - aux.p7;
    let root_a = (e1 * e1 + sixteen * aux.p3 * aux.p3).max(T::zero()).sqrt();
    let root_b = (e2 * e2 - sixteen * aux.p4 * aux.p4).max(T::zero()).sqrt();
    let l1 = half * (root_a + root_b).abs();
    let l2 = half * (root_a - root_b).abs();
    let l3 = half * (e3.abs() + e4.abs());
    let l4 = half * (e3.abs() - e4.abs()).abs();
    WoottersSpectrum::new([l1, l2, l3, l4])
}

/// Closed-form concurrence for scheme B at `phi = pi/4`.
pub fn concurrence_scheme_b_quarter<T: Scalar>(periods: u64, tbar: T, beta: T) -> T {
    scheme_b_quarter_spectrum(periods, tbar, beta).concurrence()
}

/// Critical inverse temperature below which (in temperature) scheme A can
/// entangle the pair: the locking amplitude `tanh(beta/2)` must exceed the
/// thermal penalty `(1 - tanh^2(beta/2))/2`, which crosses at
/// `tanh(beta/2) = sqrt(2) - 1`, i.e. `beta = ln(1 + sqrt(2))`.
pub fn critical_beta<T: Scalar>() -> T {
    (T::one() + real::<T>(2.0).sqrt()).ln()
}

/// Planck constant over 2 pi, SI.
pub const HBAR: f64 = 1.054e-34;
/// Boltzmann constant, SI.
pub const K_BOLTZMANN: f64 = 1.38e-23;

/// Temperature below which the scheme-A closed form can become positive, in
/// Kelvin, for a Larmor frequency `omega0` in rad/s.
pub fn critical_temperature(omega0: f64) -> f64 {
    HBAR * omega0 / (K_BOLTZMANN * critical_beta::<f64>())
}

/// Scheme-A concurrence reconstructed from an observed transverse
/// magnetization (dimensionless units, gamma*hbar = 1):
/// `max(0, sqrt(tanh^2(beta/2) - mx^2) - (1 - tanh^2(beta/2))/2)`.
pub fn concurrence_from_magnetization<T: Scalar>(mx: T, beta: T) -> Result<T> {
    let th = (beta * real::<T>(0.5)).tanh();
    if mx.abs() > th + real::<T>(1e-12) {
        return Err(Error::MagnetizationOutOfRange {
            mx: mx.to_f64().unwrap_or(f64::NAN),
            bound: th.to_f64().unwrap_or(f64::NAN),
        });
    }
    let swing = (th * th - mx * mx).max(T::zero()).sqrt();
    let penalty = (T::one() - th * th) * real::<T>(0.5);
    Ok((swing - penalty).max(T::zero()))
}
