//! Dimensionless dipolar Hamiltonians and their rotated variants.
//!
//! The secular dipole-dipole coupling of the pair in a strong z field is
//! `H_dz = d (3 I1z I2z - I1.I2)`. Pulses rotate it about x; the rotated
//! variants are always produced by conjugating `H_dz` with `exp(-i phi Ix)`,
//! never by typing in explicit matrices, so there is one source of truth and
//! the known matrix forms serve as test vectors.

use num_complex::Complex;

use crate::qmat::{
    expm_i, expm_real, pauli_x, pauli_y, pauli_z, tensor, ComplexMatrix2, ComplexMatrix4,
    DensityMatrix, HermitianMatrix4, UnitaryMatrix4,
};
use crate::{real, Error, Result, Scalar};

/// Dimensionless dipolar coupling constant. All simulation times are
/// `tbar = d * tau`, so `d` stays fixed at 1 everywhere; physical-unit
/// conversion lives only in the critical-temperature helper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConstant<T>(T);

impl<T: Scalar> CouplingConstant<T> {
    pub fn new(d: T) -> Result<Self> {
        if !(d > T::zero()) || !d.is_finite() {
            return Err(Error::InvalidProgram {
                reason: format!("coupling constant must be positive, got {d}"),
            });
        }
        Ok(Self(d))
    }

    /// The canonical `d = 1` used by the dimensionless time convention.
    pub fn unit() -> Self {
        Self(T::one())
    }

    pub fn value(&self) -> T {
        self.0
    }
}

/// The six single-spin angular momentum projections and their transverse sum
/// `Ix = I1x + I2x`, as 4x4 matrices (spin-1/2, eigenvalues +-1/2).
#[derive(Debug, Clone)]
pub struct SpinOperators<T> {
    pub i1x: HermitianMatrix4<T>,
    pub i1y: HermitianMatrix4<T>,
    pub i1z: HermitianMatrix4<T>,
    pub i2x: HermitianMatrix4<T>,
    pub i2y: HermitianMatrix4<T>,
    pub i2z: HermitianMatrix4<T>,
    pub ix: HermitianMatrix4<T>,
}

impl<T: Scalar> SpinOperators<T> {
    pub fn new() -> Self {
        let half = Complex::new(real::<T>(0.5), T::zero());
        let id = ComplexMatrix2::identity();
        let sx = pauli_x::<T>();
        let sy = pauli_y::<T>();
        let sz = pauli_z::<T>();
        let herm = |m: ComplexMatrix4<T>| HermitianMatrix4::new(m).expect("Hermitian by construction");
        let i1x = tensor(&sx, &id).scale(half);
        let i2x = tensor(&id, &sx).scale(half);
        SpinOperators {
            i1x: herm(i1x),
            i1y: herm(tensor(&sy, &id).scale(half)),
            i1z: herm(tensor(&sz, &id).scale(half)),
            i2x: herm(i2x),
            i2y: herm(tensor(&id, &sy).scale(half)),
            i2z: herm(tensor(&id, &sz).scale(half)),
            ix: herm(i1x + i2x),
        }
    }

    /// `I1.I2 = I1x I2x + I1y I2y + I1z I2z`.
    pub fn scalar_product(&self) -> ComplexMatrix4<T> {
        *self.i1x.matrix() * *self.i2x.matrix()
            + *self.i1y.matrix() * *self.i2y.matrix()
            + *self.i1z.matrix() * *self.i2z.matrix()
    }
}

impl<T: Scalar> Default for SpinOperators<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Secular dipolar Hamiltonian `d (3 I1z I2z - I1.I2)`.
pub fn h_dz<T: Scalar>(d: CouplingConstant<T>) -> HermitianMatrix4<T> {
    let ops = SpinOperators::new();
    let three = Complex::new(real::<T>(3.0), T::zero());
    let m = (*ops.i1z.matrix() * *ops.i2z.matrix()).scale(three) - ops.scalar_product();
    HermitianMatrix4::new(m.scale_re(d.value())).expect("Hermitian by construction")
}

/// `exp(-i angle Ix)`: the x-rotation entering both the toggling frames and
/// the pulse unitaries.
pub fn x_rotation<T: Scalar>(angle: T) -> UnitaryMatrix4<T> {
    let ops = SpinOperators::new();
    expm_i(&ops.ix, angle)
}

/// Conjugated dipolar Hamiltonian `exp(-i phi Ix) H_dz exp(i phi Ix)`.
///
/// Periodic in `phi` with period pi because `exp(-i pi Ix)` commutes with
/// `H_dz`. At `phi = pi/2` this is the transverse form
/// `d (3 I1y I2y - I1.I2)`.
pub fn h_rotated<T: Scalar>(phi: T, d: CouplingConstant<T>) -> HermitianMatrix4<T> {
    let r = x_rotation(phi);
    let m = r.conjugate_matrix(h_dz(d).matrix());
    HermitianMatrix4::new(m).expect("unitary conjugation preserves Hermiticity")
}

/// Thermal state of the pair right after the preparation pulse:
/// `exp(beta Ix) / Z` with `Z = 4 cosh^2(beta/2)`, i.e. a product of
/// single-spin x-polarized Gibbs factors.
pub fn thermal_state<T: Scalar>(beta: T) -> Result<DensityMatrix<T>> {
    if !beta.is_finite() {
        return Err(Error::NotDensityMatrix {
            reason: format!("non-finite inverse temperature {beta}"),
        });
    }
    let half = real::<T>(0.5);
    let ch = (beta * half).cosh();
    let sh = (beta * half).sinh();
    let mut g = ComplexMatrix2::zeros();
    g.set(0, 0, Complex::new(ch, T::zero()));
    g.set(1, 1, Complex::new(ch, T::zero()));
    g.set(0, 1, Complex::new(sh, T::zero()));
    g.set(1, 0, Complex::new(sh, T::zero()));
    let z = real::<T>(4.0) * ch * ch;
    Ok(DensityMatrix::new(
        tensor(&g, &g).scale_re(z.recip()),
    )?)
}

/// `exp(beta Ix)` un-normalized, exposed for tests that want the raw Gibbs
/// weight built through the generic eigendecomposition path.
pub fn thermal_weight<T: Scalar>(beta: T) -> ComplexMatrix4<T> {
    let ops = SpinOperators::<T>::new();
    expm_real(&ops.ix, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::eig_hermitian;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn dipolar_matrix_entries() {
        let h = h_dz(CouplingConstant::<f64>::unit());
        let m = h.matrix();
        assert!((m[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((m[(1, 2)] - c(-0.5, 0.0)).norm() < 1e-15);
        assert!(m.trace().norm() < 1e-15);
        let expect = ComplexMatrix4::from_real([
            [0.5, 0.0, 0.0, 0.0],
            [0.0, -0.5, -0.5, 0.0],
            [0.0, -0.5, -0.5, 0.0],
            [0.0, 0.0, 0.0, 0.5],
        ]);
        assert!(m.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn transverse_form_at_right_angle() {
        let h = h_rotated(core::f64::consts::FRAC_PI_2, CouplingConstant::unit());
        let expect = ComplexMatrix4::from_real([
            [-0.25, 0.0, 0.0, -0.75],
            [0.0, 0.25, 0.25, 0.0],
            [0.0, 0.25, 0.25, 0.0],
            [-0.75, 0.0, 0.0, -0.25],
        ]);
        assert!(h.matrix().max_abs_diff(&expect) < 1e-12);
        // Same operator built from the spin operators directly.
        let ops = SpinOperators::<f64>::new();
        let built = (*ops.i1y.matrix() * *ops.i2y.matrix()).scale(c(3.0, 0.0))
            - ops.scalar_product();
        assert!(h.matrix().max_abs_diff(&built) < 1e-12);
    }

    #[test]
    fn quarter_turn_forms() {
        // Conjugation by exp(-i (pi/4) Ix) sends I_iz to (I_iz - I_iy)/sqrt(2),
        // which expands to the matrix below; the three-quarter turn is its
        // complex conjugate.
        let quarter = h_rotated(core::f64::consts::FRAC_PI_4, CouplingConstant::unit());
        let i = c(0.0, 1.0);
        let e = |re: f64| c(re, 0.0);
        let expect = ComplexMatrix4::from_rows([
            [e(0.125), i * 0.375, i * 0.375, e(-0.375)],
            [-i * 0.375, e(-0.125), e(-0.125), -i * 0.375],
            [-i * 0.375, e(-0.125), e(-0.125), -i * 0.375],
            [e(-0.375), i * 0.375, i * 0.375, e(0.125)],
        ]);
        assert!(quarter.matrix().max_abs_diff(&expect) < 1e-12);
        let three_quarter = h_rotated(3.0 * core::f64::consts::FRAC_PI_4, CouplingConstant::unit());
        assert!(three_quarter
            .matrix()
            .max_abs_diff(&quarter.matrix().conjugate())
            < 1e-12);
        // Cross-check through the single-spin identity.
        let ops = SpinOperators::<f64>::new();
        let s = 1.0 / 2.0f64.sqrt();
        let i1zp = (*ops.i1z.matrix() - *ops.i1y.matrix()).scale(c(s, 0.0));
        let i2zp = (*ops.i2z.matrix() - *ops.i2y.matrix()).scale(c(s, 0.0));
        let built = (i1zp * i2zp).scale(c(3.0, 0.0)) - ops.scalar_product();
        assert!(quarter.matrix().max_abs_diff(&built) < 1e-12);
    }

    #[test]
    fn zero_rotation_is_identity_on_h_dz() {
        let h0 = h_rotated(0.0, CouplingConstant::<f64>::unit());
        assert!(h0.matrix().max_abs_diff(h_dz(CouplingConstant::unit()).matrix()) < 1e-14);
    }

    #[test]
    fn rotation_is_pi_periodic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let phi = rng.gen_range(-3.0..3.0);
            let a = h_rotated(phi, CouplingConstant::<f64>::unit());
            let b = h_rotated(phi + core::f64::consts::PI, CouplingConstant::unit());
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
        }
    }

    #[test]
    fn right_angle_rotation_turns_z_into_y() {
        // exp(i (pi/2) Ix) I_iz exp(-i (pi/2) Ix) = I_iy for both spins.
        let ops = SpinOperators::<f64>::new();
        let r = x_rotation(-core::f64::consts::FRAC_PI_2); // exp(+i (pi/2) Ix)
        for (iz, iy) in [(&ops.i1z, &ops.i1y), (&ops.i2z, &ops.i2y)] {
            let got = r.conjugate_matrix(iz.matrix());
            assert!(got.max_abs_diff(iy.matrix()) < 1e-12);
        }
    }

    #[test]
    fn scalar_product_is_rotation_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let ops = SpinOperators::<f64>::new();
        let dot = ops.scalar_product();
        for _ in 0..20 {
            let phi = rng.gen_range(-4.0..4.0);
            let got = x_rotation(phi).conjugate_matrix(&dot);
            assert!(got.max_abs_diff(&dot) < 1e-12);
        }
    }

    #[test]
    fn rotated_spectrum_matches_unrotated() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let base = eig_hermitian(&h_dz(CouplingConstant::<f64>::unit())).values;
        for _ in 0..20 {
            let phi = rng.gen_range(-4.0..4.0);
            let vals = eig_hermitian(&h_rotated(phi, CouplingConstant::unit())).values;
            for k in 0..4 {
                assert!((vals[k] - base[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_operator_commutators() {
        let ops = SpinOperators::<f64>::new();
        // Different spins commute.
        for a in [&ops.i1x, &ops.i1y, &ops.i1z] {
            for b in [&ops.i2x, &ops.i2y, &ops.i2z] {
                assert!(a.matrix().commutator_norm(b.matrix()) < 1e-14);
            }
        }
        // [Ix, Iy] = i Iz on each spin, and cyclic.
        let i = c(0.0, 1.0);
        let triples = [
            (&ops.i1x, &ops.i1y, &ops.i1z),
            (&ops.i1y, &ops.i1z, &ops.i1x),
            (&ops.i1z, &ops.i1x, &ops.i1y),
            (&ops.i2x, &ops.i2y, &ops.i2z),
            (&ops.i2y, &ops.i2z, &ops.i2x),
            (&ops.i2z, &ops.i2x, &ops.i2y),
        ];
        for (a, b, cc) in triples {
            let comm = *a.matrix() * *b.matrix() - *b.matrix() * *a.matrix();
            assert!(comm.max_abs_diff(&cc.matrix().scale(i)) < 1e-14);
        }
    }

    #[test]
    fn flat_pulse_commutes_with_h_dz() {
        let u = x_rotation(core::f64::consts::PI);
        let h = h_dz(CouplingConstant::<f64>::unit());
        assert!(u.matrix().commutator_norm(h.matrix()) < 1e-12);
        let rho = thermal_state(1.7).unwrap();
        assert!(u.matrix().commutator_norm(rho.matrix()) < 1e-12);
    }

    #[test]
    fn thermal_state_entries_and_trace() {
        let beta = 2.0f64;
        let rho = thermal_state(beta).unwrap();
        let z = 4.0 * (beta / 2.0).cosh().powi(2);
        let ch = (beta / 2.0).cosh();
        let sh = (beta / 2.0).sinh();
        assert!((rho.matrix()[(0, 0)].re - ch * ch / z).abs() < 1e-14);
        assert!((rho.matrix()[(0, 1)].re - ch * sh / z).abs() < 1e-14);
        assert!((rho.matrix()[(0, 3)].re - sh * sh / z).abs() < 1e-14);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-14);
        // Same state through the generic Gibbs-weight path.
        let w = thermal_weight(beta);
        let rebuilt = w.scale_re(1.0 / w.trace().re);
        assert!(rho.matrix().max_abs_diff(&rebuilt) < 1e-12);
    }

    #[test]
    fn coupling_constant_must_be_positive() {
        assert!(CouplingConstant::new(0.0f64).is_err());
        assert!(CouplingConstant::new(-1.0f64).is_err());
        assert!(CouplingConstant::new(f64::NAN).is_err());
        assert_eq!(CouplingConstant::new(2.0f64).unwrap().value(), 2.0);
    }
}
