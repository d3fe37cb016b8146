//! Dense 2x2 and 4x4 complex linear algebra for two-spin states.
//!
//! Everything a two-qubit density-matrix simulation needs and nothing more:
//! products, tensor products, Hermitian eigendecomposition (cyclic Jacobi
//! with complex rotations), unitary exponentials of Hermitian generators,
//! exact unitary powers, and partial traces. Matrices are stored row-major in
//! the product basis |00>, |01>, |10>, |11>; the first tensor factor is
//! spin 1. That ordering is fixed repo-wide.

use core::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex;

use crate::{real, Error, Result, Scalar};

#[inline]
fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
fn cone<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Dense 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2<T> {
    e: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> ComplexMatrix2<T> {
    pub fn from_rows(e: [[Complex<T>; 2]; 2]) -> Self {
        Self { e }
    }

    pub fn zeros() -> Self {
        Self {
            e: [[czero(); 2]; 2],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        m.e[0][0] = cone();
        m.e[1][1] = cone();
        m
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.e[i][j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        self.e[0][0] + self.e[1][1]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = *self;
        for row in &mut out.e {
            for v in row {
                *v = *v * s;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        m
    }

    pub fn herm_deviation(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of a Hermitian 2x2 matrix, descending. The matrix is
    /// assumed Hermitian; only the real parts of the diagonal enter.
    pub fn hermitian_eigenvalues(&self) -> [T; 2] {
        let half = real::<T>(0.5);
        let tr = (self.e[0][0].re + self.e[1][1].re) * half;
        let det = self.e[0][0].re * self.e[1][1].re - self.e[0][1].norm_sqr();
        let disc = (tr * tr - det).max(T::zero()).sqrt();
        [tr + disc, tr - disc]
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix2<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.e[i][j]
    }
}

impl<T: Scalar> Mul for ComplexMatrix2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = czero();
                for k in 0..2 {
                    acc = acc + self.e[i][k] * rhs.e[k][j];
                }
                out.e[i][j] = acc;
            }
        }
        out
    }
}

impl<T: Scalar> Add for ComplexMatrix2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = out.e[i][j] + rhs.e[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Sub for ComplexMatrix2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = out.e[i][j] - rhs.e[i][j];
            }
        }
        out
    }
}

/// Pauli x in the single-spin basis |0>, |1>.
pub fn pauli_x<T: Scalar>() -> ComplexMatrix2<T> {
    ComplexMatrix2::from_rows([[czero(), cone()], [cone(), czero()]])
}

/// Pauli y.
pub fn pauli_y<T: Scalar>() -> ComplexMatrix2<T> {
    let i = Complex::new(T::zero(), T::one());
    ComplexMatrix2::from_rows([[czero(), -i], [i, czero()]])
}

/// Pauli z.
pub fn pauli_z<T: Scalar>() -> ComplexMatrix2<T> {
    ComplexMatrix2::from_rows([[cone(), czero()], [czero(), -cone::<T>()]])
}

impl<T: Scalar> Neg for ComplexMatrix2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-cone::<T>())
    }
}

/// Dense 4x4 complex matrix in the fixed product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4<T> {
    e: [[Complex<T>; 4]; 4],
}

impl<T: Scalar> ComplexMatrix4<T> {
    pub fn from_rows(e: [[Complex<T>; 4]; 4]) -> Self {
        Self { e }
    }

    pub fn zeros() -> Self {
        Self {
            e: [[czero(); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.e[i][i] = cone();
        }
        m
    }

    /// Builds a matrix from real entries.
    pub fn from_real(e: [[T; 4]; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = Complex::new(e[i][j], T::zero());
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.e[i][j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.e[i][j] = self.e[j][i].conj();
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        let mut out = *self;
        for row in &mut out.e {
            for v in row {
                *v = v.conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.e[i][j] = self.e[j][i];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        self.e[0][0] + self.e[1][1] + self.e[2][2] + self.e[3][3]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = *self;
        for row in &mut out.e {
            for v in row {
                *v = *v * s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for row in &self.e {
            for v in row {
                m = m.max(v.norm());
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        m
    }

    /// Max entrywise deviation from Hermitian symmetry.
    pub fn herm_deviation(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// Max entrywise deviation of `self.adjoint() * self` from the identity.
    pub fn unitarity_deviation(&self) -> T {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    /// Max entrywise deviation from central symmetry `m[i][j] == m[3-i][3-j]`.
    pub fn central_symmetry_deviation(&self) -> T {
        let mut m = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.e[i][j] - self.e[3 - i][3 - j]).norm());
            }
        }
        m
    }

    /// Commutator norm `max |AB - BA|`.
    pub fn commutator_norm(&self, other: &Self) -> T {
        (*self * *other).max_abs_diff(&(*other * *self))
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix4<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.e[i][j]
    }
}

impl<T: Scalar> Mul for ComplexMatrix4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.e[i][k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..4 {
                    out.e[i][j] = out.e[i][j] + a * rhs.e[k][j];
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for ComplexMatrix4<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.e[i][j] = out.e[i][j] + rhs.e[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Sub for ComplexMatrix4<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.e[i][j] = out.e[i][j] - rhs.e[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Neg for ComplexMatrix4<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-cone::<T>())
    }
}

/// Kronecker product; the first factor acts on spin 1.
pub fn tensor<T: Scalar>(a: &ComplexMatrix2<T>, b: &ComplexMatrix2<T>) -> ComplexMatrix4<T> {
    let mut out = ComplexMatrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.e[2 * i + k][2 * j + l] = a.e[i][j] * b.e[k][l];
                }
            }
        }
    }
    out
}

/// 4x4 matrix validated to be Hermitian on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix4<T> {
    inner: ComplexMatrix4<T>,
}

impl<T: Scalar> HermitianMatrix4<T> {
    pub fn new(m: ComplexMatrix4<T>) -> Result<Self> {
        let dev = m.herm_deviation();
        if dev > T::hermiticity_tol() {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { inner: m })
    }

    pub fn matrix(&self) -> &ComplexMatrix4<T> {
        &self.inner
    }
}

/// 4x4 matrix validated to be unitary on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryMatrix4<T> {
    inner: ComplexMatrix4<T>,
}

impl<T: Scalar> UnitaryMatrix4<T> {
    pub fn new(m: ComplexMatrix4<T>) -> Result<Self> {
        let dev = m.unitarity_deviation();
        if dev > T::unitarity_tol() {
            return Err(Error::NotUnitary {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { inner: m })
    }

    /// Wraps a matrix that is unitary by construction.
    pub(crate) fn new_unchecked(m: ComplexMatrix4<T>) -> Self {
        debug_assert!(m.unitarity_deviation() <= T::unitarity_tol());
        Self { inner: m }
    }

    pub fn identity() -> Self {
        Self {
            inner: ComplexMatrix4::identity(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix4<T> {
        &self.inner
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    /// `U rho U.adjoint()`.
    pub fn conjugate_matrix(&self, m: &ComplexMatrix4<T>) -> ComplexMatrix4<T> {
        self.inner * *m * self.inner.adjoint()
    }

    /// Exact integer power through the spectral decomposition.
    ///
    /// A unitary is normal, so its Hermitian real and imaginary parts commute
    /// and share an eigenbasis: diagonalize `(U + U^dag)/2`, refine any
    /// degenerate subspaces against `(U - U^dag)/(2i)`, then read off the unit
    /// eigenphases and raise them individually. Phase powers do not
    /// accumulate matrix-product roundoff, which matters for thousands of
    /// periods.
    pub fn power(&self, m: u64) -> Self {
        if m == 0 {
            return Self::identity();
        }
        if m == 1 {
            return *self;
        }
        let u = &self.inner;
        let half = Complex::new(real::<T>(0.5), T::zero());
        let mihalf = Complex::new(T::zero(), -real::<T>(0.5));
        let udag = u.adjoint();
        let h_re = (*u + udag).scale(half);
        let h_im = (*u - udag).scale(mihalf);
        let (_, v1) = jacobi_hermitian4(&h_re);
        let b = v1.adjoint() * h_im * v1;
        let (_, w) = jacobi_hermitian4(&b);
        let v = v1 * w;
        let d = v.adjoint() * *u * v;
        let mf = real::<T>(m as f64);
        let mut phases = ComplexMatrix4::zeros();
        for k in 0..4 {
            let theta = d[(k, k)].arg();
            phases.set(k, k, Complex::from_polar(T::one(), theta * mf));
        }
        let out = v * phases * v.adjoint();
        debug_assert!(out.unitarity_deviation() <= T::unitarity_tol());
        Self { inner: out }
    }
}

impl<T: Scalar> Mul for UnitaryMatrix4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            inner: self.inner * rhs.inner,
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite 4x4 matrix: the system state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T> {
    inner: ComplexMatrix4<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(m: ComplexMatrix4<T>) -> Result<Self> {
        let dev = m.herm_deviation();
        if dev > T::hermiticity_tol() {
            return Err(Error::NotDensityMatrix {
                reason: format!("hermiticity deviation {dev:e}"),
            });
        }
        let tr = m.trace();
        let tr_err = (tr - cone::<T>()).norm();
        if tr_err > T::hermiticity_tol() {
            return Err(Error::NotDensityMatrix {
                reason: format!("trace deviates from 1 by {tr_err:e}"),
            });
        }
        let herm = HermitianMatrix4 { inner: m };
        let eig = eig_hermitian(&herm);
        let min = eig.values[3];
        if min < -T::psd_tol() {
            return Err(Error::NotDensityMatrix {
                reason: format!("negative eigenvalue {min:e}"),
            });
        }
        Ok(Self { inner: m })
    }

    /// Wraps a matrix known to be a valid state (e.g. a unitary conjugation
    /// of a validated one).
    pub(crate) fn new_unchecked(m: ComplexMatrix4<T>) -> Self {
        debug_assert!(m.herm_deviation() <= T::hermiticity_tol());
        debug_assert!((m.trace() - cone::<T>()).norm() <= T::hermiticity_tol());
        Self { inner: m }
    }

    /// Rank-1 state from a (not necessarily normalized) 4-vector.
    pub fn pure(v: [Complex<T>; 4]) -> Result<Self> {
        let norm_sqr = v.iter().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if norm_sqr <= T::zero() {
            return Err(Error::NotDensityMatrix {
                reason: "zero state vector".into(),
            });
        }
        let mut m = ComplexMatrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = v[i] * v[j].conj() / Complex::new(norm_sqr, T::zero());
            }
        }
        Ok(Self { inner: m })
    }

    pub fn maximally_mixed() -> Self {
        Self {
            inner: ComplexMatrix4::identity().scale_re(real::<T>(0.25)),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix4<T> {
        &self.inner
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> [T; 4] {
        let herm = HermitianMatrix4 { inner: self.inner };
        eig_hermitian(&herm).values
    }
}

/// Which spin a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    One,
    Two,
}

/// Traces out one spin of a two-spin state; `partial_trace(rho, Spin::Two)`
/// keeps spin 1.
pub fn partial_trace<T: Scalar>(rho: &DensityMatrix<T>, traced: Spin) -> ComplexMatrix2<T> {
    let m = rho.matrix();
    let mut out = ComplexMatrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = czero();
            for k in 0..2 {
                acc = acc
                    + match traced {
                        Spin::Two => m[(2 * i + k, 2 * j + k)],
                        Spin::One => m[(2 * k + i, 2 * k + j)],
                    };
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Eigendecomposition of a Hermitian 4x4 matrix: `h = V diag(values) V.adjoint()`.
#[derive(Debug, Clone)]
pub struct HermitianEig<T> {
    /// Eigenvalues sorted descending.
    pub values: [T; 4],
    /// Eigenvectors as the columns of a unitary matrix, in the same order.
    pub vectors: UnitaryMatrix4<T>,
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi sweeps with complex
/// rotations. Quadratic convergence; a handful of sweeps reaches machine
/// precision at this size.
pub fn eig_hermitian<T: Scalar>(h: &HermitianMatrix4<T>) -> HermitianEig<T> {
    let (values, vectors) = jacobi_hermitian4(h.matrix());
    HermitianEig {
        values,
        vectors: UnitaryMatrix4::new_unchecked(vectors),
    }
}

fn jacobi_hermitian4<T: Scalar>(m: &ComplexMatrix4<T>) -> ([T; 4], ComplexMatrix4<T>) {
    let mut a = *m;
    let mut v = ComplexMatrix4::<T>::identity();
    let scale = a.max_abs();
    if scale > T::zero() {
        let stop = scale * T::epsilon() * real::<T>(0.5);
        let one = T::one();
        let two = real::<T>(2.0);
        for _sweep in 0..64 {
            let mut off = T::zero();
            for p in 0..4 {
                for q in (p + 1)..4 {
                    off = off.max(a.e[p][q].norm());
                }
            }
            if off <= stop {
                break;
            }
            for p in 0..3 {
                for q in (p + 1)..4 {
                    let apq = a.e[p][q];
                    let r = apq.norm();
                    if r <= stop {
                        continue;
                    }
                    // Phase factor absorbing arg(a_pq), then a real rotation
                    // annihilating the pivot.
                    let w = apq / Complex::new(r, T::zero());
                    let app = a.e[p][p].re;
                    let aqq = a.e[q][q].re;
                    let tau = (aqq - app) / (two * r);
                    let sgn = if tau < T::zero() { -one } else { one };
                    let t = sgn / (tau.abs() + (one + tau * tau).sqrt());
                    let c = one / (one + t * t).sqrt();
                    let s = t * c;
                    let cs = Complex::new(c, T::zero());
                    let ss = Complex::new(s, T::zero());
                    let wc = w.conj();
                    // Column update: A <- A J with J[p][p]=c, J[p][q]=s,
                    // J[q][p]=-s*conj(w), J[q][q]=c*conj(w).
                    for k in 0..4 {
                        let akp = a.e[k][p];
                        let akq = a.e[k][q];
                        a.e[k][p] = akp * cs - akq * (ss * wc);
                        a.e[k][q] = akp * ss + akq * (cs * wc);
                    }
                    // Row update: A <- J.adjoint() A.
                    for k in 0..4 {
                        let apk = a.e[p][k];
                        let aqk = a.e[q][k];
                        a.e[p][k] = apk * cs - aqk * (ss * w);
                        a.e[q][k] = apk * ss + aqk * (cs * w);
                    }
                    // Accumulate V <- V J.
                    for k in 0..4 {
                        let vkp = v.e[k][p];
                        let vkq = v.e[k][q];
                        v.e[k][p] = vkp * cs - vkq * (ss * wc);
                        v.e[k][q] = vkp * ss + vkq * (cs * wc);
                    }
                    a.e[p][q] = czero();
                    a.e[q][p] = czero();
                }
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| {
        a.e[j][j]
            .re
            .partial_cmp(&a.e[i][i].re)
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut values = [T::zero(); 4];
    let mut vectors = ComplexMatrix4::<T>::zeros();
    let gauge_floor = T::epsilon().sqrt();
    for (col, &src) in order.iter().enumerate() {
        values[col] = a.e[src][src].re;
        // Gauge fix: rotate the global phase so that the first component of
        // appreciable size is positive real. Deterministic across runs.
        let mut phase = cone::<T>();
        for k in 0..4 {
            let vk = v.e[k][src];
            if vk.norm() > gauge_floor {
                phase = vk.conj() / Complex::new(vk.norm(), T::zero());
                break;
            }
        }
        for k in 0..4 {
            vectors.e[k][col] = v.e[k][src] * phase;
        }
    }
    (values, vectors)
}

/// `exp(-i t h)` for Hermitian `h`, via exact eigendecomposition.
pub fn expm_i<T: Scalar>(h: &HermitianMatrix4<T>, t: T) -> UnitaryMatrix4<T> {
    let eig = eig_hermitian(h);
    let v = eig.vectors.matrix();
    let mut phases = ComplexMatrix4::zeros();
    for k in 0..4 {
        phases.set(k, k, Complex::from_polar(T::one(), -eig.values[k] * t));
    }
    UnitaryMatrix4::new_unchecked(*v * phases * v.adjoint())
}

/// `exp(s h)` for Hermitian `h` and real `s` (not unitary; used for thermal
/// weights).
pub fn expm_real<T: Scalar>(h: &HermitianMatrix4<T>, s: T) -> ComplexMatrix4<T> {
    let eig = eig_hermitian(h);
    let v = eig.vectors.matrix();
    let mut weights = ComplexMatrix4::zeros();
    for k in 0..4 {
        weights.set(k, k, Complex::new((eig.values[k] * s).exp(), T::zero()));
    }
    *v * weights * v.adjoint()
}
