//! Quantum discord of the scheme-A locked state.
//!
//! Three routes to the same quantity, in increasing generality:
//! a closed high-temperature formula, an exact X-state formula obtained after
//! a local Hadamard pair, and a projective-measurement construction whose
//! measurement angle is minimized numerically by a random-mutation search.
//! The minimum is expected at `theta = pi/2`; the optimizer is there to test
//! that expectation rather than assume it.
//!
//! Measurements act on the second spin throughout. The states produced by
//! scheme A are exchange-symmetric, so the choice of side is immaterial.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::pulsekit::{propagate, PulseProgram};
use crate::qmat::{
    partial_trace, pauli_x, pauli_y, pauli_z, tensor, ComplexMatrix2,
    DensityMatrix, Spin, UnitaryMatrix4,
};
use crate::{real, Result, Scalar};

/// `-p log2(p)` with the `0 log 0 = 0` convention and dust clamped into
/// `[0, 1]`.
fn neg_x_log2<T: Scalar>(p: T) -> T {
    let p = p.max(T::zero()).min(T::one());
    if p <= T::zero() {
        T::zero()
    } else {
        -(p * p.log2())
    }
}

/// Binary entropy `h(p)`.
pub fn binary_entropy<T: Scalar>(p: T) -> T {
    neg_x_log2(p) + neg_x_log2(T::one() - p)
}

/// Von Neumann entropy of a two-spin state, in bits.
pub fn von_neumann_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    rho.eigenvalues()
        .into_iter()
        .map(neg_x_log2)
        .fold(T::zero(), |a, b| a + b)
}

/// Entropy of a single-spin density matrix, in bits.
pub fn single_qubit_entropy<T: Scalar>(rho: &ComplexMatrix2<T>) -> T {
    let [a, b] = rho.hermitian_eigenvalues();
    neg_x_log2(a) + neg_x_log2(b)
}

/// Transverse-plus-cross Bloch coefficients of the locked state to first
/// order in `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition<T> {
    /// Coefficient of `sigma_x x I + I x sigma_x` (over 4).
    pub a1x: T,
    /// Coefficient of `sigma_y x sigma_z + sigma_z x sigma_y` (over 4).
    pub azy: T,
    /// Rotating phase `x = (3/2)(a - 2) M tbar`.
    pub x: T,
}

impl<T: Scalar> BlochDecomposition<T> {
    pub fn new(a: T, periods: u64, tbar: T, beta: T) -> Self {
        let x = crate::entangle::scheme_a_phase(a, periods, tbar);
        let half_beta = beta * real::<T>(0.5);
        Self {
            a1x: half_beta * x.cos(),
            azy: -half_beta * x.sin(),
            x,
        }
    }

    /// Materializes the first-order state. Fails for `beta` large enough
    /// that the truncation stops being positive semidefinite.
    pub fn density_matrix(&self) -> Result<DensityMatrix<T>> {
        let id = ComplexMatrix2::identity();
        let quarter = Complex::new(real::<T>(0.25), T::zero());
        let sx = pauli_x::<T>();
        let sy = pauli_y::<T>();
        let sz = pauli_z::<T>();
        let m = tensor(&id, &id).scale(quarter)
            + (tensor(&sx, &id) + tensor(&id, &sx))
                .scale(quarter * Complex::new(self.a1x, T::zero()))
            + (tensor(&sy, &sz) + tensor(&sz, &sy))
                .scale(quarter * Complex::new(self.azy, T::zero()));
        DensityMatrix::new(m)
    }
}

/// High-temperature discord `beta^2/(8 ln 2) sin^2(x)`.
pub fn discord_high_temperature<T: Scalar>(a: T, periods: u64, tbar: T, beta: T) -> T {
    let x = crate::entangle::scheme_a_phase(a, periods, tbar);
    let s = x.sin();
    beta * beta / (real::<T>(8.0) * real::<T>(core::f64::consts::LN_2)) * s * s
}

/// Quadratic-order conditional entropy after measuring along the Bloch
/// direction `n`: `1 - (A1x^2 + Azy^2 (1 - nx^2)) / (2 ln 2)`.
/// Minimal on the `nx = 0` circle.
pub fn conditional_entropy_high_t<T: Scalar>(n: [T; 3], decomp: &BlochDecomposition<T>) -> T {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    assert!(
        (norm - T::one()).abs() <= real::<T>(1e-10),
        "measurement direction must be a unit vector"
    );
    let a2 = decomp.a1x * decomp.a1x;
    let z2 = decomp.azy * decomp.azy * (T::one() - n[0] * n[0]);
    T::one() - (a2 + z2) / (real::<T>(2.0) * real::<T>(core::f64::consts::LN_2))
}

/// Rank-1 projective measurement on one spin, parameterized by spherical
/// angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projector<T> {
    pub theta: T,
    pub phi_angle: T,
}

impl<T: Scalar> Projector<T> {
    pub fn new(theta: T, phi_angle: T) -> Self {
        Self { theta, phi_angle }
    }

    /// Projector from a unit Bloch vector.
    pub fn from_bloch(n: [T; 3]) -> Self {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        assert!(
            (norm - T::one()).abs() <= real::<T>(1e-10),
            "Bloch vector must be unit length"
        );
        Self {
            theta: n[2].min(T::one()).max(-T::one()).acos(),
            phi_angle: n[1].atan2(n[0]),
        }
    }

    /// `Pi_0 = [[cos^2(theta/2), e^{-i Phi} sin(theta)/2], [e^{i Phi} sin(theta)/2, sin^2(theta/2)]]`.
    pub fn pi0(&self) -> ComplexMatrix2<T> {
        let half = real::<T>(0.5);
        let ch = (self.theta * half).cos();
        let sh = (self.theta * half).sin();
        let off = Complex::from_polar(half * self.theta.sin(), -self.phi_angle);
        let mut m = ComplexMatrix2::zeros();
        m.set(0, 0, Complex::new(ch * ch, T::zero()));
        m.set(1, 1, Complex::new(sh * sh, T::zero()));
        m.set(0, 1, off);
        m.set(1, 0, off.conj());
        m
    }

    /// The complement `Pi_1 = I - Pi_0`.
    pub fn pi1(&self) -> ComplexMatrix2<T> {
        ComplexMatrix2::identity() - self.pi0()
    }
}

/// Post-measurement ensemble `{p_k, rho_k}` after projecting the second spin.
#[derive(Debug, Clone, Copy)]
pub struct MeasuredEnsemble<T> {
    pub p0: T,
    pub rho0: DensityMatrix<T>,
    pub p1: T,
    pub rho1: DensityMatrix<T>,
}

impl<T: Scalar> MeasuredEnsemble<T> {
    /// `sum_k p_k S(rho_k)`; branches of negligible weight contribute zero.
    pub fn conditional_entropy(&self) -> T {
        let mut s = T::zero();
        for (p, rho) in [(self.p0, &self.rho0), (self.p1, &self.rho1)] {
            if p > T::branch_cutoff() {
                s += p * von_neumann_entropy(rho);
            }
        }
        s
    }
}

/// Applies `I x Pi_k` to the state and normalizes each branch.
///
/// A branch with probability at or below [`Scalar::branch_cutoff`] is
/// reported as the maximally mixed state; its weight makes it irrelevant to
/// any entropy average.
pub fn measured_ensemble<T: Scalar>(
    rho: &DensityMatrix<T>,
    proj: &Projector<T>,
) -> MeasuredEnsemble<T> {
    let branch = |pi: ComplexMatrix2<T>| -> (T, DensityMatrix<T>) {
        let e = tensor(&ComplexMatrix2::identity(), &pi);
        let m = e * *rho.matrix() * e;
        let p = m.trace().re.max(T::zero());
        if p > T::branch_cutoff() {
            (p, DensityMatrix::new_unchecked(m.scale_re(p.recip())))
        } else {
            (p, DensityMatrix::maximally_mixed())
        }
    };
    let (p0, rho0) = branch(proj.pi0());
    let (p1, rho1) = branch(proj.pi1());
    MeasuredEnsemble { p0, rho0, p1, rho1 }
}

fn hadamard_pair<T: Scalar>() -> UnitaryMatrix4<T> {
    let s = Complex::new(real::<T>(0.5).sqrt(), T::zero());
    let mut h = ComplexMatrix2::zeros();
    h.set(0, 0, s);
    h.set(0, 1, s);
    h.set(1, 0, s);
    h.set(1, 1, -s);
    UnitaryMatrix4::new_unchecked(tensor(&h, &h))
}

/// Conjugates the state by the local Hadamard pair `H x H`, which maps the
/// scheme-A locked state to X form (nonzero entries on the diagonal and
/// anti-diagonal only).
pub fn x_state_transform<T: Scalar>(rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    DensityMatrix::new_unchecked(hadamard_pair::<T>().conjugate_matrix(rho.matrix()))
}

/// Parameters of the Hadamard-transformed scheme-A state
/// (`dpar` is the paper-independent name for the last diagonal entry, kept
/// distinct from the dipolar coupling constant).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams<T> {
    pub abar: T,
    pub b: T,
    pub dpar: T,
    pub u: T,
}

impl<T: Scalar> XStateParams<T> {
    pub fn scheme_a(a: T, periods: u64, tbar: T, beta: T) -> Self {
        Self::from_phase(crate::entangle::scheme_a_phase(a, periods, tbar), beta)
    }

    /// Diagonal `(abar, b, b, dpar)` and anti-diagonal corner `i u` at
    /// rotating phase `x`.
    pub fn from_phase(x: T, beta: T) -> Self {
        let half = real::<T>(0.5);
        let quarter = real::<T>(0.25);
        let th = (beta * half).tanh();
        let abar = quarter + half * th * x.cos() + quarter * th * th;
        let b = quarter * (T::one() - th * th);
        let dpar = quarter - half * th * x.cos() + quarter * th * th;
        let u = -half * th * x.sin();
        debug_assert!(
            (abar + b + b + dpar - T::one()).abs() <= real::<T>(1e-12)
                || (abar + b + b + dpar - T::one()).abs() <= T::hermiticity_tol()
        );
        Self { abar, b, dpar, u }
    }

    fn excitation_root(&self) -> T {
        let diff = self.abar - self.dpar;
        let four = real::<T>(4.0);
        (diff * diff + four * self.u * self.u).max(T::zero()).sqrt()
    }

    /// Entropy of the full X state.
    pub fn total_entropy(&self) -> T {
        let half = real::<T>(0.5);
        let root = self.excitation_root();
        let hi = (self.abar + self.dpar + root) * half;
        let lo = (self.abar + self.dpar - root) * half;
        neg_x_log2(hi) + neg_x_log2(lo) + neg_x_log2(self.b) + neg_x_log2(self.b)
    }

    /// Entropy of either reduced single-spin state (they coincide).
    pub fn subsystem_entropy(&self) -> T {
        binary_entropy(self.abar + self.b)
    }

    /// Conditional entropy of the minimizing (`theta = pi/2`) measurement.
    pub fn min_conditional_entropy(&self) -> T {
        binary_entropy((T::one() + self.excitation_root()) * real::<T>(0.5))
    }
}

/// Exact discord of the scheme-A state via the X-state closed form.
pub fn discord_exact_x<T: Scalar>(a: T, periods: u64, tbar: T, beta: T) -> T {
    discord_exact_from_phase(crate::entangle::scheme_a_phase(a, periods, tbar), beta)
}

/// Same closed form at an explicit rotating phase `x`. Periodic in `x` with
/// period pi, because `x` only enters through `cos^2`, `sin^2`, and the
/// binary entropy of `(1 + tanh(beta/2) cos x)/2`, which is even in `cos x`.
pub fn discord_exact_from_phase<T: Scalar>(x: T, beta: T) -> T {
    let p = XStateParams::from_phase(x, beta);
    p.subsystem_entropy() - p.total_entropy() + p.min_conditional_entropy()
}

/// Measurement-path evaluator for one `(a, M, tbar, beta)` point: the
/// transformed state is propagated once, then reused across angles.
struct SCondEvaluator<T> {
    rho_x: DensityMatrix<T>,
}

impl<T: Scalar> SCondEvaluator<T> {
    fn new(a: T, periods: u64, tbar: T, beta: T) -> Self {
        let program =
            PulseProgram::scheme_a(a, tbar, periods).expect("valid scheme-A parameters");
        let rho0 = crate::hamiltonians::thermal_state(beta).expect("finite beta");
        let rho_x = x_state_transform(&propagate(&program, &rho0));
        Self { rho_x }
    }

    fn s_cond(&self, theta: T, phi_angle: T) -> T {
        measured_ensemble(&self.rho_x, &Projector::new(theta, phi_angle)).conditional_entropy()
    }
}

/// Conditional entropy after measuring the transformed state at angle
/// `theta` (with `Phi = 0`, where the minimum over `Phi` is attained).
pub fn conditional_entropy_theta<T: Scalar>(a: T, periods: u64, tbar: T, beta: T, theta: T) -> T {
    SCondEvaluator::new(a, periods, tbar, beta).s_cond(theta, T::zero())
}

/// Audit variant with the azimuthal angle exposed.
pub fn conditional_entropy_theta_phi<T: Scalar>(
    a: T,
    periods: u64,
    tbar: T,
    beta: T,
    theta: T,
    phi_angle: T,
) -> T {
    SCondEvaluator::new(a, periods, tbar, beta).s_cond(theta, phi_angle)
}

/// Random-mutation minimizer settings. The defaults deliberately overshoot
/// what a smooth one-dimensional objective needs.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub population: usize,
    pub generations: usize,
    /// Initial mutation scale in radians.
    pub sigma0: f64,
    /// Multiplicative per-generation decay of the mutation scale.
    pub decay: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            population: 16,
            generations: 200,
            sigma0: 0.3,
            decay: 0.85,
            seed: 0,
        }
    }
}

/// Survivors carried unchanged into the next generation.
const ELITES: usize = 2;
/// Generations without improvement after which the search is considered
/// settled.
const STAGNATION_WINDOW: usize = 25;

/// Result of the measurement-optimized discord evaluation.
#[derive(Debug, Clone, Copy)]
pub struct DiscordEstimate<T> {
    /// `min(D_0, D_theta*, D_pi/2)`.
    pub discord: T,
    /// Angle the search converged to.
    pub theta_star: T,
    /// Conditional entropy at the best of the three candidates.
    pub s_cond_min: T,
    /// Whether the search stagnated (or its mutation scale collapsed) before
    /// the generation budget ran out; a `false` still returns the best
    /// value found.
    pub converged: bool,
}

/// Minimizes the conditional entropy over the measurement angle by random
/// mutation and assembles the discord from the better of the numerical
/// optimum and the two analytic boundary angles.
pub fn discord_optimized<T: Scalar>(
    a: T,
    periods: u64,
    tbar: T,
    beta: T,
    cfg: &OptimizerConfig,
) -> DiscordEstimate<T> {
    let ev = SCondEvaluator::new(a, periods, tbar, beta);
    let s_rho = von_neumann_entropy(&ev.rho_x);
    let s_b = single_qubit_entropy(&partial_trace(&ev.rho_x, Spin::One));

    // Boundary candidates straight from the X-state entries.
    let m = ev.rho_x.matrix();
    let abar = m[(0, 0)].re;
    let b = m[(1, 1)].re;
    let dpar = m[(3, 3)].re;
    let u = m[(0, 3)].im;
    let p0 = abar + b;
    let p1 = b + dpar;
    let mut s_cond_zero = T::zero();
    if p0 > T::branch_cutoff() {
        s_cond_zero += p0 * binary_entropy(abar / p0);
    }
    if p1 > T::branch_cutoff() {
        s_cond_zero += p1 * binary_entropy(b / p1);
    }
    let diff = abar - dpar;
    let root = (diff * diff + real::<T>(4.0) * u * u).max(T::zero()).sqrt();
    let s_cond_half = binary_entropy((T::one() + root) * real::<T>(0.5));

    // Random-mutation search over theta in [0, pi].
    let pi = real::<T>(core::f64::consts::PI);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pop_size = cfg.population.max(ELITES + 1);
    let mut population: Vec<(T, T)> = (0..pop_size)
        .map(|_| {
            let theta = real::<T>(rng.gen_range(0.0..core::f64::consts::PI));
            (theta, ev.s_cond(theta, T::zero()))
        })
        .collect();
    let by_value =
        |x: &(T, T), y: &(T, T)| x.1.partial_cmp(&y.1).unwrap_or(core::cmp::Ordering::Equal);
    population.sort_by(by_value);
    let mut sigma = cfg.sigma0;
    let mut best = population[0];
    let mut since_improvement = 0usize;
    let mut converged = false;
    for _ in 0..cfg.generations {
        for slot in ELITES..pop_size {
            let parent = population[slot % ELITES].0;
            let step: f64 = rng.sample(StandardNormal);
            let mut theta = parent + real::<T>(step * sigma);
            // Reflect at the domain boundaries.
            loop {
                if theta < T::zero() {
                    theta = -theta;
                } else if theta > pi {
                    theta = pi + pi - theta;
                } else {
                    break;
                }
            }
            population[slot] = (theta, ev.s_cond(theta, T::zero()));
        }
        population.sort_by(by_value);
        if population[0].1 < best.1 - real::<T>(1e-15) {
            best = population[0];
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        sigma *= cfg.decay;
        if since_improvement >= STAGNATION_WINDOW || sigma < 1e-9 {
            converged = true;
            break;
        }
    }

    let (theta_star, s_cond_star) = best;
    let s_cond_min = s_cond_star.min(s_cond_zero).min(s_cond_half);
    let d_star = s_b - s_rho + s_cond_star;
    let d_zero = s_b - s_rho + s_cond_zero;
    let d_half = s_b - s_rho + s_cond_half;
    DiscordEstimate {
        discord: d_star.min(d_zero).min(d_half),
        theta_star,
        s_cond_min,
        converged,
    }
}
