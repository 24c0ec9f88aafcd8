//! Two-atom density matrices in the coupled basis {|G⟩, |A⟩, |S⟩, |E⟩},
//! restricted to X form, and their exact propagation.
//!
//! `|A⟩ = (|10⟩ − |01⟩)/√2` and `|S⟩ = (|10⟩ + |01⟩)/√2`. Populations are
//! ordered `[gg, ee, aa, ss]` wherever they appear as a vector.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, Mat4, ZERO};

pub const TRACE_TOL: f64 = 1e-10;
pub const POPULATION_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Spectral propagation is used while the similarity transform that
/// symmetrizes the generator stays within this condition number.
const SPECTRAL_MAX_CONDITION: f64 = 1e4;

pub const GG: usize = 0;
pub const EE: usize = 1;
pub const AA: usize = 2;
pub const SS: usize = 3;

/// X-form density matrix in the coupled basis. `ρ_SA = conj(c_as)` and
/// `ρ_EG = conj(c_ge)` are implied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub p_gg: f64,
    pub p_ee: f64,
    pub p_aa: f64,
    pub p_ss: f64,
    pub c_as: Complex64,
    pub c_ge: Complex64,
}

impl XState {
    pub fn from_elements(
        p_gg: f64,
        p_ee: f64,
        p_aa: f64,
        p_ss: f64,
        c_as: Complex64,
        c_ge: Complex64,
    ) -> Result<Self> {
        let s = XState {
            p_gg,
            p_ee,
            p_aa,
            p_ss,
            c_as,
            c_ge,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_populations(p: [f64; 4], c_as: Complex64, c_ge: Complex64) -> Self {
        XState {
            p_gg: p[GG],
            p_ee: p[EE],
            p_aa: p[AA],
            p_ss: p[SS],
            c_as,
            c_ge,
        }
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.p_gg, self.p_ee, self.p_aa, self.p_ss]
    }

    pub fn trace(&self) -> f64 {
        self.p_gg + self.p_ee + self.p_aa + self.p_ss
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.p_gg,
            self.p_ee,
            self.p_aa,
            self.p_ss,
            self.c_as.re,
            self.c_as.im,
            self.c_ge.re,
            self.c_ge.im,
        ];
        if !all.iter().all(|x| x.is_finite()) {
            return Err(Error::NotFinite("state element"));
        }
        if (self.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceDeviation(self.trace() - 1.0));
        }
        if self.populations().iter().any(|&p| p < -POPULATION_TOL) {
            return Err(Error::InvalidState("negative population"));
        }
        if self.c_as.norm_sqr() > self.p_aa * self.p_ss + POSITIVITY_TOL {
            return Err(Error::InvalidState("A/S block not positive"));
        }
        if self.c_ge.norm_sqr() > self.p_gg * self.p_ee + POSITIVITY_TOL {
            return Err(Error::InvalidState("G/E block not positive"));
        }
        Ok(())
    }

    /// Dense 4×4 matrix in the coupled basis order (G, A, S, E).
    pub fn coupled_matrix(&self) -> CMat<4> {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = self.p_gg.into();
        m[1][1] = self.p_aa.into();
        m[2][2] = self.p_ss.into();
        m[3][3] = self.p_ee.into();
        m[1][2] = self.c_as;
        m[2][1] = self.c_as.conj();
        m[0][3] = self.c_ge;
        m[3][0] = self.c_ge.conj();
        m
    }
}

/// `|10⟩`: one atom excited, the other in its ground state.
pub fn initial_product_eg() -> XState {
    XState {
        p_gg: 0.0,
        p_ee: 0.0,
        p_aa: 0.5,
        p_ss: 0.5,
        c_as: Complex64::new(0.5, 0.0),
        c_ge: ZERO,
    }
}

/// `cos θ|A⟩ + sin θ e^{iφ}|S⟩`.
///
/// The A–S coherence is stored as `cos θ sin θ e^{+iφ}`. This is the phase
/// under which the propagated concurrence reproduces the closed-form initial
/// rate in [`crate::entanglement::initial_rate_superposition`] (its
/// `−2D sin²2θ sin2φ` term); the acceptance suite pins it against finite
/// differences.
pub fn initial_superposition(theta: f64, phi: f64) -> XState {
    let (s, c) = theta.sin_cos();
    XState {
        p_gg: 0.0,
        p_ee: 0.0,
        p_aa: c * c,
        p_ss: s * s,
        c_as: Complex64::from_polar(c * s, phi),
        c_ge: ZERO,
    }
}

/// Rate matrix acting on the population vector `[gg, ee, aa, ss]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalGenerator {
    pub m: Mat4,
}

pub fn diagonal_generator(c: &Coefficients) -> DiagonalGenerator {
    let (a1, a2, b1, b2) = (c.a1, c.a2, c.b1, c.b2);
    // ground-state feeding from A/S, and the excitation counterparts
    let a_to_g = 2.0 * (a1 + b1 - a2 - b2);
    let s_to_g = 2.0 * (a1 + b1 + a2 + b2);
    let a_to_e = 2.0 * (a1 - b1 - a2 + b2);
    let s_to_e = 2.0 * (a1 - b1 + a2 - b2);
    let m = [
        [-4.0 * (a1 - b1), 0.0, a_to_g, s_to_g],
        [0.0, -4.0 * (a1 + b1), a_to_e, s_to_e],
        [a_to_e, a_to_g, -4.0 * (a1 - a2), 0.0],
        [s_to_e, s_to_g, 0.0, -4.0 * (a1 + a2)],
    ];
    DiagonalGenerator { m }
}

impl DiagonalGenerator {
    pub fn column_sums(&self) -> [f64; 4] {
        let mut sums = [0.0; 4];
        for row in &self.m {
            for (s, x) in sums.iter_mut().zip(row) {
                *s += x;
            }
        }
        sums
    }
}

#[derive(Debug, Clone, Copy)]
enum FlowRoute {
    /// `exp(Mτ) = W^{1/2}·V·e^{Λτ}·Vᵀ·W^{-1/2}` with `W` the detailed-balance weights.
    Spectral {
        sqrt_weights: [f64; 4],
        eigvals: [f64; 4],
        vecs: Mat4,
    },
    Uniformized,
}

/// Precomputed exact flow of the population equations together with the
/// closed-form coherence decay. Cheap to copy and share across threads.
#[derive(Debug, Clone, Copy)]
pub struct Propagator {
    coeffs: Coefficients,
    generator: DiagonalGenerator,
    route: FlowRoute,
}

impl Propagator {
    pub fn new(coeffs: &Coefficients) -> Self {
        let generator = diagonal_generator(coeffs);
        let r = coeffs.boltzmann_factor();
        let route = if r > 0.0 && 1.0 / r <= SPECTRAL_MAX_CONDITION {
            spectral_route(&generator, r)
        } else {
            FlowRoute::Uniformized
        };
        Propagator {
            coeffs: *coeffs,
            generator,
            route,
        }
    }

    /// Force the scaling-and-squaring route regardless of conditioning.
    pub fn uniformized(coeffs: &Coefficients) -> Self {
        Propagator {
            coeffs: *coeffs,
            generator: diagonal_generator(coeffs),
            route: FlowRoute::Uniformized,
        }
    }

    pub fn is_spectral(&self) -> bool {
        matches!(self.route, FlowRoute::Spectral { .. })
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn generator(&self) -> &DiagonalGenerator {
        &self.generator
    }

    /// `exp(M·tau)` as a matrix.
    pub fn population_matrix(&self, tau: f64) -> Mat4 {
        match self.route {
            FlowRoute::Uniformized => linalg::expm_rate_matrix(&self.generator.m, tau),
            FlowRoute::Spectral {
                sqrt_weights,
                eigvals,
                vecs,
            } => {
                let mut out = [[0.0; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        let mut acc = 0.0;
                        for k in 0..4 {
                            acc += vecs[i][k] * (eigvals[k] * tau).exp() * vecs[j][k];
                        }
                        out[i][j] = sqrt_weights[i] * acc / sqrt_weights[j];
                    }
                }
                out
            }
        }
    }

    pub fn populations_at(&self, p0: &[f64; 4], tau: f64) -> [f64; 4] {
        match self.route {
            FlowRoute::Uniformized => linalg::matvec4(&self.population_matrix(tau), p0),
            FlowRoute::Spectral {
                sqrt_weights,
                eigvals,
                vecs,
            } => {
                let mut y = [0.0; 4];
                for (k, yk) in y.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for i in 0..4 {
                        acc += vecs[i][k] * p0[i] / sqrt_weights[i];
                    }
                    *yk = acc * (eigvals[k] * tau).exp();
                }
                let mut p = [0.0; 4];
                for (i, pi) in p.iter_mut().enumerate() {
                    let acc: f64 = (0..4).map(|k| vecs[i][k] * y[k]).sum();
                    *pi = sqrt_weights[i] * acc;
                }
                p
            }
        }
    }

    /// Decay factors `(e^{−4(A1+iD)τ}, e^{−4A1τ})` for `(c_as, c_ge)`.
    pub fn coherence_factors(&self, tau: f64) -> (Complex64, f64) {
        let damp = (-4.0 * self.coeffs.a1 * tau).exp();
        let rot = Complex64::from_polar(damp, -4.0 * self.coeffs.d * tau);
        (rot, damp)
    }

    /// Propagate without argument checks; `tau ≥ 0` is the caller's job.
    pub fn apply(&self, state: &XState, tau: f64) -> XState {
        let p = self.populations_at(&state.populations(), tau);
        let (rot, damp) = self.coherence_factors(tau);
        XState::from_populations(p, state.c_as * rot, state.c_ge * damp)
    }

    pub fn evolve(&self, state: &XState, tau: f64) -> Result<XState> {
        check_time(tau)?;
        state.validate()?;
        Ok(self.apply(state, tau))
    }
}

fn spectral_route(generator: &DiagonalGenerator, r: f64) -> FlowRoute {
    let weights = [1.0, r * r, r, r];
    let mut sqrt_weights = [0.0; 4];
    for (s, w) in sqrt_weights.iter_mut().zip(weights) {
        *s = w.sqrt();
    }
    let m = &generator.m;
    let mut sym: CMat<4> = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let upper = m[i][j] * sqrt_weights[j] / sqrt_weights[i];
            let lower = m[j][i] * sqrt_weights[i] / sqrt_weights[j];
            sym[i][j] = (0.5 * (upper + lower)).into();
        }
    }
    let (mut eigvals, cvecs) = linalg::hermitian_eigen(sym);
    for v in eigvals.iter_mut() {
        if *v > 0.0 {
            *v = 0.0;
        }
    }
    let mut vecs = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            vecs[i][k] = cvecs[i][k].re;
        }
    }
    FlowRoute::Spectral {
        sqrt_weights,
        eigvals,
        vecs,
    }
}

fn check_time(tau: f64) -> Result<()> {
    if tau.is_nan() {
        return Err(Error::NotFinite("time"));
    }
    if tau < 0.0 {
        return Err(Error::NegativeTime(tau));
    }
    Ok(())
}

pub fn evolve(state0: &XState, coeffs: &Coefficients, tau: f64) -> Result<XState> {
    Propagator::new(coeffs).evolve(state0, tau)
}

/// `n` samples at uniform spacing over `[0, tau_max]`, endpoints included.
/// Every sample is an independent exact evaluation of the flow.
pub fn trajectory(
    state0: &XState,
    coeffs: &Coefficients,
    tau_max: f64,
    n: usize,
) -> Result<Vec<(f64, XState)>> {
    if n < 2 {
        return Err(Error::InvalidSampleCount(n));
    }
    if !tau_max.is_finite() || tau_max <= 0.0 {
        return Err(Error::InvalidRange("tau_max must be positive and finite"));
    }
    state0.validate()?;
    let prop = Propagator::new(coeffs);
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            let tau = if k == n - 1 {
                tau_max
            } else {
                tau_max * k as f64 / last
            };
            (tau, prop.apply(state0, tau))
        })
        .collect())
}

/// Stationary state of the rate equations with all coherences decayed.
pub fn steady_state(coeffs: &Coefficients) -> Result<XState> {
    let generator = diagonal_generator(coeffs);
    let v = linalg::null_vector4(&generator.m).ok_or(Error::DegenerateSteadyState)?;
    let total: f64 = v.iter().sum();
    if total == 0.0 || !total.is_finite() {
        return Err(Error::DegenerateSteadyState);
    }
    let mut p = [0.0; 4];
    for (pi, vi) in p.iter_mut().zip(v) {
        *pi = vi / total;
    }
    Ok(XState::from_populations(p, ZERO, ZERO))
}
