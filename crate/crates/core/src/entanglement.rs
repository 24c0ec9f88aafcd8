//! Concurrence of two-atom states and the initial rates of its change.

use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::gkls::DenseState;
use crate::linalg::{self, CMat, ZERO};
use crate::xstate::{Propagator, XState};
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

/// Negative radicands down to this size are treated as round-off.
pub const RADICAND_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-8;
/// Below this the closed-form superposition rate is treated as singular.
const SINGULAR_DENOMINATOR: f64 = 1e-12;

/// `C = max(0, K1, K2)` together with both branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceBreakdown {
    pub k1: f64,
    pub k2: f64,
    pub c: f64,
}

fn clipped_sqrt(radicand: f64) -> Result<f64> {
    if radicand.is_nan() {
        return Err(Error::NotFinite("radicand"));
    }
    if radicand < -RADICAND_TOL {
        return Err(Error::RadicandNegative(radicand));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Concurrence of an X state from its coupled-basis elements.
///
/// `ρ_AS − ρ_SA = 2i·Im c_as` and `ρ_AS + ρ_SA = 2 Re c_as`, so
/// `K1 = √((ρ_AA−ρ_SS)² + 4 Im²c_as) − 2√(ρ_GG ρ_EE)` and
/// `K2 = 2|ρ_GE| − √((ρ_AA+ρ_SS)² − 4 Re²c_as)`.
pub fn concurrence_x(state: &XState) -> Result<ConcurrenceBreakdown> {
    let diff = state.p_aa - state.p_ss;
    let sum = state.p_aa + state.p_ss;
    let im = state.c_as.im;
    let re = state.c_as.re;
    let k1 =
        clipped_sqrt(diff * diff + 4.0 * im * im)? - 2.0 * clipped_sqrt(state.p_gg * state.p_ee)?;
    let k2 = 2.0 * state.c_ge.norm() - clipped_sqrt(sum * sum - 4.0 * re * re)?;
    Ok(ConcurrenceBreakdown {
        k1,
        k2,
        c: k1.max(k2).max(0.0),
    })
}

/// Wootters concurrence of an arbitrary two-qubit density matrix:
/// `max(0, λ1 − λ2 − λ3 − λ4)` with `λ` the decreasing square roots of the
/// eigenvalues of `ρ·(σy⊗σy)ρ*(σy⊗σy)`, obtained from the Hermitian
/// product `√ρ ρ̃ √ρ`.
pub fn concurrence_general(rho: &DenseState) -> Result<f64> {
    let defect = linalg::hermiticity_defect(&rho.rho);
    if !defect.is_finite() || defect > 1e-12 {
        return Err(Error::NonHermitian(defect));
    }
    let tr = rho.trace();
    if (tr - 1.0).norm() > TRACE_TOL {
        return Err(Error::TraceDeviation(tr.re - 1.0));
    }

    let (vals, vecs) = linalg::hermitian_eigen(rho.rho);
    let mut sqrt_rho: CMat<4> = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = ZERO;
            for k in 0..4 {
                acc += vecs[i][k] * vals[k].max(0.0).sqrt() * vecs[j][k].conj();
            }
            sqrt_rho[i][j] = acc;
        }
    }
    // (σy⊗σy) ρ* (σy⊗σy): reverse both indices, sign (−1)^(parity of i + j)
    // with the antidiagonal of σy⊗σy being (−1, 1, 1, −1).
    let flip_sign = [-1.0, 1.0, 1.0, -1.0];
    let mut tilde: CMat<4> = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            tilde[i][j] = rho.rho[3 - i][3 - j].conj() * (flip_sign[i] * flip_sign[j]);
        }
    }
    let r = linalg::cmatmul(&linalg::cmatmul(&sqrt_rho, &tilde), &sqrt_rho);
    // symmetrize away round-off before the Hermitian solver
    let mut herm = r;
    for i in 0..4 {
        for j in 0..4 {
            herm[i][j] = (r[i][j] + r[j][i].conj()) * 0.5;
        }
    }
    let (mu, _) = linalg::hermitian_eigen(herm);
    // ascending → λ4 ≤ λ3 ≤ λ2 ≤ λ1
    let lam: [f64; 4] = core::array::from_fn(|i| mu[i].max(0.0).sqrt());
    Ok((lam[3] - lam[2] - lam[1] - lam[0]).max(0.0))
}

/// Whether `|10⟩` starts generating entanglement: `A2² + D² > A1² − B1²`.
pub fn generation_possible(c: &Coefficients) -> bool {
    c.a2 * c.a2 + c.d * c.d > c.a1 * c.a1 - c.b1 * c.b1
}

/// `K1'(0) = 4√(A2² + D²) − 4√(A1² − B1²)` for the `|10⟩` start.
pub fn generation_rate_product(c: &Coefficients) -> f64 {
    4.0 * c.a2.hypot(c.d) - 4.0 * (c.a1 * c.a1 - c.b1 * c.b1).max(0.0).sqrt()
}

/// Initial rate of change of concurrence in both readings: the raw `K1'(0)`
/// and `C'(0)` for the clamped concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialRate {
    pub raw: f64,
    pub clamped: f64,
}

/// For `|10⟩`, `K1(0) = 0`, so a negative `K1'(0)` leaves `C` pinned at 0.
pub fn initial_rate_product(c: &Coefficients) -> InitialRate {
    let raw = generation_rate_product(c);
    InitialRate {
        raw,
        clamped: raw.max(0.0),
    }
}

/// Closed-form `C'(0)` for `cos θ|A⟩ + sin θ e^{iφ}|S⟩`.
///
/// Fails with [`Error::FormulaSingular`] where
/// `cos²2θ + sin²2θ sin²φ` vanishes (e.g. `θ = π/4, φ = 0`).
pub fn initial_rate_superposition(c: &Coefficients, theta: f64, phi: f64) -> Result<f64> {
    let (s2, c2) = (2.0 * theta).sin_cos();
    let sin_phi = phi.sin();
    let weight = c2 * c2 + s2 * s2 * sin_phi * sin_phi;
    let denominator = weight.sqrt();
    if !(denominator > SINGULAR_DENOMINATOR) {
        return Err(Error::FormulaSingular);
    }
    let numerator =
        -4.0 * c.a1 * weight + 4.0 * c.a2 * c2 - 2.0 * c.d * s2 * s2 * (2.0 * phi).sin();
    let a = c.a1 - c.a2 * c2;
    let b = c.b1 - c.b2 * c2;
    Ok(numerator / denominator - 4.0 * clipped_sqrt(a * a - b * b)?)
}

/// Forward-difference estimate of `dC/dτ` at `0⁺`, Richardson-extrapolated
/// over the steps `{h, h/2, h/4}` (error `O(h³)`).
pub fn numerical_initial_rate(state0: &XState, c: &Coefficients, h: f64) -> Result<f64> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidRange(
            "finite-difference step must be positive",
        ));
    }
    state0.validate()?;
    let prop = Propagator::new(c);
    let conc = |tau: f64| concurrence_x(&prop.apply(state0, tau)).map(|b| b.c);
    let c0 = conc(0.0)?;
    let d1 = (conc(h)? - c0) / h;
    let d2 = (conc(0.5 * h)? - c0) / (0.5 * h);
    let d4 = (conc(0.25 * h)? - c0) / (0.25 * h);
    let r1 = 2.0 * d2 - d1;
    let r2 = 2.0 * d4 - d2;
    Ok((4.0 * r2 - r1) / 3.0)
}

/// A finite-difference step scaled to the fastest rate of the generator.
pub fn suggested_step(c: &Coefficients) -> f64 {
    1e-4 / (c.a1 + c.b1 + c.d.abs())
}

/// `C'(0)` of the superposition start, falling back to the numerical
/// estimate where the closed form is singular.
pub fn superposition_rate_or_numerical(c: &Coefficients, theta: f64, phi: f64) -> Result<f64> {
    match initial_rate_superposition(c, theta, phi) {
        Err(Error::FormulaSingular) => numerical_initial_rate(
            &crate::xstate::initial_superposition(theta, phi),
            c,
            suggested_step(c),
        ),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{coefficients, SimConfig};
    use crate::gkls::{from_xstate, DenseState};
    use crate::xstate::{initial_product_eg, initial_superposition};
    use approx::assert_relative_eq;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};
    use num_complex::Complex64;

    fn coeffs(a: f64, l: f64, d: bool) -> Coefficients {
        coefficients(&SimConfig::new(a, l).unwrap().with_interaction(d)).unwrap()
    }

    #[test]
    fn x_concurrence_reference_states() {
        let bell = initial_superposition(0.0, 0.0);
        let b = concurrence_x(&bell).unwrap();
        assert_eq!((b.k1, b.c), (1.0, 1.0));

        let mixed = XState::from_elements(0.25, 0.25, 0.25, 0.25, ZERO, ZERO).unwrap();
        let m = concurrence_x(&mixed).unwrap();
        assert_eq!((m.k1, m.k2, m.c), (-0.5, -0.5, 0.0));

        let prod = concurrence_x(&initial_product_eg()).unwrap();
        assert_eq!(prod.k1, 0.0);
        assert_eq!(prod.c, 0.0);
    }

    #[test]
    fn radicand_guard() {
        let mut s = initial_product_eg();
        s.p_gg = -1e-13;
        s.p_ee = 1e-13;
        s.p_aa += 0.0;
        assert!(concurrence_x(&s).is_ok());
        s.p_gg = -1e-3;
        s.p_ee = 1e-3;
        assert!(matches!(concurrence_x(&s), Err(Error::RadicandNegative(_))));
    }

    #[test]
    fn general_concurrence_reference_states() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let a = DenseState::pure([ZERO, h, -h, ZERO]);
        assert!((concurrence_general(&a).unwrap() - 1.0).abs() < 1e-7);
        let prod = DenseState::pure([ZERO, Complex64::new(1.0, 0.0), ZERO, ZERO]);
        assert!(concurrence_general(&prod).unwrap() < 1e-7);
        let mut bad = prod;
        bad.rho[0][1] = Complex64::new(0.0, 0.3);
        assert!(matches!(
            concurrence_general(&bad),
            Err(Error::NonHermitian(_))
        ));
        let mut heavy = prod;
        heavy.rho[0][0] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            concurrence_general(&heavy),
            Err(Error::TraceDeviation(_))
        ));
    }

    #[test]
    fn general_matches_x_on_mixed_state() {
        let s = XState::from_elements(
            0.05,
            0.02,
            0.6,
            0.33,
            Complex64::new(0.1, -0.35),
            Complex64::new(0.01, 0.02),
        )
        .unwrap();
        let x = concurrence_x(&s).unwrap().c;
        let g = concurrence_general(&from_xstate(&s)).unwrap();
        assert!(x > 0.1);
        assert_relative_eq!(x, g, epsilon = 1e-10);
    }

    #[test]
    fn generation_condition() {
        assert!(generation_possible(&coeffs(0.0, 7.0, false)));
        assert!(generation_possible(&coeffs(10.0, 1e-4, true)));
        assert!(!generation_possible(&coeffs(10.0, 30.0, false)));
        let c = coeffs(10.0, 30.0, false);
        assert_eq!(generation_possible(&c), generation_rate_product(&c) > 0.0);
    }

    #[test]
    fn product_rate_limits() {
        let near = coeffs(0.0, 1e-9, false);
        assert_relative_eq!(generation_rate_product(&near), 1.0, max_relative = 1e-12);
        for (a, l) in [(0.3, 0.5), (2.0, 3.0), (8.0, 20.0)] {
            let on = generation_rate_product(&coeffs(a, l, true));
            let off = generation_rate_product(&coeffs(a, l, false));
            assert!(on >= off);
        }
        let neg = initial_rate_product(&coeffs(10.0, 30.0, false));
        assert!(neg.raw < 0.0);
        assert_eq!(neg.clamped, 0.0);
    }

    #[test]
    fn superposition_rate_special_cases() {
        // θ = 0: pure |A⟩ with f → 1 is protected
        let protected = Coefficients::from_parts(0.4, 0.25, 1.0, 0.3).unwrap();
        assert!(
            initial_rate_superposition(&protected, 0.0, 0.7)
                .unwrap()
                .abs()
                < 1e-15
        );
        let c = coeffs(1.0, 0.8, true);
        let expected =
            -4.0 * (c.a1 - c.a2) - 4.0 * ((c.a1 - c.a2).powi(2) - (c.b1 - c.b2).powi(2)).sqrt();
        assert_relative_eq!(
            initial_rate_superposition(&c, 0.0, 0.2).unwrap(),
            expected,
            max_relative = 1e-14
        );

        let off = coeffs(0.7, 0.4, false);
        assert_eq!(
            initial_rate_superposition(&off, PI / 6.0, PI / 4.0).unwrap(),
            initial_rate_superposition(&off, PI / 6.0, -PI / 4.0).unwrap()
        );
        assert_eq!(
            initial_rate_superposition(&c, PI / 4.0, 0.0),
            Err(Error::FormulaSingular)
        );
        let fallback = superposition_rate_or_numerical(&c, PI / 4.0, 0.0).unwrap();
        assert!(fallback.is_finite());
    }

    #[test]
    fn numerical_rate_matches_closed_forms() {
        let c = coeffs(1.0, 3.0, true);
        let analytic = generation_rate_product(&c);
        assert!(analytic > 0.0);
        let numeric =
            numerical_initial_rate(&initial_product_eg(), &c, suggested_step(&c)).unwrap();
        assert!((analytic - numeric).abs() < 1e-6, "{analytic} vs {numeric}");

        let c = coeffs(0.5, 0.3, true);
        let (theta, phi) = (PI / 6.0, -PI / 4.0);
        let analytic = initial_rate_superposition(&c, theta, phi).unwrap();
        let numeric =
            numerical_initial_rate(&initial_superposition(theta, phi), &c, suggested_step(&c))
                .unwrap();
        assert!(analytic > 0.0);
        assert!((analytic - numeric).abs() < 1e-6, "{analytic} vs {numeric}");
    }

    #[test]
    fn protected_bell_state_has_zero_numerical_rate() {
        let c = Coefficients::from_parts(0.3, 0.25, 1.0, 0.0).unwrap();
        let rate = numerical_initial_rate(&initial_superposition(0.0, 0.0), &c, 1e-3).unwrap();
        assert!(rate.abs() < 1e-12);
        assert!(numerical_initial_rate(&initial_product_eg(), &c, 0.0).is_err());
    }
}
