//! Field-correlation spectra and GKLS rate constants for two atoms with equal
//! proper acceleration `a`, separated by `L` perpendicular to it.
//!
//! Units: the atomic transition frequency is 1, so `accel_ratio` is `a/ω` and
//! `separation` is `ωL`. Rates carry the scale `gamma0`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

/// Above this `a/ω`, `coth(πω/a)` switches to its Laurent expansion.
const LAURENT_THRESHOLD: f64 = 1e6;
/// Below this `a·L`, the Rindler phase uses its Taylor series.
const PHASE_SERIES_THRESHOLD: f64 = 1e-6;

/// Dimensionless physical parameters of one simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub accel_ratio: f64,
    pub separation: f64,
    pub gamma0: f64,
    pub include_interaction: bool,
}

impl SimConfig {
    /// Validated constructor; `gamma0 = 1`, interaction switched on.
    pub fn new(accel_ratio: f64, separation: f64) -> Result<Self> {
        let cfg = SimConfig {
            accel_ratio,
            separation,
            gamma0: 1.0,
            include_interaction: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_gamma0(mut self, gamma0: f64) -> Self {
        self.gamma0 = gamma0;
        self
    }

    pub fn with_interaction(mut self, on: bool) -> Self {
        self.include_interaction = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_accel(self.accel_ratio)?;
        check_separation(self.separation)?;
        if self.gamma0.is_nan() {
            return Err(Error::NotFinite("gamma0"));
        }
        if !(self.gamma0 > 0.0) || self.gamma0.is_infinite() {
            return Err(Error::Gamma0NonPositive(self.gamma0));
        }
        Ok(())
    }
}

/// Rate constants of the master equation, already multiplied by `gamma0`.
///
/// `a2 = f·a1` and `b2 = f·b1` hold by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub d: f64,
    pub f: f64,
}

impl Coefficients {
    /// Assemble coefficients from `a1`, `b1`, the geometric factor and `d`.
    ///
    /// Lets tests reach formal limits such as `f = 1` that no finite
    /// separation produces.
    pub fn from_parts(a1: f64, b1: f64, f: f64, d: f64) -> Result<Self> {
        if ![a1, b1, f, d].iter().all(|x| x.is_finite()) {
            return Err(Error::NotFinite("coefficients"));
        }
        if !(b1 > 0.0) {
            return Err(Error::InvalidCoefficients("b1 must be positive"));
        }
        if a1 < b1 {
            return Err(Error::InvalidCoefficients("a1 must be at least b1"));
        }
        if f.abs() > 1.0 {
            return Err(Error::InvalidCoefficients("|f| must not exceed 1"));
        }
        Ok(Coefficients {
            a1,
            a2: f * a1,
            b1,
            b2: f * b1,
            d,
            f,
        })
    }

    pub fn gamma0(&self) -> f64 {
        4.0 * self.b1
    }

    /// Same point with the interatomic interaction switched off.
    pub fn without_interaction(self) -> Self {
        Coefficients { d: 0.0, ..self }
    }

    /// Boltzmann factor `e^{-2πω/a} = (a1 − b1)/(a1 + b1)` of the Unruh bath.
    /// Only absolutely accurate: it rounds to 0 once the factor drops below
    /// machine epsilon (`a/ω ≲ 0.17`).
    pub fn boltzmann_factor(&self) -> f64 {
        (self.a1 - self.b1) / (self.a1 + self.b1)
    }
}

fn check_accel(a: f64) -> Result<()> {
    if a.is_nan() {
        return Err(Error::NotFinite("acceleration"));
    }
    if a < 0.0 {
        return Err(Error::AccelerationNegative(a));
    }
    Ok(())
}

fn check_separation(l: f64) -> Result<()> {
    if l.is_nan() {
        return Err(Error::NotFinite("separation"));
    }
    if !(l > 0.0) || l.is_infinite() {
        return Err(Error::SeparationNonPositive(l));
    }
    Ok(())
}

/// Fourier transform of the single-atom Wightman function along the
/// accelerated trajectory: `(1/2π)·λ/(1 − e^{−2πλ/a})`.
///
/// `a = 0` gives the zero-temperature spectrum `max(λ, 0)/2π`.
pub fn spectral_density_same(lambda: f64, a: f64) -> Result<f64> {
    if lambda.is_nan() {
        return Err(Error::NotFinite("frequency"));
    }
    check_accel(a)?;
    if a == 0.0 {
        return Ok(if lambda > 0.0 {
            lambda / (2.0 * PI)
        } else {
            0.0
        });
    }
    if lambda == 0.0 {
        return Ok(a / (4.0 * PI * PI));
    }
    let x = 2.0 * PI * lambda / a;
    // λ/(1 − e^{−x}) = λ/(−expm1(−x)); for very negative λ the denominator
    // overflows and the value underflows to zero as it should.
    let value = lambda / (-(-x).exp_m1()) / (2.0 * PI);
    Ok(if value == 0.0 { 0.0 } else { value })
}

/// Cross-correlation spectrum between the two atoms: the single-atom
/// spectrum times the separation-dependent factor evaluated at `λ`.
pub fn spectral_density_cross(lambda: f64, a: f64, l: f64) -> Result<f64> {
    let same = spectral_density_same(lambda, a)?;
    check_separation(l)?;
    Ok(same * cross_factor(lambda, a, l))
}

/// `sin(2λ/a·asinh(aL/2)) / (λL·√(1 + a²L²/4))`, even in `λ`, with the
/// limits `λ → 0` and `a → 0` taken analytically.
fn cross_factor(lambda: f64, a: f64, l: f64) -> f64 {
    let phase_per_freq = rindler_phase(a, l);
    let den = proper_distance(a, l);
    let lam = lambda.abs();
    if lam == 0.0 {
        return phase_per_freq / den;
    }
    (lam * phase_per_freq).sin() / (lam * den)
}

/// `(2/a)·asinh(aL/2)`, the phase per unit frequency; tends to `L` as `a → 0`.
fn rindler_phase(a: f64, l: f64) -> f64 {
    let al = a * l;
    if al < PHASE_SERIES_THRESHOLD {
        // asinh(x) = x − x³/6 + 3x⁵/40 − …
        let al2 = al * al;
        l * (1.0 - al2 / 24.0 + 3.0 * al2 * al2 / 640.0)
    } else {
        2.0 / a * (0.5 * al).asinh()
    }
}

/// `L·√(1 + a²L²/4)`.
fn proper_distance(a: f64, l: f64) -> f64 {
    let half = 0.5 * a * l;
    l * half.hypot(1.0)
}

/// Geometric factor `f = A2/A1 = B2/B1`, with `|f| ≤ 1`.
pub fn geometric_factor(accel_ratio: f64, separation: f64) -> Result<f64> {
    check_accel(accel_ratio)?;
    check_separation(separation)?;
    let f = rindler_phase(accel_ratio, separation).sin() / proper_distance(accel_ratio, separation);
    Ok(f.clamp(-1.0, 1.0))
}

/// Environment-induced interaction `D/Γ0 = cos(phase)/(4·ωL·√(1 + a²L²/4))`.
///
/// The sign follows the cosine; it diverges like `1/(4ωL)` at short range.
pub fn interaction_strength(accel_ratio: f64, separation: f64) -> Result<f64> {
    check_accel(accel_ratio)?;
    check_separation(separation)?;
    Ok(0.25 * rindler_phase(accel_ratio, separation).cos()
        / proper_distance(accel_ratio, separation))
}

/// `coth(π/accel_ratio)`, stable from the inertial limit to huge accelerations.
pub fn thermal_enhancement(accel_ratio: f64) -> Result<f64> {
    check_accel(accel_ratio)?;
    if accel_ratio == 0.0 {
        return Ok(1.0);
    }
    if accel_ratio > LAURENT_THRESHOLD {
        return Ok(accel_ratio / PI + PI / (3.0 * accel_ratio));
    }
    let x = 2.0 * PI / accel_ratio;
    let q = (-x).exp();
    Ok(1.0 + 2.0 * q / (-(-x).exp_m1()))
}

pub fn coefficients(config: &SimConfig) -> Result<Coefficients> {
    config.validate()?;
    let quarter = 0.25 * config.gamma0;
    let f = geometric_factor(config.accel_ratio, config.separation)?;
    let a1 = quarter * thermal_enhancement(config.accel_ratio)?;
    let b1 = quarter;
    let d = if config.include_interaction {
        config.gamma0 * interaction_strength(config.accel_ratio, config.separation)?
    } else {
        0.0
    };
    Ok(Coefficients {
        a1,
        a2: f * a1,
        b1,
        b2: f * b1,
        d,
        f,
    })
}
