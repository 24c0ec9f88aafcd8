//! Figure-level analyses: region scans, initial-rate and maximum-concurrence
//! sweeps, asymptotics and monotonicity classification.
//!
//! Grid points are independent. Work is handed to a [`Runner`], which must
//! return results in index order; [`Serial`] is the reference runner.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::coefficients::{coefficients, Coefficients, SimConfig};
use crate::entanglement::{self, concurrence_x};
use crate::error::{Error, Result};
use crate::xstate::{self, Propagator, XState, AA, SS};
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

/// Below this the concurrence counts as decayed when checking the horizon.
pub const HORIZON_FLOOR: f64 = 1e-6;
pub const DEFAULT_TAU_MAX: f64 = 20.0;
pub const HORIZON_DOUBLINGS: u32 = 3;
pub const MONOTONE_RELATIVE_TOL: f64 = 1e-9;
pub const MIN_CLASSIFY_POINTS: usize = 8;

/// Maps `f` over `0..n` and returns the results in index order.
pub trait Runner: Sync {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl Runner for Serial {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..n).map(f).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Closed interval sampled at `n` strictly increasing points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn linear(lo: f64, hi: f64, n: usize) -> Self {
        Grid {
            lo,
            hi,
            n,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(lo: f64, hi: f64, n: usize) -> Self {
        Grid {
            lo,
            hi,
            n,
            spacing: Spacing::Log,
        }
    }

    /// `a/ω ∈ [0.01, 20]`, 200 log-spaced points.
    pub fn default_acceleration() -> Self {
        Grid::log(0.01, 20.0, 200)
    }

    /// `ωL ∈ [0.05, 50]`, 200 log-spaced points.
    pub fn default_separation() -> Self {
        Grid::log(0.05, 50.0, 200)
    }

    /// `ωL ∈ (0, 6]` as 300 linear points `6k/300`.
    pub fn default_region_separation() -> Self {
        Grid::linear(6.0 / 300.0, 6.0, 300)
    }

    /// `a/ω ∈ (0, 10]` as 300 linear points `10k/300`.
    pub fn default_region_acceleration() -> Self {
        Grid::linear(10.0 / 300.0, 10.0, 300)
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        if self.n < 2 {
            return Err(Error::InvalidSampleCount(self.n));
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) || !(self.lo > 0.0) {
            return Err(Error::InvalidRange("bounds must be positive and finite"));
        }
        if !(self.lo < self.hi) {
            return Err(Error::InvalidRange("lower bound must be below upper bound"));
        }
        let last = (self.n - 1) as f64;
        let pts = (0..self.n).map(|k| {
            if k == self.n - 1 {
                return self.hi;
            }
            let t = k as f64 / last;
            match self.spacing {
                Spacing::Linear => self.lo + (self.hi - self.lo) * t,
                Spacing::Log => self.lo * (self.hi / self.lo).powf(t),
            }
        });
        Ok(pts.collect())
    }
}

/// Which parameter a one-dimensional sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Vary `a/ω` at fixed `ωL`.
    Acceleration,
    /// Vary `ωL` at fixed `a/ω`.
    Separation,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Acceleration => "a_over_omega",
            Axis::Separation => "omega_l",
        }
    }

    fn config(&self, x: f64, fixed: f64) -> Result<SimConfig> {
        match self {
            Axis::Acceleration => SimConfig::new(x, fixed),
            Axis::Separation => SimConfig::new(fixed, x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialKind {
    ProductEg,
    Superposition { theta: f64, phi: f64 },
}

impl InitialKind {
    pub fn state(&self) -> XState {
        match *self {
            InitialKind::ProductEg => xstate::initial_product_eg(),
            InitialKind::Superposition { theta, phi } => xstate::initial_superposition(theta, phi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `K1'(0)`, which can be negative.
    RateRaw,
    /// `C'(0)` of the clamped concurrence.
    RateClamped,
    MaxConcurrence,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::RateRaw => "rate_raw",
            Quantity::RateClamped => "rate_clamped",
            Quantity::MaxConcurrence => "max_concurrence",
        }
    }
}

/// A one-dimensional sweep definition shared by the rate and
/// maximum-concurrence scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub fixed: f64,
    pub grid: Grid,
    pub initial: InitialKind,
    pub gamma0: f64,
}

/// One tabulated curve pair: the same quantity with and without `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: Axis,
    pub fixed: f64,
    pub gamma0: f64,
    pub initial: InitialKind,
    pub quantity: Quantity,
    pub x: Vec<f64>,
    pub with_d: Vec<f64>,
    pub without_d: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateSweep {
    pub raw: SweepResult,
    pub clamped: SweepResult,
}

/// Boolean generation verdicts over a `(ωL, a/ω)` grid; index
/// `i_l * a_over_omega.len() + i_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMask {
    pub omega_l: Vec<f64>,
    pub a_over_omega: Vec<f64>,
    pub with_d: Vec<bool>,
    pub without_d: Vec<bool>,
}

impl RegionMask {
    pub fn at(&self, i_l: usize, i_a: usize) -> (bool, bool) {
        let k = i_l * self.a_over_omega.len() + i_a;
        (self.with_d[k], self.without_d[k])
    }

    pub fn count(&self) -> (usize, usize) {
        (
            self.with_d.iter().filter(|&&b| b).count(),
            self.without_d.iter().filter(|&&b| b).count(),
        )
    }
}

fn pair(cfg: SimConfig, gamma0: f64) -> Result<(Coefficients, Coefficients)> {
    let on = coefficients(&cfg.with_gamma0(gamma0).with_interaction(true))?;
    Ok((on, on.without_interaction()))
}

pub fn region_scan(l_grid: &Grid, a_grid: &Grid) -> Result<RegionMask> {
    region_scan_with(l_grid, a_grid, &Serial)
}

pub fn region_scan_with<R: Runner>(l_grid: &Grid, a_grid: &Grid, runner: &R) -> Result<RegionMask> {
    let ls = l_grid.points()?;
    let as_ = a_grid.points()?;
    let na = as_.len();
    let cells = runner.map(ls.len() * na, |k| {
        let (on, off) = pair(SimConfig::new(as_[k % na], ls[k / na])?, 1.0)?;
        Ok((
            entanglement::generation_possible(&on),
            entanglement::generation_possible(&off),
        ))
    });
    let mut with_d = Vec::with_capacity(cells.len());
    let mut without_d = Vec::with_capacity(cells.len());
    for cell in cells {
        let (a, b) = cell?;
        with_d.push(a);
        without_d.push(b);
    }
    Ok(RegionMask {
        omega_l: ls,
        a_over_omega: as_,
        with_d,
        without_d,
    })
}

/// `C'(0)` for either start. The clamped value differs from the raw one
/// only when the start is separable and the raw rate is negative.
pub fn initial_rate(initial: &InitialKind, c: &Coefficients) -> Result<entanglement::InitialRate> {
    match *initial {
        InitialKind::ProductEg => Ok(entanglement::initial_rate_product(c)),
        InitialKind::Superposition { theta, phi } => {
            let raw = entanglement::superposition_rate_or_numerical(c, theta, phi)?;
            let starts_entangled = concurrence_x(&initial.state())?.c > 0.0;
            let clamped = if starts_entangled { raw } else { raw.max(0.0) };
            Ok(entanglement::InitialRate { raw, clamped })
        }
    }
}

pub fn rate_sweep(spec: &SweepSpec) -> Result<RateSweep> {
    rate_sweep_with(spec, &Serial)
}

pub fn rate_sweep_with<R: Runner>(spec: &SweepSpec, runner: &R) -> Result<RateSweep> {
    let x = spec.grid.points()?;
    let rows = runner.map(x.len(), |k| {
        let (on, off) = pair(spec.axis.config(x[k], spec.fixed)?, spec.gamma0)?;
        Ok((
            initial_rate(&spec.initial, &on)?,
            initial_rate(&spec.initial, &off)?,
        ))
    });
    let mut raw = empty_result(spec, Quantity::RateRaw, &x);
    let mut clamped = empty_result(spec, Quantity::RateClamped, &x);
    for row in rows {
        let (on, off) = row?;
        raw.with_d.push(on.raw);
        raw.without_d.push(off.raw);
        clamped.with_d.push(on.clamped);
        clamped.without_d.push(off.clamped);
    }
    Ok(RateSweep { raw, clamped })
}

fn empty_result(spec: &SweepSpec, quantity: Quantity, x: &[f64]) -> SweepResult {
    SweepResult {
        axis: spec.axis,
        fixed: spec.fixed,
        gamma0: spec.gamma0,
        initial: spec.initial,
        quantity,
        x: x.to_vec(),
        with_d: Vec::with_capacity(x.len()),
        without_d: Vec::with_capacity(x.len()),
    }
}

/// Result of a maximum-concurrence search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxConcurrence {
    pub c_max: f64,
    pub tau_star: f64,
    /// Horizon actually sampled.
    pub tau_max: f64,
    /// True when no later time can exceed `c_max` (see [`max_concurrence`]).
    pub certified: bool,
}

/// Dense sampling step `min(1/(40 A1), π/(20|D|))`.
pub fn sampling_step(c: &Coefficients) -> f64 {
    let mut step = 1.0 / (40.0 * c.a1);
    if c.d != 0.0 {
        step = step.min(PI / (20.0 * c.d.abs()));
    }
    step
}

fn conc(prop: &Propagator, s0: &XState, tau: f64) -> Result<f64> {
    Ok(concurrence_x(&prop.apply(s0, tau))?.c)
}

/// Upper bound on the concurrence at every time after `state` was reached.
///
/// The population flow is a stochastic semigroup, so `‖p(τ) − π‖₁` never
/// grows; with `|c_as|`, `|c_ge|` decaying monotonically this bounds both
/// branches `K1 ≤ |p_aa − p_ss| + 2|c_as|` and `K2 ≤ 2|c_ge|`.
fn future_bound(state: &XState, stationary: Option<&XState>) -> f64 {
    let Some(pi) = stationary else {
        return f64::INFINITY;
    };
    let p = state.populations();
    let q = pi.populations();
    let l1: f64 = p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum();
    let k1 = l1 + (q[AA] - q[SS]).abs() + 2.0 * state.c_as.norm();
    k1.max(2.0 * state.c_ge.norm())
}

/// Global maximum of `C(τ)` over `[0, tau_max]`.
///
/// Samples at [`sampling_step`], then refines the best sample by
/// golden-section search within its neighbouring samples. The result is
/// certified when `C(tau_max) < 1e-6`, the maximum is 1, or the
/// contraction bound shows no later time can exceed it. An uncertified
/// search whose concurrence is still rising at `tau_max` is an error.
pub fn max_concurrence(state0: &XState, c: &Coefficients, tau_max: f64) -> Result<MaxConcurrence> {
    if !tau_max.is_finite() || tau_max <= 0.0 {
        return Err(Error::InvalidRange("tau_max must be positive and finite"));
    }
    state0.validate()?;
    let prop = Propagator::new(c);
    let steps = (tau_max / sampling_step(c)).ceil().max(1.0) as usize;
    let h = tau_max / steps as f64;
    let step_matrix = prop.population_matrix(h);
    let (rot, damp) = prop.coherence_factors(h);

    let mut state = *state0;
    let mut best = (concurrence_x(&state)?.c, 0usize);
    let mut prev_c = best.0;
    let mut last_c = best.0;
    for k in 1..=steps {
        let p = crate::linalg::matvec4(&step_matrix, &state.populations());
        state = XState::from_populations(p, state.c_as * rot, state.c_ge * damp);
        prev_c = last_c;
        last_c = concurrence_x(&state)?.c;
        if last_c > best.0 {
            best = (last_c, k);
        }
    }

    let lo = best.1.saturating_sub(1) as f64 * h;
    let hi = ((best.1 + 1).min(steps) as f64 * h).min(tau_max);
    let (tau_ref, c_ref) = golden_section_max(|t| conc(&prop, state0, t), lo, hi)?;
    let (c_max, tau_star) = if c_ref > best.0 {
        (c_ref, tau_ref)
    } else {
        (best.0, best.1 as f64 * h)
    };

    let stationary = xstate::steady_state(c).ok();
    let certified = last_c < HORIZON_FLOOR
        || c_max >= 1.0 - 1e-12
        || future_bound(&state, stationary.as_ref()) <= c_max;
    if !certified && last_c > prev_c {
        return Err(Error::HorizonTooShort {
            tau_max,
            concurrence: last_c,
        });
    }
    Ok(MaxConcurrence {
        c_max,
        tau_star,
        tau_max,
        certified,
    })
}

/// [`max_concurrence`] from `20/Γ0`, doubling the horizon up to three
/// times until the result is certified.
pub fn max_concurrence_auto(state0: &XState, c: &Coefficients) -> Result<MaxConcurrence> {
    let mut tau_max = DEFAULT_TAU_MAX / c.gamma0();
    let mut doublings = 0;
    loop {
        let attempt = max_concurrence(state0, c, tau_max);
        let retry = match &attempt {
            Ok(m) => !m.certified,
            Err(Error::HorizonTooShort { .. }) => true,
            Err(_) => false,
        };
        if !retry || doublings == HORIZON_DOUBLINGS {
            return attempt;
        }
        tau_max *= 2.0;
        doublings += 1;
    }
}

fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

pub fn max_concurrence_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    max_concurrence_sweep_with(spec, &Serial)
}

pub fn max_concurrence_sweep_with<R: Runner>(spec: &SweepSpec, runner: &R) -> Result<SweepResult> {
    let x = spec.grid.points()?;
    let s0 = spec.initial.state();
    let rows = runner.map(x.len(), |k| {
        let (on, off) = pair(spec.axis.config(x[k], spec.fixed)?, spec.gamma0)?;
        Ok((
            max_concurrence_auto(&s0, &on)?.c_max,
            max_concurrence_auto(&s0, &off)?.c_max,
        ))
    });
    let mut out = empty_result(spec, Quantity::MaxConcurrence, &x);
    for row in rows {
        let (on, off) = row?;
        out.with_d.push(on);
        out.without_d.push(off);
    }
    Ok(out)
}

/// Concurrence of the stationary state; independent of `state0` whenever
/// the stationary state is unique.
pub fn asymptotic_concurrence(c: &Coefficients, state0: &XState) -> Result<f64> {
    state0.validate()?;
    let ss = xstate::steady_state(c)?;
    Ok(concurrence_x(&ss)?.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Decreasing,
    Increasing,
    NonMonotone { argmax: usize },
}

/// Classify a curve with tolerance `1e-9·max|v|` on successive differences.
pub fn classify_curve(values: &[f64]) -> Result<Monotonicity> {
    if values.len() < MIN_CLASSIFY_POINTS {
        return Err(Error::TooFewPoints(values.len()));
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = MONOTONE_RELATIVE_TOL * scale;
    let diffs = || values.windows(2).map(|w| w[1] - w[0]);
    if diffs().all(|d| d <= tol) {
        return Ok(Monotonicity::Decreasing);
    }
    if diffs().all(|d| d >= -tol) {
        return Ok(Monotonicity::Increasing);
    }
    let argmax = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > values[best] { i } else { best });
    Ok(Monotonicity::NonMonotone { argmax })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub with_d: Monotonicity,
    pub without_d: Monotonicity,
}

pub fn monotonicity_report(sweep: &SweepResult) -> Result<MonotonicityReport> {
    Ok(MonotonicityReport {
        with_d: classify_curve(&sweep.with_d)?,
        without_d: classify_curve(&sweep.without_d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::{initial_product_eg, initial_superposition};
    use alloc::vec;

    fn coeffs(a: f64, l: f64, d: bool) -> Coefficients {
        coefficients(&SimConfig::new(a, l).unwrap().with_interaction(d)).unwrap()
    }

    #[test]
    fn grids() {
        let g = Grid::log(0.01, 20.0, 200).points().unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[199], 20.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let r = Grid::default_region_separation().points().unwrap();
        assert!((r[0] - 0.02).abs() < 1e-15 && r[299] == 6.0);
        assert!(Grid::linear(1.0, 1.0, 5).points().is_err());
        assert!(Grid::log(0.0, 1.0, 5).points().is_err());
        assert!(Grid::linear(0.5, 1.0, 1).points().is_err());
    }

    #[test]
    fn region_properties() {
        let mask =
            region_scan(&Grid::linear(0.02, 6.0, 25), &Grid::linear(1e-3, 10.0, 25)).unwrap();
        assert_eq!(mask.with_d.len(), 625);
        for i_l in 0..25 {
            // lowest acceleration row: A1² − B1² ≈ 0
            let (on, off) = mask.at(i_l, 0);
            assert!(on, "i_l={i_l}");
            let _ = off;
            for i_a in 0..25 {
                let (on, off) = mask.at(i_l, i_a);
                assert!(!off || on);
            }
        }
        // shortest separation column is dominated by D
        for i_a in 0..25 {
            assert!(mask.at(0, i_a).0);
        }
        assert!(region_scan(&Grid::linear(0.0, 1.0, 5), &Grid::linear(0.1, 1.0, 5)).is_err());
    }

    #[test]
    fn rate_sweep_shapes() {
        let spec = SweepSpec {
            axis: Axis::Acceleration,
            fixed: 0.3,
            grid: Grid::log(0.01, 20.0, 60),
            initial: InitialKind::ProductEg,
            gamma0: 1.0,
        };
        let sweep = rate_sweep(&spec).unwrap();
        assert_eq!(
            monotonicity_report(&sweep.raw).unwrap().with_d,
            Monotonicity::Decreasing
        );
        for k in 0..60 {
            assert!(sweep.clamped.with_d[k] >= sweep.clamped.without_d[k]);
        }
        let far = SweepSpec {
            fixed: 30.0,
            ..spec
        };
        let sweep = rate_sweep(&far).unwrap();
        assert!(matches!(
            monotonicity_report(&sweep.raw).unwrap().without_d,
            Monotonicity::NonMonotone { .. }
        ));
    }

    #[test]
    fn rate_grows_at_short_range_with_interaction() {
        let spec = SweepSpec {
            axis: Axis::Separation,
            fixed: 10.0,
            grid: Grid::log(1e-4, 1e-2, 8),
            initial: InitialKind::ProductEg,
            gamma0: 1.0,
        };
        let s = rate_sweep(&spec).unwrap().raw;
        assert!(s.with_d.windows(2).all(|w| w[0] > w[1]));
        // D ~ 1/(4ωL) so the rate scales like 1/ωL
        let ratio = s.with_d[0] * s.x[0] / (s.with_d[7] * s.x[7]);
        assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn max_concurrence_of_protected_state() {
        let c = coeffs(0.3, 1e-4, false);
        let m = max_concurrence(&initial_superposition(0.0, 0.0), &c, 20.0).unwrap();
        assert_eq!(m.c_max, 1.0);
        assert_eq!(m.tau_star, 0.0);
        assert!(m.certified);
    }

    #[test]
    fn max_concurrence_interaction_helps() {
        let on = max_concurrence_auto(&initial_product_eg(), &coeffs(0.1, 0.5, true)).unwrap();
        let off = max_concurrence_auto(&initial_product_eg(), &coeffs(0.1, 0.5, false)).unwrap();
        assert!(on.c_max > off.c_max);
        assert!(on.certified && off.certified);
    }

    #[test]
    fn refined_maximum_beats_samples() {
        let c = coeffs(0.4, 1.5, true);
        let s0 = initial_product_eg();
        let m = max_concurrence(&s0, &c, 20.0).unwrap();
        let prop = Propagator::new(&c);
        let h = sampling_step(&c);
        let mut k = 0.0;
        while k * h <= 20.0 {
            assert!(conc(&prop, &s0, k * h).unwrap() <= m.c_max + 1e-15);
            k += 1.0;
        }
    }

    #[test]
    fn horizon_too_short_is_reported() {
        // still climbing towards its maximum at τ = 0.05
        let c = coeffs(0.1, 0.5, true);
        let err = max_concurrence(&initial_product_eg(), &c, 0.05).unwrap_err();
        assert!(matches!(err, Error::HorizonTooShort { .. }));
    }

    #[test]
    fn asymptotics() {
        for (a, l) in [(0.1, 0.5), (1.0, 0.3), (1.0, 7.0), (0.0, 2.0)] {
            let on = asymptotic_concurrence(&coeffs(a, l, true), &initial_product_eg()).unwrap();
            let off = asymptotic_concurrence(&coeffs(a, l, false), &initial_product_eg()).unwrap();
            assert_eq!(on, 0.0);
            assert_eq!(off, 0.0);
        }
        let formal = Coefficients::from_parts(0.3, 0.25, 1.0, 0.0).unwrap();
        assert_eq!(
            asymptotic_concurrence(&formal, &initial_product_eg()),
            Err(Error::DegenerateSteadyState)
        );
    }

    #[test]
    fn classification() {
        let dec: Vec<f64> = (0..10).map(|i| 10.0 - i as f64).collect();
        assert_eq!(classify_curve(&dec).unwrap(), Monotonicity::Decreasing);
        let inc: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert_eq!(classify_curve(&inc).unwrap(), Monotonicity::Increasing);
        let bump = vec![0.0, 1.0, 3.0, 2.0, 1.0, 0.5, 0.2, 0.1];
        assert_eq!(
            classify_curve(&bump).unwrap(),
            Monotonicity::NonMonotone { argmax: 2 }
        );
        let mut jitter = dec.clone();
        jitter[4] += 1e-12;
        jitter[5] = jitter[4] + 5e-9;
        assert_eq!(classify_curve(&jitter).unwrap(), Monotonicity::Decreasing);
        assert_eq!(classify_curve(&dec[..7]), Err(Error::TooFewPoints(7)));
    }
}
