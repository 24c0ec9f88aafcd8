use core::fmt;

/// Everything that can go wrong in the core library.
///
/// Each variant maps to a stable kebab-case [`Error::code`] and a coarse
/// [`ErrorKind`] so front ends can pick exit codes without string matching.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    NotFinite(&'static str),
    AccelerationNegative(f64),
    SeparationNonPositive(f64),
    Gamma0NonPositive(f64),
    InvalidCoefficients(&'static str),
    NegativeTime(f64),
    InvalidSampleCount(usize),
    InvalidState(&'static str),
    /// A concurrence radicand was more negative than round-off allows.
    RadicandNegative(f64),
    /// The rate generator has more than one stationary state (|f| = 1).
    DegenerateSteadyState,
    NotXForm(f64),
    NonHermitian(f64),
    TraceDeviation(f64),
    StepTooLarge {
        dt: f64,
        max: f64,
    },
    /// Step-halving check failed; carries the max elementwise deviation.
    NonConvergence(f64),
    FormulaSingular,
    HorizonTooShort {
        tau_max: f64,
        concurrence: f64,
    },
    InvalidRange(&'static str),
    TooFewPoints(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad arguments that never describe a physical configuration.
    Usage,
    /// Numerical procedure could not certify its result.
    Numeric,
    /// Physical parameters or states violate an invariant.
    InvalidState,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotFinite(_) => "not-finite",
            Error::AccelerationNegative(_) => "acceleration-negative",
            Error::SeparationNonPositive(_) => "separation-nonpositive",
            Error::Gamma0NonPositive(_) => "gamma0-nonpositive",
            Error::InvalidCoefficients(_) => "invalid-coefficients",
            Error::NegativeTime(_) => "negative-time",
            Error::InvalidSampleCount(_) => "invalid-sample-count",
            Error::InvalidState(_) => "invalid-state",
            Error::RadicandNegative(_) => "radicand-negative",
            Error::DegenerateSteadyState => "degenerate-steady-state",
            Error::NotXForm(_) => "not-x-form",
            Error::NonHermitian(_) => "non-hermitian",
            Error::TraceDeviation(_) => "trace-deviation",
            Error::StepTooLarge { .. } => "step-too-large",
            Error::NonConvergence(_) => "non-convergence",
            Error::FormulaSingular => "formula-singular",
            Error::HorizonTooShort { .. } => "horizon-too-short",
            Error::InvalidRange(_) => "invalid-range",
            Error::TooFewPoints(_) => "too-few-points",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NegativeTime(_)
            | Error::InvalidSampleCount(_)
            | Error::StepTooLarge { .. }
            | Error::InvalidRange(_)
            | Error::TooFewPoints(_) => ErrorKind::Usage,
            Error::DegenerateSteadyState
            | Error::NonConvergence(_)
            | Error::FormulaSingular
            | Error::HorizonTooShort { .. } => ErrorKind::Numeric,
            _ => ErrorKind::InvalidState,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotFinite(what) => write!(f, "{what} must be finite"),
            Error::AccelerationNegative(a) => {
                write!(f, "acceleration ratio a/omega = {a} is negative")
            }
            Error::SeparationNonPositive(l) => {
                write!(f, "separation omega*L = {l} must be strictly positive")
            }
            Error::Gamma0NonPositive(g) => write!(f, "gamma0 = {g} must be strictly positive"),
            Error::InvalidCoefficients(why) => write!(f, "invalid coefficients: {why}"),
            Error::NegativeTime(t) => write!(f, "time {t} is negative"),
            Error::InvalidSampleCount(n) => write!(f, "sample count {n} is too small"),
            Error::InvalidState(why) => write!(f, "invalid state: {why}"),
            Error::RadicandNegative(r) => {
                write!(f, "concurrence radicand {r:e} is negative beyond round-off")
            }
            Error::DegenerateSteadyState => {
                write!(f, "rate generator has a degenerate null space (|f| = 1)")
            }
            Error::NotXForm(dev) => write!(f, "state left X form (off-X element {dev:e})"),
            Error::NonHermitian(dev) => write!(f, "matrix is not Hermitian (deviation {dev:e})"),
            Error::TraceDeviation(dev) => write!(f, "trace deviates from 1 by {dev:e}"),
            Error::StepTooLarge { dt, max } => write!(f, "step {dt} exceeds the limit {max}"),
            Error::NonConvergence(dev) => {
                write!(f, "step halving changed the result by {dev:e}")
            }
            Error::FormulaSingular => write!(f, "closed-form rate is singular at this point"),
            Error::HorizonTooShort {
                tau_max,
                concurrence,
            } => write!(
                f,
                "concurrence {concurrence:e} still rising at tau_max = {tau_max}"
            ),
            Error::InvalidRange(why) => write!(f, "invalid range: {why}"),
            Error::TooFewPoints(n) => write!(f, "{n} points are not enough"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
