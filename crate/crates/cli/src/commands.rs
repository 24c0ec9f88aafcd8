use unruh_pair_core::entanglement::{self, numerical_initial_rate, suggested_step};
use unruh_pair_core::gkls::{build_gkls, from_xstate, integrate_trajectory};
use unruh_pair_core::sweep::{
    self, max_concurrence, max_concurrence_auto, Axis, Grid, InitialKind, SweepSpec,
};
use unruh_pair_core::xstate::{self, initial_product_eg, initial_superposition, steady_state};
use unruh_pair_core::{coefficients, concurrence_x, Coefficients, Complex64, SimConfig, XState};

use crate::config::{
    AxisName, CommandName, InitName, QuantityName, RateKind, RunConfig, SpacingName,
};
use crate::error::AppError;
use crate::output::Table;
use crate::runner::ThreadRunner;

type Result<T> = std::result::Result<T, AppError>;

pub fn run(cfg: &RunConfig) -> Result<Table> {
    let sim = SimConfig::new(cfg.accel, cfg.sep)?
        .with_gamma0(cfg.gamma0)
        .with_interaction(cfg.with_d);
    sim.validate()?;
    // reject a bad initial state even where the command ignores it
    initial_state(cfg)?;
    match cfg.command {
        CommandName::Coeffs => coeffs_table(cfg, &coefficients(&sim)?),
        CommandName::Evolve => evolve(cfg, &coefficients(&sim)?),
        CommandName::Rate => rate(cfg, &sim),
        CommandName::Region => region(cfg),
        CommandName::Sweep => sweep_curve(cfg),
        CommandName::Maxc => maxc(cfg, &sim),
        CommandName::Steady => steady(&coefficients(&sim)?),
        CommandName::Oracle => oracle(cfg, &coefficients(&sim)?),
    }
}

fn initial_state(cfg: &RunConfig) -> Result<XState> {
    Ok(match cfg.init {
        InitName::ProductEg => initial_product_eg(),
        InitName::Superposition => initial_superposition(angle(cfg.theta)?, angle(cfg.phi)?),
        InitName::Explicit => {
            let r = cfg.rho.expect("checked when resolving the config");
            XState::from_elements(
                r[0],
                r[1],
                r[2],
                r[3],
                Complex64::new(r[4], r[5]),
                Complex64::new(r[6], r[7]),
            )?
        }
    })
}

fn angle(x: Option<f64>) -> Result<f64> {
    let x = x.expect("checked when resolving the config");
    if x.is_finite() {
        Ok(x)
    } else {
        Err(unruh_pair_core::Error::NotFinite("angle").into())
    }
}

fn initial_kind(cfg: &RunConfig) -> Result<InitialKind> {
    match cfg.init {
        InitName::ProductEg => Ok(InitialKind::ProductEg),
        InitName::Superposition => Ok(InitialKind::Superposition {
            theta: angle(cfg.theta)?,
            phi: angle(cfg.phi)?,
        }),
        InitName::Explicit => Err(AppError::usage(
            "unsupported-init",
            "sweeps take --init product-eg or superposition",
        )),
    }
}

fn tau_max(cfg: &RunConfig, default: f64) -> f64 {
    cfg.tau_max.unwrap_or(default / cfg.gamma0)
}

fn coeffs_table(cfg: &RunConfig, c: &Coefficients) -> Result<Table> {
    Ok(Table::new()
        .real("accel", vec![cfg.accel])
        .real("sep", vec![cfg.sep])
        .real("gamma0", vec![cfg.gamma0])
        .flag("with_d", vec![cfg.with_d])
        .real("a1", vec![c.a1])
        .real("a2", vec![c.a2])
        .real("b1", vec![c.b1])
        .real("b2", vec![c.b2])
        .real("d", vec![c.d])
        .real("f", vec![c.f])
        // e^{-2π/a} directly; (A1 − B1)/(A1 + B1) cancels to 0 at small a
        .real(
            "boltzmann_factor",
            vec![(-2.0 * std::f64::consts::PI / cfg.accel).exp()],
        )
        .flag(
            "generation_possible",
            vec![entanglement::generation_possible(c)],
        ))
}

fn evolve(cfg: &RunConfig, c: &Coefficients) -> Result<Table> {
    let traj = xstate::trajectory(&initial_state(cfg)?, c, tau_max(cfg, 20.0), cfg.samples)?;
    let mut cols: [Vec<f64>; 10] = Default::default();
    for (tau, s) in &traj {
        let b = concurrence_x(s)?;
        let row = [
            tau, &b.c, &b.k1, &b.k2, &s.p_gg, &s.p_ee, &s.p_aa, &s.p_ss, &s.c_as.re, &s.c_as.im,
        ];
        for (col, v) in cols.iter_mut().zip(row) {
            col.push(*v);
        }
    }
    let [tau, cc, k1, k2, gg, ee, aa, ss, re, im] = cols;
    Ok(Table::new()
        .real("tau", tau)
        .real("c", cc)
        .real("k1", k1)
        .real("k2", k2)
        .real("p_gg", gg)
        .real("p_ee", ee)
        .real("p_aa", aa)
        .real("p_ss", ss)
        .real("re_as", re)
        .real("im_as", im))
}

/// Both interaction settings, D on first.
fn pair(sim: &SimConfig) -> Result<[(bool, Coefficients); 2]> {
    let on = coefficients(&sim.with_interaction(true))?;
    Ok([(true, on), (false, on.without_interaction())])
}

fn rate(cfg: &RunConfig, sim: &SimConfig) -> Result<Table> {
    let s0 = initial_state(cfg)?;
    let (mut flags, mut raw, mut clamped, mut numerical) = (vec![], vec![], vec![], vec![]);
    for (d, c) in pair(sim)? {
        let (r, cl) = match cfg.init {
            InitName::Explicit => (f64::NAN, f64::NAN),
            _ => {
                let rate = sweep::initial_rate(&initial_kind(cfg)?, &c)?;
                (rate.raw, rate.clamped)
            }
        };
        let h = cfg.dt.unwrap_or_else(|| suggested_step(&c));
        flags.push(d);
        raw.push(r);
        clamped.push(cl);
        numerical.push(numerical_initial_rate(&s0, &c, h)?);
    }
    Ok(Table::new()
        .flag("with_d", flags)
        .real("rate_raw", raw)
        .real("rate_clamped", clamped)
        .real("rate_numerical", numerical))
}

fn range_or(range: Option<[f64; 2]>, default: (f64, f64)) -> (f64, f64) {
    range.map_or(default, |[lo, hi]| (lo, hi))
}

fn grid(spacing: SpacingName, (lo, hi): (f64, f64), n: usize) -> Grid {
    match spacing {
        SpacingName::Linear => Grid::linear(lo, hi, n),
        SpacingName::Log => Grid::log(lo, hi, n),
    }
}

fn region(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.grid.unwrap_or(300);
    if n < 2 {
        return Err(unruh_pair_core::Error::InvalidSampleCount(n).into());
    }
    let spacing = cfg.spacing.unwrap_or(SpacingName::Linear);
    // default windows (0, 6] × (0, 10], first node one grid step from 0
    let l_range = range_or(cfg.sep_range, (6.0 / n as f64, 6.0));
    let a_range = range_or(cfg.accel_range, (10.0 / n as f64, 10.0));
    let mask = sweep::region_scan_with(
        &grid(spacing, l_range, n),
        &grid(spacing, a_range, n),
        &ThreadRunner::from_env(),
    )?;
    let mut ls = Vec::with_capacity(n * n);
    let mut as_ = Vec::with_capacity(n * n);
    for l in &mask.omega_l {
        for a in &mask.a_over_omega {
            ls.push(*l);
            as_.push(*a);
        }
    }
    Ok(Table::new()
        .real("omega_l", ls)
        .real("a_over_omega", as_)
        .flag("with_d", mask.with_d)
        .flag("without_d", mask.without_d))
}

fn sweep_curve(cfg: &RunConfig) -> Result<Table> {
    let (axis, fixed, default_range) = match cfg.axis {
        AxisName::Accel => (Axis::Acceleration, cfg.sep, (0.01, 20.0)),
        AxisName::Sep => (Axis::Separation, cfg.accel, (0.05, 50.0)),
    };
    let spec = SweepSpec {
        axis,
        fixed,
        grid: grid(
            cfg.spacing.unwrap_or(SpacingName::Log),
            range_or(cfg.range, default_range),
            cfg.grid.unwrap_or(200),
        ),
        initial: initial_kind(cfg)?,
        gamma0: cfg.gamma0,
    };
    let runner = ThreadRunner::from_env();
    let result = match cfg.quantity {
        QuantityName::Rate => {
            let r = sweep::rate_sweep_with(&spec, &runner)?;
            match cfg.rate_kind {
                RateKind::Raw => r.raw,
                RateKind::Clamped => r.clamped,
            }
        }
        QuantityName::Maxc => sweep::max_concurrence_sweep_with(&spec, &runner)?,
    };
    Ok(Table::new()
        .real("x", result.x)
        .real("value_with_d", result.with_d)
        .real("value_without_d", result.without_d))
}

fn maxc(cfg: &RunConfig, sim: &SimConfig) -> Result<Table> {
    let s0 = initial_state(cfg)?;
    let (mut flags, mut cmax, mut tstar, mut horizon, mut cert) =
        (vec![], vec![], vec![], vec![], vec![]);
    for (d, c) in pair(sim)? {
        let m = match cfg.tau_max {
            Some(t) => max_concurrence(&s0, &c, t)?,
            None => max_concurrence_auto(&s0, &c)?,
        };
        flags.push(d);
        cmax.push(m.c_max);
        tstar.push(m.tau_star);
        horizon.push(m.tau_max);
        cert.push(m.certified);
    }
    Ok(Table::new()
        .flag("with_d", flags)
        .real("c_max", cmax)
        .real("tau_star", tstar)
        .real("tau_max", horizon)
        .flag("certified", cert))
}

fn steady(c: &Coefficients) -> Result<Table> {
    let s = steady_state(c)?;
    let conc = concurrence_x(&s)?.c;
    Ok(Table::new()
        .real("p_gg", vec![s.p_gg])
        .real("p_ee", vec![s.p_ee])
        .real("p_aa", vec![s.p_aa])
        .real("p_ss", vec![s.p_ss])
        .real("c", vec![conc]))
}

fn oracle(cfg: &RunConfig, c: &Coefficients) -> Result<Table> {
    let s0 = initial_state(cfg)?;
    let data = build_gkls(c);
    let horizon = tau_max(cfg, 10.0);
    let dt = cfg.dt.unwrap_or(data.max_step() / 16.0);
    let dense = integrate_trajectory(&from_xstate(&s0), &data, horizon, cfg.samples, dt)?;
    let exact = xstate::trajectory(&s0, c, horizon, cfg.samples)?;
    let (mut tau, mut c_exact, mut c_dense, mut diff) = (vec![], vec![], vec![], vec![]);
    for ((t, rho), (_, x)) in dense.iter().zip(&exact) {
        tau.push(*t);
        c_exact.push(concurrence_x(x)?.c);
        c_dense.push(entanglement::concurrence_general(rho)?);
        diff.push(rho.max_abs_diff(&from_xstate(x)));
    }
    Ok(Table::new()
        .real("tau", tau)
        .real("c_exact", c_exact)
        .real("c_dense", c_dense)
        .real("max_abs_diff", diff))
}

/// Suggested gnuplot invocation for the table produced by `cfg`.
pub fn gnuplot_hint(cfg: &RunConfig) -> String {
    let file = cfg
        .out
        .as_ref()
        .map_or_else(|| "FILE".to_owned(), |p| p.display().to_string());
    let body = match cfg.command {
        CommandName::Evolve => format!("plot '{file}' using 1:2 with lines title 'C'"),
        CommandName::Sweep => format!(
            "set logscale x; plot '{file}' using 1:2 with lines title 'with D', '' using 1:3 with lines dt 4 title 'without D'"
        ),
        CommandName::Region => format!(
            "plot '{file}' using 1:($3>0?$2:1/0) with points pt 7 ps 0.3 title 'with D', '' using 1:($4>0?$2:1/0) with points pt 7 ps 0.3 title 'without D'"
        ),
        CommandName::Oracle => format!("set logscale y; plot '{file}' using 1:4 with lines title 'max |Δρ|'"),
        _ => return "# gnuplot: no plot for this command".to_owned(),
    };
    format!("# gnuplot -e \"set datafile separator ','; set key autotitle columnhead; {body}; pause -1\"")
}
