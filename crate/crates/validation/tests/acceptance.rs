//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unruh_pair_core::coefficients::{spectral_density_cross, spectral_density_same};
use unruh_pair_core::entanglement::{
    generation_rate_product, initial_rate_superposition, numerical_initial_rate, suggested_step,
};
use unruh_pair_core::gkls::{build_gkls, from_xstate, integrate_trajectory, to_xstate};
use unruh_pair_core::sweep::{
    asymptotic_concurrence, classify_curve, max_concurrence_sweep, rate_sweep, region_scan, Axis,
    Grid, InitialKind, Monotonicity, SweepSpec,
};
use unruh_pair_core::xstate::{
    diagonal_generator, initial_product_eg, initial_superposition, steady_state, trajectory,
};
use unruh_pair_core::{coefficients, concurrence_x, Coefficients, SimConfig, XState};

type Check = Result<(bool, String), String>;
type Criterion = (&'static str, f64, fn() -> Check);

fn coeffs(a: f64, l: f64, d: bool) -> Coefficients {
    coefficients(&SimConfig::new(a, l).unwrap().with_interaction(d)).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn coefficient_identities() -> Check {
    let grid = |lo: f64, hi: f64| Grid::log(lo, hi, 10).points().map_err(err);
    let (mut worst_b1, mut worst_ratio, mut worst_norm) = (0.0f64, 0.0f64, 0.0f64);
    for &a in &grid(0.01, 20.0)? {
        for &l in &grid(0.05, 50.0)? {
            let gamma0 = 1.0;
            let c = coeffs(a, l, true);
            worst_b1 = worst_b1.max((c.b1 - gamma0 / 4.0).abs());
            worst_ratio = worst_ratio.max((c.a2 / c.a1 - c.b2 / c.b1).abs());
            let lhs = c.f * c.f + (4.0 * c.d / gamma0).powi(2);
            let rhs = 1.0 / (l * l * (1.0 + a * a * l * l / 4.0));
            worst_norm = worst_norm.max((lhs - rhs).abs());
        }
    }
    Ok((
        worst_b1 == 0.0 && worst_ratio <= 1e-14 && worst_norm <= 1e-12,
        format!(
            "|b1-Γ0/4|={worst_b1:.1e} |a2/a1-b2/b1|={worst_ratio:.1e} norm dev={worst_norm:.1e}"
        ),
    ))
}

fn kms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let lambda = rng.gen_range(0.05..3.0);
        let a = rng.gen_range(0.2..20.0);
        let l = rng.gen_range(0.05..30.0);
        let boltz = (-2.0 * PI * lambda / a).exp();
        let same = (
            spectral_density_same(lambda, a).map_err(err)?,
            spectral_density_same(-lambda, a).map_err(err)?,
        );
        let cross = (
            spectral_density_cross(lambda, a, l).map_err(err)?,
            spectral_density_cross(-lambda, a, l).map_err(err)?,
        );
        for (pos, neg) in [same, cross] {
            let expect = boltz * pos;
            let rel = if expect == 0.0 {
                neg.abs()
            } else {
                ((neg - expect) / expect).abs()
            };
            worst = worst.max(rel);
        }
    }
    Ok((
        worst <= 1e-12,
        format!("worst relative deviation {worst:.1e}"),
    ))
}

fn oracle_equivalence() -> Check {
    let states = [
        initial_product_eg(),
        initial_superposition(PI / 6.0, PI / 4.0),
        initial_superposition(PI / 6.0, -PI / 4.0),
    ];
    let mut worst = 0.0f64;
    let mut runs = 0;
    for a in [0.1, 1.0, 10.0] {
        for l in [0.3, 3.0, 30.0] {
            for d in [true, false] {
                let c = coeffs(a, l, d);
                let data = build_gkls(&c);
                for s0 in &states {
                    let dense = integrate_trajectory(
                        &from_xstate(s0),
                        &data,
                        10.0,
                        20,
                        data.max_step() / 16.0,
                    )
                    .map_err(err)?;
                    let exact = trajectory(s0, &c, 10.0, 20).map_err(err)?;
                    for ((_, rho), (_, x)) in dense.iter().zip(&exact) {
                        worst = worst.max(xstate_diff(&to_xstate(rho).map_err(err)?, x));
                    }
                    runs += 1;
                }
            }
        }
    }
    Ok((
        worst <= 1e-8,
        format!("{runs} runs x 20 times, max elementwise deviation {worst:.1e}"),
    ))
}

fn xstate_diff(a: &XState, b: &XState) -> f64 {
    let p = a
        .populations()
        .iter()
        .zip(b.populations())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    p.max((a.c_as - b.c_as).norm())
        .max((a.c_ge - b.c_ge).norm())
}

fn rate_formulas() -> Check {
    let points: Vec<(f64, f64)> = Grid::log(0.05, 10.0, 12)
        .points()
        .map_err(err)?
        .into_iter()
        .flat_map(|a| [0.1, 0.3, 0.7, 1.5, 3.0, 7.0].map(|l| (a, l)))
        .collect();

    let mut product = Vec::new();
    for &(a, l) in &points {
        let c = coeffs(a, l, true);
        let rate = generation_rate_product(&c);
        if rate > 1e-3 && product.len() < 20 {
            let num = numerical_initial_rate(&initial_product_eg(), &c, suggested_step(&c))
                .map_err(err)?;
            product.push((rate - num).abs());
        }
    }
    let mut superposition = Vec::new();
    for (k, &(a, l)) in points.iter().enumerate() {
        let c = coeffs(a, l, true);
        let phi = if k % 2 == 0 { -PI / 4.0 } else { PI / 4.0 };
        let rate = initial_rate_superposition(&c, PI / 6.0, phi).map_err(err)?;
        if rate > 1e-3 && superposition.len() < 20 {
            let s0 = initial_superposition(PI / 6.0, phi);
            let num = numerical_initial_rate(&s0, &c, suggested_step(&c)).map_err(err)?;
            superposition.push((rate - num).abs());
        }
    }
    let worst = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(*x));
    let (wp, ws) = (worst(&product), worst(&superposition));
    Ok((
        product.len() == 20 && superposition.len() == 20 && wp <= 1e-6 && ws <= 1e-6,
        format!(
            "product {} pts dev {wp:.1e}; superposition {} pts dev {ws:.1e}",
            product.len(),
            superposition.len()
        ),
    ))
}

fn region_superset() -> Check {
    let mask = region_scan(
        &Grid::default_region_separation(),
        &Grid::default_region_acceleration(),
    )
    .map_err(err)?;
    let violations = mask
        .with_d
        .iter()
        .zip(&mask.without_d)
        .filter(|(on, off)| **off && !**on)
        .count();
    let (on, off) = mask.count();
    let excess = on as f64 / off as f64 - 1.0;
    Ok((
        violations == 0 && excess >= 0.01,
        format!(
            "D on {on} nodes, D off {off} nodes (+{:.1}%), {violations} violations",
            100.0 * excess
        ),
    ))
}

fn accel_spec(l: f64, n: usize, lo: f64) -> SweepSpec {
    SweepSpec {
        axis: Axis::Acceleration,
        fixed: l,
        grid: Grid::log(lo, 20.0, n),
        initial: InitialKind::ProductEg,
        gamma0: 1.0,
    }
}

fn anti_unruh_loss() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut off_maxc_nonmonotone = false;
    for l in [0.3, 3.0, 30.0] {
        let spec = accel_spec(l, 60, 0.05);
        let rates = rate_sweep(&spec).map_err(err)?.raw;
        let maxc = max_concurrence_sweep(&spec).map_err(err)?;
        let rate_on = classify_curve(&rates.with_d).map_err(err)?;
        let rate_off = classify_curve(&rates.without_d).map_err(err)?;
        let maxc_on = classify_curve(&maxc.with_d).map_err(err)?;
        let maxc_off = classify_curve(&maxc.without_d).map_err(err)?;
        ok &= rate_on == Monotonicity::Decreasing && maxc_on == Monotonicity::Decreasing;
        if l > 1.0 {
            ok &= matches!(rate_off, Monotonicity::NonMonotone { .. });
        }
        off_maxc_nonmonotone |= matches!(maxc_off, Monotonicity::NonMonotone { .. });
        notes.push(format!(
            "ωL={l}: rate on {} off {}, maxc on {} off {}",
            label(rate_on),
            label(rate_off),
            label(maxc_on),
            label(maxc_off)
        ));
    }
    Ok((ok && off_maxc_nonmonotone, notes.join("; ")))
}

fn label(m: Monotonicity) -> &'static str {
    match m {
        Monotonicity::Decreasing => "dec",
        Monotonicity::Increasing => "inc",
        Monotonicity::NonMonotone { .. } => "non-monotone",
    }
}

fn dominance() -> Check {
    let mut worst = f64::INFINITY;
    let mut nodes = 0;
    for fixed in [0.3, 3.0, 30.0] {
        let spec = SweepSpec {
            grid: Grid::default_acceleration(),
            ..accel_spec(fixed, 200, 0.01)
        };
        let s = max_concurrence_sweep(&spec).map_err(err)?;
        for (on, off) in s.with_d.iter().zip(&s.without_d) {
            worst = worst.min(on - off);
            nodes += 1;
        }
    }
    for fixed in [0.1, 1.0, 10.0] {
        let spec = SweepSpec {
            axis: Axis::Separation,
            fixed,
            grid: Grid::default_separation(),
            initial: InitialKind::ProductEg,
            gamma0: 1.0,
        };
        let s = max_concurrence_sweep(&spec).map_err(err)?;
        for (on, off) in s.with_d.iter().zip(&s.without_d) {
            worst = worst.min(on - off);
            nodes += 1;
        }
    }
    Ok((
        worst >= -1e-9,
        format!("{nodes} nodes, min(c_on - c_off) = {worst:.3e}"),
    ))
}

fn local_extrema(values: &[(f64, f64)]) -> Vec<f64> {
    values
        .windows(3)
        .filter(|w| (w[1].1 - w[0].1) * (w[2].1 - w[1].1) < 0.0)
        .map(|w| w[1].0)
        .collect()
}

fn evolution_shape() -> Check {
    let s0 = initial_product_eg();
    let curve = |d: bool| -> Result<Vec<(f64, f64)>, String> {
        trajectory(&s0, &coeffs(0.1, 0.5, d), 20.0, 4001)
            .map_err(err)?
            .iter()
            .map(|(t, s)| concurrence_x(s).map(|b| (*t, b.c)).map_err(err))
            .collect()
    };
    let on = curve(true)?;
    let off = curve(false)?;
    let starts_at_zero = on[0].1 == 0.0 && off[0].1 == 0.0;
    let peak = on.iter().fold(0.0f64, |m, p| m.max(p.1));
    let end = on.last().unwrap().1;
    let decayed = end < 1e-6;
    let ext_on = local_extrema(&on);
    let ext_off = local_extrema(&off);
    let extra = ext_on
        .iter()
        .filter(|t| ext_off.iter().all(|u| (*t - u).abs() > 0.1))
        .count();
    let asym = (asymptotic_concurrence(&coeffs(0.1, 0.5, true), &s0).map_err(err)?
        - asymptotic_concurrence(&coeffs(0.1, 0.5, false), &s0).map_err(err)?)
    .abs();
    Ok((
        starts_at_zero && peak > 0.0 && decayed && extra >= 1 && asym <= 1e-10,
        format!(
            "C(0)=0: {starts_at_zero}, peak {peak:.4}, C(20/Γ0)={end:.3e} (needs < 1e-6), \
             {extra} extra extrema with D on, asymptotic gap {asym:.1e}"
        ),
    ))
}

fn degradation_flip() -> Check {
    let on =
        initial_rate_superposition(&coeffs(0.5, 0.3, true), PI / 6.0, -PI / 4.0).map_err(err)?;
    let off =
        initial_rate_superposition(&coeffs(0.5, 0.3, false), PI / 6.0, -PI / 4.0).map_err(err)?;
    Ok((
        off < 0.0 && on > 0.0,
        format!("C'(0) D off {off:.6}, D on {on:.6}"),
    ))
}

fn gibbs_steady_state() -> Check {
    let mut worst = 0.0f64;
    for a in [0.2, 1.0, 5.0] {
        for l in [0.3, 3.0] {
            let c = coeffs(a, l, true);
            let r = (-2.0 * PI / a).exp();
            let z = (1.0 + r) * (1.0 + r);
            // [gg, ee, aa, ss]
            let expect = [1.0 / z, r * r / z, r / z, r / z];
            let ours = steady_state(&c).map_err(err)?.populations();
            let oracle =
                lu_stationary(&diagonal_generator(&c).m).ok_or("singular oracle system")?;
            for k in 0..4 {
                worst = worst
                    .max((ours[k] - expect[k]).abs())
                    .max((oracle[k] - expect[k]).abs());
            }
        }
    }
    Ok((
        worst <= 1e-10,
        format!("max deviation {worst:.1e} (solver and LU oracle)"),
    ))
}

/// Replace the first balance equation by normalisation and solve by LU.
fn lu_stationary(m: &[[f64; 4]; 4]) -> Option<[f64; 4]> {
    let mut mat = Matrix4::from_fn(|i, j| m[i][j]);
    for j in 0..4 {
        mat[(0, j)] = 1.0;
    }
    let rhs = Vector4::new(1.0, 0.0, 0.0, 0.0);
    let p = mat.lu().solve(&rhs)?;
    Some([p[0], p[1], p[2], p[3]])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("coefficient identities", 1.0, coefficient_identities),
        ("KMS property", 1.0, kms),
        ("oracle equivalence", 30.0, oracle_equivalence),
        ("rate formulas vs finite difference", 5.0, rate_formulas),
        ("region superset", 5.0, region_superset),
        ("anti-Unruh loss", 60.0, anti_unruh_loss),
        ("max-concurrence dominance", 60.0, dominance),
        ("time-evolution shape", 2.0, evolution_shape),
        ("degradation-to-enhancement flip", 1.0, degradation_flip),
        ("steady-state Gibbs property", 1.0, gibbs_steady_state),
    ];
    let mut failures = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass && secs < *budget, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {name}: {detail} [{secs:.2} s, budget {budget} s]",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
