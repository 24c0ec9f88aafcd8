//! Full-density-matrix GKLS integrator in the product basis, assembled
//! directly from the Kossakowski coefficient blocks and Pauli operators.
//! It shares no code path with [`crate::xstate`] beyond the coefficient
//! values, which is what makes it useful as a cross-check.
//!
//! Product basis ordering, used everywhere in this crate:
//! `{|11⟩, |10⟩, |01⟩, |00⟩}` with `|1⟩` the excited level
//! (`σ3|1⟩ = +|1⟩`). Atom 1 is the left tensor factor.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

use crate::coefficients::Coefficients;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ONE, ZERO};
use crate::xstate::XState;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const X_FORM_TOL: f64 = 1e-8;
pub const STEP_HALVING_TOL: f64 = 1e-8;

/// 4×4 density matrix in the product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseState {
    pub rho: CMat<4>,
}

impl DenseState {
    pub fn new(rho: CMat<4>) -> Result<Self> {
        let defect = linalg::hermiticity_defect(&rho);
        if !defect.is_finite() || defect > HERMITIAN_TOL {
            return Err(Error::NonHermitian(defect));
        }
        Ok(DenseState { rho })
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) product-basis vector.
    pub fn pure(psi: [Complex64; 4]) -> Self {
        let mut rho = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                rho[i][j] = psi[i] * psi[j].conj();
            }
        }
        DenseState { rho }
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.rho[i][i]).sum()
    }

    pub fn max_abs_diff(&self, other: &DenseState) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.rho[i][j] - other.rho[i][j]).norm());
            }
        }
        worst
    }

    /// Largest modulus among the elements that vanish for X states.
    pub fn off_x_magnitude(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.rho[i][j].norm());
                }
            }
        }
        worst
    }
}

/// Columns are |G⟩, |A⟩, |S⟩, |E⟩ written in the product basis.
fn coupled_to_product() -> CMat<4> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let mut u = [[ZERO; 4]; 4];
    u[3][0] = ONE; // G = |00⟩
    u[1][1] = h; // A = (|10⟩ − |01⟩)/√2
    u[2][1] = -h;
    u[1][2] = h; // S = (|10⟩ + |01⟩)/√2
    u[2][2] = h;
    u[0][3] = ONE; // E = |11⟩
    u
}

/// Embed an X state into the product basis.
pub fn from_xstate(state: &XState) -> DenseState {
    let u = coupled_to_product();
    let rho = linalg::cmatmul(
        &linalg::cmatmul(&u, &state.coupled_matrix()),
        &linalg::dagger(&u),
    );
    DenseState { rho }
}

/// Read an X state back out of a dense product-basis matrix. Fails when
/// any off-X element exceeds `1e-8`, which means the dynamics left X form.
pub fn to_xstate(state: &DenseState) -> Result<XState> {
    let u = coupled_to_product();
    let c = linalg::cmatmul(&linalg::cmatmul(&linalg::dagger(&u), &state.rho), &u);
    // coupled order: G=0, A=1, S=2, E=3; X blocks are {G,E} and {A,S}
    let mut off = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let in_block = i == j || (i + j == 3);
            if !in_block {
                off = off.max(c[i][j].norm());
            }
        }
    }
    if off > X_FORM_TOL {
        return Err(Error::NotXForm(off));
    }
    Ok(XState {
        p_gg: c[0][0].re,
        p_ee: c[3][3].re,
        p_aa: c[1][1].re,
        p_ss: c[2][2].re,
        c_as: c[1][2],
        c_ge: c[0][3],
    })
}

fn pauli(i: usize) -> [[Complex64; 2]; 2] {
    let (o, z) = (ONE, ZERO);
    let im = Complex64::new(0.0, 1.0);
    match i {
        0 => [[z, o], [o, z]],
        1 => [[z, -im], [im, z]],
        2 => [[o, z], [z, -o]],
        _ => [[o, z], [z, o]],
    }
}

fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> CMat<4> {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// `C_ij = A δ_ij − i B ε_ij3 − A δ_i3 δ_j3` (indices 0-based here).
fn kossakowski_block(a: f64, b: f64) -> CMat<3> {
    let mut c = [[ZERO; 3]; 3];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cij) in row.iter_mut().enumerate() {
            let delta = if i == j { a } else { 0.0 };
            let third = if i == 2 && j == 2 { a } else { 0.0 };
            *cij = Complex64::new(delta - third, -b * levi_civita(i, j, 2));
        }
    }
    c
}

/// Coefficient blocks and operators of the two-atom master equation.
#[derive(Debug, Clone)]
pub struct GklsData {
    pub coeffs: Coefficients,
    /// `c[α][β]` is the 3×3 block `C^(αβ)`.
    pub c: [[CMat<3>; 2]; 2],
    /// `Ω^(12)_ij = D δ_ij − D δ_i3 δ_j3`.
    pub omega: [[f64; 3]; 3],
    /// `sigma[α][i] = σ_i^(α)`.
    pub sigma: [[CMat<4>; 3]; 2],
    /// `products[α][β][i][j] = σ_i^(α) σ_j^(β)`.
    pub products: [[[[CMat<4>; 3]; 3]; 2]; 2],
    /// Transition frequency for the free term `−i[(ω/2)Σσ3, ρ]`; `None`
    /// keeps the rotating frame used by the X-state equations.
    pub free_frequency: Option<f64>,
}

pub fn build_gkls(coeffs: &Coefficients) -> GklsData {
    let same = kossakowski_block(coeffs.a1, coeffs.b1);
    let cross = kossakowski_block(coeffs.a2, coeffs.b2);
    let mut omega = [[0.0; 3]; 3];
    omega[0][0] = coeffs.d;
    omega[1][1] = coeffs.d;

    let id = pauli(3);
    let mut sigma = [[[[ZERO; 4]; 4]; 3]; 2];
    for i in 0..3 {
        sigma[0][i] = kron(&pauli(i), &id);
        sigma[1][i] = kron(&id, &pauli(i));
    }
    let mut products = [[[[[[ZERO; 4]; 4]; 3]; 3]; 2]; 2];
    for alpha in 0..2 {
        for beta in 0..2 {
            for i in 0..3 {
                for j in 0..3 {
                    products[alpha][beta][i][j] =
                        linalg::cmatmul(&sigma[alpha][i], &sigma[beta][j]);
                }
            }
        }
    }
    GklsData {
        coeffs: *coeffs,
        c: [[same, cross], [cross, same]],
        omega,
        sigma,
        products,
        free_frequency: None,
    }
}

impl GklsData {
    pub fn with_free_hamiltonian(mut self, frequency: f64) -> Self {
        self.free_frequency = Some(frequency);
        self
    }

    /// The 6×6 Kossakowski matrix indexed by `(α, i) → 3α + i`.
    pub fn kossakowski_matrix(&self) -> CMat<6> {
        let mut k = [[ZERO; 6]; 6];
        for alpha in 0..2 {
            for beta in 0..2 {
                for i in 0..3 {
                    for j in 0..3 {
                        k[3 * alpha + i][3 * beta + j] = self.c[alpha][beta][i][j];
                    }
                }
            }
        }
        k
    }

    /// Largest step `integrate` accepts: `min(1/(40 A1), π/(20|D|))`.
    pub fn max_step(&self) -> f64 {
        let mut limit = 1.0 / (40.0 * self.coeffs.a1);
        if self.coeffs.d != 0.0 {
            limit = limit.min(core::f64::consts::PI / (20.0 * self.coeffs.d.abs()));
        }
        limit
    }
}

/// `dρ/dτ` from the dissipator, the interatomic coupling and (optionally)
/// the free Hamiltonian.
pub fn gkls_rhs(rho: &DenseState, data: &GklsData) -> DenseState {
    let r = &rho.rho;
    let mut out = [[ZERO; 4]; 4];
    for alpha in 0..2 {
        for beta in 0..2 {
            for i in 0..3 {
                for j in 0..3 {
                    let cij = data.c[alpha][beta][i][j];
                    if cij == ZERO {
                        continue;
                    }
                    let sj = &data.sigma[beta][j];
                    let si = &data.sigma[alpha][i];
                    let prod = &data.products[alpha][beta][i][j];
                    let jump = linalg::cmatmul(&linalg::cmatmul(sj, r), si);
                    let left = linalg::cmatmul(prod, r);
                    let right = linalg::cmatmul(r, prod);
                    let half = cij * 0.5;
                    for p in 0..4 {
                        for q in 0..4 {
                            out[p][q] += half * (jump[p][q] * 2.0 - left[p][q] - right[p][q]);
                        }
                    }
                }
            }
        }
    }
    let im = Complex64::new(0.0, 1.0);
    for i in 0..3 {
        for j in 0..3 {
            let w = data.omega[i][j];
            if w == 0.0 {
                continue;
            }
            let op = &data.products[0][1][i][j];
            let comm_l = linalg::cmatmul(op, r);
            let comm_r = linalg::cmatmul(r, op);
            for p in 0..4 {
                for q in 0..4 {
                    out[p][q] += im * w * (comm_l[p][q] - comm_r[p][q]);
                }
            }
        }
    }
    if let Some(freq) = data.free_frequency {
        for alpha in 0..2 {
            let op = &data.sigma[alpha][2];
            let comm_l = linalg::cmatmul(op, r);
            let comm_r = linalg::cmatmul(r, op);
            for p in 0..4 {
                for q in 0..4 {
                    out[p][q] -= im * (0.5 * freq) * (comm_l[p][q] - comm_r[p][q]);
                }
            }
        }
    }
    DenseState { rho: out }
}

/// The right-hand side as a 16×16 matrix on row-major `vec(ρ)`, obtained
/// by applying [`gkls_rhs`] to each matrix unit.
struct Liouvillian {
    l: [[Complex64; 16]; 16],
}

impl Liouvillian {
    fn new(data: &GklsData) -> Self {
        let mut l = [[ZERO; 16]; 16];
        for col in 0..16 {
            let mut unit = [[ZERO; 4]; 4];
            unit[col / 4][col % 4] = ONE;
            let image = gkls_rhs(&DenseState { rho: unit }, data);
            for row in 0..16 {
                l[row][col] = image.rho[row / 4][row % 4];
            }
        }
        Liouvillian { l }
    }

    fn apply(&self, v: &[Complex64; 16]) -> [Complex64; 16] {
        let mut out = [ZERO; 16];
        for (o, row) in out.iter_mut().zip(&self.l) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    fn rk4(&self, mut v: [Complex64; 16], h: f64, steps: usize) -> [Complex64; 16] {
        let axpy = |x: &[Complex64; 16], k: &[Complex64; 16], s: f64| {
            let mut out = *x;
            for (o, ki) in out.iter_mut().zip(k) {
                *o += ki * s;
            }
            out
        };
        for _ in 0..steps {
            let k1 = self.apply(&v);
            let k2 = self.apply(&axpy(&v, &k1, 0.5 * h));
            let k3 = self.apply(&axpy(&v, &k2, 0.5 * h));
            let k4 = self.apply(&axpy(&v, &k3, h));
            for i in 0..16 {
                v[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
            }
        }
        v
    }
}

fn flatten(rho: &CMat<4>) -> [Complex64; 16] {
    let mut v = [ZERO; 16];
    for i in 0..16 {
        v[i] = rho[i / 4][i % 4];
    }
    v
}

fn unflatten(v: &[Complex64; 16]) -> CMat<4> {
    let mut rho = [[ZERO; 4]; 4];
    for i in 0..16 {
        rho[i / 4][i % 4] = v[i];
    }
    rho
}

fn check_step(data: &GklsData, dt: f64) -> Result<()> {
    let max = data.max_step();
    if !dt.is_finite() || dt <= 0.0 || dt > max {
        return Err(Error::StepTooLarge { dt, max });
    }
    Ok(())
}

fn integrate_with(
    liouvillian: &Liouvillian,
    rho0: &DenseState,
    tau: f64,
    dt: f64,
) -> Result<DenseState> {
    if tau == 0.0 {
        return Ok(*rho0);
    }
    let steps = (tau / dt).ceil().max(1.0) as usize;
    let h = tau / steps as f64;
    let v0 = flatten(&rho0.rho);
    let coarse = unflatten(&liouvillian.rk4(v0, h, steps));
    let fine = DenseState {
        rho: unflatten(&liouvillian.rk4(v0, 0.5 * h, 2 * steps)),
    };
    let deviation = fine.max_abs_diff(&DenseState { rho: coarse });
    if deviation > STEP_HALVING_TOL {
        return Err(Error::NonConvergence(deviation));
    }
    Ok(fine)
}

fn check_horizon(tau_max: f64) -> Result<()> {
    if tau_max.is_nan() {
        return Err(Error::NotFinite("time"));
    }
    if tau_max < 0.0 {
        return Err(Error::NegativeTime(tau_max));
    }
    if tau_max.is_infinite() {
        return Err(Error::NotFinite("time"));
    }
    Ok(())
}

/// Fixed-step classical RK4 from 0 to `tau_max` with step at most `dt`.
///
/// The run is repeated with half the step; the finer result is returned if
/// the two agree to `1e-8` elementwise, otherwise
/// [`Error::NonConvergence`].
pub fn integrate(rho0: &DenseState, data: &GklsData, tau_max: f64, dt: f64) -> Result<DenseState> {
    check_horizon(tau_max)?;
    check_step(data, dt)?;
    integrate_with(&Liouvillian::new(data), rho0, tau_max, dt)
}

/// `n` uniformly spaced samples over `[0, tau_max]`, each segment
/// integrated (and step-halving checked) from the previous sample.
pub fn integrate_trajectory(
    rho0: &DenseState,
    data: &GklsData,
    tau_max: f64,
    n: usize,
    dt: f64,
) -> Result<Vec<(f64, DenseState)>> {
    if n < 2 {
        return Err(Error::InvalidSampleCount(n));
    }
    check_horizon(tau_max)?;
    check_step(data, dt)?;
    let liouvillian = Liouvillian::new(data);
    let segment = tau_max / (n - 1) as f64;
    let mut out = Vec::with_capacity(n);
    let mut current = *rho0;
    out.push((0.0, current));
    for k in 1..n {
        current = integrate_with(&liouvillian, &current, segment, dt)?;
        let tau = if k == n - 1 {
            tau_max
        } else {
            segment * k as f64
        };
        out.push((tau, current));
    }
    Ok(out)
}
