//! Fixed-size dense kernels: 4×4 real rate matrices and small Hermitian
//! matrices. Nothing here allocates.

use num_complex::Complex64;
#[allow(unused_imports)] // inherent f64 methods shadow it whenever std is linked
use num_traits::Float;

pub type Mat4 = [[f64; 4]; 4];
pub type CMat<const N: usize> = [[Complex64; N]; N];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity4() -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn matmul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec4(a: &Mat4, v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(a) {
        *o = row.iter().zip(v).map(|(x, y)| x * y).sum();
    }
    out
}

/// `exp(m·tau)` for a rate matrix (nonnegative off-diagonals, zero column
/// sums) by uniformization plus repeated squaring.
///
/// With `q ≥ max|m_ii|`, `P = I + m/q` is entrywise nonnegative, so both the
/// series `e^{-qt} Σ (qt)^k/k! P^k` and the squarings add only nonnegative
/// terms. Tiny transition probabilities therefore keep full relative
/// accuracy.
pub fn expm_rate_matrix(m: &Mat4, tau: f64) -> Mat4 {
    let q = (0..4).map(|i| m[i][i].abs()).fold(0.0, f64::max);
    if q == 0.0 || tau == 0.0 {
        return identity4();
    }
    let mut p = identity4();
    for (i, row) in p.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j {
                1.0 + m[i][j] / q
            } else {
                m[i][j] / q
            };
            if *x < 0.0 {
                *x = 0.0;
            }
        }
    }
    let mut squarings = 0u32;
    let mut qt = q * tau;
    while qt > 0.5 {
        qt *= 0.5;
        squarings += 1;
    }
    // Poisson weights e^{-qt}(qt)^k/k!; 30 terms reach far below 1e-17 for qt ≤ 0.5.
    // Accumulate with unnormalized weights (qt)^k/k! and divide by their
    // sum, which cancels both the truncation and the rounding of e^{-qt}.
    let mut weight = 1.0;
    let mut total = 0.0;
    let mut power = identity4();
    let mut acc = [[0.0; 4]; 4];
    for k in 0..30 {
        if k > 0 {
            power = matmul4(&power, &p);
            weight *= qt / k as f64;
        }
        total += weight;
        for i in 0..4 {
            for j in 0..4 {
                acc[i][j] += weight * power[i][j];
            }
        }
        if weight < 1e-20 * total {
            break;
        }
    }
    for row in acc.iter_mut() {
        for x in row.iter_mut() {
            *x /= total;
        }
    }
    for _ in 0..squarings {
        acc = matmul4(&acc, &acc);
    }
    acc
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and the unitary whose
/// columns are the matching eigenvectors.
pub fn hermitian_eigen<const N: usize>(mut a: CMat<N>) -> ([f64; N], CMat<N>) {
    let mut v = [[ZERO; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = ONE;
    }
    for _sweep in 0..64 {
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..N {
            diag += a[i][i].norm_sqr();
            for j in 0..N {
                if i != j {
                    off += a[i][j].norm_sqr();
                }
            }
        }
        if off <= 1e-34 * diag || off == 0.0 {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) · real Givens rotation on (p, q).
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                // A ← A·J
                for row in a.iter_mut() {
                    let xp = row[p];
                    let xq = row[q];
                    row[p] = xp * jpp + xq * jqp;
                    row[q] = xp * jpq + xq * jqq;
                }
                // A ← J†·A
                for k in 0..N {
                    let xp = a[p][k];
                    let xq = a[q][k];
                    a[p][k] = jpp.conj() * xp + jqp.conj() * xq;
                    a[q][k] = jpq.conj() * xp + jqq.conj() * xq;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p].im = 0.0;
                a[q][q].im = 0.0;
                for row in v.iter_mut() {
                    let xp = row[p];
                    let xq = row[q];
                    row[p] = xp * jpp + xq * jqp;
                    row[q] = xp * jpq + xq * jqq;
                }
            }
        }
    }
    let mut vals = [0.0; N];
    for (i, x) in vals.iter_mut().enumerate() {
        *x = a[i][i].re;
    }
    // sort ascending, permuting eigenvector columns alongside
    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let mut sorted_vals = [0.0; N];
    let mut sorted_vecs = [[ZERO; N]; N];
    for (dst, &src) in order.iter().enumerate() {
        sorted_vals[dst] = vals[src];
        for r in 0..N {
            sorted_vecs[r][dst] = v[r][src];
        }
    }
    (sorted_vals, sorted_vecs)
}

pub fn cmatmul<const N: usize>(a: &CMat<N>, b: &CMat<N>) -> CMat<N> {
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn dagger<const N: usize>(a: &CMat<N>) -> CMat<N> {
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Largest `|a_ij − conj(a_ji)|`.
pub fn hermiticity_defect<const N: usize>(a: &CMat<N>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Null vector of a 4×4 matrix of rank exactly 3, by Gaussian elimination
/// with full pivoting. Returns `None` when the numerical rank is not 3.
pub fn null_vector4(m: &Mat4) -> Option<[f64; 4]> {
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let tol = 1e-12 * scale;
    let mut a = *m;
    let mut cols = [0usize, 1, 2, 3];
    let mut rank = 0;
    for k in 0..4 {
        let (mut pr, mut pc, mut best) = (k, k, 0.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.abs() > best {
                    best = x.abs();
                    pr = i;
                    pc = j;
                }
            }
        }
        if best <= tol {
            break;
        }
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }
        cols.swap(k, pc);
        for i in (k + 1)..4 {
            let factor = a[i][k] / a[k][k];
            for j in k..4 {
                a[i][j] -= factor * a[k][j];
            }
        }
        rank += 1;
    }
    if rank != 3 {
        return None;
    }
    // Upper-triangular 3×3 block times x[0..3] = −x[3]·a[0..3][3], free x[3] = 1.
    let mut x = [0.0; 4];
    x[3] = 1.0;
    for i in (0..3).rev() {
        let mut rhs = -a[i][3];
        for j in (i + 1)..3 {
            rhs -= a[i][j] * x[j];
        }
        x[i] = rhs / a[i][i];
    }
    let mut out = [0.0; 4];
    for (slot, &col) in cols.iter().enumerate() {
        out[col] = x[slot];
    }
    Some(out)
}
