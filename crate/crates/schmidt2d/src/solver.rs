//! Radial Schmidt channels via a Nystrom discretization.
//!
//! Each angular kernel defines a homogeneous Fredholm problem
//!
//! ```text
//! int_0^rho_max A_m(rho1, rho2) chi(rho2) drho2 = kappa chi(rho1).
//! ```
//!
//! On a quadrature grid this becomes the symmetric matrix eigenproblem
//! M = D A D with D = diag(sqrt(w_i)): eigenvalues are the kappa directly,
//! and scaling an eigenvector u back by 1/sqrt(w_i) gives the orbital
//! samples chi(node_i). The weighting makes quadrature orthonormality
//! sum_i w_i chi_s(i) chi_t(i) = delta_st exact up to eigensolver roundoff,
//! which fixes the orbital normalization constant to 1.
//!
//! Off the grid the eigenvalue equation itself extends an orbital,
//!
//! ```text
//! chi(rho) = (1/kappa) sum_j w_j A_m(rho, node_j) chi(node_j),
//! ```
//!
//! which stays accurate while |kappa| is well above the quadrature noise;
//! below `EXTENSION_FLOOR` the division amplifies noise and is refused.
//!
//! The eigensolver is a cyclic Jacobi iteration: slower than tridiagonal
//! methods but simple, strictly deterministic, and accurate to a few ulps
//! for the moderate dimensions used here (N <= a few hundred).

use crate::angular::{kernel_rows_at, AngularKernel};
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::models::PairState;

/// Smallest |kappa| for which Nystrom extension is attempted.
pub const EXTENSION_FLOOR: f64 = 1e-12;

/// Solved eigenpairs of one angular channel, strongest first.
#[derive(Debug, Clone)]
pub struct SchmidtChannel {
    m: i32,
    kappas: Vec<f64>,
    /// orbitals[s][i] = chi_s(node_i), quadrature-orthonormal.
    orbitals: Vec<Vec<f64>>,
    grid: RadialGrid,
}

impl SchmidtChannel {
    pub fn m(&self) -> i32 {
        self.m
    }

    /// Number of kept eigenpairs.
    pub fn len(&self) -> usize {
        self.kappas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappas.is_empty()
    }

    pub fn kappa(&self, s: usize) -> f64 {
        self.kappas[s]
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn orbital(&self, s: usize) -> &[f64] {
        &self.orbitals[s]
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Channels with m != 0 stand for the +-m pair.
    pub fn multiplicity(&self) -> usize {
        if self.m == 0 {
            1
        } else {
            2
        }
    }

    /// Quadrature overlap int chi_s chi_t drho.
    pub fn radial_overlap(&self, s: usize, t: usize) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(self.orbitals[s].iter().zip(&self.orbitals[t]))
            .map(|(&w, (&a, &b))| w * a * b)
            .sum()
    }

    /// Text table: node radius followed by chi_s at that radius for each s.
    pub fn write_orbitals<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(
            w,
            "# radial orbitals: m = {}  n = {}  rho_max = {:.17e}",
            self.m,
            self.grid.len(),
            self.grid.rho_max()
        )?;
        let kappas: Vec<String> = self.kappas.iter().map(|k| format!("{k:.17e}")).collect();
        writeln!(w, "# kappa = {}", kappas.join(" "))?;
        writeln!(
            w,
            "# columns: rho chi_s(rho) for s = 0..{}",
            self.kappas.len() - 1
        )?;
        for (i, &rho) in self.grid.nodes().iter().enumerate() {
            let mut line = format!("{rho:.17e}");
            for orb in &self.orbitals {
                line.push(' ');
                line.push_str(&format!("{:.17e}", orb[i]));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

/// Solve one channel, keeping the s_max eigenpairs of largest |kappa|.
///
/// Ordering is by |kappa| descending with ties broken toward positive
/// kappa, then original index, so repeated runs agree bitwise. Each
/// orbital's sign is fixed by making its largest-magnitude sample positive.
pub fn solve_channel(kernel: &AngularKernel, s_max: usize) -> Result<SchmidtChannel> {
    let n = kernel.n();
    if s_max == 0 || s_max > n {
        return Err(Error::config(
            "truncation.s_max",
            format!("must be in 1..={n}, got {s_max}"),
        ));
    }
    let a = kernel.matrix();
    let scale = kernel.max_abs().max(1.0);
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((a[i * n + j] - a[j * n + i]).abs());
        }
    }
    if asym > 1e-10 * scale {
        return Err(Error::Asymmetric(asym));
    }

    let w = kernel.grid().weights();
    let sqrt_w: Vec<f64> = w.iter().map(|&x| x.sqrt()).collect();
    let mut weighted = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            weighted[i * n + j] = sqrt_w[i] * a[i * n + j] * sqrt_w[j];
        }
    }

    let (vals, vecs) = eigen_decompose_symmetric(&weighted, n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        vals[j]
            .abs()
            .partial_cmp(&vals[i].abs())
            .unwrap()
            .then(vals[j].partial_cmp(&vals[i]).unwrap())
            .then(i.cmp(&j))
    });

    let mut kappas = Vec::with_capacity(s_max);
    let mut orbitals = Vec::with_capacity(s_max);
    for &idx in order.iter().take(s_max) {
        kappas.push(vals[idx]);
        let mut chi: Vec<f64> = (0..n).map(|i| vecs[i * n + idx] / sqrt_w[i]).collect();
        let peak = (0..n).fold(0usize, |best, i| {
            if chi[i].abs() > chi[best].abs() {
                i
            } else {
                best
            }
        });
        if chi[peak] < 0.0 {
            for v in chi.iter_mut() {
                *v = -*v;
            }
        }
        orbitals.push(chi);
    }

    Ok(SchmidtChannel {
        m: kernel.m(),
        kappas,
        orbitals,
        grid: kernel.grid().clone(),
    })
}

/// Evaluate orbital s of a channel at an off-grid radius by Nystrom
/// extension against freshly projected kernel values.
pub fn nystrom_extend(
    state: &dyn PairState,
    channel: &SchmidtChannel,
    n_phi: usize,
    s: usize,
    rho: f64,
) -> Result<f64> {
    let kappa = channel.kappa(s);
    if kappa.abs() < EXTENSION_FLOOR {
        return Err(Error::NullOrbital {
            s,
            m: channel.m(),
            kappa,
            floor: EXTENSION_FLOOR,
        });
    }
    let m_abs = channel.m().unsigned_abs();
    let rows = kernel_rows_at(state, channel.grid(), m_abs, n_phi, rho)?;
    let row = &rows[m_abs as usize];
    let acc: f64 = channel
        .grid()
        .weights()
        .iter()
        .zip(row.iter().zip(channel.orbital(s)))
        .map(|(&w, (&a, &chi))| w * a * chi)
        .sum();
    Ok(acc / kappa)
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi.
///
/// `a` is n x n row-major and is treated as exactly symmetric (the upper
/// triangle is used). Returns eigenvalues in ascending order and the
/// matching orthonormal eigenvectors as the columns of a row-major matrix.
/// Deterministic: no pivot search, the rotation order is fixed.
pub fn eigen_decompose_symmetric(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let tol = 1e-15 * norm;
    let max_sweeps = 100;
    let mut converged = false;
    for _ in 0..max_sweeps {
        let mut off: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if off.sqrt() <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= 0.1 * tol / n as f64 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Rotate rows and columns p, q of m.
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                // Accumulate the rotation into the eigenvector columns.
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::EigenNonConvergence(max_sweeps));
    }
    let mut vals: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap().then(i.cmp(&j)));
    vals = order.iter().map(|&i| vals[i]).collect();
    let mut sorted_v = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            sorted_v[i * n + new_col] = v[i * n + old_col];
        }
    }
    Ok((vals, sorted_v))
}
