//! Angular reduction of the pair state to radial channel kernels.
//!
//! A state that depends on the particle angles only through their
//! difference splits into decoupled angular-momentum channels. Channel m
//! carries the radial kernel
//!
//! ```text
//! A_m(rho1, rho2) = sqrt(rho1 rho2) / (2 pi) * int_0^2pi Psi(rho(phi), varrho(phi)) cos(m phi) dphi,
//! ```
//!
//! where rho(phi), varrho(phi) are the pair coordinates of two particles
//! with radii rho1, rho2 and relative angle phi. The sqrt(rho1 rho2)
//! factor absorbs the radial measure, so each kernel is a symmetric
//! Hilbert-Schmidt kernel on the flat measure drho and the occupancies of
//! a normalized state obey sum_{s, m signed} (2 pi kappa_{s,m})^2 = 1.
//!
//! The phi integral is a uniform trapezoid sum over n_phi angles, which
//! for periodic integrands converges faster than any power of 1/n_phi;
//! aliasing only enters once the state has angular harmonics near n_phi-m.
//! Kernels are even in m, so only |m| matters and the builders accept
//! signed m for convenience. Matrices are filled on the upper triangle
//! (N(N+1)/2 pairs, n_phi state evaluations each) and mirrored; the map
//! (rho1, rho2) -> (rho2, rho1) leaves every intermediate bitwise
//! unchanged, so the mirror is exact, not approximate.

use crate::error::{Error, Result};
use crate::geometry::pair_geometry_from_radii;
use crate::grid::RadialGrid;
use crate::models::PairState;

/// Radial kernel of one angular channel, sampled on a quadrature grid.
#[derive(Debug, Clone)]
pub struct AngularKernel {
    m: i32,
    n_phi: usize,
    grid: RadialGrid,
    /// Row-major N x N, symmetric.
    matrix: Vec<f64>,
}

impl AngularKernel {
    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.n() + j]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    /// Largest absolute entry; scale reference for tolerance checks.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |a, &v| a.max(v.abs()))
    }

    /// Plain-text dump: a comment header followed by the rows.
    pub fn write_to<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(
            w,
            "# angular kernel: m = {}  n = {}  rho_max = {:.17e}  n_phi = {}",
            self.m,
            self.n(),
            self.grid.rho_max(),
            self.n_phi
        )?;
        let n = self.n();
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| format!("{:.17e}", self.entry(i, j)))
                .collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smallest angular resolution considered trustworthy for channel m.
pub fn min_n_phi(m_abs: u32) -> usize {
    (4 * m_abs as usize + 16).max(64)
}

fn check_n_phi(n_phi: usize, m_abs: u32) -> Result<()> {
    if !n_phi.is_multiple_of(2) || n_phi < min_n_phi(m_abs) {
        return Err(Error::config(
            "truncation.n_phi",
            format!(
                "must be even and >= {} for |m| = {}, got {}",
                min_n_phi(m_abs),
                m_abs,
                n_phi
            ),
        ));
    }
    Ok(())
}

/// cos(m phi_k) tables for each requested order on the uniform angle grid.
fn cosine_tables(ms: &[u32], n_phi: usize) -> Vec<Vec<f64>> {
    let step = 2.0 * std::f64::consts::PI / n_phi as f64;
    ms.iter()
        .map(|&m| {
            (0..n_phi)
                .map(|k| (m as f64 * (k as f64 * step)).cos())
                .collect()
        })
        .collect()
}

/// Project one radius pair onto every order in the cosine tables.
///
/// Returns sum_k Psi(phi_k) cos(m phi_k) / n_phi for each m; the caller
/// applies the sqrt(rho1 rho2) measure factor.
fn project_pair(
    state: &dyn PairState,
    rho1: f64,
    rho2: f64,
    n_phi: usize,
    cos_tables: &[Vec<f64>],
    out: &mut [f64],
) -> Result<()> {
    let step = 2.0 * std::f64::consts::PI / n_phi as f64;
    out.fill(0.0);
    for k in 0..n_phi {
        let g = pair_geometry_from_radii(rho1, rho2, (k as f64 * step).cos());
        let psi = state.amplitude(g);
        if !psi.is_finite() {
            return Err(Error::StateEvaluation {
                rho: g.rho,
                varrho: g.varrho,
            });
        }
        for (acc, table) in out.iter_mut().zip(cos_tables) {
            *acc += psi * table[k];
        }
    }
    let inv = 1.0 / n_phi as f64;
    for acc in out.iter_mut() {
        *acc *= inv;
    }
    Ok(())
}

fn build_channels(
    state: &dyn PairState,
    grid: &RadialGrid,
    ms: &[u32],
    n_phi: usize,
) -> Result<Vec<Vec<f64>>> {
    let n = grid.len();
    let nodes = grid.nodes();
    let mut matrices = vec![vec![0.0; n * n]; ms.len()];
    let cos_tables = cosine_tables(ms, n_phi);
    let mut projected = vec![0.0; ms.len()];
    for i in 0..n {
        for j in i..n {
            project_pair(
                state,
                nodes[i],
                nodes[j],
                n_phi,
                &cos_tables,
                &mut projected,
            )?;
            let measure = (nodes[i] * nodes[j]).sqrt();
            for (mat, &p) in matrices.iter_mut().zip(&projected) {
                let v = measure * p;
                mat[i * n + j] = v;
                mat[j * n + i] = v;
            }
        }
    }
    Ok(matrices)
}

/// Kernel of a single channel. `m` may be negative; kernels are even in m.
pub fn angular_kernel(
    state: &dyn PairState,
    grid: &RadialGrid,
    m: i32,
    n_phi: usize,
) -> Result<AngularKernel> {
    let m_abs = m.unsigned_abs();
    check_n_phi(n_phi, m_abs)?;
    let matrix = build_channels(state, grid, &[m_abs], n_phi)?.pop().unwrap();
    Ok(AngularKernel {
        m,
        n_phi,
        grid: grid.clone(),
        matrix,
    })
}

/// Kernels for every channel m = 0..=m_max in one sweep over the state.
///
/// The state samples per radius pair are shared between channels, so this
/// costs the same state evaluations as a single channel and is bitwise
/// identical to per-channel calls.
pub fn angular_kernel_all(
    state: &dyn PairState,
    grid: &RadialGrid,
    m_max: u32,
    n_phi: usize,
) -> Result<Vec<AngularKernel>> {
    check_n_phi(n_phi, m_max)?;
    let ms: Vec<u32> = (0..=m_max).collect();
    let matrices = build_channels(state, grid, &ms, n_phi)?;
    Ok(matrices
        .into_iter()
        .zip(ms)
        .map(|(matrix, m)| AngularKernel {
            m: m as i32,
            n_phi,
            grid: grid.clone(),
            matrix,
        })
        .collect())
}

/// Kernel values A_m(rho, node_j) for an arbitrary radius against all grid
/// nodes, one row per channel m = 0..=m_max. This is what the Nystrom
/// extension of the radial orbitals integrates against. At rho = node_i the
/// row reproduces matrix row i of the corresponding kernel bitwise.
pub fn kernel_rows_at(
    state: &dyn PairState,
    grid: &RadialGrid,
    m_max: u32,
    n_phi: usize,
    rho: f64,
) -> Result<Vec<Vec<f64>>> {
    check_n_phi(n_phi, m_max)?;
    if !rho.is_finite() || rho <= 0.0 || rho > grid.rho_max() {
        return Err(Error::Domain {
            rho,
            rho_max: grid.rho_max(),
        });
    }
    let ms: Vec<u32> = (0..=m_max).collect();
    let cos_tables = cosine_tables(&ms, n_phi);
    let n = grid.len();
    let mut rows = vec![vec![0.0; n]; ms.len()];
    let mut projected = vec![0.0; ms.len()];
    for (j, &node) in grid.nodes().iter().enumerate() {
        project_pair(state, rho, node, n_phi, &cos_tables, &mut projected)?;
        let measure = (rho * node).sqrt();
        for (row, &p) in rows.iter_mut().zip(&projected) {
            row[j] = measure * p;
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PairGeometry;
    use crate::grid::{build_radial_grid, QuadratureRule};
    use crate::models::{GaussianPairState, ProductState};
    use crate::special::bessel_i;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn grid(n: usize) -> RadialGrid {
        build_radial_grid(n, 8.0, QuadratureRule::GaussLegendre).unwrap()
    }

    fn separable() -> GaussianPairState {
        let mut s = GaussianPairState::new(2f64.sqrt(), 0.5f64.sqrt()).unwrap();
        s.normalize(&grid(64)).unwrap();
        s
    }

    fn interacting() -> GaussianPairState {
        let mut s = GaussianPairState::new(2.0, 0.5f64.sqrt()).unwrap();
        s.normalize(&grid(64)).unwrap();
        s
    }

    #[test]
    fn separable_state_lives_in_channel_zero() {
        let g = grid(24);
        let s = separable();
        for m in 1..=4 {
            let k = angular_kernel(&s, &g, m, 128).unwrap();
            assert!(
                k.max_abs() < 1e-12,
                "m = {m}: max |entry| = {:.3e}",
                k.max_abs()
            );
        }
    }

    #[test]
    fn separable_channel_zero_closed_form() {
        // Psi is phi-independent, so the cosine average is Psi itself:
        // A_0 = sqrt(rho1 rho2) (1/pi) exp(-(rho1^2 + rho2^2)/2).
        let g = grid(16);
        let s = separable();
        let k = angular_kernel(&s, &g, 0, 128).unwrap();
        for i in 0..g.len() {
            for j in 0..g.len() {
                let (r1, r2) = (g.nodes()[i], g.nodes()[j]);
                let expect =
                    (r1 * r2).sqrt() / std::f64::consts::PI * (-0.5 * (r1 * r1 + r2 * r2)).exp();
                if expect.abs() > 1e-300 {
                    assert_relative_eq!(
                        k.entry(i, j),
                        expect,
                        max_relative = 1e-12,
                        epsilon = 1e-18
                    );
                }
            }
        }
    }

    #[test]
    fn interacting_kernel_matches_bessel_closed_form() {
        // For Gaussian products the phi integral is a modified Bessel
        // function: A_m = c sqrt(rho1 rho2) exp(-alpha (rho1^2 + rho2^2))
        // I_m(beta rho1 rho2), with alpha and beta fixed by the two widths.
        let g = grid(20);
        let s = interacting();
        let (sr2, sc2) = (4.0, 0.5);
        let alpha = 0.5 / sr2 + 0.125 / sc2;
        let beta = 1.0 / sr2 - 0.25 / sc2;
        let c = s.norm_constant();
        // The phi sum carries an absolute noise floor of about
        // eps * max|Psi| * sqrt(rho1 rho2), so entries buried below ~1e-16
        // can only match in absolute terms.
        for m in [0u32, 1, 3, 5] {
            let k = angular_kernel(&s, &g, m as i32, 256).unwrap();
            for (i, j) in [(0, 0), (3, 7), (10, 2), (15, 15), (19, 5), (8, 12)] {
                let (r1, r2) = (g.nodes()[i], g.nodes()[j]);
                let expect = c
                    * (r1 * r2).sqrt()
                    * (-alpha * (r1 * r1 + r2 * r2)).exp()
                    * bessel_i(m, beta * r1 * r2);
                assert_relative_eq!(k.entry(i, j), expect, max_relative = 1e-9, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn batched_build_is_bitwise_identical_to_single_channels() {
        let g = grid(12);
        let s = interacting();
        let all = angular_kernel_all(&s, &g, 5, 64).unwrap();
        assert_eq!(all.len(), 6);
        for (m, k_batch) in all.iter().enumerate() {
            let k_single = angular_kernel(&s, &g, m as i32, 64).unwrap();
            for (a, b) in k_batch.matrix().iter().zip(k_single.matrix()) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn kernel_is_even_in_m() {
        let g = grid(12);
        let s = interacting();
        let plus = angular_kernel(&s, &g, 3, 64).unwrap();
        let minus = angular_kernel(&s, &g, -3, 64).unwrap();
        for (a, b) in plus.matrix().iter().zip(minus.matrix()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn symmetric_without_averaging() {
        // Swapping the radii changes nothing in the projected samples, so
        // an independently built transposed entry must agree bitwise, not
        // merely to roundoff.
        let g = grid(10);
        let s = interacting();
        let ms = [2u32];
        let tables = cosine_tables(&ms, 64);
        let mut fwd = [0.0];
        let mut rev = [0.0];
        for (i, j) in [(0usize, 5usize), (2, 9), (7, 1)] {
            project_pair(&s, g.nodes()[i], g.nodes()[j], 64, &tables, &mut fwd).unwrap();
            project_pair(&s, g.nodes()[j], g.nodes()[i], 64, &tables, &mut rev).unwrap();
            assert_eq!(fwd[0].to_bits(), rev[0].to_bits());
        }
        let k = angular_kernel(&s, &g, 2, 64).unwrap();
        for i in 0..g.len() {
            for j in 0..g.len() {
                assert_eq!(k.entry(i, j).to_bits(), k.entry(j, i).to_bits());
            }
        }
    }

    #[test]
    fn sine_projection_vanishes() {
        // The state depends on phi through cos(phi) only, so sine moments
        // are pure quadrature noise.
        let g = grid(10);
        let s = interacting();
        let n_phi = 128;
        let step = 2.0 * std::f64::consts::PI / n_phi as f64;
        for m in 1..=4u32 {
            for (i, j) in [(0usize, 3usize), (5, 9), (2, 2)] {
                let (r1, r2) = (g.nodes()[i], g.nodes()[j]);
                let mut acc = 0.0;
                for k in 0..n_phi {
                    let phi = k as f64 * step;
                    let gg = pair_geometry_from_radii(r1, r2, phi.cos());
                    acc += s.amplitude(gg) * (m as f64 * phi).sin();
                }
                let val = (r1 * r2).sqrt() * acc / n_phi as f64;
                assert_abs_diff_eq!(val, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn angular_resolution_is_converged() {
        let g = grid(16);
        let s = interacting();
        for m in [0, 2, 5] {
            let coarse = angular_kernel(&s, &g, m, 128).unwrap();
            let fine = angular_kernel(&s, &g, m, 256).unwrap();
            let diff = coarse
                .matrix()
                .iter()
                .zip(fine.matrix())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(
                diff < 1e-12,
                "m = {m}: n_phi refinement moved entries by {diff:.3e}"
            );
        }
    }

    struct CountingState {
        inner: GaussianPairState,
        calls: AtomicUsize,
    }

    impl crate::models::PairState for CountingState {
        fn amplitude(&self, g: PairGeometry) -> f64 {
            self.calls.fetch_add(1, Ordering::Relaxed);
            self.inner.amplitude(g)
        }
    }

    #[test]
    fn batched_build_shares_state_samples() {
        let g = grid(12);
        let s = CountingState {
            inner: interacting(),
            calls: AtomicUsize::new(0),
        };
        let n_phi = 64;
        angular_kernel_all(&s, &g, 6, n_phi).unwrap();
        let expected = 12 * 13 / 2 * n_phi;
        assert_eq!(s.calls.load(Ordering::Relaxed), expected);
    }

    #[test]
    fn rows_at_nodes_match_matrix_rows() {
        let g = grid(12);
        let s = interacting();
        let all = angular_kernel_all(&s, &g, 4, 64).unwrap();
        for &i in &[0usize, 5, 11] {
            let rows = kernel_rows_at(&s, &g, 4, 64, g.nodes()[i]).unwrap();
            for (m, row) in rows.iter().enumerate() {
                for (j, &value) in row.iter().enumerate() {
                    assert_eq!(
                        value.to_bits(),
                        all[m].entry(i, j).to_bits(),
                        "m = {m}, j = {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_unusable_angular_grids() {
        let g = grid(10);
        let s = separable();
        assert!(angular_kernel(&s, &g, 0, 63).is_err());
        assert!(angular_kernel(&s, &g, 0, 32).is_err());
        assert!(angular_kernel(&s, &g, 20, 80).is_err());
        assert!(kernel_rows_at(&s, &g, 0, 64, 9.0).is_err());
        assert!(kernel_rows_at(&s, &g, 0, 64, 0.0).is_err());
    }

    struct BrokenState;

    impl crate::models::PairState for BrokenState {
        fn amplitude(&self, g: PairGeometry) -> f64 {
            if g.rho > 4.0 {
                f64::NAN
            } else {
                1.0
            }
        }
    }

    #[test]
    fn non_finite_amplitude_is_reported() {
        let g = grid(16);
        match angular_kernel(&BrokenState, &g, 0, 64) {
            Err(Error::StateEvaluation { rho, .. }) => assert!(rho > 4.0),
            other => panic!("expected state-evaluation error, got {other:?}"),
        }
    }
}
