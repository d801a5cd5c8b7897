//! Spectrum assembly, entanglement measures, natural orbitals, and
//! reconstruction checks.
//!
//! A solved set of channels determines the occupancies
//!
//! ```text
//! lambda_{s,m} = (2 pi kappa_{s,m})^2,
//! ```
//!
//! listed for signed m (channel m > 0 stands for the degenerate +-m pair,
//! and both members are emitted with bitwise-equal lambda). For a
//! normalized, fully resolved state the occupancies sum to 1; the deficit
//! 1 - sum lambda measures what the truncation (rho_max, m_max, s_max, N)
//! failed to capture. Entanglement measures are computed from the raw
//! occupancies, not renormalized ones, so a large deficit shows up both as
//! a warning and as biased entropies rather than being silently hidden.
//!
//! The natural orbitals are v_{s,m}(rho, phi) = chi_s(rho) / sqrt(rho) *
//! exp(i m phi); with quadrature-orthonormal chi the 2D overlap is
//! 2 pi delta_ss' delta_mm'. Reconstruction sums the truncated expansion
//!
//! ```text
//! Psi_hat = sum_m sum_s kappa_{s,m} chi_s(rho1) chi_s(rho2) / sqrt(rho1 rho2) * cos(m dphi) * mult
//! ```
//!
//! (mult = 2 for m > 0) and its squared relative L2 error against the
//! input state measures how much of the state the kept modes carry.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::angular::{angular_kernel_all, kernel_rows_at, AngularKernel};
use crate::error::{Error, Result};
use crate::geometry::PolarPoint;
use crate::grid::RadialGrid;
use crate::models::PairState;
use crate::solver::{nystrom_extend, solve_channel, SchmidtChannel, EXTENSION_FLOOR};

/// One Schmidt mode with its occupancy.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Occupancy {
    pub s: usize,
    pub m: i32,
    pub lambda: f64,
}

/// Occupancies and the entanglement measures derived from them.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    /// All kept modes, strongest first (ties: smaller |m|, then +m, then s).
    pub occupancies: Vec<Occupancy>,
    /// Sum of all kept occupancies.
    pub total_occupancy: f64,
    /// 1 - total; positive when truncation lost weight.
    pub norm_deficit: f64,
    pub von_neumann_entropy_nats: f64,
    pub von_neumann_entropy_bits: f64,
    /// 1 - sum lambda^2.
    pub linear_entropy: f64,
    /// 1 / sum lambda^2, the participation (Schmidt) number.
    pub schmidt_number: f64,
    /// Squared relative L2 error of the truncated reconstruction, when measured.
    pub reconstruction_residual: Option<f64>,
    pub warnings: Vec<String>,
}

/// Turn solved channels into the occupancy list and entanglement measures.
///
/// `norm_deficit_threshold` controls when the deficit is flagged as a
/// warning (the measures are still reported either way).
pub fn assemble_spectrum(
    channels: &[SchmidtChannel],
    norm_deficit_threshold: f64,
) -> EntanglementReport {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut occupancies = Vec::new();
    for ch in channels {
        for s in 0..ch.len() {
            let lambda = (two_pi * ch.kappa(s)).powi(2);
            occupancies.push(Occupancy {
                s,
                m: ch.m(),
                lambda,
            });
            if ch.m() != 0 {
                // The -m partner is exactly degenerate; emit it with the
                // identical value rather than recomputing anything.
                occupancies.push(Occupancy {
                    s,
                    m: -ch.m(),
                    lambda,
                });
            }
        }
    }
    occupancies.sort_by(|a, b| {
        b.lambda
            .partial_cmp(&a.lambda)
            .unwrap()
            .then(a.m.abs().cmp(&b.m.abs()))
            .then(b.m.cmp(&a.m))
            .then(a.s.cmp(&b.s))
    });

    let total: f64 = occupancies.iter().map(|o| o.lambda).sum();
    let mut s_nats = 0.0;
    let mut purity = 0.0;
    for o in &occupancies {
        if o.lambda > 0.0 {
            s_nats -= o.lambda * o.lambda.ln();
        }
        purity += o.lambda * o.lambda;
    }
    let norm_deficit = 1.0 - total;
    let mut warnings = Vec::new();
    if norm_deficit.abs() > norm_deficit_threshold {
        warnings.push(format!(
            "norm deficit {norm_deficit:.3e} exceeds {norm_deficit_threshold:.1e}: \
             increase m_max, s_max, grid n, or rho_max"
        ));
    }
    EntanglementReport {
        occupancies,
        total_occupancy: total,
        norm_deficit,
        von_neumann_entropy_nats: s_nats,
        von_neumann_entropy_bits: s_nats / std::f64::consts::LN_2,
        linear_entropy: 1.0 - purity,
        schmidt_number: 1.0 / purity,
        reconstruction_residual: None,
        warnings,
    }
}

/// A natural orbital v_{s,m}(rho, phi) = chi_s(rho)/sqrt(rho) e^{i m phi},
/// viewed over a channel's stored radial samples.
#[derive(Debug, Clone, Copy)]
pub struct NaturalOrbital<'a> {
    m: i32,
    s: usize,
    kappa: f64,
    radial: &'a [f64],
    grid: &'a RadialGrid,
}

impl NaturalOrbital<'_> {
    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// chi_s sampled at the grid nodes.
    pub fn radial(&self) -> &[f64] {
        self.radial
    }

    /// Orbital value at grid node i and angle phi.
    pub fn value_at_node(&self, i: usize, phi: f64) -> Complex64 {
        let rho = self.grid.nodes()[i];
        let radial = self.radial[i] / rho.sqrt();
        radial * Complex64::from_polar(1.0, self.m as f64 * phi)
    }
}

/// 2D overlap int v_a^* v_b rho drho dphi over the disc.
///
/// Different m are orthogonal exactly (the phi integral vanishes mode by
/// mode); equal m reduces to 2 pi times the radial quadrature overlap.
pub fn orbital_overlap(a: &NaturalOrbital<'_>, b: &NaturalOrbital<'_>) -> Complex64 {
    if a.m != b.m {
        return Complex64::new(0.0, 0.0);
    }
    let dot: f64 = a
        .grid
        .weights()
        .iter()
        .zip(a.radial.iter().zip(b.radial))
        .map(|(&w, (&x, &y))| w * x * y)
        .sum();
    Complex64::new(2.0 * std::f64::consts::PI * dot, 0.0)
}

/// A complete Schmidt decomposition: the state, the grid, and every solved
/// channel, bundled so reconstruction and off-grid evaluation have all the
/// pieces they need.
pub struct Decomposition {
    state: Arc<dyn PairState>,
    grid: RadialGrid,
    channels: Vec<SchmidtChannel>,
    n_phi: usize,
}

/// Project channels 0..=m_max and solve each for its top s_max eigenpairs.
pub fn decompose(
    state: Arc<dyn PairState>,
    grid: &RadialGrid,
    m_max: u32,
    s_max: usize,
    n_phi: usize,
) -> Result<Decomposition> {
    let kernels = angular_kernel_all(state.as_ref(), grid, m_max, n_phi)?;
    Decomposition::from_kernels(state, &kernels, s_max)
}

impl Decomposition {
    /// Solve already-projected kernels. All kernels must share one grid.
    pub fn from_kernels(
        state: Arc<dyn PairState>,
        kernels: &[AngularKernel],
        s_max: usize,
    ) -> Result<Self> {
        if kernels.is_empty() {
            return Err(Error::config("truncation.m_max", "no channels to solve"));
        }
        let n_phi = kernels[0].n_phi();
        let grid = kernels[0].grid().clone();
        for k in kernels {
            if k.n() != grid.len() {
                return Err(Error::config(
                    "grid",
                    "kernels were built on different grids",
                ));
            }
        }
        let channels = kernels
            .iter()
            .map(|k| solve_channel(k, s_max))
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition {
            state,
            grid,
            channels,
            n_phi,
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn channels(&self) -> &[SchmidtChannel] {
        &self.channels
    }

    pub fn channel(&self, m_abs: u32) -> Option<&SchmidtChannel> {
        self.channels.iter().find(|c| c.m() == m_abs as i32)
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn state(&self) -> &dyn PairState {
        self.state.as_ref()
    }

    /// Occupancies and entanglement measures of the kept modes.
    pub fn report(&self, norm_deficit_threshold: f64) -> EntanglementReport {
        assemble_spectrum(&self.channels, norm_deficit_threshold)
    }

    /// Natural-orbital view of mode (s, m); the radial part comes from the
    /// |m| channel. None when the channel or s is not kept.
    pub fn natural_orbital(&self, s: usize, m: i32) -> Option<NaturalOrbital<'_>> {
        let ch = self.channel(m.unsigned_abs())?;
        if s >= ch.len() {
            return None;
        }
        Some(NaturalOrbital {
            m,
            s,
            kappa: ch.kappa(s),
            radial: ch.orbital(s),
            grid: ch.grid(),
        })
    }

    /// Orbital value at an arbitrary point of the open disc, radial part by
    /// Nystrom extension.
    pub fn orbital_value(&self, s: usize, m: i32, rho: f64, phi: f64) -> Result<Complex64> {
        let ch = self.channel(m.unsigned_abs()).ok_or_else(|| {
            Error::config("m", format!("channel |m| = {} was not solved", m.abs()))
        })?;
        let chi = nystrom_extend(self.state.as_ref(), ch, self.n_phi, s, rho)?;
        Ok(chi / rho.sqrt() * Complex64::from_polar(1.0, m as f64 * phi))
    }

    /// Truncated reconstruction Psi_hat at a pair of points.
    ///
    /// Radial orbitals are Nystrom-extended to the two radii; modes with
    /// |kappa| below the extension floor are skipped (their weight is below
    /// quadrature noise). Exchange symmetric bit for bit, like the input.
    pub fn reconstruct(&self, p1: PolarPoint, p2: PolarPoint) -> Result<f64> {
        let m_max = self
            .channels
            .iter()
            .map(|c| c.m().unsigned_abs())
            .max()
            .unwrap();
        let rows1 = kernel_rows_at(
            self.state.as_ref(),
            &self.grid,
            m_max,
            self.n_phi,
            p1.radius,
        )?;
        let rows2 = kernel_rows_at(
            self.state.as_ref(),
            &self.grid,
            m_max,
            self.n_phi,
            p2.radius,
        )?;
        let dphi = (p2.angle - p1.angle).abs();
        let w = self.grid.weights();
        let mut psi = 0.0;
        for ch in &self.channels {
            let m_abs = ch.m().unsigned_abs() as usize;
            let (row1, row2) = (&rows1[m_abs], &rows2[m_abs]);
            let mut block = 0.0;
            for s in 0..ch.len() {
                let kappa = ch.kappa(s);
                if kappa.abs() < EXTENSION_FLOOR {
                    continue;
                }
                let chi = ch.orbital(s);
                let mut a1 = 0.0;
                let mut a2 = 0.0;
                for i in 0..w.len() {
                    a1 += w[i] * row1[i] * chi[i];
                    a2 += w[i] * row2[i] * chi[i];
                }
                block += a1 * a2 / kappa;
            }
            let angular = if ch.m() == 0 {
                1.0
            } else {
                2.0 * (ch.m() as f64 * dphi).cos()
            };
            psi += block * angular;
        }
        Ok(psi / (p1.radius * p2.radius).sqrt())
    }

    /// Squared relative L2 error of the truncated expansion against the
    /// input state, measured on the quadrature nodes and n_ang uniform
    /// relative angles. Only channels with |m| <= m_used and orbitals with
    /// s < s_used enter the reconstruction, so scanning these arguments
    /// shows how the error decays with truncation order.
    pub fn reconstruction_residual(&self, m_used: u32, s_used: usize, n_ang: usize) -> Result<f64> {
        let n = self.grid.len();
        let nodes = self.grid.nodes();
        let w = self.grid.weights();
        // Radial mode sums B_m(i, j) = sum_s kappa chi_s(i) chi_s(j).
        let mut blocks: Vec<Vec<f64>> = Vec::new();
        for ch in &self.channels {
            if ch.m().unsigned_abs() > m_used {
                continue;
            }
            let mut b = vec![0.0; n * n];
            for s in 0..ch.len().min(s_used) {
                let kappa = ch.kappa(s);
                let chi = ch.orbital(s);
                for i in 0..n {
                    let ki = kappa * chi[i];
                    for j in 0..n {
                        b[i * n + j] += ki * chi[j];
                    }
                }
            }
            blocks.push(b);
        }
        let ms: Vec<f64> = self
            .channels
            .iter()
            .filter(|c| c.m().unsigned_abs() <= m_used)
            .map(|c| c.m() as f64)
            .collect();
        let mults: Vec<f64> = self
            .channels
            .iter()
            .filter(|c| c.m().unsigned_abs() <= m_used)
            .map(|c| c.multiplicity() as f64)
            .collect();

        let step = 2.0 * std::f64::consts::PI / n_ang as f64;
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            for j in 0..n {
                let meas = w[i] * w[j] * nodes[i] * nodes[j];
                let inv_sqrt = 1.0 / (nodes[i] * nodes[j]).sqrt();
                for k in 0..n_ang {
                    let phi = k as f64 * step;
                    let g =
                        crate::geometry::pair_geometry_from_radii(nodes[i], nodes[j], phi.cos());
                    let psi = self.state.amplitude(g);
                    if !psi.is_finite() {
                        return Err(Error::StateEvaluation {
                            rho: g.rho,
                            varrho: g.varrho,
                        });
                    }
                    let mut hat = 0.0;
                    for (b, (&mf, &mult)) in blocks.iter().zip(ms.iter().zip(&mults)) {
                        hat += mult * b[i * n + j] * (mf * phi).cos();
                    }
                    hat *= inv_sqrt;
                    num += meas * (psi - hat) * (psi - hat);
                    den += meas * psi * psi;
                }
            }
        }
        if den == 0.0 {
            return Err(Error::DegenerateState { norm: 0.0 });
        }
        Ok(num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_radial_grid, QuadratureRule};
    use crate::models::{GaussianPairState, ProductState};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn grid(n: usize) -> RadialGrid {
        build_radial_grid(n, 8.0, QuadratureRule::GaussLegendre).unwrap()
    }

    fn decomposed(
        sigma_rel: f64,
        sigma_cm: f64,
        n: usize,
        m_max: u32,
        s_max: usize,
    ) -> (Decomposition, GaussianPairState) {
        let g = grid(n);
        let mut s = GaussianPairState::new(sigma_rel, sigma_cm).unwrap();
        s.normalize(&g).unwrap();
        let state = Arc::new(s.clone());
        (decompose(state, &g, m_max, s_max, 256).unwrap(), s)
    }

    #[test]
    fn separable_state_has_unit_top_occupancy() {
        let (d, _) = decomposed(2f64.sqrt(), 0.5f64.sqrt(), 64, 4, 6);
        let r = d.report(1e-4);
        assert_relative_eq!(r.occupancies[0].lambda, 1.0, max_relative = 1e-8);
        assert!(r.von_neumann_entropy_nats.abs() < 1e-7);
        assert!(r.von_neumann_entropy_bits.abs() < 1e-7);
        assert_relative_eq!(r.schmidt_number, 1.0, max_relative = 1e-7);
        assert!(r.linear_entropy.abs() < 1e-7);
        assert!(
            r.warnings.is_empty(),
            "unexpected warnings: {:?}",
            r.warnings
        );
    }

    #[test]
    fn interacting_occupancies_match_closed_form() {
        let (d, s) = decomposed(2.0, 0.5f64.sqrt(), 96, 10, 10);
        let r = d.report(1e-4);
        assert_relative_eq!(r.total_occupancy, 1.0, max_relative = 5e-6);
        // Compare the strongest 20 against (1-Z)^2 Z^(2s+|m|).
        for o in r.occupancies.iter().take(20) {
            let expect = s.occupancy(o.s, o.m);
            assert_relative_eq!(o.lambda, expect, max_relative = 1e-6);
        }
        assert_relative_eq!(
            r.von_neumann_entropy_nats,
            s.entropy_nats(),
            max_relative = 1e-5
        );
    }

    #[test]
    fn spectrum_is_sorted_and_degenerate_pairs_are_bitwise() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 48, 6, 6);
        let r = d.report(1.0);
        for pair in r.occupancies.windows(2) {
            assert!(pair[0].lambda >= pair[1].lambda);
        }
        for o in &r.occupancies {
            if o.m > 0 {
                let partner = r
                    .occupancies
                    .iter()
                    .find(|p| p.m == -o.m && p.s == o.s)
                    .expect("missing -m partner");
                assert_eq!(o.lambda.to_bits(), partner.lambda.to_bits());
            }
        }
    }

    #[test]
    fn entropy_bounds_hold() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 48, 6, 6);
        let r = d.report(1.0);
        let count = r.occupancies.len() as f64;
        assert!(r.von_neumann_entropy_nats >= 0.0);
        assert!(r.von_neumann_entropy_nats <= count.ln());
        assert!(r.linear_entropy >= 0.0 && r.linear_entropy < 1.0);
        assert!(r.schmidt_number >= 1.0 - 1e-12);
        assert_relative_eq!(
            r.von_neumann_entropy_bits,
            r.von_neumann_entropy_nats / std::f64::consts::LN_2,
            max_relative = 1e-15
        );
    }

    #[test]
    fn truncating_channels_raises_a_norm_warning() {
        // m_max = 1 discards about 2 Z^2 of the weight, which is above the
        // 1e-4 default threshold for Z = 17 - 12 sqrt(2).
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 64, 1, 8);
        let r = d.report(1e-4);
        assert!(!r.warnings.is_empty());
        assert!(r.norm_deficit > 1e-4);
    }

    #[test]
    fn reconstruct_matches_separable_state() {
        let (d, s) = decomposed(2f64.sqrt(), 0.5f64.sqrt(), 64, 2, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..60 {
            let p1 = PolarPoint::new(0.2 + rng.gen::<f64>() * 3.0, rng.gen::<f64>() * 6.0).unwrap();
            let p2 = PolarPoint::new(0.2 + rng.gen::<f64>() * 3.0, rng.gen::<f64>() * 6.0).unwrap();
            let truth = s.amplitude(crate::geometry::pair_geometry(p1, p2));
            if truth.abs() > 1e-6 {
                let hat = d.reconstruct(p1, p2).unwrap();
                assert_relative_eq!(hat, truth, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn reconstruct_is_exchange_symmetric_bitwise() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 48, 5, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let p1 = PolarPoint::new(0.3 + rng.gen::<f64>() * 3.0, rng.gen::<f64>() * 6.0).unwrap();
            let p2 = PolarPoint::new(0.3 + rng.gen::<f64>() * 3.0, rng.gen::<f64>() * 6.0).unwrap();
            let a = d.reconstruct(p1, p2).unwrap();
            let b = d.reconstruct(p2, p1).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn reconstruct_rejects_out_of_domain_points() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 48, 2, 3);
        let inside = PolarPoint::new(1.0, 0.0).unwrap();
        let outside = PolarPoint::new(9.0, 0.0).unwrap();
        assert!(matches!(
            d.reconstruct(inside, outside),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn interacting_reconstruction_converges_pointwise() {
        let (d, s) = decomposed(2.0, 0.5f64.sqrt(), 64, 8, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..25 {
            let p1 = PolarPoint::new(0.3 + rng.gen::<f64>() * 2.5, rng.gen::<f64>() * 6.0).unwrap();
            let p2 = PolarPoint::new(0.3 + rng.gen::<f64>() * 2.5, rng.gen::<f64>() * 6.0).unwrap();
            let truth = s.amplitude(crate::geometry::pair_geometry(p1, p2));
            if truth.abs() > 1e-4 {
                let hat = d.reconstruct(p1, p2).unwrap();
                assert_relative_eq!(hat, truth, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn residual_decays_with_truncation_order() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 48, 8, 8);
        let r4 = d.reconstruction_residual(4, 8, 64).unwrap();
        let r2 = d.reconstruction_residual(2, 8, 64).unwrap();
        let r0 = d.reconstruction_residual(0, 8, 64).unwrap();
        assert!(r4 < r2 && r2 < r0, "residuals: {r0:.3e} {r2:.3e} {r4:.3e}");
        let s2 = d.reconstruction_residual(8, 2, 64).unwrap();
        let s1 = d.reconstruction_residual(8, 1, 64).unwrap();
        assert!(s2 < s1);
        // Closed form: dropping channels |m| > M leaves 2 Z^(M+1)/(1+Z).
        let z = GaussianPairState::new(2.0, 0.5f64.sqrt())
            .unwrap()
            .occupancy_ratio();
        assert_relative_eq!(r2, 2.0 * z.powi(3) / (1.0 + z), max_relative = 1e-3);
    }

    #[test]
    fn orbital_overlaps_are_two_pi_orthonormal() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 64, 3, 4);
        for m1 in -3i32..=3 {
            for m2 in -3i32..=3 {
                for s1 in 0..4 {
                    for s2 in 0..4 {
                        let a = d.natural_orbital(s1, m1).unwrap();
                        let b = d.natural_orbital(s2, m2).unwrap();
                        let ov = orbital_overlap(&a, &b);
                        let expect = if m1 == m2 && s1 == s2 { 2.0 * PI } else { 0.0 };
                        assert_abs_diff_eq!(ov.re, expect, epsilon = 1e-9);
                        assert_abs_diff_eq!(ov.im, 0.0, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn orbitals_carry_angular_momentum_phases() {
        // v(rho, phi + delta) = e^{i m delta} v(rho, phi).
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 48, 3, 3);
        for m in [-3i32, -1, 0, 2] {
            let orb = d.natural_orbital(0, m).unwrap();
            for &(phi, delta) in &[(0.3, 0.9), (1.2, -2.0), (4.0, 0.25)] {
                let lhs = orb.value_at_node(20, phi + delta);
                let rhs = orb.value_at_node(20, phi) * Complex64::from_polar(1.0, m as f64 * delta);
                assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn off_grid_orbital_value_is_continuous_with_nodes() {
        let (d, _) = decomposed(2.0, 0.5f64.sqrt(), 64, 2, 3);
        let g = d.grid();
        // Evaluate just off a node and compare against the stored sample.
        for &i in &[10usize, 30, 50] {
            let rho = g.nodes()[i];
            let stored = d.natural_orbital(0, 1).unwrap().value_at_node(i, 0.7);
            let evaluated = d.orbital_value(0, 1, rho, 0.7).unwrap();
            assert_abs_diff_eq!((stored - evaluated).norm(), 0.0, epsilon = 1e-9);
        }
    }
}
