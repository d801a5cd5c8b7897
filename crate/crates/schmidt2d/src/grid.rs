//! Radial quadrature grids on (0, rho_max].
//!
//! Every radial integral in the crate is a weighted sum over one of these
//! grids, and the Nystrom discretization of the integral eigenproblem uses
//! the same nodes and weights. The default rule is Gauss-Legendre mapped
//! from [-1, 1] onto [0, rho_max]; nodes and weights come from Newton
//! iteration on the Legendre recurrence. A uniform midpoint rule is kept
//! as the low-order alternative; it is the open uniform rule (no node at
//! 0 or rho_max) whose weights still sum to rho_max exactly.

use crate::error::{Error, Result};

/// Which quadrature rule generates the nodes and weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    /// Gauss-Legendre on [0, rho_max]. Spectrally accurate for smooth
    /// integrands; the default everywhere.
    GaussLegendre,
    /// Uniform open grid, nodes (i + 1/2) h with h = rho_max / n, all
    /// weights h. Second-order accurate.
    UniformMidpoint,
}

/// Nodes and weights for integrals over (0, rho_max].
#[derive(Debug, Clone)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    rho_max: f64,
    rule: QuadratureRule,
}

/// Build an n-point grid on (0, rho_max].
///
/// Requires n >= 8 (coarser grids cannot resolve anything useful here)
/// and a finite rho_max > 0. Nodes are strictly increasing and strictly
/// inside (0, rho_max); weights are positive and sum to rho_max up to
/// roundoff.
pub fn build_radial_grid(n: usize, rho_max: f64, rule: QuadratureRule) -> Result<RadialGrid> {
    if n < 8 {
        return Err(Error::config("grid.n", format!("must be >= 8, got {n}")));
    }
    if !rho_max.is_finite() || rho_max <= 0.0 {
        return Err(Error::config(
            "grid.rho_max",
            format!("must be finite and > 0, got {rho_max}"),
        ));
    }
    let (nodes, weights) = match rule {
        QuadratureRule::GaussLegendre => {
            let (x, w) = gauss_legendre(n);
            // Map [-1, 1] -> [0, rho_max].
            let half = 0.5 * rho_max;
            let nodes = x.iter().map(|&xi| half * (xi + 1.0)).collect();
            let weights = w.iter().map(|&wi| half * wi).collect();
            (nodes, weights)
        }
        QuadratureRule::UniformMidpoint => {
            let h = rho_max / n as f64;
            let nodes = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
            let weights = vec![h; n];
            (nodes, weights)
        }
    };
    Ok(RadialGrid {
        nodes,
        weights,
        rho_max,
        rule,
    })
}

impl RadialGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// Weighted sum approximating the integral of f over (0, rho_max].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on P_n with the Abramowitz-Stegun initial guess
/// cos(pi (i + 3/4) / (n + 1/2)). Only the negative half is solved;
/// the positive half is mirrored so the rule is symmetric bit for bit.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // i-th root counted from x = -1.
        let mut xi = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, xi);
            dp = d;
            let step = p / d;
            xi -= step;
            if step.abs() <= 1e-15 * xi.abs().max(1.0) {
                let (p2, d2) = legendre(n, xi);
                dp = d2;
                xi -= p2 / d2;
                break;
            }
        }
        let weight = 2.0 / ((1.0 - xi * xi) * dp * dp);
        x[i] = xi;
        w[i] = weight;
        x[n - 1 - i] = -xi;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        // Central node of an odd rule sits exactly at 0.
        let (_, d) = legendre(n, 0.0);
        x[m - 1] = 0.0;
        w[m - 1] = 2.0 / (d * d);
    }
    (x, w)
}

/// Legendre polynomial P_n(x) and its derivative via the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn five_point_rule_matches_tabulated_values() {
        // Classical 5-point Gauss-Legendre abscissas and weights.
        let (x, w) = gauss_legendre(5);
        let x_ref = [
            -0.906179845938664,
            -0.538469310105683,
            0.0,
            0.538469310105683,
            0.906179845938664,
        ];
        let w_ref = [
            0.236926885056189,
            0.478628670499366,
            0.568888888888889,
            0.478628670499366,
            0.236926885056189,
        ];
        for i in 0..5 {
            assert_abs_diff_eq!(x[i], x_ref[i], epsilon = 1e-14);
            assert_abs_diff_eq!(w[i], w_ref[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for &n in &[8, 16, 33, 64, 128] {
            for rule in [
                QuadratureRule::GaussLegendre,
                QuadratureRule::UniformMidpoint,
            ] {
                let g = build_radial_grid(n, 8.0, rule).unwrap();
                let sum: f64 = g.weights().iter().sum();
                assert_relative_eq!(sum, 8.0, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn nodes_strictly_increasing_and_interior() {
        for rule in [
            QuadratureRule::GaussLegendre,
            QuadratureRule::UniformMidpoint,
        ] {
            let g = build_radial_grid(48, 5.0, rule).unwrap();
            let nodes = g.nodes();
            assert!(nodes[0] > 0.0);
            assert!(*nodes.last().unwrap() < 5.0);
            for p in nodes.windows(2) {
                assert!(p[0] < p[1]);
            }
            assert!(g.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn gaussian_moment_integral() {
        // int_0^8 rho exp(-rho^2/2) drho = 1 - exp(-32).
        let g = build_radial_grid(32, 8.0, QuadratureRule::GaussLegendre).unwrap();
        let val = g.integrate(|r| r * (-0.5 * r * r).exp());
        assert_abs_diff_eq!(val, 1.0 - (-32.0f64).exp(), epsilon = 1e-10);
    }

    #[test]
    fn polynomial_exactness() {
        // n-point Gauss-Legendre integrates degree 2n-1 exactly; check
        // rho^15 with n = 8 against the closed form.
        let g = build_radial_grid(8, 2.0, QuadratureRule::GaussLegendre).unwrap();
        let val = g.integrate(|r| r.powi(15));
        assert_relative_eq!(val, 2.0f64.powi(16) / 16.0, max_relative = 1e-13);
    }

    #[test]
    fn midpoint_second_order_convergence() {
        let exact = 1.0 - (-8.0f64).exp();
        let err = |n: usize| {
            let g = build_radial_grid(n, 4.0, QuadratureRule::UniformMidpoint).unwrap();
            (g.integrate(|r| r * (-0.5 * r * r).exp()) - exact).abs()
        };
        let (e1, e2) = (err(64), err(128));
        // Halving h should cut the error by about 4.
        assert!(e2 < e1 / 3.0, "e1 = {e1:.3e}, e2 = {e2:.3e}");
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(build_radial_grid(7, 8.0, QuadratureRule::GaussLegendre).is_err());
        assert!(build_radial_grid(16, 0.0, QuadratureRule::GaussLegendre).is_err());
        assert!(build_radial_grid(16, -1.0, QuadratureRule::GaussLegendre).is_err());
        assert!(build_radial_grid(16, f64::NAN, QuadratureRule::GaussLegendre).is_err());
    }

    #[test]
    fn gauss_legendre_large_n_stable() {
        let g = build_radial_grid(256, 10.0, QuadratureRule::GaussLegendre).unwrap();
        let sum: f64 = g.weights().iter().sum();
        assert_relative_eq!(sum, 10.0, max_relative = 1e-12);
        let val = g.integrate(|r| (-r).exp());
        assert_relative_eq!(val, 1.0 - (-10.0f64).exp(), max_relative = 1e-13);
    }
}
