//! Two-particle wave function models.
//!
//! Everything downstream only needs the amplitude Psi(rho, varrho) as a
//! function of the rotationally invariant pair coordinates, which is the
//! `PairState` trait. The built-in models are products of a relative and
//! a center-of-mass factor,
//!
//! ```text
//! Psi(rho, varrho) = c * f_rel(rho) * f_cm(varrho)
//! ```
//!
//! either Gaussian profiles with widths (sigma_rel, sigma_cm) or radial
//! tables interpolated by windowed Lagrange polynomials. For products the
//! norm integral separates: with the unit Jacobian of the (rho, varrho)
//! change of variables,
//!
//! ```text
//! <Psi|Psi> = c^2 * (2 pi int rho f_rel^2 drho) * (2 pi int varrho f_cm^2 dvarrho),
//! ```
//!
//! which `ProductState::normalize` measures by quadrature (relative factor
//! on (0, 2 rho_max], since the separation reaches twice the single-particle
//! cutoff, center of mass on (0, rho_max]).

use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::geometry::PairGeometry;
use crate::grid::{build_radial_grid, QuadratureRule, RadialGrid};

/// A two-particle state expressed in pair coordinates.
pub trait PairState: Send + Sync {
    /// Amplitude at separation `g.rho` and center-of-mass radius `g.varrho`.
    fn amplitude(&self, g: PairGeometry) -> f64;
}

/// Product states expose their factors so normalization can use two 1D
/// integrals instead of a 4D one.
pub trait ProductState: PairState {
    /// Relative-coordinate profile, without the overall constant.
    fn rel_profile(&self, rho: f64) -> f64;
    /// Center-of-mass profile, without the overall constant.
    fn cm_profile(&self, varrho: f64) -> f64;
    fn norm_constant(&self) -> f64;
    fn set_norm_constant(&mut self, c: f64);

    /// Rescale the overall constant so that <Psi|Psi> = 1.
    ///
    /// Returns the norm integral measured before rescaling; a state that is
    /// already normalized therefore returns 1 up to quadrature error. The
    /// integration grids are Gauss-Legendre with the same point count as
    /// `grid`, spanning (0, 2 rho_max] for the relative factor and
    /// (0, rho_max] for the center of mass.
    fn normalize(&mut self, grid: &RadialGrid) -> Result<f64> {
        let n = grid.len().max(64);
        let rel_grid = build_radial_grid(n, 2.0 * grid.rho_max(), QuadratureRule::GaussLegendre)?;
        let cm_grid = build_radial_grid(n, grid.rho_max(), QuadratureRule::GaussLegendre)?;
        let two_pi = 2.0 * std::f64::consts::PI;
        let i_rel = rel_grid.integrate(|r| {
            let f = self.rel_profile(r);
            r * f * f
        });
        let i_cm = cm_grid.integrate(|r| {
            let f = self.cm_profile(r);
            r * f * f
        });
        let c = self.norm_constant();
        let norm = c * c * two_pi * i_rel * two_pi * i_cm;
        if !norm.is_finite() || norm < 1e-250 {
            return Err(Error::DegenerateState { norm });
        }
        self.set_norm_constant(c / norm.sqrt());
        Ok(norm)
    }
}

/// Gaussian pair state exp(-rho^2 / 2 sigma_rel^2) exp(-varrho^2 / 2 sigma_cm^2).
///
/// The two widths are independent, which correlates the particles unless
/// sigma_rel = 2 sigma_cm (the non-interacting ratio, where the state
/// factorizes over the individual particles).
#[derive(Debug, Clone)]
pub struct GaussianPairState {
    sigma_rel: f64,
    sigma_cm: f64,
    norm: f64,
}

impl GaussianPairState {
    /// New un-normalized state (constant 1). Widths must be finite and positive.
    pub fn new(sigma_rel: f64, sigma_cm: f64) -> Result<Self> {
        for (name, s) in [("model.sigma_rel", sigma_rel), ("model.sigma_cm", sigma_cm)] {
            if !s.is_finite() || s <= 0.0 {
                return Err(Error::config(
                    name,
                    format!("must be finite and > 0, got {s}"),
                ));
            }
        }
        Ok(GaussianPairState {
            sigma_rel,
            sigma_cm,
            norm: 1.0,
        })
    }

    pub fn sigma_rel(&self) -> f64 {
        self.sigma_rel
    }

    pub fn sigma_cm(&self) -> f64 {
        self.sigma_cm
    }

    /// Geometric ratio Z between successive occupancy levels, in closed form.
    ///
    /// In Cartesian coordinates the state is a pair of identically coupled
    /// 1D Gaussians exp(-a (x1^2 + x2^2)/2 - b x1 x2) per axis, with
    /// a = 1/sigma_rel^2 + 1/(4 sigma_cm^2) and b the same combination with
    /// the first sign flipped. The Mehler expansion diagonalizes each axis
    /// with amplitude ratio w = (1 - r) / (1 + r), r = sqrt((a-|b|)/(a+|b|)),
    /// and occupancies go as the square: Z = w^2. The occupancy of polar
    /// mode (s, m) is (1-Z)^2 Z^(2s+|m|); Z = 0 iff sigma_rel = 2 sigma_cm
    /// (the separable ratio).
    pub fn occupancy_ratio(&self) -> f64 {
        let a = 1.0 / (self.sigma_rel * self.sigma_rel) + 0.25 / (self.sigma_cm * self.sigma_cm);
        let b = -1.0 / (self.sigma_rel * self.sigma_rel) + 0.25 / (self.sigma_cm * self.sigma_cm);
        if b == 0.0 {
            return 0.0;
        }
        let r = ((a - b.abs()) / (a + b.abs())).sqrt();
        let w = (1.0 - r) / (1.0 + r);
        w * w
    }

    /// Closed-form occupancy of mode (s, m): (1-Z)^2 Z^(2s+|m|).
    pub fn occupancy(&self, s: usize, m: i32) -> f64 {
        let z = self.occupancy_ratio();
        let k = 2 * s as i32 + m.abs();
        (1.0 - z) * (1.0 - z) * z.powi(k)
    }

    /// Closed-form von Neumann entanglement entropy in nats.
    ///
    /// Each Cartesian axis contributes S_1D = -ln(1-Z) - Z ln Z / (1-Z)
    /// and the axes are independent, so S = 2 S_1D.
    pub fn entropy_nats(&self) -> f64 {
        let z = self.occupancy_ratio();
        if z == 0.0 {
            return 0.0;
        }
        2.0 * (-(1.0 - z).ln() - z * z.ln() / (1.0 - z))
    }
}

impl PairState for GaussianPairState {
    fn amplitude(&self, g: PairGeometry) -> f64 {
        self.norm * self.rel_profile(g.rho) * self.cm_profile(g.varrho)
    }
}

impl ProductState for GaussianPairState {
    fn rel_profile(&self, rho: f64) -> f64 {
        (-0.5 * rho * rho / (self.sigma_rel * self.sigma_rel)).exp()
    }

    fn cm_profile(&self, varrho: f64) -> f64 {
        (-0.5 * varrho * varrho / (self.sigma_cm * self.sigma_cm)).exp()
    }

    fn norm_constant(&self) -> f64 {
        self.norm
    }

    fn set_norm_constant(&mut self, c: f64) {
        self.norm = c;
    }
}

/// Radial samples with strictly increasing abscissae.
#[derive(Debug, Clone)]
pub struct RadialTable {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl RadialTable {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::config(
                "table",
                "abscissa and value columns differ in length",
            ));
        }
        if x.len() < 2 {
            return Err(Error::config("table", "needs at least two samples"));
        }
        if x[0] < 0.0 {
            return Err(Error::config(
                "table",
                format!("abscissae must be >= 0, first is {}", x[0]),
            ));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::config("table", "all entries must be finite"));
        }
        for i in 1..x.len() {
            if x[i] <= x[i - 1] {
                return Err(Error::config(
                    "table",
                    format!(
                        "abscissae must increase strictly; row {} has {} after {}",
                        i + 1,
                        x[i],
                        x[i - 1]
                    ),
                ));
            }
        }
        Ok(RadialTable { x, y })
    }

    /// Parse a two-column text file. Lines starting with `#` and blank
    /// lines are skipped; everything else must be two numbers.
    pub fn from_file(path: &Path) -> Result<Self> {
        let err = |line: usize, message: &str| Error::Table {
            path: path.display().to_string(),
            line,
            message: message.to_string(),
        };
        // An unreadable table is a misconfigured path; line 0 marks the
        // whole file rather than a spot in it.
        let text =
            std::fs::read_to_string(path).map_err(|e| err(0, &format!("cannot read: {e}")))?;
        let mut x = Vec::new();
        let mut y = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(err(idx + 1, "expected exactly two columns")),
            };
            let xv: f64 = a
                .parse()
                .map_err(|_| err(idx + 1, "first column is not a number"))?;
            let yv: f64 = b
                .parse()
                .map_err(|_| err(idx + 1, "second column is not a number"))?;
            x.push(xv);
            y.push(yv);
        }
        RadialTable::new(x, y)
    }

    pub fn first(&self) -> f64 {
        self.x[0]
    }

    pub fn last(&self) -> f64 {
        *self.x.last().unwrap()
    }

    /// Windowed Lagrange interpolation with `order + 1` points.
    ///
    /// Queries below the first abscissa return the first sample (the
    /// profile is taken as flat there); queries beyond the last return
    /// None so the caller can decide how to treat the truncated tail.
    pub fn eval(&self, q: f64, order: usize) -> Option<f64> {
        let n = self.x.len();
        if q > self.x[n - 1] {
            return None;
        }
        if q <= self.x[0] {
            return Some(self.y[0]);
        }
        let k = order.min(n - 1);
        // Left index of the bracketing interval.
        let seg = self.x.partition_point(|&xi| xi <= q) - 1;
        let start = seg.saturating_sub((k - 1) / 2).min(n - 1 - k);
        let xs = &self.x[start..=start + k];
        let ys = &self.y[start..=start + k];
        let mut acc = 0.0;
        for i in 0..=k {
            let mut basis = 1.0;
            for j in 0..=k {
                if j != i {
                    basis *= (q - xs[j]) / (xs[i] - xs[j]);
                }
            }
            acc += basis * ys[i];
        }
        Some(acc)
    }
}

/// Product state defined by tabulated relative and center-of-mass profiles.
///
/// Beyond the last tabulated abscissa a profile evaluates to zero and the
/// state records that its tail was truncated; the flag surfaces in run
/// diagnostics so silently clipped tables are visible.
#[derive(Debug)]
pub struct TabulatedPairState {
    rel: RadialTable,
    cm: RadialTable,
    order: usize,
    norm: f64,
    truncated: AtomicBool,
}

impl TabulatedPairState {
    /// Interpolation order must be in 1..=5 (3 is the usual choice).
    pub fn new(rel: RadialTable, cm: RadialTable, order: usize) -> Result<Self> {
        if !(1..=5).contains(&order) {
            return Err(Error::config(
                "model.interpolation_order",
                format!("must be in 1..=5, got {order}"),
            ));
        }
        Ok(TabulatedPairState {
            rel,
            cm,
            order,
            norm: 1.0,
            truncated: AtomicBool::new(false),
        })
    }

    pub fn from_files(rel_path: &Path, cm_path: &Path, order: usize) -> Result<Self> {
        TabulatedPairState::new(
            RadialTable::from_file(rel_path)?,
            RadialTable::from_file(cm_path)?,
            order,
        )
    }

    /// True once any evaluation fell beyond a table's last abscissa.
    pub fn truncated_tail(&self) -> bool {
        self.truncated.load(Ordering::Relaxed)
    }

    pub fn clear_truncated_tail(&self) {
        self.truncated.store(false, Ordering::Relaxed);
    }

    fn eval_or_zero(&self, table: &RadialTable, q: f64) -> f64 {
        match table.eval(q, self.order) {
            Some(v) => v,
            None => {
                self.truncated.store(true, Ordering::Relaxed);
                0.0
            }
        }
    }
}

impl PairState for TabulatedPairState {
    fn amplitude(&self, g: PairGeometry) -> f64 {
        self.norm * self.rel_profile(g.rho) * self.cm_profile(g.varrho)
    }
}

impl ProductState for TabulatedPairState {
    fn rel_profile(&self, rho: f64) -> f64 {
        self.eval_or_zero(&self.rel, rho)
    }

    fn cm_profile(&self, varrho: f64) -> f64 {
        self.eval_or_zero(&self.cm, varrho)
    }

    fn norm_constant(&self) -> f64 {
        self.norm
    }

    fn set_norm_constant(&mut self, c: f64) {
        self.norm = c;
    }
}
