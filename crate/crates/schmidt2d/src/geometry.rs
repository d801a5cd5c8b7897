//! Relative / center-of-mass geometry of a particle pair in the plane.
//!
//! For particles at polar positions (rho1, phi1) and (rho2, phi2) the
//! rotationally invariant coordinates are the separation and the
//! center-of-mass radius,
//!
//! ```text
//! rho    = |r2 - r1|       = sqrt(rho1^2 + rho2^2 - 2 rho1 rho2 cos dphi)
//! varrho = |r1 + r2| / 2   = sqrt(rho1^2 + rho2^2 + 2 rho1 rho2 cos dphi) / 2
//! ```
//!
//! with dphi = phi2 - phi1. Both depend on the angles only through dphi,
//! which is formed before any trigonometry so that rotating both particles
//! by a common offset cannot change the result. The pair satisfies the
//! exact identity `4 varrho^2 + rho^2 = 2 (rho1^2 + rho2^2)`.

use crate::error::{Error, Result};

/// Position of one particle in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub radius: f64,
    pub angle: f64,
}

impl PolarPoint {
    /// Requires a finite, non-negative radius and a finite angle.
    pub fn new(radius: f64, angle: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::config(
                "radius",
                format!("must be finite and >= 0, got {radius}"),
            ));
        }
        if !angle.is_finite() {
            return Err(Error::config(
                "angle",
                format!("must be finite, got {angle}"),
            ));
        }
        Ok(PolarPoint { radius, angle })
    }
}

/// Relative and center-of-mass radii of a particle pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    /// Separation |r2 - r1|.
    pub rho: f64,
    /// Center-of-mass radius |r1 + r2| / 2.
    pub varrho: f64,
}

/// Map a pair of polar positions to (rho, varrho).
///
/// Exchange symmetric bit for bit: the radii enter only through
/// rho1^2 + rho2^2 and rho1 * rho2, and the angles only through
/// cos |phi2 - phi1|.
pub fn pair_geometry(p1: PolarPoint, p2: PolarPoint) -> PairGeometry {
    let cos_dphi = (p2.angle - p1.angle).abs().cos();
    pair_geometry_from_radii(p1.radius, p2.radius, cos_dphi)
}

/// Same map with the relative angle already reduced to its cosine.
///
/// This is the form the angular projection loop uses: it never holds
/// absolute angles, only cos(dphi) on a uniform dphi grid. Arguments of
/// the square roots are clamped at zero so that roundoff near collinear
/// configurations cannot produce NaN.
pub fn pair_geometry_from_radii(rho1: f64, rho2: f64, cos_dphi: f64) -> PairGeometry {
    let sum_sq = rho1 * rho1 + rho2 * rho2;
    let cross = 2.0 * (rho1 * rho2) * cos_dphi;
    let rho = (sum_sq - cross).max(0.0).sqrt();
    let varrho = 0.5 * (sum_sq + cross).max(0.0).sqrt();
    PairGeometry { rho, varrho }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coincident_points() {
        let p = PolarPoint::new(1.3, 0.7).unwrap();
        let g = pair_geometry(p, p);
        assert_abs_diff_eq!(g.rho, 0.0, epsilon = 1e-15);
        assert_relative_eq!(g.varrho, 1.3, max_relative = 1e-15);
    }

    #[test]
    fn antipodal_equal_radii() {
        let g = pair_geometry(
            PolarPoint::new(2.0, 0.0).unwrap(),
            PolarPoint::new(2.0, std::f64::consts::PI).unwrap(),
        );
        assert_relative_eq!(g.rho, 4.0, max_relative = 1e-15);
        assert_abs_diff_eq!(g.varrho, 0.0, epsilon = 1e-7);
    }

    #[test]
    fn perpendicular_legs() {
        // 3-4-5 triangle: separation 5, center of mass at 5/2.
        let g = pair_geometry(
            PolarPoint::new(3.0, 0.0).unwrap(),
            PolarPoint::new(4.0, std::f64::consts::FRAC_PI_2).unwrap(),
        );
        assert_relative_eq!(g.rho, 5.0, max_relative = 1e-14);
        assert_relative_eq!(g.varrho, 2.5, max_relative = 1e-14);
    }

    #[test]
    fn exchange_symmetry_is_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p1 = PolarPoint::new(rng.gen::<f64>() * 5.0, rng.gen::<f64>() * 7.0 - 3.5).unwrap();
            let p2 = PolarPoint::new(rng.gen::<f64>() * 5.0, rng.gen::<f64>() * 7.0 - 3.5).unwrap();
            let a = pair_geometry(p1, p2);
            let b = pair_geometry(p2, p1);
            assert_eq!(a.rho.to_bits(), b.rho.to_bits());
            assert_eq!(a.varrho.to_bits(), b.varrho.to_bits());
        }
    }

    #[test]
    fn rotation_invariance_exact_for_exact_offsets() {
        // Dyadic angles and offsets add without rounding, so the angle
        // difference is reproduced exactly and the result must be bitwise equal.
        let (phi1, phi2) = (0.25, 1.5);
        let base = pair_geometry(
            PolarPoint::new(1.7, phi1).unwrap(),
            PolarPoint::new(0.9, phi2).unwrap(),
        );
        for k in 1..=16 {
            let delta = k as f64 * 0.125;
            let rot = pair_geometry(
                PolarPoint::new(1.7, phi1 + delta).unwrap(),
                PolarPoint::new(0.9, phi2 + delta).unwrap(),
            );
            assert_eq!(base.rho.to_bits(), rot.rho.to_bits());
            assert_eq!(base.varrho.to_bits(), rot.varrho.to_bits());
        }
    }

    #[test]
    fn rotation_invariance_general_offsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p1 = PolarPoint::new(rng.gen::<f64>() * 4.0, rng.gen::<f64>()).unwrap();
            let p2 = PolarPoint::new(rng.gen::<f64>() * 4.0, rng.gen::<f64>() + 1.0).unwrap();
            let delta = rng.gen::<f64>() * 20.0 - 10.0;
            let base = pair_geometry(p1, p2);
            let rot = pair_geometry(
                PolarPoint::new(p1.radius, p1.angle + delta).unwrap(),
                PolarPoint::new(p2.radius, p2.angle + delta).unwrap(),
            );
            // The offset additions round, so only near-exact agreement is guaranteed.
            assert_relative_eq!(base.rho, rot.rho, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(
                base.varrho,
                rot.varrho,
                max_relative = 1e-12,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn quadratic_identity() {
        // 4 varrho^2 + rho^2 = 2 (rho1^2 + rho2^2) holds to machine precision.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let (r1, r2) = (rng.gen::<f64>() * 6.0, rng.gen::<f64>() * 6.0);
            let c = rng.gen::<f64>() * 2.0 - 1.0;
            let g = pair_geometry_from_radii(r1, r2, c);
            let lhs = 4.0 * g.varrho * g.varrho + g.rho * g.rho;
            let rhs = 2.0 * (r1 * r1 + r2 * r2);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13, epsilon = 1e-13);
        }
    }

    #[test]
    fn collinear_roundoff_never_nan() {
        // cos(dphi) = +-1 with nearly equal radii drives the sqrt arguments
        // through zero; the clamp must keep them real.
        let r = 1.0 + 1e-16;
        for c in [1.0, -1.0, 1.0 - 1e-17, -1.0 + 1e-17] {
            let g = pair_geometry_from_radii(r, 1.0, c);
            assert!(g.rho.is_finite() && g.varrho.is_finite());
            assert!(g.rho >= 0.0 && g.varrho >= 0.0);
        }
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(PolarPoint::new(-1.0, 0.0).is_err());
        assert!(PolarPoint::new(f64::NAN, 0.0).is_err());
        assert!(PolarPoint::new(1.0, f64::INFINITY).is_err());
    }
}
