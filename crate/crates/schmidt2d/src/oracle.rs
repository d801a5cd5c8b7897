//! Brute-force cross-check: occupancies from a dense bipartite sample of
//! the state, with no angular reduction anywhere.
//!
//! Each particle gets the same Cartesian midpoint grid over
//! [-half_width, half_width]^2; the sampled amplitudes form a symmetric
//! dim x dim matrix (dim = n_cart^2) whose singular values sigma give the
//! occupancies sigma^2 directly, normalized here by the squared Frobenius
//! norm so they sum to one over the full spectrum. Agreement with the
//! channel pipeline therefore checks the entire angular-projection and
//! radial-quadrature chain against plain linear algebra.
//!
//! Deliberately nothing is shared with the production path: rho and varrho
//! come from Cartesian differences rather than the polar geometry helpers,
//! and the projected eigenproblem is solved by a classical max-pivot Jacobi
//! instead of the cyclic sweeps in the channel solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::PairGeometry;
use crate::models::PairState;

/// Hard cap on the bipartite matrix dimension (n_cart^2).
pub const MAX_ORACLE_DIM: usize = 2500;

const MAX_ITERATIONS: usize = 500;

/// Top-k occupancies of the sampled bipartite matrix, strongest first.
///
/// The spectrum is found by subspace iteration over k + 14 random vectors
/// (fixed seed, so results are reproducible bit for bit) with Rayleigh-Ritz
/// extraction each step; iteration stops once the leading k singular values
/// move by less than 1e-12 of the matrix norm between steps.
pub fn oracle_spectrum(
    state: &dyn PairState,
    n_cart: usize,
    half_width: f64,
    k: usize,
) -> Result<Vec<f64>> {
    if n_cart < 2 {
        return Err(Error::config(
            "oracle.n_cart",
            format!("need at least 2 cells per axis, got {n_cart}"),
        ));
    }
    if !half_width.is_finite() || half_width <= 0.0 {
        return Err(Error::config(
            "oracle.half_width",
            format!("must be positive, got {half_width}"),
        ));
    }
    let dim = n_cart * n_cart;
    if dim > MAX_ORACLE_DIM {
        return Err(Error::OracleTooLarge {
            dim,
            max: MAX_ORACLE_DIM,
        });
    }
    if k == 0 || k > dim {
        return Err(Error::config(
            "oracle.k",
            format!("must be in 1..={dim}, got {k}"),
        ));
    }

    let matrix = sample_bipartite(state, n_cart, half_width)?;
    let frob2: f64 = matrix.iter().map(|x| x * x).sum();
    if frob2 <= f64::MIN_POSITIVE {
        return Err(Error::DegenerateState { norm: frob2 });
    }

    // Subspace iteration with a guard band: extra vectors soak up the
    // degenerate +-m clusters so the k-th value is not squeezed against
    // the subspace edge.
    let p = (k + 14).min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0a11);
    let mut basis: Vec<Vec<f64>> = (0..p).map(|_| random_vector(&mut rng, dim)).collect();
    orthonormalize(&mut basis, &mut rng);

    let tol = 1e-12 * frob2.sqrt();
    let mut previous = vec![f64::INFINITY; k];
    let mut settled = 0;
    for _ in 0..MAX_ITERATIONS {
        let images: Vec<Vec<f64>> = basis.iter().map(|q| mat_vec(&matrix, dim, q)).collect();
        let mut projected = vec![0.0; p * p];
        for i in 0..p {
            for j in i..p {
                let t = dot(&basis[i], &images[j]);
                projected[i * p + j] = t;
                projected[j * p + i] = t;
            }
        }
        let mut ritz = jacobi_max_pivot(projected, p)?;
        ritz.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());

        let drift = (0..k)
            .map(|i| (ritz[i].abs() - previous[i]).abs())
            .fold(0.0, f64::max);
        previous = ritz.iter().take(k).map(|t| t.abs()).collect();
        // Two consecutive quiet steps, so a slow early plateau does not
        // pass for convergence.
        settled = if drift <= tol { settled + 1 } else { 0 };
        if settled >= 2 {
            return Ok(previous.iter().map(|t| t * t / frob2).collect());
        }

        basis = images;
        orthonormalize(&mut basis, &mut rng);
    }
    Err(Error::OracleNonConvergence(MAX_ITERATIONS))
}

/// Sample the state on the product of two identical midpoint grids.
///
/// Cell a = ix * n_cart + iy sits at (-hw + (ix + 1/2) h, -hw + (iy + 1/2) h)
/// with h = 2 hw / n_cart. Exchange symmetry makes the matrix symmetric, so
/// only the upper triangle is evaluated and the rest mirrored.
fn sample_bipartite(state: &dyn PairState, n_cart: usize, half_width: f64) -> Result<Vec<f64>> {
    let dim = n_cart * n_cart;
    let h = 2.0 * half_width / n_cart as f64;
    let centers: Vec<(f64, f64)> = (0..dim)
        .map(|a| {
            let ix = (a / n_cart) as f64;
            let iy = (a % n_cart) as f64;
            (-half_width + (ix + 0.5) * h, -half_width + (iy + 0.5) * h)
        })
        .collect();
    let mut matrix = vec![0.0; dim * dim];
    for a in 0..dim {
        let (x1, y1) = centers[a];
        for b in a..dim {
            let (x2, y2) = centers[b];
            let rho = (x1 - x2).hypot(y1 - y2);
            let varrho = 0.5 * (x1 + x2).hypot(y1 + y2);
            let psi = state.amplitude(PairGeometry { rho, varrho });
            if !psi.is_finite() {
                return Err(Error::StateEvaluation { rho, varrho });
            }
            matrix[a * dim + b] = psi;
            matrix[b * dim + a] = psi;
        }
    }
    Ok(matrix)
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect()
}

fn mat_vec(matrix: &[f64], dim: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (i, row) in matrix.chunks_exact(dim).enumerate() {
        out[i] = row.iter().zip(v).map(|(&m, &x)| m * x).sum();
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Modified Gram-Schmidt with one reorthogonalization pass. A column that
/// collapses (the span is deficient, e.g. for a low-rank state) is replaced
/// by a fresh random vector and orthogonalized again, keeping the basis at
/// full rank.
fn orthonormalize(basis: &mut [Vec<f64>], rng: &mut ChaCha8Rng) {
    let dim = basis[0].len();
    for j in 0..basis.len() {
        loop {
            let scale = basis[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            let (head, tail) = basis.split_at_mut(j);
            let v = &mut tail[0];
            for _ in 0..2 {
                for q in head.iter() {
                    let c = dot(q, v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= c * qi;
                    }
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-10 * scale.max(f64::MIN_POSITIVE) {
                for vi in v.iter_mut() {
                    *vi /= norm;
                }
                break;
            }
            basis[j] = random_vector(rng, dim);
        }
    }
}

/// Eigenvalues of a small symmetric matrix by classical Jacobi: rotate away
/// the largest off-diagonal entry until none is left above 1e-15 of the
/// Frobenius norm. Values only; the oracle never needs these eigenvectors.
fn jacobi_max_pivot(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    if n == 1 {
        return Ok(a);
    }
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if frob == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let tol = 1e-15 * frob;
    let max_rotations = 60 * n * n;
    for _ in 0..max_rotations {
        let mut p = 0;
        let mut q = 1;
        let mut biggest = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                if a[i * n + j].abs() > biggest {
                    biggest = a[i * n + j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if biggest <= tol {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        let apq = a[p * n + q];
        let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;
        for i in 0..n {
            let aip = a[i * n + p];
            let aiq = a[i * n + q];
            a[i * n + p] = c * aip - s * aiq;
            a[i * n + q] = s * aip + c * aiq;
        }
        for i in 0..n {
            let api = a[p * n + i];
            let aqi = a[q * n + i];
            a[p * n + i] = c * api - s * aqi;
            a[q * n + i] = s * api + c * aqi;
        }
    }
    Err(Error::OracleNonConvergence(max_rotations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_radial_grid, QuadratureRule};
    use crate::models::{GaussianPairState, ProductState};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn normalized(sigma_rel: f64, sigma_cm: f64) -> GaussianPairState {
        let grid = build_radial_grid(64, 10.0, QuadratureRule::GaussLegendre).unwrap();
        let mut s = GaussianPairState::new(sigma_rel, sigma_cm).unwrap();
        s.normalize(&grid).unwrap();
        s
    }

    #[test]
    fn separable_state_is_rank_one_to_rounding() {
        // A product state samples to an exactly rank-one matrix, so the
        // oracle's answer is resolution-independent: the top occupancy is 1
        // up to eigeniteration rounding and the rest is numerical zero.
        let s = normalized(2f64.sqrt(), 0.5f64.sqrt());
        let lambdas = oracle_spectrum(&s, 20, 6.0, 5).unwrap();
        assert_relative_eq!(lambdas[0], 1.0, max_relative = 1e-12);
        for &l in &lambdas[1..] {
            assert!(l < 1e-20, "trailing occupancy {l:.3e}");
        }
    }

    #[test]
    fn interacting_spectrum_matches_closed_form_ladder() {
        let s = normalized(2.0, 0.5f64.sqrt());
        let z = s.occupancy_ratio();
        let lambdas = oracle_spectrum(&s, 40, 6.0, 10).unwrap();
        // Closed-form ladder (1-Z)^2 Z^(2s+|m|), sorted descending: the
        // exponent t = 2s+|m| has multiplicity t+1. The midpoint sampling
        // error cancels in the Frobenius-normalized ratio, so what remains
        // is the box-clipping tail, around 1e-11 at half_width = 6.
        let mut expect = Vec::new();
        for t in 0..12u32 {
            for _ in 0..=t {
                expect.push((1.0 - z) * (1.0 - z) * z.powi(t as i32));
            }
        }
        for (got, want) in lambdas.iter().zip(&expect) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-9);
        }
    }

    #[test]
    fn spectrum_is_deterministic() {
        let s = normalized(2.0, 0.5f64.sqrt());
        let a = oracle_spectrum(&s, 16, 6.0, 6).unwrap();
        let b = oracle_spectrum(&s, 16, 6.0, 6).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn dimension_guard_rejects_large_grids() {
        let s = normalized(2.0, 0.5f64.sqrt());
        match oracle_spectrum(&s, 51, 6.0, 5) {
            Err(Error::OracleTooLarge { dim, max }) => {
                assert_eq!(dim, 2601);
                assert_eq!(max, MAX_ORACLE_DIM);
            }
            other => panic!("expected OracleTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let s = normalized(2.0, 0.5f64.sqrt());
        assert!(oracle_spectrum(&s, 1, 6.0, 2).is_err());
        assert!(oracle_spectrum(&s, 16, 0.0, 2).is_err());
        assert!(oracle_spectrum(&s, 16, 6.0, 0).is_err());
        assert!(oracle_spectrum(&s, 16, 6.0, 10_000).is_err());
    }

    #[test]
    fn small_jacobi_matches_hand_spectrum() {
        // diag(3, 1) rotated by 30 degrees; eigenvalues must come back.
        let (c, s) = (3f64.sqrt() / 2.0, 0.5);
        let a = vec![
            3.0 * c * c + 1.0 * s * s,
            (3.0 - 1.0) * c * s,
            (3.0 - 1.0) * c * s,
            3.0 * s * s + 1.0 * c * c,
        ];
        let mut vals = jacobi_max_pivot(a, 2).unwrap();
        vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
        assert_relative_eq!(vals[0], 3.0, max_relative = 1e-14);
        assert_relative_eq!(vals[1], 1.0, max_relative = 1e-14);
    }
}
