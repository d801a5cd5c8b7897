//! Modified Bessel function of integer order by power series.
//!
//! Gaussian pair states have angular projections proportional to
//! I_m(beta rho1 rho2), which gives a closed-form cross-check for the
//! numerically projected kernels. The series
//!
//! ```text
//! I_m(x) = sum_j (x/2)^(m + 2j) / (j! (m + j)!)
//! ```
//!
//! has all-positive terms for x > 0, so no cancellation occurs and the
//! result is accurate to roundoff. Negative arguments follow from parity,
//! I_m(-x) = (-1)^m I_m(x), which the leading (x/2)^m factor supplies by
//! itself. Intended for moderate orders and arguments (m <= 60, |x| <= 300);
//! far outside that range the terms overflow before the sum converges.

/// I_m(x) for integer order m >= 0.
pub fn bessel_i(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // Leading term (x/2)^m / m!, built by multiplication so the sign of x
    // propagates parity correctly.
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let q = half * half;
    let mut sum = term;
    for j in 1..=500u32 {
        term *= q / (j as f64 * (j + m) as f64);
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}
