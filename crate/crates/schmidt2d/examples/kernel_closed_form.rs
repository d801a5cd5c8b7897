//! The projected kernel of a Gaussian pair has a closed form.
//!
//! For the correlated Gaussian the angular integral can be done by hand:
//!
//! ```text
//! A_m(rho1, rho2) = c sqrt(rho1 rho2) e^{-alpha (rho1^2 + rho2^2)} I_m(beta rho1 rho2)
//! ```
//!
//! with alpha = 1/(2 sigma_rel^2) + 1/(8 sigma_cm^2) and
//! beta = 1/sigma_rel^2 - 1/(4 sigma_cm^2). This example projects the
//! kernel numerically and prints it against that formula entry by entry.

use schmidt2d::angular::angular_kernel;
use schmidt2d::grid::{build_radial_grid, QuadratureRule};
use schmidt2d::models::{GaussianPairState, ProductState};
use schmidt2d::special::bessel_i;

fn main() {
    let (sigma_rel, sigma_cm) = (2.0, 0.5f64.sqrt());
    let grid = build_radial_grid(32, 8.0, QuadratureRule::GaussLegendre).unwrap();
    let mut state = GaussianPairState::new(sigma_rel, sigma_cm).unwrap();
    let c = state
        .normalize(&grid)
        .map(|_| state.norm_constant())
        .unwrap();

    let alpha = 1.0 / (2.0 * sigma_rel * sigma_rel) + 1.0 / (8.0 * sigma_cm * sigma_cm);
    let beta = 1.0 / (sigma_rel * sigma_rel) - 1.0 / (4.0 * sigma_cm * sigma_cm);
    println!("alpha = {alpha}, beta = {beta}");

    for m in [0u32, 1, 3] {
        let kernel = angular_kernel(&state, &grid, m as i32, 256).unwrap();
        println!();
        println!(
            "m = {m}:   rho1      rho2      projected              closed form            rel err"
        );
        for &(i, j) in &[(4usize, 4usize), (8, 12), (16, 20), (24, 10)] {
            let (r1, r2) = (grid.nodes()[i], grid.nodes()[j]);
            let expect = c
                * (r1 * r2).sqrt()
                * (-alpha * (r1 * r1 + r2 * r2)).exp()
                * if beta < 0.0 {
                    // I_m(-x) = (-1)^m I_m(x)
                    bessel_i(m, -beta * r1 * r2) * if m % 2 == 0 { 1.0 } else { -1.0 }
                } else {
                    bessel_i(m, beta * r1 * r2)
                };
            let got = kernel.entry(i, j);
            println!(
                "       {r1:8.4}  {r2:8.4}  {got:.12e}  {expect:.12e}  {:.2e}",
                (got - expect).abs() / expect.abs()
            );
        }
    }
}
