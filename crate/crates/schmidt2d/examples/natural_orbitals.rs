//! Natural orbitals: the single-particle modes the pair occupies.
//!
//! Each Schmidt mode (s, m) carries a radial profile chi_s on the grid and
//! a phase factor e^{i m phi}. This example prints the leading radial
//! profiles, verifies their 2 pi orthonormality, and evaluates one orbital
//! off the quadrature grid through Nystrom extension.

use std::sync::Arc;

use schmidt2d::analysis::{decompose, orbital_overlap};
use schmidt2d::grid::{build_radial_grid, QuadratureRule};
use schmidt2d::models::{GaussianPairState, ProductState};

fn main() {
    let grid = build_radial_grid(64, 8.0, QuadratureRule::GaussLegendre).unwrap();
    let mut state = GaussianPairState::new(2.0, 0.5f64.sqrt()).unwrap();
    state.normalize(&grid).unwrap();
    let decomposition = decompose(Arc::new(state), &grid, 3, 3, 256).unwrap();

    println!("radial profiles chi_s(rho) at a few nodes:");
    println!("    rho      (s,m)=(0,0)   (1,0)         (0,1)         (0,2)");
    for &i in &[8usize, 16, 24, 32, 40] {
        let rho = grid.nodes()[i];
        print!("  {rho:7.4} ");
        for (s, m) in [(0usize, 0i32), (1, 0), (0, 1), (0, 2)] {
            let orb = decomposition.natural_orbital(s, m).unwrap();
            print!("  {:12.5e}", orb.radial()[i]);
        }
        println!();
    }

    println!();
    println!("overlap matrix over the (s, m) modes shown, in units of 2 pi:");
    let modes = [(0usize, 0i32), (1, 0), (0, 1), (0, 2)];
    for (sa, ma) in modes {
        let a = decomposition.natural_orbital(sa, ma).unwrap();
        let row: Vec<String> = modes
            .iter()
            .map(|&(sb, mb)| {
                let b = decomposition.natural_orbital(sb, mb).unwrap();
                format!(
                    "{:10.3e}",
                    orbital_overlap(&a, &b).re / (2.0 * std::f64::consts::PI)
                )
            })
            .collect();
        println!("  {}", row.join(" "));
    }

    println!();
    let rho = 1.234;
    let value = decomposition.orbital_value(0, 1, rho, 0.0).unwrap();
    println!(
        "Nystrom extension off the grid: v_(0,1)({rho}, 0) = {:.9e}",
        value.re
    );
}
