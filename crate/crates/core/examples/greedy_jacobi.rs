//! Greedy Jacobi MMF: one Givens rotation per level, no learning.
//! A 2×2 matrix is diagonalized exactly; on Karate the error falls with L.

use mmf::graph::{karate_graph, normalized_laplacian};
use mmf::mmf::{factorization_error, SymmetricMatrix};
use mmf::selection::greedy_jacobi_mmf;

fn main() -> mmf::Result<()> {
    let a = SymmetricMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]])?;
    let f = greedy_jacobi_mmf(&a, 1)?;
    println!("2x2: error {:.2e}, H diagonal {:?}", factorization_error(&a, &f)?, f.h().diagonal());
    println!("rotation core {:?}", f.rotations()[0].core().as_slice());

    let lap = normalized_laplacian(&karate_graph())?;
    println!("\nkarate, ‖A‖_F = {:.4}", lap.frobenius_norm());
    println!("{:>3} {:>4} {:>10}", "L", "d_L", "error");
    for l in [4, 8, 16, 22, 26, 30, 33] {
        let f = greedy_jacobi_mmf(&lap, l)?;
        println!("{l:>3} {:>4} {:>10.4}", 34 - l, factorization_error(&lap, &f)?);
    }
    Ok(())
}
