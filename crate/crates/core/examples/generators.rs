//! The three benchmark operators: Zachary's karate club, a Cayley tree and
//! a Kronecker power, with their sizes and spectral ranges.

use mmf::graph::{cayley_tree, karate_graph, kronecker_power, normalized_laplacian};
use mmf::linalg::symmetric_eigen;
use mmf::mmf::SymmetricMatrix;

fn describe(name: &str, a: &SymmetricMatrix) -> mmf::Result<()> {
    let eig = symmetric_eigen(a.as_matrix())?;
    let lo = eig.values.first().copied().unwrap_or(f64::NAN);
    let hi = eig.values.last().copied().unwrap_or(f64::NAN);
    println!("{name:<14} n = {:>3}  ‖A‖_F = {:8.4}  λ ∈ [{lo:.4}, {hi:.4}]", a.n(), a.frobenius_norm());
    Ok(())
}

fn main() -> mmf::Result<()> {
    let karate = karate_graph();
    println!("karate: {} vertices, {} edges", karate.n(), karate.edges().len());
    describe("karate", &normalized_laplacian(&karate)?)?;

    for (z, depth) in [(3, 4), (4, 4)] {
        let tree = cayley_tree(z, depth)?;
        describe(&format!("cayley({z},{depth})"), &normalized_laplacian(&tree)?)?;
    }

    let seed = SymmetricMatrix::from_rows(&[[0.0, 1.0], [1.0, 1.0]])?;
    // the eigensolver is cubic, keep the order small here
    describe("kronecker^7", &kronecker_power(&seed, 7)?)?;
    println!("kronecker^9 has dimension {}", kronecker_power(&seed, 9)?.n());
    Ok(())
}
