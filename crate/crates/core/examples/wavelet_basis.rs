//! Wavelets on a Cayley tree: build a basis from a greedy factorization,
//! check it is orthogonal, transform a signal and look at how localized the
//! mother wavelets are.

use mmf::graph::{cayley_tree, normalized_laplacian};
use mmf::selection::greedy_jacobi_mmf;
use mmf::wavelets::{extract_basis, inverse_transform, sparsity, transform, DEFAULT_SPARSITY_THRESHOLD};

fn main() -> mmf::Result<()> {
    let a = normalized_laplacian(&cayley_tree(3, 4)?)?;
    let n = a.n();
    let basis = extract_basis(&greedy_jacobi_mmf(&a, n - 4)?)?;
    println!("n = {n}, {} mothers, {} fathers", basis.mother_rows.len(), basis.father_rows.len());
    println!("‖WᵀW − I‖_F = {:.2e}", basis.orthogonality_error());
    println!("non-zero fraction {:.4}", sparsity(&basis, DEFAULT_SPARSITY_THRESHOLD)?);

    for &(row, level) in basis.mother_rows.iter().step_by(10) {
        let support = basis.wavelet(row).iter().filter(|v| v.abs() > DEFAULT_SPARSITY_THRESHOLD).count();
        println!("level {level:>2}: wavelet at vertex {row:>2} touches {support:>2} vertices");
    }

    // indicator of the root's neighbourhood
    let signal: Vec<f64> = (0..n).map(|v| if v <= 3 { 1.0 } else { 0.0 }).collect();
    let coeffs = transform(&basis, &signal)?;
    let back = inverse_transform(&basis, &coeffs)?;
    let err = signal.iter().zip(&back).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let used = coeffs.iter().filter(|c| c.abs() > DEFAULT_SPARSITY_THRESHOLD).count();
    println!("round-trip error {err:.2e}, {used} of {n} coefficients non-zero");
    Ok(())
}
