//! Reading and writing the file formats: MatrixMarket matrices, edge lists,
//! factorization JSON and basis exports.

use mmf::graph::{karate_graph, normalized_laplacian};
use mmf::io::{format_edge_list, read_edge_list, read_factorization, read_matrix, write_factorization, write_matrix};
use mmf::mmf::factorization_error;
use mmf::selection::greedy_jacobi_mmf;
use mmf::wavelets::{extract_basis, WaveletBasis};

fn main() -> mmf::Result<()> {
    let dir = std::env::temp_dir().join(format!("mmf-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let g = karate_graph();
    std::fs::write(dir.join("karate.edges"), format_edge_list(&g))?;
    let g2 = read_edge_list(dir.join("karate.edges"))?;
    println!("edge list: {} edges back, equal: {}", g2.edges().len(), g2.edges() == g.edges());

    let a = normalized_laplacian(&g)?;
    write_matrix(dir.join("karate.mtx"), &a)?;
    let a2 = read_matrix(dir.join("karate.mtx"))?;
    println!("matrix market: max deviation {:.1e}", a.distance(&a2)?);

    let f = greedy_jacobi_mmf(&a, 26)?;
    write_factorization(dir.join("f.json"), &f)?;
    let f2 = read_factorization(dir.join("f.json"))?;
    println!("factorization json: error {:.6} vs {:.6}", factorization_error(&a, &f)?, factorization_error(&a, &f2)?);

    let basis = extract_basis(&f2)?;
    basis.write(dir.join("basis"))?;
    let back = WaveletBasis::read(dir.join("basis"))?;
    println!("basis export: {} mother tags, equal: {}", back.mother_rows.len(), back == basis);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
