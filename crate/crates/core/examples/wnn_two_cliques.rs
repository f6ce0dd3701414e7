//! Node classification on two 5-cliques joined by a bridge edge, with one
//! labeled vertex per clique and constant input features.

use mmf::graph::{normalized_laplacian, Graph};
use mmf::linalg::Matrix;
use mmf::selection::greedy_jacobi_mmf;
use mmf::wavelets::extract_basis;
use mmf::wnn::{train, LabeledNodes, Network, Nonlinearity};

fn main() -> mmf::Result<()> {
    let mut edges = Vec::new();
    for base in [0, 5] {
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((base + i, base + j));
            }
        }
    }
    edges.push((4, 5));
    let g = Graph::new(10, edges)?;
    let lap = normalized_laplacian(&g)?;

    let f = greedy_jacobi_mmf(&lap, 9)?;
    let basis = extract_basis(&f)?;

    let features = Matrix::from_fn(10, 1, |_, _| 1.0);
    let train_set = LabeledNodes::new(vec![(0, 0), (9, 1)], 2)?;
    let held_out = LabeledNodes::new((1..9).map(|v| (v, usize::from(v >= 5))).collect(), 2)?;

    let mut net = Network::new(10, &[1, 2], Nonlinearity::Identity)?;
    println!("untrained held-out accuracy {:.2}", net.accuracy(&basis, &features, &held_out)?);
    let report = train(&mut net, &basis, &features, &train_set, 0.5, 200)?;
    println!(
        "loss {:.4} -> {:.4} over {} epochs",
        report.loss_trace[0],
        report.loss_trace.last().copied().unwrap_or(f64::NAN),
        report.loss_trace.len()
    );
    println!("held-out accuracy {:.2}", net.accuracy(&basis, &features, &held_out)?);
    println!("predictions {:?}", net.predict(&basis, &features)?);
    Ok(())
}
