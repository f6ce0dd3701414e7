//! End-to-end runs of the command-line interface, in process.

use std::path::Path;

use mmf::cli::run_from_args;
use mmf::io::{read_factorization, read_matrix, write_matrix};
use mmf::mmf::{factorization_error, SymmetricMatrix};
use mmf::MmfError;

fn mmf(out: &Path, args: &[&str]) -> mmf::Result<()> {
    let out = out.to_str().unwrap();
    let mut argv = vec!["mmf", "--out", out];
    argv.extend_from_slice(args);
    run_from_args(argv)
}

fn read_csv_row(path: &Path) -> Vec<String> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines().nth(1).unwrap().split(',').map(str::to_owned).collect()
}

#[test]
fn generators_write_expected_sizes() {
    let dir = tempfile::tempdir().unwrap();
    mmf(dir.path(), &["generate", "cayley-tree", "--z", "4", "--depth", "4"]).unwrap();
    mmf(dir.path(), &["generate", "kronecker", "--order", "9"]).unwrap();
    mmf(dir.path(), &["generate", "karate"]).unwrap();
    assert_eq!(read_matrix(dir.path().join("cayley-tree.mtx")).unwrap().n(), 161);
    assert_eq!(read_matrix(dir.path().join("kronecker.mtx")).unwrap().n(), 512);
    assert_eq!(read_matrix(dir.path().join("karate.mtx")).unwrap().n(), 34);
    assert!(dir.path().join("generate.manifest.json").exists());
}

#[test]
fn greedy_single_level_diagonalizes_two_by_two() {
    let dir = tempfile::tempdir().unwrap();
    let a = SymmetricMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
    let path = dir.path().join("a.mtx");
    write_matrix(&path, &a).unwrap();
    mmf(dir.path(), &["factorize", path.to_str().unwrap(), "--method", "greedy-jacobi", "-L", "1"]).unwrap();
    let f = read_factorization(dir.path().join("factorization.json")).unwrap();
    assert!(factorization_error(&a, &f).unwrap() < 1e-10);
    let row = read_csv_row(&dir.path().join("summary.csv"));
    assert_eq!(row[0], "greedy-jacobi");
    assert!(row[7].parse::<f64>().unwrap() < 1e-10);
}

#[test]
fn random_method_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    mmf(dir.path(), &["generate", "karate"]).unwrap();
    let karate = dir.path().join("karate.mtx");
    let k = karate.to_str().unwrap();
    let runs: Vec<String> = ["r1", "r2"]
        .iter()
        .map(|sub| {
            let out = dir.path().join(sub);
            mmf(&out, &["--seed", "7", "factorize", k, "--method", "random", "-L", "20", "--max-iters", "20"]).unwrap();
            std::fs::read_to_string(out.join("factorization.json")).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn infeasible_level_count_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    mmf(dir.path(), &["generate", "cayley-tree", "--z", "3", "--depth", "2"]).unwrap();
    let m = dir.path().join("cayley-tree.mtx");
    let err = mmf(dir.path(), &["factorize", m.to_str().unwrap(), "--method", "heuristic", "-L", "10", "-c", "2"]).unwrap_err();
    assert!(matches!(err, MmfError::InvalidParameter(_) | MmfError::InvalidSelection(_) | MmfError::InvalidCandidate(_)), "{err}");
    assert!(!dir.path().join("factorization.json").exists());
}

#[test]
fn wavelets_need_single_wavelet_levels() {
    let dir = tempfile::tempdir().unwrap();
    mmf(dir.path(), &["generate", "karate"]).unwrap();
    let m = dir.path().join("karate.mtx");
    mmf(dir.path(), &["factorize", m.to_str().unwrap(), "--method", "heuristic", "-L", "5", "-c", "2", "-k", "6", "--max-iters", "5"]).unwrap();
    let f = dir.path().join("factorization.json");
    let err = mmf(dir.path(), &["wavelets", f.to_str().unwrap()]).unwrap_err();
    assert!(matches!(err, MmfError::Unsupported(_)), "{err}");
}

#[test]
fn zero_levels_give_identity_basis() {
    let dir = tempfile::tempdir().unwrap();
    mmf(dir.path(), &["generate", "karate"]).unwrap();
    let m = dir.path().join("karate.mtx");
    mmf(dir.path(), &["factorize", m.to_str().unwrap(), "--method", "greedy-jacobi", "-L", "0"]).unwrap();
    let f = dir.path().join("factorization.json");
    mmf(dir.path(), &["wavelets", f.to_str().unwrap(), "--prefix", "id"]).unwrap();
    let row = read_csv_row(&dir.path().join("id_summary.csv"));
    assert_eq!(row[1], "0");
    assert_eq!(row[2], "34");
    assert!((row[4].parse::<f64>().unwrap() - 1.0 / 34.0).abs() < 1e-12);
    assert_eq!(std::fs::read_dir(dir.path().join("id_wavelets")).unwrap().count(), 34);
}

fn clique_inputs(dir: &Path) -> (String, String) {
    let mut edges = String::from("# n=10\n");
    for block in [0usize, 5] {
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push_str(&format!("{} {}\n", block + i, block + j));
            }
        }
    }
    edges.push_str("4 5\n");
    let graph = mmf::io::parse_edge_list(&edges).unwrap();
    let a = mmf::graph::normalized_laplacian(&graph).unwrap();
    let m = dir.join("cliques.mtx");
    write_matrix(&m, &a).unwrap();
    let mut labels = String::from("vertex,class,split\n0,0,train\n9,1,train\n");
    for v in 1..9 {
        labels.push_str(&format!("{v},{},test\n", usize::from(v >= 5)));
    }
    let l = dir.join("labels.csv");
    std::fs::write(&l, labels).unwrap();
    (m.to_str().unwrap().to_owned(), l.to_str().unwrap().to_owned())
}

#[test]
fn wnn_with_zero_epochs_reports_untrained_network() {
    let dir = tempfile::tempdir().unwrap();
    let (m, l) = clique_inputs(dir.path());
    mmf(dir.path(), &["wnn", &m, "--labels", &l, "--epochs", "0"]).unwrap();
    let loss = std::fs::read_to_string(dir.path().join("loss.csv")).unwrap();
    assert_eq!(loss, "epoch,loss\n");
    let row = read_csv_row(&dir.path().join("metrics.csv"));
    assert_eq!(row[0], "0");
    // ones filters with constant input give equal logits: ln 2 per labeled vertex
    assert!((row[1].parse::<f64>().unwrap() - 2.0 * std::f64::consts::LN_2).abs() < 1e-9, "{row:?}");
    assert_eq!(row[4], "false");
}

#[test]
fn wnn_trains_two_cliques() {
    let dir = tempfile::tempdir().unwrap();
    let (m, l) = clique_inputs(dir.path());
    mmf(dir.path(), &["wnn", &m, "--labels", &l]).unwrap();
    let row = read_csv_row(&dir.path().join("metrics.csv"));
    assert_eq!(row[3].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn wnn_rejects_labels_outside_graph() {
    let dir = tempfile::tempdir().unwrap();
    let (m, _) = clique_inputs(dir.path());
    let l = dir.path().join("bad.csv");
    std::fs::write(&l, "vertex,class,split\n0,0,train\n12,1,train\n").unwrap();
    let err = mmf(dir.path(), &["wnn", &m, "--labels", l.to_str().unwrap()]).unwrap_err();
    assert!(err.to_string().contains("12"), "{err}");
}

#[test]
fn replay_reproduces_factorization() {
    let dir = tempfile::tempdir().unwrap();
    mmf(dir.path(), &["generate", "karate"]).unwrap();
    let m = dir.path().join("karate.mtx");
    let first = dir.path().join("first");
    mmf(&first, &["--seed", "3", "--mask-timing", "factorize", m.to_str().unwrap(), "-L", "10", "--population", "6", "--iterations", "4", "--max-iters", "10"]).unwrap();
    let second = dir.path().join("second");
    let manifest = first.join("factorize.manifest.json");
    mmf(&second, &["replay", manifest.to_str().unwrap()]).unwrap();
    for file in ["factorization.json", "summary.csv", "convergence.csv", "descent.csv"] {
        assert_eq!(std::fs::read(first.join(file)).unwrap(), std::fs::read(second.join(file)).unwrap(), "{file}");
    }
}

#[test]
fn unknown_flags_are_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let err = mmf(dir.path(), &["factorize", "x.mtx", "--bogus"]).unwrap_err();
    assert!(matches!(err, MmfError::InvalidParameter(_)));
    assert!(mmf(dir.path(), &["--jobs", "0", "generate", "karate"]).is_err());
}
