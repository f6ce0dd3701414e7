//! Undirected graphs, the benchmark generators, and the normalized Laplacian.

use std::collections::VecDeque;

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::SymmetricMatrix;

/// Simple undirected graph with canonical edges `(u, v)`, `u < v`, sorted
/// and without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Orientation and duplicates are collapsed; self-loops and
    /// out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(MmfError::IndexOutOfRange { index: u.max(v), n });
            }
            if u == v {
                return Err(MmfError::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self { n, edges: canon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn adjacency(&self) -> SymmetricMatrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m[(u, v)] = 1.0;
            m[(v, u)] = 1.0;
        }
        SymmetricMatrix::from_symmetric_unchecked(m)
    }

    pub fn connected_components(&self) -> usize {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !std::mem::replace(&mut seen[v], true) {
                        queue.push_back(v);
                    }
                }
            }
        }
        count
    }
}

/// `I − D^{-1/2} A D^{-1/2}`.
pub fn normalized_laplacian(g: &Graph) -> Result<SymmetricMatrix> {
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|&d| d == 0) {
        return Err(MmfError::IsolatedVertex(v));
    }
    let inv_sqrt: Vec<f64> = deg.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut m = Matrix::identity(g.n());
    for &(u, v) in g.edges() {
        let w = -inv_sqrt[u] * inv_sqrt[v];
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    Ok(SymmetricMatrix::from_symmetric_unchecked(m))
}

#[rustfmt::skip]
const KARATE_EDGES: [(usize, usize); 78] = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10), (0, 11),
    (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2), (1, 3), (1, 7), (1, 13),
    (1, 17), (1, 19), (1, 21), (1, 30), (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27),
    (2, 28), (2, 32), (3, 7), (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16),
    (6, 16), (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33), (15, 32), (15, 33),
    (18, 32), (18, 33), (19, 33), (20, 32), (20, 33), (22, 32), (22, 33), (23, 25), (23, 27), (23, 29),
    (23, 32), (23, 33), (24, 25), (24, 27), (24, 31), (25, 31), (26, 29), (26, 33), (27, 33), (28, 31),
    (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32), (31, 33), (32, 33),
];

/// Zachary's karate club network, 34 members and 78 friendships.
pub fn karate_graph() -> Graph {
    Graph::new(34, KARATE_EDGES).expect("embedded edge list is valid")
}

/// Bethe-lattice tree: the root has `z` children, every other internal
/// vertex `z − 1`, for `depth` levels below the root. Vertices are numbered
/// breadth first.
pub fn cayley_tree(z: usize, depth: usize) -> Result<Graph> {
    if z < 2 {
        return Err(MmfError::InvalidParameter(format!("coordination number z = {z} must be >= 2")));
    }
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_id = 1usize;
    for level in 0..depth {
        let children = if level == 0 { z } else { z - 1 };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    Graph::new(next_id, edges)
}

/// `seed ⊗ seed ⊗ … ⊗ seed` (`order` factors).
pub fn kronecker_power(seed: &SymmetricMatrix, order: usize) -> Result<SymmetricMatrix> {
    if order == 0 {
        return Err(MmfError::InvalidParameter("Kronecker order must be >= 1".into()));
    }
    let s = seed.as_matrix();
    let mut acc = s.clone();
    for _ in 1..order {
        acc = kron(&acc, s);
    }
    Ok(SymmetricMatrix::from_symmetric_unchecked(acc))
}

/// `[A ⊗ B]_{i₁·p + i₂, j₁·q + j₂} = A_{i₁ j₁} · B_{i₂ j₂}` for `B` of shape `p × q`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (b.rows(), b.cols());
    Matrix::from_fn(a.rows() * p, a.cols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
}
