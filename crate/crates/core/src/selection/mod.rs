//! Index selection: wavelet orderings, the nearest-row support rule, and
//! the greedy pairwise baseline.

mod greedy;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::rotation::conjugate_in_place;
use crate::mmf::{NestedSelection, SelectionLevel, SymmetricMatrix};
use crate::rng::{seeded, Rng};

pub use greedy::greedy_jacobi_mmf;

/// Ordered wavelet indices, `c` per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub order: Vec<usize>,
}

impl Candidate {
    pub fn new(order: Vec<usize>) -> Self {
        Self { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Checks distinctness, range and `len == L·c ≤ n − 1`.
    pub fn validate(&self, n: usize, c: usize) -> Result<usize> {
        if c == 0 {
            return Err(MmfError::InvalidCandidate("c must be at least 1".into()));
        }
        if self.order.len() % c != 0 {
            return Err(MmfError::InvalidCandidate(format!(
                "length {} is not a multiple of c = {c}",
                self.order.len()
            )));
        }
        if self.order.len() >= n {
            return Err(MmfError::InvalidCandidate(format!(
                "{} wavelet indices leave no core for n = {n}",
                self.order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &self.order {
            if i >= n {
                return Err(MmfError::InvalidCandidate(format!("index {i} out of range for n = {n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(MmfError::InvalidCandidate(format!("index {i} repeats")));
            }
        }
        Ok(self.order.len() / c)
    }
}

fn check_sizes(n: usize, l: usize, c: usize) -> Result<()> {
    if c == 0 || l.checked_mul(c).map_or(true, |lc| lc >= n) {
        return Err(MmfError::InvalidParameter(format!(
            "need 1 <= c and L·c <= n - 1, got L = {l}, c = {c}, n = {n}"
        )));
    }
    Ok(())
}

/// Uniform ordered sample of `L·c` distinct indices from `[0, n)`.
pub fn random_candidate(n: usize, l: usize, c: usize, seed: u64) -> Result<Candidate> {
    random_candidate_with(&mut seeded(seed), n, l, c)
}

pub fn random_candidate_with(rng: &mut Rng, n: usize, l: usize, c: usize) -> Result<Candidate> {
    check_sizes(n, l, c)?;
    let mut all: Vec<usize> = (0..n).collect();
    let (picked, _) = all.partial_shuffle(rng, l * c);
    Ok(Candidate::new(picked.to_vec()))
}

/// Indices in `active \ wavelets` whose rows are closest to any of the
/// wavelet rows, with distances taken over the `active` columns only. Ties
/// go to the smaller index.
pub(crate) fn nearest_to_set(m: &Matrix, active: &[usize], wavelets: &[usize], count: usize) -> Result<Vec<usize>> {
    for &w in wavelets {
        if !active.contains(&w) {
            return Err(MmfError::InvalidSelection(format!("wavelet {w} is not active")));
        }
    }
    let pool = active.len() - wavelets.len();
    if count > pool {
        return Err(MmfError::InvalidParameter(format!(
            "asked for {count} neighbours but only {pool} remain"
        )));
    }
    let mut scored: Vec<(f64, usize)> = active
        .iter()
        .filter(|j| !wavelets.contains(j))
        .map(|&j| {
            let rj = m.row(j);
            let d = wavelets
                .iter()
                .map(|&w| {
                    let rw = m.row(w);
                    active.iter().map(|&col| (rw[col] - rj[col]).powi(2)).sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min);
            (d, j)
        })
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(scored.into_iter().take(count).map(|(_, j)| j).collect())
}

/// The `count` rows of `a` nearest to row `wavelet` in Euclidean distance,
/// measured over the `active` columns and drawn from `active \ {wavelet}`.
pub fn nearest_rows(a: &SymmetricMatrix, active: &[usize], wavelet: usize, count: usize) -> Result<Vec<usize>> {
    if let Some(&bad) = active.iter().find(|&&i| i >= a.n()) {
        return Err(MmfError::IndexOutOfRange { index: bad, n: a.n() });
    }
    nearest_to_set(a.as_matrix(), active, &[wavelet], count)
}

/// Nested selection for `cand` with nearest-row supports computed against
/// the unrotated matrix.
pub fn build_selection(a: &SymmetricMatrix, cand: &Candidate, k: usize, c: usize) -> Result<NestedSelection> {
    build_selection_with(a, cand, k, c, |_, _| None)
}

/// Like [`build_selection`], but after fixing level `ℓ`'s support the hook
/// may return a core for it. The core is applied before the next level's
/// supports are chosen, so later levels see the partially rotated matrix.
pub fn build_selection_with(
    a: &SymmetricMatrix,
    cand: &Candidate,
    k: usize,
    c: usize,
    mut cores: impl FnMut(usize, &[usize]) -> Option<Matrix>,
) -> Result<NestedSelection> {
    let n = a.n();
    let l = cand.validate(n, c)?;
    if l > 0 && (k < 2 || k <= c) {
        return Err(MmfError::InvalidParameter(format!(
            "rotation order k = {k} must be at least 2 and exceed c = {c}"
        )));
    }
    let mut m: Option<Matrix> = None;
    let mut active: Vec<usize> = (0..n).collect();
    let mut levels = Vec::with_capacity(l);
    for (lvl, wavelets) in cand.order.chunks(c).enumerate() {
        let order = k.min(active.len());
        let current = m.as_ref().unwrap_or(a.as_matrix());
        let mut support = nearest_to_set(current, &active, wavelets, order - c)?;
        support.extend_from_slice(wavelets);
        support.sort_unstable();
        if let Some(core) = cores(lvl, &support) {
            if core.rows() != support.len() || core.cols() != support.len() {
                return Err(MmfError::DimensionMismatch {
                    expected: support.len(),
                    got: core.rows(),
                });
            }
            conjugate_in_place(m.get_or_insert_with(|| a.as_matrix().clone()), &support, &core);
        }
        active.retain(|i| !wavelets.contains(i));
        levels.push(SelectionLevel {
            wavelet_indices: wavelets.to_vec(),
            rotation_support: support,
        });
    }
    NestedSelection::new(n, k, c, levels)
}

/// Selection with the candidate's wavelets and uniformly random companions
/// drawn from the active set.
pub fn random_support_selection(n: usize, cand: &Candidate, k: usize, c: usize, seed: u64) -> Result<NestedSelection> {
    let l = cand.validate(n, c)?;
    if l > 0 && (k < 2 || k <= c) {
        return Err(MmfError::InvalidParameter(format!(
            "rotation order k = {k} must be at least 2 and exceed c = {c}"
        )));
    }
    let mut rng = seeded(seed);
    let mut active: Vec<usize> = (0..n).collect();
    let mut levels = Vec::with_capacity(l);
    for wavelets in cand.order.chunks(c) {
        let order = k.min(active.len());
        let mut pool: Vec<usize> = active.iter().copied().filter(|i| !wavelets.contains(i)).collect();
        let mut support: Vec<usize> = Vec::with_capacity(order);
        for _ in 0..order - c {
            let pick = rng.gen_range(0..pool.len());
            support.push(pool.swap_remove(pick));
        }
        support.extend_from_slice(wavelets);
        support.sort_unstable();
        active.retain(|i| !wavelets.contains(i));
        levels.push(SelectionLevel {
            wavelet_indices: wavelets.to_vec(),
            rotation_support: support,
        });
    }
    NestedSelection::new(n, k, c, levels)
}
