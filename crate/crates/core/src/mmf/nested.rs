use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};

/// One resolution level: the coordinates designated as wavelets and the
/// coordinates rotated together with them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionLevel {
    pub wavelet_indices: Vec<usize>,
    /// Sorted, contains `wavelet_indices`.
    pub rotation_support: Vec<usize>,
}

/// Ordered per-level wavelet and rotation choices together with the implied
/// chain of shrinking active sets `S_0 = [0, n) ⊇ S_1 ⊇ … ⊇ S_L`.
///
/// Rotations have order `k`, except where fewer than `k` coordinates remain
/// active; there the whole active set is rotated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedSelection {
    n: usize,
    k: usize,
    c: usize,
    levels: Vec<SelectionLevel>,
}

impl NestedSelection {
    pub fn new(n: usize, k: usize, c: usize, levels: Vec<SelectionLevel>) -> Result<Self> {
        let l = levels.len();
        if n == 0 {
            return Err(MmfError::InvalidSelection("dimension must be positive".into()));
        }
        if c == 0 {
            return Err(MmfError::InvalidSelection("wavelets per level must be >= 1".into()));
        }
        if c * l >= n {
            return Err(MmfError::InvalidSelection(format!(
                "{l} levels dropping {c} each leave no core for n = {n}"
            )));
        }
        if l > 0 && (k < 2 || k <= c) {
            return Err(MmfError::InvalidSelection(format!(
                "rotation order k = {k} must be at least 2 and exceed c = {c}"
            )));
        }
        let mut active = vec![true; n];
        let mut remaining = n;
        for (lvl, level) in levels.iter().enumerate() {
            let expect_k = k.min(remaining);
            if level.rotation_support.len() != expect_k {
                return Err(MmfError::InvalidSelection(format!(
                    "level {lvl}: rotation support has {} indices, expected {expect_k}",
                    level.rotation_support.len()
                )));
            }
            if level.wavelet_indices.len() != c {
                return Err(MmfError::InvalidSelection(format!(
                    "level {lvl}: {} wavelet indices, expected {c}",
                    level.wavelet_indices.len()
                )));
            }
            if level.rotation_support.windows(2).any(|w| w[0] >= w[1]) {
                return Err(MmfError::InvalidSelection(format!(
                    "level {lvl}: rotation support must be strictly increasing"
                )));
            }
            for &s in &level.rotation_support {
                if s >= n {
                    return Err(MmfError::IndexOutOfRange { index: s, n });
                }
                if !active[s] {
                    return Err(MmfError::InvalidSelection(format!(
                        "level {lvl}: index {s} rotated after leaving the active set"
                    )));
                }
            }
            for (pos, &t) in level.wavelet_indices.iter().enumerate() {
                if level.wavelet_indices[..pos].contains(&t) {
                    return Err(MmfError::InvalidSelection(format!(
                        "level {lvl}: repeated wavelet index {t}"
                    )));
                }
                if level.rotation_support.binary_search(&t).is_err() {
                    return Err(MmfError::InvalidSelection(format!(
                        "level {lvl}: wavelet index {t} not in rotation support"
                    )));
                }
            }
            for &t in &level.wavelet_indices {
                active[t] = false;
            }
            remaining -= c;
        }
        Ok(Self { n, k, c, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nominal rotation order.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Wavelets per level.
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[SelectionLevel] {
        &self.levels
    }

    /// `[S_0, S_1, …, S_L]`, each sorted ascending.
    pub fn active_sets(&self) -> Vec<Vec<usize>> {
        let mut active = vec![true; self.n];
        let mut out = Vec::with_capacity(self.levels.len() + 1);
        out.push((0..self.n).collect());
        for level in &self.levels {
            for &t in &level.wavelet_indices {
                active[t] = false;
            }
            out.push((0..self.n).filter(|&i| active[i]).collect());
        }
        out
    }

    /// The final active set `S_L`, i.e. the core indices of `H`.
    pub fn final_active(&self) -> Vec<usize> {
        let mut active = vec![true; self.n];
        for t in self.levels.iter().flat_map(|l| &l.wavelet_indices) {
            active[*t] = false;
        }
        (0..self.n).filter(|&i| active[i]).collect()
    }

    /// `d_L = n - c·L`
    pub fn core_size(&self) -> usize {
        self.n - self.c * self.levels.len()
    }
}
