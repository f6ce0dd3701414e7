use rand::Rng as _;

use crate::error::{MmfError, Result};
use crate::rng::{seeded, Rng};
use crate::selection::Candidate;

/// One-point crossover that keeps values shared by both parents.
///
/// Shared values are set aside; the remaining, parent-unique values are
/// crossed at `cut` (order preserved), and each child gets its own parent's
/// shared values appended in that parent's order. A `cut` of 0 or the full
/// remainder length swaps the remainders whole.
pub fn crossover_at(s1: &Candidate, s2: &Candidate, cut: usize) -> Result<(Candidate, Candidate)> {
    if s1.len() != s2.len() {
        return Err(MmfError::InvalidCandidate(format!(
            "parents differ in length: {} vs {}",
            s1.len(),
            s2.len()
        )));
    }
    let (r1, d1): (Vec<usize>, Vec<usize>) = s1.order.iter().partition(|v| !s2.order.contains(v));
    let (r2, d2): (Vec<usize>, Vec<usize>) = s2.order.iter().partition(|v| !s1.order.contains(v));
    let len = r1.len();
    if cut > len {
        return Err(MmfError::InvalidParameter(format!("cut {cut} beyond remainder length {len}")));
    }
    let (head1, tail1, head2, tail2) = if cut == 0 || cut == len {
        (&r2[..], &[][..], &r1[..], &[][..])
    } else {
        (&r1[..cut], &r2[cut..], &r2[..cut], &r1[cut..])
    };
    let child = |head: &[usize], tail: &[usize], shared: &[usize]| {
        Candidate::new(head.iter().chain(tail).chain(shared).copied().collect())
    };
    Ok((child(head1, tail1, &d1), child(head2, tail2, &d2)))
}

/// [`crossover_at`] with the cut drawn uniformly from `[1, len − 1]`, or a
/// whole swap when fewer than two unique values remain.
pub fn crossover_with(rng: &mut Rng, s1: &Candidate, s2: &Candidate) -> Result<(Candidate, Candidate)> {
    let unique = s1.order.iter().filter(|v| !s2.order.contains(v)).count();
    let cut = if unique >= 2 { rng.gen_range(1..unique) } else { 0 };
    crossover_at(s1, s2, cut)
}

pub fn crossover(s1: &Candidate, s2: &Candidate, seed: u64) -> Result<(Candidate, Candidate)> {
    crossover_with(&mut seeded(seed), s1, s2)
}

/// With probability `rate` swaps two distinct positions; independently with
/// probability `rate` replaces one position by a value from `[0, n)` not
/// already present. Either step is skipped when it is impossible.
pub fn mutate_with(rng: &mut Rng, cand: &Candidate, rate: f64, n: usize) -> Candidate {
    let mut order = cand.order.clone();
    let len = order.len();
    if rng.gen_bool(rate) && len >= 2 {
        let i = rng.gen_range(0..len);
        let mut j = rng.gen_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        order.swap(i, j);
    }
    if rng.gen_bool(rate) && len >= 1 && n > len {
        let pos = rng.gen_range(0..len);
        let mut present = vec![false; n];
        for &v in &order {
            present[v] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&v| !present[v]).collect();
        order[pos] = free[rng.gen_range(0..free.len())];
    }
    Candidate::new(order)
}

pub fn mutate(cand: &Candidate, rate: f64, n: usize, seed: u64) -> Result<Candidate> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(MmfError::InvalidParameter(format!("mutation rate {rate} outside [0, 1]")));
    }
    Ok(mutate_with(&mut seeded(seed), cand, rate, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[usize]) -> Candidate {
        Candidate::new(v.to_vec())
    }

    #[test]
    fn shared_values_survive_crossover() {
        let (a, b) = crossover_at(&c(&[1, 2, 3, 4, 5, 6]), &c(&[4, 5, 6, 7, 8, 9]), 2).unwrap();
        assert_eq!(a, c(&[1, 2, 9, 4, 5, 6]));
        assert_eq!(b, c(&[7, 8, 3, 4, 5, 6]));
    }

    #[test]
    fn disjoint_parents_cross_plainly() {
        let (a, b) = crossover_at(&c(&[1, 2, 3]), &c(&[4, 5, 6]), 1).unwrap();
        assert_eq!(a, c(&[1, 5, 6]));
        assert_eq!(b, c(&[4, 2, 3]));
    }

    #[test]
    fn identical_parents_are_cloned() {
        let p = c(&[3, 1, 2]);
        for seed in 0..5 {
            let (a, b) = crossover(&p, &p, seed).unwrap();
            assert_eq!((a, b), (p.clone(), p.clone()));
        }
    }

    #[test]
    fn single_unique_value_swaps() {
        let (a, b) = crossover(&c(&[1, 2, 3]), &c(&[2, 9, 3]), 0).unwrap();
        assert_eq!(a, c(&[9, 2, 3]));
        assert_eq!(b, c(&[1, 2, 3]));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(crossover_at(&c(&[1, 2]), &c(&[1, 2, 3]), 1).is_err());
    }

    #[test]
    fn zero_rate_is_identity() {
        let p = c(&[4, 0, 2]);
        for seed in 0..20 {
            assert_eq!(mutate(&p, 0.0, 6, seed).unwrap(), p);
        }
    }

    #[test]
    fn full_rate_swaps_and_replaces() {
        let p = c(&[0, 1, 2, 3]);
        for seed in 0..50 {
            let q = mutate(&p, 1.0, 5, seed).unwrap();
            assert!(q.order.contains(&4), "replacement must bring in the only free value");
            assert_ne!(q, p);
            q.validate(5, 1).unwrap();
        }
    }

    #[test]
    fn replacement_skipped_when_no_free_value() {
        let p = c(&[0, 1, 2]);
        let q = mutate(&p, 1.0, 3, 4).unwrap();
        let mut sorted = q.order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
        assert_ne!(q, p);
    }
}
