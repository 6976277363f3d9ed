//! Deterministic reductions.
//!
//! Sums over fixed-point enumerations must be bit-stable across thread counts,
//! so reductions happen over an explicitly ordered slice with a fixed pairwise
//! tree rather than through a runtime-dependent fold.

/// Pairwise (tree) summation of an ordered slice.
///
/// The tree shape depends only on the slice length, so the result is
/// bit-identical no matter how the terms were produced.
pub fn pairwise_sum(terms: &[f64]) -> f64 {
    match terms.len() {
        0 => 0.0,
        1 => terms[0],
        2 => terms[0] + terms[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
        }
    }
}

/// Pairwise summation after sorting the terms.
///
/// Used where a sum must be exactly invariant under permutations of its input
/// (e.g. relabeling Coulomb parameters permutes the fixed-point enumeration
/// but must not change the reported value in the last bit).
pub fn sorted_pairwise_sum(terms: &mut Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    pairwise_sum(terms)
}

/// Product over a canonically sorted factor list.
///
/// Same idea as [`sorted_pairwise_sum`]: the factor multiset determines the
/// result bit-for-bit.
pub fn sorted_product(factors: &mut Vec<f64>) -> f64 {
    factors.sort_by(f64::total_cmp);
    factors.iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let terms = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(pairwise_sum(&terms), 15.0);
    }

    #[test]
    fn sorted_sum_is_permutation_invariant() {
        let mut a = vec![1e16, 1.0, -1e16, 3.5, 0.25];
        let mut b = vec![0.25, -1e16, 3.5, 1.0, 1e16];
        assert_eq!(sorted_pairwise_sum(&mut a), sorted_pairwise_sum(&mut b));
    }
}
