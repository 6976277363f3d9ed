//! The `Partition` type: a weakly decreasing sequence of positive parts.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer partition. Trailing zeros are implicit; `parts` stores only the
/// positive entries, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Build from parts, validating monotonicity and positivity.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::invalid(
                    "partition",
                    format!("parts not weakly decreasing: {} < {}", w[0], w[1]),
                ));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition", "zero part stored explicitly"));
        }
        Ok(Partition { parts })
    }

    /// Build from a list that may carry trailing zeros.
    pub fn from_padded(parts: &[u32]) -> Result<Self> {
        let cut = parts.iter().position(|&p| p == 0).unwrap_or(parts.len());
        if parts[cut..].iter().any(|&p| p != 0) {
            return Err(Error::invalid("partition", "zero before a positive part"));
        }
        Partition::new(parts[..cut].to_vec())
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// lambda_i with 1-based index; zero beyond the stored parts.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |lambda|, the number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Conjugate (transposed diagram).
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = Vec::with_capacity(cols);
        for j in 1..=cols {
            t.push(self.parts.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition { parts: t }
    }

    /// Arm length of box (i, j), 1-based: boxes strictly right of (i, j).
    pub fn arm(&self, i: usize, j: usize) -> i64 {
        self.part(i) as i64 - j as i64
    }

    /// Leg length of box (i, j), 1-based: boxes strictly below (i, j).
    pub fn leg(&self, i: usize, j: usize) -> i64 {
        self.parts.iter().filter(|&&p| p as usize >= j).count() as i64 - i as i64
    }

    /// Hook length of a box inside the diagram.
    pub fn hook(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i >= 1 && j >= 1 && j <= self.part(i) as usize);
        (self.arm(i, j) + self.leg(i, j) + 1) as u64
    }

    /// Iterate over all boxes (i, j), 1-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// dim(lambda): the number of standard Young tableaux of this shape,
    /// via the hook-length formula in exact big-integer arithmetic.
    pub fn dimension(&self) -> BigUint {
        let n = self.size();
        let mut num = BigUint::one();
        for k in 1..=n {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::one();
        for (i, j) in self.boxes() {
            den *= BigUint::from(self.hook(i, j));
        }
        // Hook-length formula: the division is exact.
        num / den
    }

    /// Plancherel mass (dim lambda)^2 / n! as an exact rational.
    pub fn plancherel_mass(&self) -> BigRational {
        let dim = self.dimension();
        let mut fact = BigUint::one();
        for k in 1..=self.size() {
            fact *= BigUint::from(k);
        }
        BigRational::new((dim.clone() * dim).into(), fact.into())
    }

    /// Rows (1-based) whose last box is a removable corner.
    pub fn removable_rows(&self) -> Vec<usize> {
        let mut rows = Vec::new();
        for i in 1..=self.parts.len() {
            if self.part(i) > self.part(i + 1) {
                rows.push(i);
            }
        }
        rows
    }

    /// Rows (1-based) where a box can be added keeping monotonicity.
    /// Row `len+1` encodes starting a new row.
    pub fn addable_rows(&self) -> Vec<usize> {
        let mut rows = vec![1];
        for i in 2..=self.parts.len() + 1 {
            if self.part(i - 1) > self.part(i) {
                rows.push(i);
            }
        }
        rows
    }

    /// New partition with one box added at `row` (must be addable).
    pub fn with_box_added(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        if row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Partition { parts }
    }

    /// New partition with the corner box of `row` removed (must be removable).
    pub fn with_box_removed(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.remove(row - 1);
        }
        Partition { parts }
    }

    /// All partitions of `n` in a fixed deterministic order
    /// (lexicographically decreasing part lists).
    pub fn all_of_size(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u64, max_part: u64, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            let top = remaining.min(max_part);
            for p in (1..=top).rev() {
                current.push(p as u32);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::HashMap;

    /// Independent oracle: dim via the branching rule
    /// dim(lambda) = sum over removable corners of dim(lambda - corner),
    /// which is the recursion satisfied by standard-tableau counts.
    fn dim_branching(p: &Partition, memo: &mut HashMap<Partition, BigUint>) -> BigUint {
        if p.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = memo.get(p) {
            return v.clone();
        }
        let mut acc = BigUint::from(0u32);
        for row in p.removable_rows() {
            acc += dim_branching(&p.with_box_removed(row), memo);
        }
        memo.insert(p.clone(), acc.clone());
        acc
    }

    /// Brute-force oracle: count standard tableaux by explicit recursive
    /// filling. Only sane for tiny shapes.
    fn count_syt_brute(p: &Partition) -> u64 {
        fn rec(shape: &Partition, filled: &mut Vec<u32>) -> u64 {
            // filled[i] = number of entries already placed in row i
            let total: u32 = filled.iter().sum();
            if total as u64 == shape.size() {
                return 1;
            }
            let mut count = 0;
            for i in 0..shape.num_parts() {
                let f = filled[i];
                if (f as usize) < shape.part(i + 1) as usize
                    && (i == 0 || filled[i - 1] > f)
                {
                    filled[i] += 1;
                    count += rec(shape, filled);
                    filled[i] -= 1;
                }
            }
            count
        }
        let mut filled = vec![0u32; p.num_parts()];
        rec(p, &mut filled)
    }

    #[test]
    fn dim_of_empty_is_one() {
        assert_eq!(Partition::empty().dimension(), BigUint::one());
    }

    #[test]
    fn dim_of_two_one_is_two() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.dimension(), BigUint::from(2u32));
        assert_eq!(count_syt_brute(&p), 2);
    }

    #[test]
    fn dim_matches_brute_force_on_small_shapes() {
        for n in 0..=6 {
            for p in Partition::all_of_size(n) {
                assert_eq!(
                    p.dimension().to_u64().unwrap(),
                    count_syt_brute(&p),
                    "shape {:?}",
                    p.parts()
                );
            }
        }
    }

    #[test]
    fn dim_matches_branching_oracle_on_figure_shape() {
        let p = Partition::new(vec![10, 8, 7, 4, 4, 3, 2, 2, 1, 1]).unwrap();
        let mut memo = HashMap::new();
        assert_eq!(p.dimension(), dim_branching(&p, &mut memo));
    }

    #[test]
    fn plancherel_mass_examples() {
        let one = Partition::new(vec![1]).unwrap();
        assert_eq!(one.plancherel_mass(), BigRational::from_integer(1.into()));
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(
            p.plancherel_mass(),
            BigRational::new(2.into(), 3.into()),
            "dim (2,1) = 2, 2^2/3! = 2/3"
        );
    }

    #[test]
    fn plancherel_normalization_exact_up_to_12() {
        for n in 0..=12u64 {
            let mut total = BigRational::from_integer(0.into());
            for p in Partition::all_of_size(n) {
                total += p.plancherel_mass();
            }
            assert_eq!(
                total,
                BigRational::from_integer(1.into()),
                "sum of Plancherel masses at n = {n}"
            );
        }
    }

    #[test]
    fn conjugate_involutive_and_size_preserving() {
        for n in 0..=9 {
            for p in Partition::all_of_size(n) {
                let c = p.conjugate();
                assert_eq!(c.size(), p.size());
                assert_eq!(c.conjugate(), p);
            }
        }
    }

    #[test]
    fn partition_counts_match_known_values() {
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(Partition::all_of_size(n as u64).len(), e);
        }
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert!(Partition::from_padded(&[3, 2, 0, 0]).is_ok());
        assert!(Partition::from_padded(&[3, 0, 2]).is_err());
    }

    #[test]
    fn serde_round_trip_is_bare_array() {
        let p = Partition::new(vec![4, 2, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[4,2,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
