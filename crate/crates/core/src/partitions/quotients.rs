//! r-quotients: the bijection between a partition and an r-tuple of
//! partitions plus rational shifts.
//!
//! Grouping the particles S(lambda) by residue class mod r gives, for each
//! class, a charged fermion configuration; its charge and shape are the shift
//! and quotient. The congruence r*s = rho mod r*Z^r_0 pins the assignment of
//! residue classes to tuple indices uniquely: class c goes to index k with
//! c + k = 0 mod r.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Quotient data: r partitions and r rational shifts summing to zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RQuotients {
    pub r: usize,
    pub quotients: Vec<Partition>,
    #[serde(with = "rational_vec")]
    pub shifts: Vec<Rational64>,
}

impl RQuotients {
    /// Validates the shift congruence and zero sum.
    pub fn new(r: usize, quotients: Vec<Partition>, shifts: Vec<Rational64>) -> Result<Self> {
        if r == 0 || quotients.len() != r || shifts.len() != r {
            return Err(Error::invalid("r-quotients", "length mismatch"));
        }
        let sum = shifts
            .iter()
            .fold(Rational64::zero(), |acc, s| acc + *s);
        if !sum.is_zero() {
            return Err(Error::BadShifts(format!("shifts sum to {sum}, not 0")));
        }
        for (k, s) in shifts.iter().enumerate() {
            charge_from_shift(r, k + 1, *s)?;
        }
        Ok(RQuotients {
            r,
            quotients,
            shifts,
        })
    }

    /// rho_k = (r - 2k + 1)/2 for k = 1..r.
    pub fn rho(r: usize, k: usize) -> Rational64 {
        Rational64::new(r as i64 - 2 * k as i64 + 1, 2)
    }

    /// Exact check of |lambda| = r (sum |quotients| + sum s^2/2) + (1 - r^2)/24.
    pub fn size_identity_holds(&self, lambda_size: u64) -> bool {
        let r = self.r as i64;
        let mut rhs = Rational64::zero();
        for q in &self.quotients {
            rhs += Rational64::from_integer(q.size() as i64);
        }
        for &s in &self.shifts {
            rhs += s * s / Rational64::from_integer(2);
        }
        rhs *= Rational64::from_integer(r);
        rhs += Rational64::new(1 - r * r, 24);
        rhs == Rational64::from_integer(lambda_size as i64)
    }
}

/// The residue class (mod r) assigned to tuple index k (1-based):
/// c = -k mod r.
fn class_of_index(r: usize, k: usize) -> usize {
    (r - k % r) % r
}

/// Shift of a class with charge q: s = (2c + 1 - r)/(2r) + q.
fn shift_from_charge(r: usize, k: usize, charge: i64) -> Rational64 {
    let c = class_of_index(r, k) as i64;
    Rational64::new(2 * c + 1 - r as i64, 2 * r as i64) + Rational64::from_integer(charge)
}

/// Inverse of `shift_from_charge`; errors when s is not congruent.
fn charge_from_shift(r: usize, k: usize, s: Rational64) -> Result<i64> {
    let q = s - shift_from_charge(r, k, 0);
    if !q.is_integer() {
        return Err(Error::BadShifts(format!(
            "shift {s} at index {k} violates r*s = rho mod r*Z^r_0"
        )));
    }
    Ok(q.to_integer())
}

/// Decompose S(lambda) into r residue classes: quotients and shifts.
pub fn r_quotients(lambda: &Partition, r: usize) -> Result<RQuotients> {
    if r == 0 {
        return Err(Error::invalid("r", "must be >= 1"));
    }
    let ell = lambda.num_parts();
    // Enough explicit particles that every class sees at least two packed
    // tail entries below its irregular region.
    let depth = ell + 2 * r + 4;
    // m-sets per class: x = c + 1/2 + r m  <=>  2x = 2c + 1 + 2 r m.
    let mut class_ms: Vec<Vec<i64>> = vec![Vec::new(); r];
    for i in 1..=depth {
        let x2 = 2 * lambda.part(i) as i64 - 2 * i as i64 + 1;
        let c = (x2 - 1).div_euclid(2).rem_euclid(r as i64) as usize;
        let m = (x2 - (2 * c as i64 + 1)).div_euclid(2 * r as i64);
        class_ms[c].push(m);
    }

    let mut quotients = Vec::with_capacity(r);
    let mut shifts = Vec::with_capacity(r);
    for k in 1..=r {
        let c = class_of_index(r, k);
        let ms = &class_ms[c];
        // ms is strictly decreasing; the last entries are packed, so the
        // charge reads off the tail: m_j = charge - j there.
        let j_last = ms.len() as i64;
        let charge = ms.last().expect("class window nonempty") + j_last;
        let mut parts = Vec::new();
        for (idx, &m) in ms.iter().enumerate() {
            let mu = m - charge + idx as i64 + 1;
            debug_assert!(mu >= 0, "maya window too shallow");
            if mu > 0 {
                parts.push(mu as u32);
            }
        }
        quotients.push(Partition::new(parts)?);
        shifts.push(shift_from_charge(r, k, charge));
    }
    let out = RQuotients::new(r, quotients, shifts)?;
    debug_assert!(out.size_identity_holds(lambda.size()));
    Ok(out)
}

/// Reassemble the unique partition with the given r-quotients.
pub fn combine_quotients(q: &RQuotients) -> Result<Partition> {
    let r = q.r;
    let mut charges = Vec::with_capacity(r);
    for k in 1..=r {
        charges.push(charge_from_shift(r, k, q.shifts[k - 1])?);
    }
    if charges.iter().sum::<i64>() != 0 {
        return Err(Error::BadShifts("charges do not sum to zero".into()));
    }
    // Upper bound on the reconstructed size from the exact size identity.
    let mut size_rat = Rational64::zero();
    for p in &q.quotients {
        size_rat += Rational64::from_integer(p.size() as i64);
    }
    for &s in &q.shifts {
        size_rat += s * s / Rational64::from_integer(2);
    }
    size_rat *= Rational64::from_integer(r as i64);
    size_rat += Rational64::new(1 - (r as i64) * (r as i64), 24);
    if !size_rat.is_integer() || size_rat.is_negative() {
        return Err(Error::BadShifts(format!(
            "size identity gives non-integer size {size_rat}"
        )));
    }
    let n = size_rat.to_integer() as usize;
    let depth = n + 2 * r + 4;

    // Emit the top `depth` particles of the union of the shifted classes.
    let mut points2: Vec<i64> = Vec::with_capacity(depth + r);
    for k in 1..=r {
        let c = class_of_index(r, k) as i64;
        let mu = &q.quotients[k - 1];
        let charge = charges[k - 1];
        // m_j = mu_j - j + charge, listed deep enough to cover `depth` rows.
        for j in 1..=(mu.num_parts() + depth) {
            let m = mu.part(j) as i64 - j as i64 + charge;
            points2.push(2 * r as i64 * m + 2 * c + 1);
        }
    }
    points2.sort_unstable_by(|a, b| b.cmp(a));
    if points2.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadShifts("classes collide".into()));
    }
    let mut parts = Vec::new();
    for (i, &x2) in points2.iter().take(depth).enumerate() {
        // lambda_i = x_i + i - 1/2, doubled: 2 lambda_i = x2 + 2i - 1 (i 1-based).
        let lam2 = x2 + 2 * (i as i64 + 1) - 1;
        if lam2 < 0 || lam2 % 2 != 0 {
            return Err(Error::BadShifts(format!(
                "reconstructed row {i} is not a partition part"
            )));
        }
        if lam2 > 0 {
            parts.push((lam2 / 2) as u32);
        }
    }
    let lambda = Partition::new(parts)
        .map_err(|e| Error::BadShifts(format!("reconstruction not monotone: {e}")))?;
    if lambda.size() != n as u64 {
        return Err(Error::BadShifts(format!(
            "reconstructed size {} does not match the size identity {}",
            lambda.size(),
            n
        )));
    }
    Ok(lambda)
}

mod rational_vec {
    //! Shifts serialize as {num, den} pairs.
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Frac {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(
        v: &[Rational64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let fr: Vec<Frac> = v
            .iter()
            .map(|x| Frac {
                num: *x.numer(),
                den: *x.denom(),
            })
            .collect();
        fr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational64>, D::Error> {
        let fr = Vec::<Frac>::deserialize(d)?;
        Ok(fr.into_iter().map(|f| Rational64::new(f.num, f.den)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn empty_partition_r2() {
        let q = r_quotients(&Partition::empty(), 2).unwrap();
        assert!(q.quotients.iter().all(|p| p.is_empty()));
        assert_eq!(q.shifts, vec![rat(1, 4), rat(-1, 4)]);
        assert!(q.size_identity_holds(0));
    }

    #[test]
    fn single_box_r2() {
        let p = Partition::new(vec![1]).unwrap();
        let q = r_quotients(&p, 2).unwrap();
        assert!(q.quotients.iter().all(|p| p.is_empty()));
        assert_eq!(q.shifts, vec![rat(-3, 4), rat(3, 4)]);
        // 2*(9/16 + 9/16)/2 ... identity: 2*(9/16) - 3/24 = 1
        assert!(q.size_identity_holds(1));
    }

    #[test]
    fn combine_inverts_the_spec_examples() {
        let q = RQuotients::new(
            2,
            vec![Partition::empty(), Partition::empty()],
            vec![rat(1, 4), rat(-1, 4)],
        )
        .unwrap();
        assert_eq!(combine_quotients(&q).unwrap(), Partition::empty());

        let q = RQuotients::new(
            2,
            vec![Partition::empty(), Partition::empty()],
            vec![rat(-3, 4), rat(3, 4)],
        )
        .unwrap();
        assert_eq!(
            combine_quotients(&q).unwrap(),
            Partition::new(vec![1]).unwrap()
        );
    }

    #[test]
    fn round_trip_exhaustive_size_up_to_12() {
        for r in 2..=4usize {
            for n in 0..=12u64 {
                for p in Partition::all_of_size(n) {
                    let q = r_quotients(&p, r).unwrap();
                    assert!(q.size_identity_holds(n), "size identity at {:?}", p.parts());
                    let back = combine_quotients(&q).unwrap();
                    assert_eq!(back, p, "round trip r={r} on {:?}", p.parts());
                }
            }
        }
    }

    #[test]
    fn r1_quotient_is_identity_with_zero_shift() {
        for p in Partition::all_of_size(6) {
            let q = r_quotients(&p, 1).unwrap();
            assert_eq!(q.quotients[0], p);
            assert_eq!(q.shifts[0], Rational64::zero());
        }
    }

    #[test]
    fn bad_shifts_rejected() {
        // Shift 1/3 is not congruent for r=2.
        let err = RQuotients::new(
            2,
            vec![Partition::empty(), Partition::empty()],
            vec![rat(1, 3), rat(-1, 3)],
        );
        assert!(matches!(err, Err(Error::BadShifts(_))));
        // Nonzero sum.
        let err = RQuotients::new(
            2,
            vec![Partition::empty(), Partition::empty()],
            vec![rat(1, 4), rat(1, 4)],
        );
        assert!(matches!(err, Err(Error::BadShifts(_))));
    }
}
