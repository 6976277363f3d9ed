//! Tangent-space weights at localization fixed points, by exact character
//! arithmetic.
//!
//! For the fixed point F = (lambda^(1), ..., lambda^(r)) the tangent
//! character is X_{O^r} - |G_F|^2 with G_F the generating function of the
//! tuple. Writing x = q^{1/2} = e^{i eps/2}, each component contributes
//! f_k(x) = sum_j (x^{2(lambda_j - j) + 1} - x^{1 - 2j}), the vacuum tail
//! resums to v = x/(x^2 - 1), and the (k, k') block reduces to
//!
//!   T_{kk'} = [ x (f_k - conj f_{k'}) - (x^2 - 1) f_k conj f_{k'} ] / (x^2 - 1),
//!
//! a finite Laurent polynomial with nonnegative integer coefficients. The
//! cancellation is symbolic, so no precision is lost at small eps; weights
//! are read off the surviving monomials and multiplied as exact conjugate
//! pairs theta^2 > 0.

use crate::error::{Error, Result};
use crate::nekrasov::laurent::Laurent;
use crate::nekrasov::params::{GaugeParams, PartitionTuple};
use crate::numerics::summation::sorted_product;
use crate::partitions::Partition;

/// f_k as a Laurent polynomial in x = q^{1/2}.
fn finite_part(lambda: &Partition) -> Laurent {
    let mut f = Laurent::zero();
    for j in 1..=lambda.num_parts() {
        let top = 2 * (lambda.part(j) as i64 - j as i64) + 1;
        let bot = 1 - 2 * j as i64;
        f = f.add(&Laurent::monomial(1, top));
        f = f.add(&Laurent::monomial(-1, bot));
    }
    f
}

/// The (k, k') block of the tangent character.
fn block(f_k: &Laurent, f_kp: &Laurent) -> Result<Laurent> {
    let fbar = f_kp.conj();
    let diff = f_k.sub(&fbar).shift(1);
    let x2m1 = Laurent::monomial(1, 2).add(&Laurent::monomial(-1, 0));
    let numerator = diff.sub(&x2m1.mul(&f_k.mul(&fbar)));
    numerator.div_exact_x2_minus_1().ok_or_else(|| {
        Error::invalid(
            "tangent character",
            "vacuum-tail cancellation left a remainder",
        )
    })
}

/// Number of monomials (with multiplicity) of the tangent character after
/// cancellation. A fixed point of charge n must give exactly 2 r n.
pub fn character_term_count(f: &PartitionTuple) -> Result<u64> {
    let fs: Vec<Laurent> = f.components().iter().map(finite_part).collect();
    let mut count = 0u64;
    for fk in &fs {
        for fkp in &fs {
            let t = block(fk, fkp)?;
            for (_, c) in t.terms() {
                if c < 0 {
                    return Err(Error::invalid(
                        "tangent character",
                        "negative multiplicity in an Ext block",
                    ));
                }
                count += c as u64;
            }
        }
    }
    Ok(count)
}

/// det t|_{T_F}: the product of the 2 r n tangent weights, grouped into
/// conjugate pairs so the result is exactly real and positive, and multiplied
/// over a canonically sorted factor list so it is bit-identical under eps ->
/// -eps and permutations of a.
pub fn tangent_weight(f: &PartitionTuple, g: &GaugeParams) -> Result<f64> {
    if f.rank() != g.rank() {
        return Err(Error::invalid("fixed point", "tuple rank != gauge rank"));
    }
    g.check_pole_avoidance()?;
    let fs: Vec<Laurent> = f.components().iter().map(finite_part).collect();
    let mut factors: Vec<f64> = Vec::with_capacity(2 * f.rank() * f.total_size() as usize);
    for k in 0..fs.len() {
        // Diagonal block: monomials pair m <-> -m, weights (m/2) eps.
        let t = block(&fs[k], &fs[k])?;
        for (m, c) in t.terms() {
            debug_assert!(m % 2 == 0 && c >= 0 && m != 0);
            if m > 0 {
                let theta = 0.5 * m as f64 * g.epsilon;
                for _ in 0..c {
                    factors.push(theta * theta);
                }
            }
        }
        // Off-diagonal: T_{k'k}(x) = T_{kk'}(1/x), so each monomial of
        // T_{kk'} pairs with its negative in the transposed block.
        for kp in k + 1..fs.len() {
            let t = block(&fs[k], &fs[kp])?;
            for (m, c) in t.terms() {
                debug_assert!(m % 2 == 0 && c >= 0);
                // parenthesized so a pair swap negates both addends exactly
                let theta = 0.5 * m as f64 * g.epsilon + (g.a[k] - g.a[kp]);
                for _ in 0..c {
                    factors.push(theta * theta);
                }
            }
        }
    }
    debug_assert_eq!(
        factors.len() as u64,
        (f.rank() as u64) * f.total_size(),
        "character must have 2rn monomials (rn conjugate pairs)"
    );
    let det = sorted_product(&mut factors);
    if !(det > 0.0) {
        return Err(Error::invalid(
            "tangent weight",
            format!("non-positive determinant {det}"),
        ));
    }
    Ok(det)
}
