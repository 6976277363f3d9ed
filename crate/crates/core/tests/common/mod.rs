//! Shared test oracles, kept out of the production tree.

use instanton::nekrasov::{GaugeParams, PartitionTuple};
use instanton::partitions::Partition;

/// Independent arm/leg tangent-weight oracle.
///
/// For a pair (lambda, mu) with relative Coulomb parameter x, the block
/// contributes, over boxes s of lambda and t of mu,
///
///   prod_s [x + eps (arm_lambda(s) + leg_mu(s) + 1)]
///   prod_t [x - eps (arm_mu(t) + leg_lambda(t) + 1)],
///
/// and det t|_T = (-1)^{r n} prod_{k,k'} N_{lambda^k, lambda^k'}(a_k - a_k').
/// This is a closed-form hook-style route, independent of the character
/// cancellation used in production.
pub fn arm_leg_weight(f: &PartitionTuple, g: &GaugeParams) -> f64 {
    let r = f.rank();
    let n = f.total_size();
    let mut det = if (r as u64 * n) % 2 == 1 { -1.0 } else { 1.0 };
    for k in 0..r {
        for kp in 0..r {
            det *= pair_product(
                &f.components()[k],
                &f.components()[kp],
                g.a[k] - g.a[kp],
                g.epsilon,
            );
        }
    }
    det
}

fn pair_product(lambda: &Partition, mu: &Partition, x: f64, eps: f64) -> f64 {
    let mut acc = 1.0;
    for (i, j) in lambda.boxes() {
        let arm = lambda.arm(i, j) as f64;
        let leg = mu.leg(i, j) as f64;
        acc *= x + eps * (arm + leg + 1.0);
    }
    for (i, j) in mu.boxes() {
        let arm = mu.arm(i, j) as f64;
        let leg = lambda.leg(i, j) as f64;
        acc *= x - eps * (arm + leg + 1.0);
    }
    acc
}
