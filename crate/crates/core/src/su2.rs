//! Weight data of SU(2) ≅ S³ representations restricted to a maximal circle.
//!
//! A complex representation of SU(2) without weight zero is a sum of even-dimensional
//! irreducibles, so the tangent spaces at an S³-fixed point that is isolated for the circle
//! are indexed by partitions of `n` into even parts.

use crate::algebra::partitions;
use crate::sign::Sign;

/// Canonical tangential weight multiset at an S³-fixed point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSet {
    /// Positive weights, ascending.
    pub m: Vec<u32>,
    /// Sign of the product of the signed weights.
    pub eps: Sign,
}

/// Circle weights of the complex `d`-dimensional irreducible: `d-1, d-3, …, -(d-1)`.
pub fn irrep_weights(d: u32) -> Vec<i64> {
    assert!(d >= 1, "irreducible representations have dimension ≥ 1");
    let top = i64::from(d) - 1;
    (0..i64::from(d)).map(|i| top - 2 * i).collect()
}

/// Every isolated tangent representation of complex dimension `n`, one per partition of `n`
/// into even parts, ordered by the partition (largest part first).
pub fn enumerate_isolated_tangent_sets(n: u32) -> Vec<WeightSet> {
    if n % 2 == 1 {
        return Vec::new();
    }
    partitions(n / 2)
        .into_iter()
        .map(|half| {
            let signed: Vec<i64> = half
                .parts()
                .iter()
                .flat_map(|&p| irrep_weights(2 * p))
                .collect();
            let negatives = signed.iter().filter(|&&w| w < 0).count();
            let eps = if negatives % 2 == 0 { Sign::Plus } else { Sign::Minus };
            let mut m: Vec<u32> = signed.iter().map(|w| w.unsigned_abs() as u32).collect();
            m.sort_unstable();
            WeightSet { m, eps }
        })
        .collect()
}

/// Largest weight product `∏ m_i` over the isolated tangent sets; 0 when there are none.
pub fn max_weight_product(n: u32) -> u128 {
    enumerate_isolated_tangent_sets(n)
        .iter()
        .map(|ws| {
            ws.m.iter()
                .try_fold(1u128, |acc, &x| acc.checked_mul(u128::from(x)))
                .expect("weight product overflows u128")
        })
        .max()
        .unwrap_or(0)
}
