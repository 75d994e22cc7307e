//! Fixed-point models of standard linear actions.

use crate::model::{FixedPoint, FixedPointModel};
use crate::sign::Sign;

/// `CPⁿ` with the circle acting on homogeneous coordinates by pairwise distinct rotation
/// numbers `w_0, …, w_n`.
///
/// Point `s` has signed tangential weights `w_t − w_s` (`t ≠ s`) and carries one line bundle
/// with weight `w_s`, whose first Chern class generates `H²`. The point listed in `s3_point`
/// is flagged S³-fixed and the model then claims hypothesis (∗).
pub fn linear_projective(rotation: &[i64], s3_point: Option<usize>) -> FixedPointModel {
    let n = rotation.len().checked_sub(1).filter(|&n| n > 0).expect("CPⁿ needs n ≥ 1");
    let points = rotation
        .iter()
        .enumerate()
        .map(|(s, &ws)| {
            let signed: Vec<i64> = rotation
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != s)
                .map(|(_, &wt)| wt - ws)
                .collect();
            FixedPoint::from_signed(&signed, vec![ws], s3_point == Some(s))
                .expect("rotation numbers must be pairwise distinct")
        })
        .collect();
    FixedPointModel::new(n as u32, 1, None, s3_point.is_some(), points).expect("well-formed")
}

/// `CPⁿ` with rotation numbers `0, 1, …, n`.
pub fn linear_cpn(n: u32) -> FixedPointModel {
    let rotation: Vec<i64> = (0..=i64::from(n)).collect();
    linear_projective(&rotation, None)
}

/// The restriction of a linear SU(2)-action on `CPⁿ` that has an S³-fixed point with
/// isolated circle fixed points, for `n = 2` and `n = 4`: the representations `V₂ ⊕ V₁` and
/// `V₄ ⊕ V₁` on `ℂ^{n+1}`. The S³-fixed point has line weight 0.
pub fn linear_cpn_su2(n: u32) -> Option<FixedPointModel> {
    let rotation: &[i64] = match n {
        2 => &[-1, 0, 1],
        4 => &[-3, -1, 0, 1, 3],
        _ => return None,
    };
    let s3 = rotation.iter().position(|&w| w == 0);
    Some(linear_projective(rotation, s3))
}

/// `S^{2n}` rotated with weights `m`: north pole with sign +, south pole with sign −.
pub fn sphere(weights: &[u32]) -> FixedPointModel {
    let points = [Sign::Plus, Sign::Minus]
        .into_iter()
        .map(|eps| FixedPoint::new(weights.to_vec(), eps, Vec::new(), false).expect("positive weights"))
        .collect();
    FixedPointModel::new(weights.len() as u32, 0, None, false, points).expect("well-formed")
}

/// Product action: points are pairs, weights and line bundles concatenate, signs multiply.
pub fn product(x: &FixedPointModel, y: &FixedPointModel) -> FixedPointModel {
    let mut points = Vec::with_capacity(x.points().len() * y.points().len());
    for p in x.points() {
        for q in y.points() {
            let m = p.m().iter().chain(q.m()).copied().collect();
            let a = p.a().iter().chain(q.a()).copied().collect();
            points.push(
                FixedPoint::new(m, p.eps() * q.eps(), a, p.is_s3_fixed() && q.is_s3_fixed())
                    .expect("positive weights"),
            );
        }
    }
    FixedPointModel::new(x.n() + y.n(), x.k() + y.k(), None, false, points).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp2_point_data() {
        let cp2 = linear_cpn(2);
        let data: Vec<(Vec<u32>, Sign, Vec<i64>)> = cp2.points().iter().map(|p| p.key()).collect();
        assert_eq!(
            data,
            vec![
                (vec![1, 2], Sign::Plus, vec![0]),
                (vec![1, 1], Sign::Minus, vec![1]),
                (vec![1, 2], Sign::Plus, vec![2]),
            ]
        );
    }

    #[test]
    fn su2_models_are_valid() {
        for n in [2, 4] {
            let model = linear_cpn_su2(n).unwrap();
            assert!(model.validate().is_empty(), "n = {n}: {:?}", model.validate());
        }
        assert!(linear_cpn_su2(3).is_none());
    }

    #[test]
    fn product_of_spheres() {
        let s = product(&sphere(&[1]), &sphere(&[2]));
        assert_eq!(s.n(), 2);
        assert_eq!(s.points().len(), 4);
        let signs: Vec<Sign> = s.points().iter().map(|p| p.eps()).collect();
        assert_eq!(signs, vec![Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]);
    }
}
