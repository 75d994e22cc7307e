//! Local circle geometry of a manifold with isolated fixed points.

use std::collections::BTreeMap;
use std::fmt;

use crate::sign::Sign;
use crate::su2::{enumerate_isolated_tangent_sets, WeightSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("complex dimension must be at least 1")]
    ZeroDimension,
    #[error("a model needs at least one fixed point")]
    NoPoints,
    #[error("multiplier N must be positive")]
    ZeroMultiplier,
    #[error("tangential weight 0 at point {point}: fixed point is not isolated")]
    ZeroWeight { point: usize },
    #[error("point {point} has {found} tangential weights, expected {expected}")]
    DimensionMismatch { point: usize, expected: usize, found: usize },
    #[error("point {point} has {found} line-bundle weights, expected {expected}")]
    LineCountMismatch { point: usize, expected: usize, found: usize },
    #[error("point index {0} out of range")]
    NoSuchPoint(usize),
    #[error("line bundle index {0} out of range")]
    NoSuchLineBundle(usize),
    #[error("model has no S³-fixed point")]
    NoS3Point,
    #[error("model carries no multiplier N, so Σa² + N·Σm² is undefined")]
    NoMultiplier,
}

/// A circle-fixed point: positive tangential weights, orientation sign, line-bundle weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    m: Vec<u32>,
    eps: Sign,
    a: Vec<i64>,
    s3_fixed: bool,
}

/// Identity of a point for deduplication: `(m, eps, a)`.
pub type PointKey = (Vec<u32>, Sign, Vec<i64>);

impl FixedPoint {
    /// The weights `m` are stored ascending. A zero weight is rejected.
    pub fn new(mut m: Vec<u32>, eps: Sign, a: Vec<i64>, s3_fixed: bool) -> Result<Self, ModelError> {
        if m.contains(&0) {
            return Err(ModelError::ZeroWeight { point: 0 });
        }
        m.sort_unstable();
        Ok(Self { m, eps, a, s3_fixed })
    }

    /// A point given by signed weights of some invariant complex structure.
    pub fn from_signed(signed: &[i64], a: Vec<i64>, s3_fixed: bool) -> Result<Self, ModelError> {
        if signed.contains(&0) {
            return Err(ModelError::ZeroWeight { point: 0 });
        }
        let negatives = signed.iter().filter(|&&w| w < 0).count();
        let eps = if negatives % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let m = signed.iter().map(|w| w.unsigned_abs() as u32).collect();
        Self::new(m, eps, a, s3_fixed)
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn is_s3_fixed(&self) -> bool {
        self.s3_fixed
    }

    pub fn weight_square_sum(&self) -> i128 {
        self.m.iter().map(|&x| i128::from(x) * i128::from(x)).sum()
    }

    pub fn line_square_sum(&self) -> i128 {
        self.a.iter().map(|&x| i128::from(x) * i128::from(x)).sum()
    }

    /// `Σa² + N·Σm²`.
    pub fn eq1_value(&self, multiplier: u32) -> i128 {
        self.line_square_sum() + i128::from(multiplier) * self.weight_square_sum()
    }

    pub fn key(&self) -> PointKey {
        (self.m.clone(), self.eps, self.a.clone())
    }

    pub fn weight_set(&self) -> WeightSet {
        WeightSet { m: self.m.clone(), eps: self.eps }
    }

    fn flipped(&self) -> Self {
        Self { eps: -self.eps, ..self.clone() }
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={:?} eps={} a={:?}", self.m, self.eps, self.a)?;
        if self.s3_fixed {
            write!(f, " s3")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    /// `Σa² + N·Σm²` differs between points.
    Eq1Constancy,
    /// Line-bundle weights must vanish at an S³-fixed point.
    S3LineWeightZero,
    /// Tangent data at an S³-fixed point must come from an SU(2) representation.
    S3TangentSet,
    /// The model claims hypothesis (∗) but has no S³-fixed point.
    StarS3Point,
}

impl Constraint {
    pub fn name(self) -> &'static str {
        match self {
            Constraint::Eq1Constancy => "eq1-constancy",
            Constraint::S3LineWeightZero => "s3-line-weight-zero",
            Constraint::S3TangentSet => "s3-tangent-set",
            Constraint::StarS3Point => "star-s3-point",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub point: Option<usize>,
    pub constraint: Constraint,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.point {
            Some(p) => write!(f, "{} at point {}: {}", self.constraint, p, self.detail),
            None => write!(f, "{}: {}", self.constraint, self.detail),
        }
    }
}

/// Fixed-point data of a `2n`-manifold with `k` equivariant line bundles.
///
/// `multiplier` is the `N` of a semi-negativity claim `p₁(L₁+…+L_k+N·TM) = 0`; when it is
/// `None` the model makes no such claim and the constancy of `Σa² + N·Σm²` is not checked.
/// `hypothesis_star` records a claim that some point is S³-fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointModel {
    n: u32,
    k: usize,
    multiplier: Option<u32>,
    hypothesis_star: bool,
    points: Vec<FixedPoint>,
}

impl FixedPointModel {
    pub fn new(
        n: u32,
        k: usize,
        multiplier: Option<u32>,
        hypothesis_star: bool,
        points: Vec<FixedPoint>,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::ZeroDimension);
        }
        if points.is_empty() {
            return Err(ModelError::NoPoints);
        }
        if multiplier == Some(0) {
            return Err(ModelError::ZeroMultiplier);
        }
        for (i, p) in points.iter().enumerate() {
            if p.m.len() != n as usize {
                return Err(ModelError::DimensionMismatch { point: i, expected: n as usize, found: p.m.len() });
            }
            if p.a.len() != k {
                return Err(ModelError::LineCountMismatch { point: i, expected: k, found: p.a.len() });
            }
        }
        Ok(Self { n, k, multiplier, hypothesis_star, points })
    }

    /// Complex dimension.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn multiplier(&self) -> Option<u32> {
        self.multiplier
    }

    pub fn hypothesis_star(&self) -> bool {
        self.hypothesis_star
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    /// The number of fixed points, which equals the Euler characteristic.
    pub fn euler_characteristic(&self) -> usize {
        self.points.len()
    }

    pub fn s3_points(&self) -> impl Iterator<Item = (usize, &FixedPoint)> {
        self.points.iter().enumerate().filter(|(_, p)| p.s3_fixed)
    }

    /// `C″ = N·Σ m²` read off at the first S³-fixed point, where all line weights vanish.
    pub fn cpp_constant(&self) -> Result<u64, ModelError> {
        let n = self.multiplier.ok_or(ModelError::NoMultiplier)?;
        let (_, p) = self.s3_points().next().ok_or(ModelError::NoS3Point)?;
        Ok(u64::from(n) * p.weight_square_sum() as u64)
    }

    /// Every constraint violation; empty iff the model is admissible.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let tangent_sets = enumerate_isolated_tangent_sets(self.n);

        if self.hypothesis_star && self.s3_points().next().is_none() {
            out.push(Violation {
                point: None,
                constraint: Constraint::StarS3Point,
                detail: "hypothesis (∗) is claimed but no point is S³-fixed".into(),
            });
        }

        for (i, p) in self.s3_points() {
            if p.a.iter().any(|&a| a != 0) {
                out.push(Violation {
                    point: Some(i),
                    constraint: Constraint::S3LineWeightZero,
                    detail: format!("line weights {:?} at an S³-fixed point", p.a),
                });
            }
            if !tangent_sets.contains(&p.weight_set()) {
                out.push(Violation {
                    point: Some(i),
                    constraint: Constraint::S3TangentSet,
                    detail: format!(
                        "(m={:?}, eps={}) is not the weight data of an SU(2) representation without zero weight",
                        p.m, p.eps
                    ),
                });
            }
        }

        if let Some(mult) = self.multiplier {
            out.extend(self.eq1_violations(mult));
        }
        out
    }

    /// Reference value is the most frequent value among S³-fixed points (all points if there
    /// are none), ties broken towards the smaller value; every other point is reported.
    fn eq1_violations(&self, mult: u32) -> Vec<Violation> {
        let values: Vec<i128> = self.points.iter().map(|p| p.eq1_value(mult)).collect();
        let mut distinct = values.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() <= 1 {
            return Vec::new();
        }
        let mut pool: Vec<i128> = self.s3_points().map(|(i, _)| values[i]).collect();
        if pool.is_empty() {
            pool = values.clone();
        }
        let mut freq: BTreeMap<i128, usize> = BTreeMap::new();
        for v in pool {
            *freq.entry(v).or_default() += 1;
        }
        let reference = freq
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(v, _)| *v)
            .expect("nonempty");
        let listing = distinct.iter().map(i128::to_string).collect::<Vec<_>>().join(",");
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != reference)
            .map(|(i, v)| Violation {
                point: Some(i),
                constraint: Constraint::Eq1Constancy,
                detail: format!("Σa² + {mult}·Σm² = {v}, expected {reference} (values {listing})"),
            })
            .collect()
    }

    /// Same model with every orientation sign flipped.
    pub fn flip_orientation(&self) -> Self {
        Self {
            points: self.points.iter().map(FixedPoint::flipped).collect(),
            ..self.clone()
        }
    }

    /// Adds `delta` to the weight of line bundle `j` at every point.
    ///
    /// Circle lifts of a line bundle differ by such global shifts.
    pub fn shift_line_weights(&self, j: usize, delta: i64) -> Result<Self, ModelError> {
        if j >= self.k {
            return Err(ModelError::NoSuchLineBundle(j));
        }
        let mut out = self.clone();
        for p in &mut out.points {
            p.a[j] += delta;
        }
        Ok(out)
    }

    pub fn with_multiplier(&self, multiplier: Option<u32>) -> Result<Self, ModelError> {
        Self::new(self.n, self.k, multiplier, self.hypothesis_star, self.points.clone())
    }

    pub fn with_hypothesis_star(&self, star: bool) -> Self {
        Self { hypothesis_star: star, ..self.clone() }
    }

    /// Replaces the line-bundle data by `weights[s]` at point `s`.
    pub fn with_line_weights(&self, k: usize, weights: Vec<Vec<i64>>) -> Result<Self, ModelError> {
        if weights.len() != self.points.len() {
            return Err(ModelError::NoSuchPoint(weights.len().min(self.points.len())));
        }
        let points = self
            .points
            .iter()
            .zip(weights)
            .map(|(p, a)| FixedPoint { a, ..p.clone() })
            .collect();
        Self::new(self.n, k, self.multiplier, self.hypothesis_star, points)
    }

    pub fn without_line_bundles(&self) -> Self {
        self.with_line_weights(0, vec![Vec::new(); self.points.len()])
            .expect("dropping line bundles keeps the model well-formed")
    }

    pub fn mark_s3_fixed(&self, index: usize) -> Result<Self, ModelError> {
        let mut out = self.clone();
        out.points.get_mut(index).ok_or(ModelError::NoSuchPoint(index))?.s3_fixed = true;
        Ok(out)
    }

    /// Points reordered as `order[0], order[1], …`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, ModelError> {
        let points = order
            .iter()
            .map(|&i| self.points.get(i).cloned().ok_or(ModelError::NoSuchPoint(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.n, self.k, self.multiplier, self.hypothesis_star, points)
    }

    /// The sorted multiset of point keys; equal keys mean the same local geometry.
    pub fn canonical_key(&self) -> Vec<PointKey> {
        let mut keys: Vec<PointKey> = self.points.iter().map(FixedPoint::key).collect();
        keys.sort();
        keys
    }

    /// Points sorted with S³-fixed points first, then by key.
    pub fn canonicalized(&self) -> Self {
        let mut points = self.points.clone();
        points.sort_by(|p, q| q.s3_fixed.cmp(&p.s3_fixed).then_with(|| p.key().cmp(&q.key())));
        Self { points, ..self.clone() }
    }
}

impl fmt::Display for FixedPointModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} k {}", 2 * self.n, self.k)?;
        if let Some(m) = self.multiplier {
            write!(f, " N {m}")?;
        }
        write!(f, ":")?;
        for p in &self.points {
            write!(f, " [{p}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn point(m: &[u32], eps: i64, a: &[i64], s3: bool) -> FixedPoint {
        FixedPoint::new(m.to_vec(), Sign::from_i64(eps).unwrap(), a.to_vec(), s3).unwrap()
    }

    #[test]
    fn zero_weight_rejected_at_construction() {
        assert!(matches!(
            FixedPoint::new(vec![1, 0], Sign::Plus, vec![], false),
            Err(ModelError::ZeroWeight { .. })
        ));
    }

    #[test]
    fn shape_checked_at_construction() {
        let p = point(&[1, 1], 1, &[], false);
        assert!(matches!(
            FixedPointModel::new(3, 0, None, false, vec![p.clone()]),
            Err(ModelError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            FixedPointModel::new(2, 1, None, false, vec![p.clone()]),
            Err(ModelError::LineCountMismatch { .. })
        ));
        assert_eq!(FixedPointModel::new(2, 0, None, false, vec![]), Err(ModelError::NoPoints));
        assert_eq!(FixedPointModel::new(2, 0, Some(0), false, vec![p]), Err(ModelError::ZeroMultiplier));
    }

    #[test]
    fn linear_cp2_fails_eq1_constancy() {
        let model = catalog::linear_cpn(2).without_line_bundles().with_multiplier(Some(1)).unwrap();
        let v = model.validate();
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.constraint == Constraint::Eq1Constancy));
        assert!(v[0].detail.contains("values 2,5"));
    }

    #[test]
    fn s3_point_with_line_weight_flagged() {
        let model = FixedPointModel::new(2, 1, None, true, vec![point(&[1, 1], -1, &[1], true)]).unwrap();
        let v = model.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].constraint, Constraint::S3LineWeightZero);
        assert_eq!(v[0].constraint.name(), "s3-line-weight-zero");
    }

    #[test]
    fn s3_point_needs_su2_tangent_data() {
        let model = FixedPointModel::new(2, 0, None, false, vec![point(&[1, 2], 1, &[], true)]).unwrap();
        assert_eq!(model.validate()[0].constraint, Constraint::S3TangentSet);
        let model = FixedPointModel::new(2, 0, None, false, vec![point(&[1, 1], 1, &[], true)]).unwrap();
        assert_eq!(model.validate()[0].constraint, Constraint::S3TangentSet);
    }

    #[test]
    fn star_claim_needs_s3_point() {
        let model = catalog::sphere(&[1]).with_hypothesis_star(true);
        assert_eq!(model.validate()[0].constraint, Constraint::StarS3Point);
    }

    #[test]
    fn euler_characteristic_counts_points() {
        assert_eq!(catalog::linear_cpn(2).euler_characteristic(), 3);
        assert_eq!(catalog::linear_cpn(5).euler_characteristic(), 6);
        let single = FixedPointModel::new(2, 0, None, false, vec![point(&[1, 1], -1, &[], true)]).unwrap();
        assert_eq!(single.euler_characteristic(), 1);
    }

    #[test]
    fn cpp_constant_at_s3_point() {
        let single = |m: &[u32], eps, mult| {
            FixedPointModel::new(m.len() as u32, 0, Some(mult), true, vec![point(m, eps, &[], true)]).unwrap()
        };
        assert_eq!(single(&[1, 1], -1, 1).cpp_constant(), Ok(2));
        assert_eq!(single(&[1, 1, 3, 3], 1, 1).cpp_constant(), Ok(20));
        assert_eq!(single(&[1, 1], -1, 3).cpp_constant(), Ok(6));
        assert_eq!(catalog::linear_cpn(2).cpp_constant(), Err(ModelError::NoMultiplier));
        let no_s3 = catalog::linear_cpn(2).with_multiplier(Some(1)).unwrap();
        assert_eq!(no_s3.cpp_constant(), Err(ModelError::NoS3Point));
    }

    #[test]
    fn shifting_line_weights() {
        let m = catalog::linear_cpn(2).shift_line_weights(0, -1).unwrap();
        assert_eq!(m.points()[0].a(), &[-1]);
        assert!(catalog::linear_cpn(2).shift_line_weights(1, 1).is_err());
    }
}
