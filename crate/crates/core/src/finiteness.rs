//! Semi-negative fixed-point models with bounded Euler characteristic.
//!
//! If `p₁(L₁+…+L_k+N·TM) = 0` equivariantly, the quantity `Σa² + N·Σm²` is the same at every
//! fixed point. At an S³-fixed point the line weights vanish and the tangent data is one of
//! finitely many SU(2)-representations, so that common value `C″` takes finitely many values,
//! and every other fixed point is a lattice point on a bounded quadric. With the number of
//! points bounded by `C`, the local geometries form a finite set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Partition, Rat};
use crate::localization::{char_number, top_degree_monomials, CharMonomial};
use crate::model::{FixedPoint, FixedPointModel, PointKey};
use crate::search::{Budget, BudgetExceeded};
use crate::sign::Sign;
use crate::su2::enumerate_isolated_tangent_sets;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FinitenessError {
    #[error("invalid enumeration bounds: {0}")]
    InvalidBounds(&'static str),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded<FixedPointModel>),
}

/// Unsigned local data `(m, a)` of a fixed point; the sign is chosen separately.
pub type PointType = (Vec<u32>, Vec<i64>);

/// All `(m, a)` with `m` a nondecreasing positive `n`-tuple, `a ∈ ℤᵏ` and
/// `Σa² + N·Σm² = value`. Sorted by `m`, then `a`.
pub fn lattice_point_types(n: u32, k: usize, multiplier: u32, value: u64) -> Vec<PointType> {
    fn ms(n: u32, min: u32, rest: u64, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u64)>) {
        if n == 0 {
            out.push((cur.clone(), rest));
            return;
        }
        let mut m = min;
        // the remaining n entries are all ≥ m
        while u64::from(n) * u64::from(m) * u64::from(m) <= rest {
            cur.push(m);
            ms(n - 1, m, rest - u64::from(m) * u64::from(m), cur, out);
            cur.pop();
            m += 1;
        }
    }
    fn avecs(k: usize, rest: u64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let bound = rest.isqrt() as i64;
        for a in -bound..=bound {
            cur.push(a);
            avecs(k - 1, rest - (a * a) as u64, cur, out);
            cur.pop();
        }
    }
    if multiplier == 0 {
        return Vec::new();
    }
    let mut tangent = Vec::new();
    ms(n, 1, value / u64::from(multiplier), &mut Vec::new(), &mut tangent);
    let mut out = Vec::new();
    for (m, _) in tangent {
        let used = u64::from(multiplier) * m.iter().map(|&x| u64::from(x) * u64::from(x)).sum::<u64>();
        let mut a = Vec::new();
        avecs(k, value - used, &mut Vec::new(), &mut a);
        out.extend(a.into_iter().map(|a| (m.clone(), a)));
    }
    out
}

/// Admissible models of a `2n`-manifold with S³-action satisfying (∗), `k` line bundles,
/// multiplier `N` and Euler characteristic at most `c_max`.
///
/// The enumeration over-approximates: emitted weight data need not come from a manifold.
/// Output is deduplicated and sorted by number of points, then canonical point multiset.
pub fn enumerate_admissible_models(
    n: u32,
    c_max: usize,
    k: usize,
    multiplier: u32,
    max_branches: u64,
) -> Result<Vec<FixedPointModel>, FinitenessError> {
    if n == 0 {
        return Err(FinitenessError::InvalidBounds("n must be at least 1"));
    }
    if c_max == 0 {
        return Err(FinitenessError::InvalidBounds("Euler characteristic bound must be at least 1"));
    }
    if multiplier == 0 {
        return Err(FinitenessError::InvalidBounds("multiplier must be at least 1"));
    }
    let mut budget = Budget::new(max_branches);
    let mut found: BTreeMap<(usize, Vec<PointKey>), FixedPointModel> = BTreeMap::new();
    let finish = |found: BTreeMap<_, FixedPointModel>| found.into_values().collect::<Vec<_>>();

    for ws in enumerate_isolated_tangent_sets(n) {
        let origin = FixedPoint::new(ws.m.clone(), ws.eps, vec![0; k], true).expect("positive weights");
        let value = u64::try_from(origin.eq1_value(multiplier)).expect("nonnegative");
        let types: Vec<FixedPoint> = lattice_point_types(n, k, multiplier, value)
            .into_iter()
            .flat_map(|(m, a)| {
                [Sign::Plus, Sign::Minus]
                    .map(|eps| FixedPoint::new(m.clone(), eps, a.clone(), false).expect("positive weights"))
            })
            .collect();

        // multisets of size χ′−1 as nondecreasing index sequences
        let mut stack: Vec<usize> = Vec::new();
        loop {
            if budget.tick().is_err() {
                return Err(BudgetExceeded { limit: budget.limit(), partial: finish(found) }.into());
            }
            let mut points = vec![origin.clone()];
            points.extend(stack.iter().map(|&i| types[i].clone()));
            let model = FixedPointModel::new(n, k, Some(multiplier), true, points)
                .expect("well-formed")
                .canonicalized();
            debug_assert!(model.validate().is_empty());
            found.entry((model.euler_characteristic(), model.canonical_key())).or_insert(model);

            // next nondecreasing sequence, growing while below the bound
            if stack.len() + 1 < c_max && !types.is_empty() {
                stack.push(stack.last().copied().unwrap_or(0));
                continue;
            }
            loop {
                match stack.last_mut() {
                    None => break,
                    Some(top) if *top + 1 < types.len() => {
                        *top += 1;
                        break;
                    }
                    Some(_) => {
                        stack.pop();
                    }
                }
            }
            if stack.is_empty() {
                break;
            }
        }
    }
    Ok(finish(found))
}

/// All top-degree characteristic numbers of a model, keyed in canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint(pub BTreeMap<CharMonomial, Rat>);

impl Fingerprint {
    pub fn get(&self, mono: &CharMonomial) -> Option<&Rat> {
        self.0.get(mono)
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(Rat::is_integer)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CharMonomial, &Rat)> {
        self.0.iter()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|(m, v)| (m.clone(), -v)).collect())
    }
}

/// `{p1: 3, x^2: 1}`.
impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (m, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}: {v}")?;
        }
        write!(f, "}}")
    }
}

pub fn bordism_fingerprint(model: &FixedPointModel) -> Fingerprint {
    Fingerprint(
        top_degree_monomials(model.n(), model.k())
            .into_iter()
            .map(|mono| {
                let v = char_number(model, &mono).expect("top-degree monomial");
                (mono, v)
            })
            .collect(),
    )
}

/// Necessary conditions for a genuine manifold: integral characteristic numbers and, in
/// real dimension 4, `p₁ ≡ 0 mod 3` (since `p₁ = 3σ`). Returns `(kept, rejected)`.
pub fn integrality_filter(models: &[FixedPointModel]) -> (Vec<FixedPointModel>, Vec<FixedPointModel>) {
    models.iter().cloned().partition(|model| {
        let fp = bordism_fingerprint(model);
        if !fp.is_integral() {
            return false;
        }
        if model.n() == 2 {
            let p1 = CharMonomial::pontryagin_only(model.k(), Partition::single(1));
            let v = fp.get(&p1).and_then(Rat::to_integer).expect("integral p1");
            return &v % 3 == 0.into();
        }
        true
    })
}

/// Groups model indices by equal fingerprint. Groups are ordered by their smallest index.
pub fn fingerprint_partition(models: &[FixedPointModel]) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<(u32, Fingerprint), Vec<usize>> = BTreeMap::new();
    for (i, model) in models.iter().enumerate() {
        groups.entry((model.n(), bordism_fingerprint(model))).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Distinct `(m, eps, a)` point types appearing across `models`.
pub fn distinct_point_types(models: &[FixedPointModel]) -> BTreeSet<PointKey> {
    models.iter().flat_map(|m| m.points().iter().map(FixedPoint::key)).collect()
}
