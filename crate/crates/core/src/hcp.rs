//! Homotopy complex projective spaces with an S³-action satisfying (∗).
//!
//! With `γ` the line bundle generating `H²` and `a_s` its weight at the fixed point `Y_s`,
//! isolated fixed points satisfy `|∏_{t≠s}(a_t − a_s)| = ∏_i m_{s,i}`. At the S³-fixed point
//! `a_0 = 0` and the tangent data comes from a finite list, which bounds every `|a_t|` by
//! `∏ m_{0,i}`; applying the identity again at each other point bounds the remaining weights.
//! The enumerator walks that finite search space.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::algebra::{partitions, Partition, Rat};
use crate::localization::{char_number, CharMonomial, LocalizationError};
use crate::model::{FixedPoint, FixedPointModel, PointKey};
use crate::search::{Budget, BudgetExceeded};
use crate::sign::Sign;
use crate::su2::enumerate_isolated_tangent_sets;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HcpError {
    #[error("weight identity needs exactly one line bundle, model has {0}")]
    NotOneLineBundle(usize),
    #[error("characteristic number {monomial} = {value} is not integral")]
    NonIntegral { monomial: String, value: Rat },
    #[error(transparent)]
    Localization(#[from] LocalizationError),
}

/// An admissible weight system for a homotopy `CPⁿ`, with `p_j = c_j·x^{2j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcpCandidate {
    pub model: FixedPointModel,
    pub pontryagin: Vec<Rat>,
}

/// Checks `|∏_{t≠s}(a_t − a_s)| = ∏ m_{s,i}` at every point of a `k = 1` model.
pub fn check_weight_identity(model: &FixedPointModel) -> Result<bool, HcpError> {
    if model.k() != 1 {
        return Err(HcpError::NotOneLineBundle(model.k()));
    }
    let a: Vec<i64> = model.points().iter().map(|p| p.a()[0]).collect();
    Ok(model.points().iter().enumerate().all(|(s, p)| {
        let lhs: BigInt = a
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != s)
            .map(|(_, &at)| BigInt::from(at - a[s]))
            .product();
        let rhs: BigInt = p.m().iter().map(|&m| BigInt::from(m)).product();
        lhs.abs() == rhs
    }))
}

/// `c_j = ⟨x^{n−2j} p_j, μ⟩` for `1 ≤ j ≤ ⌊n/2⌋`.
pub fn pontryagin_class_candidates(c: &HcpCandidate) -> Result<Vec<Rat>, HcpError> {
    pontryagin_coefficients(&c.model)
}

fn pontryagin_coefficients(model: &FixedPointModel) -> Result<Vec<Rat>, HcpError> {
    let n = model.n();
    (1..=n / 2)
        .map(|j| {
            let mono = CharMonomial::new(vec![n - 2 * j], Partition::single(j));
            let value = char_number(model, &mono)?;
            if value.is_integer() {
                Ok(value)
            } else {
                Err(HcpError::NonIntegral { monomial: mono.to_string(), value })
            }
        })
        .collect()
}

fn divisors(b: u128) -> Vec<u128> {
    (1..=b).filter(|d| b.is_multiple_of(*d)).collect()
}

/// Strictly increasing `n`-tuples of distinct nonzero integers with `|∏| = b`.
fn line_weight_sets(n: usize, b: u128) -> Vec<Vec<i64>> {
    let mut values: Vec<i64> = divisors(b)
        .into_iter()
        .flat_map(|d| [-(d as i64), d as i64])
        .collect();
    values.sort_unstable();
    fn rec(values: &[i64], start: usize, n: usize, rest: u128, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == n {
            if rest == 1 {
                out.push(current.clone());
            }
            return;
        }
        for i in start..values.len() {
            let v = values[i].unsigned_abs() as u128;
            if rest.is_multiple_of(v) {
                current.push(values[i]);
                rec(values, i + 1, n, rest / v, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&values, 0, n, b, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing `parts`-tuples of positive integers with product `p`.
fn factorizations(p: u128, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u128, parts: usize, min: u128, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            if rest >= min {
                current.push(u32::try_from(rest).expect("weight fits u32"));
                out.push(current.clone());
                current.pop();
            }
            return;
        }
        let mut d = min;
        // d^parts ≤ rest keeps the tuple nondecreasing.
        while d.checked_pow(parts as u32).is_some_and(|x| x <= rest) {
            if rest.is_multiple_of(d) {
                current.push(d as u32);
                rec(rest / d, parts - 1, d, current, out);
                current.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(p, parts, 1, &mut Vec::new(), &mut out);
    }
    out
}

fn elementary_of_squares(m: &[u32]) -> Vec<i128> {
    let mut e = vec![1i128];
    for &x in m {
        let sq = i128::from(x) * i128::from(x);
        e.push(0);
        for i in (1..e.len()).rev() {
            e[i] += e[i - 1] * sq;
        }
    }
    e
}

/// Top-degree monomials `x^{n−2|I|} p_I` for the single line class.
fn hcp_monomials(n: u32) -> Vec<CharMonomial> {
    (0..=n / 2)
        .flat_map(|w| partitions(w).into_iter().map(move |part| CharMonomial::new(vec![n - 2 * w], part)))
        .collect()
}

/// Local numerators `eps·a^q·e_I(m²)·(L/P)` over a common denominator `L`.
fn scaled_locals(
    eps: Sign,
    a: i64,
    m: &[u32],
    scale: i128,
    monos: &[CharMonomial],
) -> Option<Vec<i128>> {
    let e = elementary_of_squares(m);
    monos
        .iter()
        .map(|mono| {
            let mut v = eps.to_i64() as i128;
            v = v.checked_mul(i128::from(a).checked_pow(mono.q[0])?)?;
            for &j in mono.pontryagin.parts() {
                v = v.checked_mul(*e.get(j as usize)?)?;
            }
            v.checked_mul(scale)
        })
        .collect()
}

/// Search state for one choice of S³ tangent set and line-weight vector.
struct Branch<'a> {
    n: u32,
    origin: FixedPoint,
    a: &'a [i64],
    monos: &'a [CharMonomial],
}

impl Branch<'_> {
    fn model(&self, eps: &[Sign], m: &[&Vec<u32>]) -> FixedPointModel {
        let mut points = vec![self.origin.clone()];
        for (s, (&e, ms)) in eps.iter().zip(m).enumerate() {
            points.push(FixedPoint::new((*ms).clone(), e, vec![self.a[s]], false).expect("positive factors"));
        }
        FixedPointModel::new(self.n, 1, None, true, points)
            .expect("well-formed")
            .canonicalized()
    }

    /// `true` iff every top-degree characteristic number is integral.
    fn integral(&self, eps: &[Sign], m: &[&Vec<u32>]) -> bool {
        let model = self.model(eps, m);
        self.monos.iter().all(|mono| {
            char_number(&model, mono).map(|v| v.is_integer()).unwrap_or(false)
        })
    }
}

/// Every admissible weight system of a homotopy `CPⁿ` with S³-action satisfying (∗),
/// normalized to `⟨xⁿ, μ⟩ = 1`, deduplicated and sorted by canonical point multiset.
pub fn enumerate_hcp_models(n: u32, max_branches: u64) -> Result<Vec<HcpCandidate>, BudgetExceeded<HcpCandidate>> {
    let mut budget = Budget::new(max_branches);
    let mut found: BTreeSet<Vec<PointKey>> = BTreeSet::new();
    let mut out: Vec<(Vec<PointKey>, HcpCandidate)> = Vec::new();
    let finish = |mut out: Vec<(Vec<PointKey>, HcpCandidate)>| {
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out.into_iter().map(|(_, c)| c).collect::<Vec<_>>()
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let result = search(n, &mut budget, &mut found, &mut out);
    match result {
        Ok(()) => Ok(finish(out)),
        Err(()) => Err(BudgetExceeded { limit: budget.limit(), partial: finish(out) }),
    }
}

fn search(
    n: u32,
    budget: &mut Budget,
    found: &mut BTreeSet<Vec<PointKey>>,
    out: &mut Vec<(Vec<PointKey>, HcpCandidate)>,
) -> Result<(), ()> {
    let monos = hcp_monomials(n);
    let nu = n as usize;
    for ws in enumerate_isolated_tangent_sets(n) {
        let bound: u128 = ws.m.iter().map(|&x| u128::from(x)).product();
        let origin = FixedPoint::new(ws.m.clone(), ws.eps, vec![0], true).expect("positive weights");
        for a in line_weight_sets(nu, bound) {
            budget.tick().map_err(|_| ())?;
            let full: Vec<i64> = std::iter::once(0).chain(a.iter().copied()).collect();
            let products: Vec<u128> = (1..=nu)
                .map(|s| {
                    full.iter()
                        .enumerate()
                        .filter(|&(t, _)| t != s)
                        .map(|(_, &at)| (at - full[s]).unsigned_abs() as u128)
                        .product()
                })
                .collect();

            // ⟨xⁿ⟩ only sees the products, so eps is filtered before the tangent weights.
            let good_eps: Vec<Vec<Sign>> = (0..1u32 << nu)
                .map(|mask| {
                    (0..nu)
                        .map(|s| if mask >> s & 1 == 1 { Sign::Minus } else { Sign::Plus })
                        .collect::<Vec<_>>()
                })
                .filter(|eps| {
                    let top: Rat = eps
                        .iter()
                        .zip(&a)
                        .zip(&products)
                        .map(|((e, &as_), &p)| e.to_rat() * Rat::from(as_).pow(i64::from(n)) / Rat::from(p))
                        .sum();
                    top.is_one()
                })
                .collect();
            if good_eps.is_empty() {
                continue;
            }

            let choices: Vec<Vec<Vec<u32>>> = products.iter().map(|&p| factorizations(p, nu)).collect();
            let common: i128 = products
                .iter()
                .chain(std::iter::once(&bound))
                .fold(1i128, |l, &p| l.lcm(&(p as i128)));
            let origin_locals = scaled_locals(ws.eps, 0, &ws.m, common / bound as i128, &monos);
            let branch = Branch { n, origin: origin.clone(), a: &a, monos: &monos };

            for eps in &good_eps {
                // Per point and per factorization: scaled local values, or None on overflow.
                let locals: Vec<Vec<Option<Vec<i128>>>> = (0..nu)
                    .map(|s| {
                        choices[s]
                            .iter()
                            .map(|m| scaled_locals(eps[s], a[s], m, common / products[s] as i128, &monos))
                            .collect()
                    })
                    .collect();
                let mut idx = vec![0usize; nu];
                loop {
                    budget.tick().map_err(|_| ())?;
                    let picked: Vec<&Vec<u32>> = (0..nu).map(|s| &choices[s][idx[s]]).collect();
                    let fast = origin_locals.as_ref().and_then(|o| {
                        let mut sums = o.clone();
                        for s in 0..nu {
                            let l = locals[s][idx[s]].as_ref()?;
                            for (acc, v) in sums.iter_mut().zip(l) {
                                *acc = acc.checked_add(*v)?;
                            }
                        }
                        Some(sums.iter().all(|v| v % common == 0))
                    });
                    let integral = match fast {
                        Some(ok) => ok,
                        None => branch.integral(eps, &picked),
                    };
                    if integral {
                        let model = branch.model(eps, &picked);
                        let key = model.canonical_key();
                        if found.insert(key.clone()) {
                            let pontryagin = pontryagin_coefficients(&model).expect("filtered for integrality");
                            out.push((key, HcpCandidate { model, pontryagin }));
                        }
                    }
                    // odometer over factorization choices
                    let mut s = 0;
                    while s < nu {
                        idx[s] += 1;
                        if idx[s] < choices[s].len() {
                            break;
                        }
                        idx[s] = 0;
                        s += 1;
                    }
                    if s == nu {
                        break;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `⟨xⁿ, μ⟩` of a `k = 1` model.
pub fn top_power(model: &FixedPointModel) -> Result<Rat, LocalizationError> {
    char_number(model, &CharMonomial::new(vec![model.n()], Partition::empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn weight_identity_on_linear_models() {
        assert_eq!(check_weight_identity(&catalog::linear_cpn(2)), Ok(true));
        assert_eq!(check_weight_identity(&catalog::linear_cpn(3)), Ok(true));
        let dup = catalog::linear_cpn(2)
            .with_line_weights(1, vec![vec![0], vec![1], vec![1]])
            .unwrap();
        assert_eq!(check_weight_identity(&dup), Ok(false));
        assert_eq!(
            check_weight_identity(&catalog::sphere(&[1])),
            Err(HcpError::NotOneLineBundle(0))
        );
    }

    #[test]
    fn factorization_lists() {
        assert_eq!(factorizations(2, 2), vec![vec![1, 2]]);
        assert_eq!(factorizations(16, 4).len(), 5);
        assert_eq!(factorizations(12, 2), vec![vec![1, 12], vec![2, 6], vec![3, 4]]);
        assert_eq!(factorizations(1, 3), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn line_weights_with_unit_bound() {
        assert_eq!(line_weight_sets(2, 1), vec![vec![-1, 1]]);
        assert!(line_weight_sets(4, 1).is_empty());
        assert_eq!(line_weight_sets(4, 9), vec![vec![-3, -1, 1, 3]]);
    }

    #[test]
    fn dimension_two_has_the_projective_plane() {
        let found = enumerate_hcp_models(2, 1_000).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].pontryagin, vec![Rat::from(3)]);
        let witness = catalog::linear_cpn_su2(2).unwrap();
        assert_eq!(found[0].model.canonical_key(), witness.canonical_key());
        assert_eq!(pontryagin_class_candidates(&found[0]), Ok(vec![Rat::from(3)]));
    }

    #[test]
    fn dimension_four_contains_linear_model() {
        let found = enumerate_hcp_models(4, crate::search::DEFAULT_MAX_BRANCHES).unwrap();
        let witness = catalog::linear_cpn_su2(4).unwrap().canonical_key();
        let c = found.iter().find(|c| c.model.canonical_key() == witness).expect("linear CP4");
        assert_eq!(c.pontryagin, vec![Rat::from(5), Rat::from(10)]);
        for c in &found {
            assert_eq!(check_weight_identity(&c.model), Ok(true));
            assert!(c.model.validate().is_empty());
        }
        eprintln!("n=4 candidates: {}", found.len());
    }

    #[test]
    fn odd_and_trivial_dimensions_are_empty() {
        assert!(enumerate_hcp_models(1, 1_000).unwrap().is_empty());
        assert!(enumerate_hcp_models(3, 1_000).unwrap().is_empty());
    }

    #[test]
    fn flipped_candidate_fails_normalization() {
        let c = &enumerate_hcp_models(2, 1_000).unwrap()[0];
        assert_eq!(top_power(&c.model.flip_orientation()), Ok(Rat::from(-1)));
    }

    #[test]
    fn budget_overflow_is_reported() {
        let err = enumerate_hcp_models(4, 3).unwrap_err();
        assert_eq!(err.limit, 3);
    }
}
