//! Fixed point localization at isolated fixed points.
//!
//! Two independent routes to the same twisted signatures:
//!
//! * K-theory: the Lefschetz formula gives the equivariant index as a rational function of
//!   λ, a sum of `eps·∏(λ^m+1)/(λ^m−1)·χ_E(λ)` over the fixed points. Its value at λ = 1 is
//!   the ordinary index.
//! * Cohomology: the signature integrand `∏ u·(1+e^{−u})/(1−e^{−u})·ch(E)` localized with
//!   equivariant parameter `h`, i.e. the `h⁰` coefficient of a Laurent series per point.
//!
//! Characteristic numbers `⟨∏ c₁(L_j)^{q_j} · p_I, μ⟩` localize to
//! `Σ eps·∏ a_j^{q_j}·∏ e_i(m²) / ∏ m`.

mod bundle;

use std::collections::BTreeMap;
use std::fmt;

pub use bundle::{BundleExpr, BundleMonomial, BundleParseError};

use crate::algebra::{partitions, AlgebraError, LaurentPoly, Partition, Rat, RatFn, TruncSeries};
use crate::model::{FixedPoint, FixedPointModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizationError {
    #[error("twist ranges over {found} line bundles but the model has {expected}")]
    LineCountMismatch { expected: usize, found: usize },
    #[error("monomial {monomial} has degree {found}, expected complex dimension {expected}")]
    DegreeMismatch { monomial: String, expected: u32, found: u32 },
    #[error("complex dimension {0} is odd; no top-degree Pontrjagin monomials")]
    OddDimension(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `eps · ∏ (λ^{m_i} + 1)/(λ^{m_i} − 1)`.
pub fn local_signature_term(p: &FixedPoint) -> RatFn {
    let mut num = LaurentPoly::constant(p.eps().to_rat());
    let mut den = LaurentPoly::one();
    for &m in p.m() {
        let lm = LaurentPoly::power(i64::from(m));
        num = &num * &(&lm + &LaurentPoly::one());
        den = &den * &(&lm - &LaurentPoly::one());
    }
    RatFn::new(num, den).expect("λ^m − 1 is nonzero")
}

/// Character of the twist at a fixed point: `L_j ↦ λ^{a_j}`, `T ↦ Σ (λ^{m_i} + λ^{−m_i})`.
pub fn char_at(e: &BundleExpr, p: &FixedPoint) -> Result<LaurentPoly, LocalizationError> {
    if e.k() != p.a().len() {
        return Err(LocalizationError::LineCountMismatch { expected: p.a().len(), found: e.k() });
    }
    let tangent: LaurentPoly = p
        .m()
        .iter()
        .map(|&m| &LaurentPoly::power(i64::from(m)) + &LaurentPoly::power(-i64::from(m)))
        .sum();
    let mut out = LaurentPoly::zero();
    for (mono, c) in e.terms() {
        let exp: i64 = mono.line.iter().zip(p.a()).map(|(&e, &a)| i64::from(e) * a).sum();
        let term = &LaurentPoly::monomial(Rat::from(c), exp) * &tangent.pow(mono.tangent);
        out = &out + &term;
    }
    Ok(out)
}

fn check_k(model: &FixedPointModel, e: &BundleExpr) -> Result<(), LocalizationError> {
    if e.k() != model.k() {
        return Err(LocalizationError::LineCountMismatch { expected: model.k(), found: e.k() });
    }
    Ok(())
}

/// The equivariant signature of `model` twisted by `e`, as a normalized function of λ.
pub fn equivariant_twisted_signature(model: &FixedPointModel, e: &BundleExpr) -> Result<RatFn, LocalizationError> {
    check_k(model, e)?;
    let terms = model
        .points()
        .iter()
        .map(|p| {
            let mut num = &LaurentPoly::constant(p.eps().to_rat()) * &char_at(e, p)?;
            for &m in p.m() {
                num = &num * &(&LaurentPoly::power(i64::from(m)) + &LaurentPoly::one());
            }
            Ok((num, p.m().to_vec()))
        })
        .collect::<Result<Vec<_>, LocalizationError>>()?;
    Ok(RatFn::sum_over_cyclotomic(&terms))
}

/// Ordinary twisted signature: the equivariant index at λ = 1.
pub fn nonequivariant_index(model: &FixedPointModel, e: &BundleExpr) -> Result<Rat, LocalizationError> {
    Ok(equivariant_twisted_signature(model, e)?.limit_at_one()?)
}

/// Power series of `u·(1+e^{−u})/(1−e^{−u})` up to `u^order`.
fn signature_factor_series(order: usize) -> TruncSeries {
    let mut numer = TruncSeries::exp_linear(&Rat::from(-1), order);
    numer = &numer + &TruncSeries::one(order);
    // (1 − e^{−u})/u = Σ (−1)^i u^i / (i+1)!
    let denom = TruncSeries::new(
        (0..=order)
            .map(|i| {
                let s = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                s / Rat::factorial(i as u64 + 1)
            })
            .collect(),
        order,
    );
    &numer * &denom.inverse().expect("constant term 1")
}

/// Ordinary twisted signature by localizing the cohomological index formula.
pub fn cohom_twisted_signature(model: &FixedPointModel, e: &BundleExpr) -> Result<Rat, LocalizationError> {
    check_k(model, e)?;
    let n = model.n() as usize;
    // 2n+2 coefficients per factor; the h⁰ term needs the first n+1.
    let order = 2 * n + 1;
    let factor = signature_factor_series(order);
    let mut total = Rat::zero();
    for p in model.points() {
        let mut prod = TruncSeries::one(order);
        let mut weight_product = Rat::one();
        let mut tangent_ch = TruncSeries::zero(order);
        for &m in p.m() {
            let m = Rat::from(m);
            prod = &prod * &factor.dilate(&m);
            tangent_ch = &tangent_ch + &(&TruncSeries::exp_linear(&m, order) + &TruncSeries::exp_linear(&-&m, order));
            weight_product *= m;
        }
        let mut ch = TruncSeries::zero(order);
        for (mono, c) in e.terms() {
            let exp: i64 = mono.line.iter().zip(p.a()).map(|(&e, &a)| i64::from(e) * a).sum();
            let term = &TruncSeries::exp_linear(&Rat::from(exp), order) * &tangent_ch.pow(mono.tangent);
            ch = &ch + &term.scale(&Rat::from(c));
        }
        let integrand = &prod * &ch;
        total += p.eps().to_rat() * integrand.coeff(n) / weight_product;
    }
    Ok(total)
}

/// `∏_j c₁(L_j)^{q_j} · p_I` of total degree `2·(Σq + 2·|I|)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharMonomial {
    pub q: Vec<u32>,
    pub pontryagin: Partition,
}

impl CharMonomial {
    pub fn new(q: Vec<u32>, pontryagin: Partition) -> Self {
        Self { q, pontryagin }
    }

    pub fn pontryagin_only(k: usize, pontryagin: Partition) -> Self {
        Self { q: vec![0; k], pontryagin }
    }

    /// Complex degree `Σ q_j + 2·|I|`.
    pub fn degree(&self) -> u32 {
        self.q.iter().sum::<u32>() + 2 * self.pontryagin.weight()
    }
}

impl fmt::Display for CharMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (j, &e) in self.q.iter().enumerate() {
            let sym = if self.q.len() == 1 { "x".to_string() } else { format!("x{}", j + 1) };
            match e {
                0 => {}
                1 => factors.push(sym),
                e => factors.push(format!("{sym}^{e}")),
            }
        }
        if !self.pontryagin.is_empty() {
            factors.push(self.pontryagin.to_string());
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

impl fmt::Debug for CharMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of complex degree `n` over `k` line classes, in canonical order.
pub fn top_degree_monomials(n: u32, k: usize) -> Vec<CharMonomial> {
    fn compositions(total: u32, parts: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(current.clone());
            }
            return;
        }
        if parts == 1 {
            current.push(total);
            out.push(current.clone());
            current.pop();
            return;
        }
        for first in 0..=total {
            current.push(first);
            compositions(total - first, parts - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for w in 0..=n / 2 {
        for part in partitions(w) {
            let mut qs = Vec::new();
            compositions(n - 2 * w, k, &mut Vec::new(), &mut qs);
            out.extend(qs.into_iter().map(|q| CharMonomial::new(q, part.clone())));
        }
    }
    out.sort();
    out
}

/// `e_0, …, e_n` of the squared weights.
fn elementary_of_squares(m: &[u32]) -> Vec<Rat> {
    let mut e = vec![Rat::one()];
    for &x in m {
        let sq = Rat::from(u64::from(x) * u64::from(x));
        e.push(Rat::zero());
        for i in (1..e.len()).rev() {
            let prev = e[i - 1].clone();
            e[i] += prev * &sq;
        }
    }
    e
}

pub(crate) fn local_char_value(p: &FixedPoint, mono: &CharMonomial) -> Rat {
    let e = elementary_of_squares(p.m());
    let line: Rat = mono.q.iter().zip(p.a()).map(|(&q, &a)| Rat::from(a).pow(i64::from(q))).product();
    let pont: Rat = mono
        .pontryagin
        .parts()
        .iter()
        .map(|&i| e.get(i as usize).cloned().unwrap_or_else(Rat::zero))
        .product();
    let euler: Rat = p.m().iter().map(|&x| Rat::from(x)).product();
    p.eps().to_rat() * line * pont / euler
}

/// `⟨∏ c₁(L_j)^{q_j} · p_I, μ⟩` by localization.
pub fn char_number(model: &FixedPointModel, mono: &CharMonomial) -> Result<Rat, LocalizationError> {
    if mono.q.len() != model.k() {
        return Err(LocalizationError::LineCountMismatch { expected: model.k(), found: mono.q.len() });
    }
    if mono.degree() != model.n() {
        return Err(LocalizationError::DegreeMismatch {
            monomial: mono.to_string(),
            expected: model.n(),
            found: mono.degree(),
        });
    }
    Ok(model.points().iter().map(|p| local_char_value(p, mono)).sum())
}

/// Every Pontrjagin number `⟨p_I, μ⟩`, `|I| = n/2`; empty for odd `n`.
pub fn pontryagin_numbers(model: &FixedPointModel) -> BTreeMap<Partition, Rat> {
    if model.n() % 2 == 1 {
        return BTreeMap::new();
    }
    partitions(model.n() / 2)
        .into_iter()
        .map(|part| {
            let mono = CharMonomial::pontryagin_only(model.k(), part.clone());
            let value = char_number(model, &mono).expect("degree matches by construction");
            (part, value)
        })
        .collect()
}

/// `⟨s_n(TM), μ⟩ = Σ eps·(Σ m_i^n)/∏ m_i`.
pub fn milnor_number(model: &FixedPointModel) -> Result<Rat, LocalizationError> {
    let n = model.n();
    if n % 2 == 1 {
        return Err(LocalizationError::OddDimension(n));
    }
    Ok(model
        .points()
        .iter()
        .map(|p| {
            let s: Rat = p.m().iter().map(|&x| Rat::from(x).pow(i64::from(n))).sum();
            let euler: Rat = p.m().iter().map(|&x| Rat::from(x)).product();
            p.eps().to_rat() * s / euler
        })
        .sum())
}
