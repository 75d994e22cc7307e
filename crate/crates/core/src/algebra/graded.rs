//! Polynomials in the Pontrjagin symbols `p_1, p_2, …`, graded by `deg p_j = j`.
//!
//! Home of the multiplicative sequence of `u/tanh u` (the L-genus) and of the Newton
//! power-sum polynomials `s_{2t}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::partition::render_monomial;
use super::{Partition, Rat, TruncSeries};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Partition, Rat>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Partition::empty())
    }

    pub fn term(c: Rat, monomial: Partition) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Self { terms }
    }

    /// The generator `p_j`.
    pub fn var(j: u32) -> Self {
        Self::term(Rat::one(), Partition::single(j))
    }

    fn add_term(&mut self, monomial: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(monomial.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, monomial: &Partition) -> Rat {
        self.terms.get(monomial).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    /// Sorted distinct grades of the nonzero terms.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.keys().map(Partition::weight).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_homogeneous(&self) -> bool {
        self.grades().len() <= 1
    }

    pub fn homogeneous_part(&self, grade: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == grade)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop every term above `max_grade`.
    pub fn truncate(&self, max_grade: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= max_grade)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Product with all terms above `max_grade` discarded.
    pub fn mul_truncated(&self, rhs: &Self, max_grade: u32) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if m1.weight() + m2.weight() <= max_grade {
                    out.add_term(m1.merge(m2), c1 * c2);
                }
            }
        }
        out
    }

    /// Substitutes scalar values for the generators: `value(j)` stands for `p_j`.
    pub fn eval<F: Fn(u32) -> Rat>(&self, value: F) -> Rat {
        self.terms
            .iter()
            .map(|(m, c)| c * m.parts().iter().map(|&j| value(j)).product::<Rat>())
            .sum()
    }

    /// Linear evaluation on monomials, e.g. pairing each `p_I` with its characteristic number.
    pub fn eval_monomials<F: FnMut(&Partition) -> Rat>(&self, mut value: F) -> Rat {
        self.terms.iter().map(|(m, c)| c * value(m)).sum()
    }

    /// Same as [`Self::eval_monomials`] for fallible pairings.
    pub fn try_eval_monomials<E, F: FnMut(&Partition) -> Result<Rat, E>>(&self, mut value: F) -> Result<Rat, E> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            acc += c * value(m)?;
        }
        Ok(acc)
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.mul_truncated(rhs, u32::MAX)
    }
}

/// Terms by ascending grade, e.g. `7/45*p2 - 1/45*p1^2`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Partition, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| a.0.weight().cmp(&b.0.weight()).then(b.0.cmp(a.0)));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                render_monomial(f, "p", m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bernoulli numbers `B_0 … B_k` with `B_1 = -1/2`, from `Σ_{j≤m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(k: usize) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for m in 1..=k {
        let s: Rat = (0..m)
            .map(|j| Rat::binomial(m as u64 + 1, j as u64) * &b[j])
            .sum();
        b.push(-s / Rat::from(m as u64 + 1));
    }
    b
}

pub fn bernoulli(k: usize) -> Rat {
    bernoulli_numbers(k).pop().expect("at least B_0")
}

/// Power sum `s_{2t} = Σ u_i^{2t}` expressed in `p_j = e_j(u_1², u_2², …)`.
pub fn newton_s_from_p(t: u32) -> GradedPoly {
    newton_power_sums(t).pop().expect("t ≥ 1")
}

/// `[s_2, s_4, …, s_{2t}]` via `s_k = Σ_{j<k} (-1)^{j-1} e_j s_{k-j} + (-1)^{k-1} k e_k`.
fn newton_power_sums(t: u32) -> Vec<GradedPoly> {
    let mut s: Vec<GradedPoly> = Vec::with_capacity(t as usize);
    for k in 1..=t {
        let sign = |j: u32| if j % 2 == 1 { Rat::one() } else { -Rat::one() };
        let mut acc = GradedPoly::var(k).scale(&(sign(k) * Rat::from(k)));
        for j in 1..k {
            let term = &GradedPoly::var(j) * &s[(k - j - 1) as usize];
            acc = &acc + &term.scale(&sign(j));
        }
        s.push(acc);
    }
    s
}

/// `L_1, …, L_t`: the multiplicative sequence of `Q(z) = √z / tanh √z`.
///
/// With `log Q(z) = Σ c_k z^k`, the total class is `∏ Q(z_i) = exp(Σ_k c_k s_{2k})` where
/// `s_{2k}` is the power sum in the `z_i = u_i²`; `L_j` is the grade-`j` part.
pub fn l_polynomials(t: u32) -> Vec<GradedPoly> {
    if t == 0 {
        return Vec::new();
    }
    let order = t as usize;
    // Q(z) = Σ 2^{2k} B_{2k} / (2k)! z^k
    let b = bernoulli_numbers(2 * order);
    let q_coeffs: Vec<Rat> = (0..=order)
        .map(|k| Rat::from(2).pow(2 * k as i64) * &b[2 * k] / Rat::factorial(2 * k as u64))
        .collect();
    let log_q = TruncSeries::new(q_coeffs, order).log().expect("Q(0) = 1");

    let power_sums = newton_power_sums(t);
    let mut exponent = GradedPoly::zero();
    for k in 1..=order {
        exponent = &exponent + &power_sums[k - 1].scale(&log_q.coeff(k));
    }

    // exp of a series without constant term; grade ≥ j in the j-th power.
    let mut total = GradedPoly::one();
    let mut power = GradedPoly::one();
    for j in 1..=t {
        power = power.mul_truncated(&exponent, t).scale(&Rat::new(1, j as i64));
        total = &total + &power;
    }
    (1..=t).map(|g| total.homogeneous_part(g)).collect()
}
