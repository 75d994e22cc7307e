//! Complete intersections `V_n^{(d₁,…,d_r)} ⊂ CP^{n+r}`.
//!
//! With `x` the hyperplane class, `p(V) = (1+x²)^{n+r+1} ∏(1+dᵢ²x²)^{−1}`,
//! `c(V) = (1+x)^{n+r+1} ∏(1+dᵢx)^{−1}` and `⟨xⁿ, μ⟩ = ∏dᵢ`.
//!
//! Semi-negativity is decided exactly: for `n ≥ 3` the Lefschetz hyperplane theorem gives
//! `H² = ℤx` with `x²` of infinite order, so `N·p₁ + Σyⱼ² = 0` forces
//! `p₁ = (n+r+1−Σdᵢ²)x² ≤ 0`. Conversely, when that coefficient is `≤ 0`, take `N = 1` and
//! `yⱼ = kⱼx` with `Σkⱼ² = Σdᵢ² − (n+r+1)` by Lagrange's four-square theorem. For `n = 2`
//! the coefficient is always `≤ 0` since `Σdᵢ² ≥ 4r ≥ r+3`.

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{l_polynomials, newton_s_from_p, Partition, Rat, TruncSeries};
use crate::su2::enumerate_isolated_tangent_sets;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CiError {
    #[error("complex dimension must be at least 1")]
    ZeroDimension,
    #[error("a complete intersection needs at least one degree")]
    NoDegrees,
    #[error("degree {0} is below 2")]
    DegreeTooSmall(u32),
    #[error("monomial has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("complex dimension {0} is odd")]
    OddDimension(u32),
}

/// Multidegree data. Degrees are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompleteIntersection {
    n: u32,
    degrees: Vec<u32>,
}

impl CompleteIntersection {
    pub fn new(n: u32, mut degrees: Vec<u32>) -> Result<Self, CiError> {
        if n == 0 {
            return Err(CiError::ZeroDimension);
        }
        if degrees.is_empty() {
            return Err(CiError::NoDegrees);
        }
        if let Some(&d) = degrees.iter().find(|&&d| d < 2) {
            return Err(CiError::DegreeTooSmall(d));
        }
        degrees.sort_unstable();
        Ok(Self { n, degrees })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn codimension(&self) -> usize {
        self.degrees.len()
    }

    /// `n + r + 1`.
    fn ambient_weight(&self) -> i64 {
        i64::from(self.n) + self.degrees.len() as i64 + 1
    }

    fn degree_square_sum(&self) -> i64 {
        self.degrees.iter().map(|&d| i64::from(d) * i64::from(d)).sum()
    }

    /// The integer `c` with `p₁ = c·x²`.
    pub fn first_pontryagin_coefficient(&self) -> i64 {
        self.ambient_weight() - self.degree_square_sum()
    }

    /// `(1+t)^{n+r+1} ∏(1 + dᵢᵉt)^{−1}` up to `t^order`.
    fn class_series(&self, power: u32, order: usize) -> TruncSeries {
        let mut s = TruncSeries::linear(Rat::one(), order).pow(self.ambient_weight() as u32);
        for &d in &self.degrees {
            let factor = TruncSeries::linear(Rat::from(d).pow(i64::from(power)), order);
            s = &s * &factor.inverse().expect("constant term 1");
        }
        s
    }

    /// `p(V)` as a series in `y = x²`, truncated at `y^{⌊n/2⌋}`.
    pub fn total_pontryagin_series(&self) -> TruncSeries {
        self.class_series(2, (self.n / 2) as usize)
    }

    /// Coefficient `cⱼ` with `pⱼ = cⱼ·x^{2j}`.
    pub fn pontryagin_coefficients(&self) -> Vec<Rat> {
        self.total_pontryagin_series().coeffs()[1..].to_vec()
    }

    /// `⟨xⁿ, μ⟩ = ∏dᵢ`.
    pub fn degree(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `⟨x^q p_I, μ⟩`, requiring `q + 2|I| = n`.
    pub fn char_number(&self, q: u32, pontryagin: &Partition) -> Result<BigInt, CiError> {
        let found = q + 2 * pontryagin.weight();
        if found != self.n {
            return Err(CiError::DegreeMismatch { expected: self.n, found });
        }
        let series = self.total_pontryagin_series();
        let coeff: Rat = pontryagin.parts().iter().map(|&j| series.coeff(j as usize)).product();
        let value = coeff * Rat::from(self.degree());
        Ok(value.to_integer().expect("integral series coefficients"))
    }

    /// `⟨L_{n/2}(p), μ⟩`.
    pub fn signature(&self) -> Result<Rat, CiError> {
        let half = self.even_half()?;
        if half == 0 {
            return Ok(Rat::one());
        }
        let l = l_polynomials(half).pop().expect("half ≥ 1");
        Ok(l.eval_monomials(|part| Rat::from(self.char_number(0, part).expect("grade n/2"))))
    }

    /// `⟨s_n(TV), μ⟩`.
    pub fn milnor_number(&self) -> Result<BigInt, CiError> {
        let half = self.even_half()?;
        let s = newton_s_from_p(half);
        let value = s.eval_monomials(|part| Rat::from(self.char_number(0, part).expect("grade n/2")));
        Ok(value.to_integer().expect("integer polynomial in integers"))
    }

    /// `⟨c_n, μ⟩`.
    pub fn euler_characteristic(&self) -> BigInt {
        let c = self.class_series(1, self.n as usize).coeff(self.n as usize);
        (c * Rat::from(self.degree())).to_integer().expect("integral series coefficients")
    }

    fn even_half(&self) -> Result<u32, CiError> {
        if self.n % 2 == 1 {
            Err(CiError::OddDimension(self.n))
        } else {
            Ok(self.n / 2)
        }
    }

    pub fn is_semi_negative(&self) -> SemiNegativity {
        let excess = -self.first_pontryagin_coefficient();
        if excess < 0 {
            return SemiNegativity::NotSemiNegative;
        }
        let ks = four_squares(excess as u64).into_iter().map(|k| k as i64).collect();
        SemiNegativity::SemiNegative(SemiNegWitness { multiplier: 1, ks })
    }
}

/// Displays the multidegree, e.g. `(2, 3)`.
impl fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// `N` and `kⱼ` with `N·p₁ + Σ(kⱼx)² = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiNegWitness {
    pub multiplier: u32,
    pub ks: Vec<i64>,
}

impl SemiNegWitness {
    /// Checks `N·(n+r+1−Σdᵢ²) + Σkⱼ² = 0`.
    pub fn verify(&self, ci: &CompleteIntersection) -> bool {
        let lhs = i128::from(self.multiplier) * i128::from(ci.first_pontryagin_coefficient())
            + self.ks.iter().map(|&k| i128::from(k) * i128::from(k)).sum::<i128>();
        self.multiplier > 0 && lhs == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiNegativity {
    SemiNegative(SemiNegWitness),
    NotSemiNegative,
}

impl SemiNegativity {
    pub fn holds(&self) -> bool {
        matches!(self, SemiNegativity::SemiNegative(_))
    }

    pub fn witness(&self) -> Option<&SemiNegWitness> {
        match self {
            SemiNegativity::SemiNegative(w) => Some(w),
            SemiNegativity::NotSemiNegative => None,
        }
    }
}

/// Fewest positive integers whose squares sum to `v`, nonincreasing, lexicographically
/// smallest among such. `four_squares(0)` is empty.
pub fn four_squares(v: u64) -> Vec<u64> {
    // Returns the lexicographically smallest nonincreasing `len`-tuple with parts ≤ cap.
    fn search(rest: u64, len: usize, cap: u64, out: &mut Vec<u64>) -> bool {
        if len == 0 {
            return rest == 0;
        }
        // smallest first part: k² · len ≥ rest
        let mut k = 1u64;
        while k * k * (len as u64) < rest {
            k += 1;
        }
        while k <= cap && k * k <= rest {
            out.push(k);
            if search(rest - k * k, len - 1, k, out) {
                return true;
            }
            out.pop();
            k += 1;
        }
        false
    }
    for len in 0..=4 {
        let mut out = Vec::new();
        if search(v, len, u64::MAX, &mut out) {
            return out;
        }
    }
    unreachable!("every natural number is a sum of four squares")
}

/// Nondecreasing degree lists of length `r`, entries ≥ 2, with `Σd² < bound`.
fn degree_lists(r: usize, bound: i64) -> Vec<Vec<u32>> {
    fn rec(r: usize, min: u32, rest: i64, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 0 {
            out.push(current.clone());
            return;
        }
        let mut d = min;
        // the remaining r entries are all ≥ d
        while (r as i64) * i64::from(d) * i64::from(d) < rest {
            current.push(d);
            rec(r - 1, d, rest - i64::from(d) * i64::from(d), current, out);
            current.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    rec(r, 2, bound, &mut Vec::new(), &mut out);
    out
}

/// Every multidegree `V_n^{(d)}` that is not semi-negative, i.e. `Σdᵢ² < n+r+1`.
///
/// Since `dᵢ ≥ 2` forces `4r ≤ Σdᵢ² < n+r+1`, only `r ≤ n/3` can occur. Sorted by
/// codimension, then lexicographically.
pub fn scan_non_semi_negative(n: u32) -> Vec<CompleteIntersection> {
    (1..=(n / 3) as usize)
        .flat_map(|r| degree_lists(r, i64::from(n) + r as i64 + 1))
        .map(|degrees| CompleteIntersection::new(n, degrees).expect("degrees ≥ 2"))
        .collect()
}

/// Multidegrees left open by the semi-negativity argument that can carry an S³-action with
/// an S³-fixed point and isolated circle-fixed points. Odd `n` admits no such action.
pub fn star_admissible_non_semi_negative(n: u32) -> Vec<CompleteIntersection> {
    if enumerate_isolated_tangent_sets(n).is_empty() {
        return Vec::new();
    }
    scan_non_semi_negative(n)
}
