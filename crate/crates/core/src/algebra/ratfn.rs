use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::upoly;
use super::{AlgebraError, LaurentPoly, Rat};

/// Reduced quotient of two Laurent polynomials in λ.
///
/// Canonical form: `gcd(num, den) = 1`, and `den` is a monic ordinary polynomial with a
/// nonzero constant term. Two equal functions therefore have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    /// Normalizes `num/den` into canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (u, p) = num.split_dense();
        let (v, q) = den.split_dense();
        let g = upoly::gcd(&p, &q);
        let (mut p, _) = upoly::div_rem(&p, &g);
        let (mut q, _) = upoly::div_rem(&q, &g);
        let lead = q.last().cloned().expect("nonzero denominator");
        for c in p.iter_mut().chain(q.iter_mut()) {
            *c /= &lead;
        }
        Ok(Self {
            num: LaurentPoly::from_dense(u - v, &p),
            den: LaurentPoly::from_dense(0, &q),
        })
    }

    /// `Σ numᵢ / ∏_{m ∈ msᵢ} (λ^m − 1)` in canonical form.
    ///
    /// Sums over the lcm of the denominators, so only cyclotomic factors can cancel; they are
    /// removed by trial division instead of a general gcd.
    pub(crate) fn sum_over_cyclotomic(terms: &[(LaurentPoly, Vec<u32>)]) -> Self {
        let counts: Vec<BTreeMap<u32, u32>> = terms
            .iter()
            .map(|(_, ms)| {
                let mut c = BTreeMap::new();
                for &m in ms {
                    for d in (1..=m).filter(|d| m % d == 0) {
                        *c.entry(d).or_insert(0) += 1;
                    }
                }
                c
            })
            .collect();
        let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
        for c in &counts {
            for (&d, &e) in c {
                let slot = exps.entry(d).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let phi = upoly::cyclotomics(exps.keys().copied());
        let power = |d: u32, e: u32| {
            (0..e).fold(vec![Rat::one()], |acc, _| upoly::mul(&acc, &phi[&d]))
        };

        let mut num = LaurentPoly::zero();
        for ((p, _), c) in terms.iter().zip(&counts) {
            let mut cofactor = vec![Rat::one()];
            for (&d, &e) in &exps {
                cofactor = upoly::mul(&cofactor, &power(d, e - c.get(&d).copied().unwrap_or(0)));
            }
            num = &num + &(p * &LaurentPoly::from_dense(0, &cofactor));
        }
        if num.is_zero() {
            return Self::zero();
        }

        let (shift, mut p) = num.split_dense();
        for (&d, e) in exps.iter_mut() {
            while *e > 0 {
                let (q, r) = upoly::div_rem(&p, &phi[&d]);
                if !r.is_empty() {
                    break;
                }
                p = q;
                *e -= 1;
            }
        }
        let den = exps.iter().fold(vec![Rat::one()], |acc, (&d, &e)| upoly::mul(&acc, &power(d, e)));
        Self {
            num: LaurentPoly::from_dense(shift, &p),
            den: LaurentPoly::from_dense(0, &den),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    /// A Laurent polynomial is already reduced over the denominator 1.
    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the constant value iff the function does not depend on λ.
    pub fn is_constant(&self) -> Option<Rat> {
        if self.den != LaurentPoly::one() {
            return None;
        }
        self.num.as_constant()
    }

    /// `Some(p)` if the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        (self.den == LaurentPoly::one()).then_some(&self.num)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, AlgebraError> {
        if x.is_zero() {
            return Err(AlgebraError::EvalAtZero);
        }
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::Pole {
                at: x.clone(),
                factor: format!("(λ - {x})"),
            });
        }
        Ok(self.num.eval(x) / d)
    }

    /// Value at λ = 1 after cancelling common `(λ - 1)` factors by synthetic division.
    pub fn limit_at_one(&self) -> Result<Rat, AlgebraError> {
        let (_, mut p) = self.num.split_dense();
        let (_, mut q) = self.den.split_dense();
        loop {
            let dq = upoly::eval_at_one(&q);
            if !dq.is_zero() {
                return Ok(upoly::eval_at_one(&p) / dq);
            }
            if !upoly::eval_at_one(&p).is_zero() {
                return Err(AlgebraError::PoleAtOne);
            }
            p = upoly::deflate_at_one(&p);
            q = upoly::deflate_at_one(&q);
        }
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

/// Panics on division by the zero function; see [`RatFn::checked_div`].
impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl std::iter::Sum for RatFn {
    fn sum<I: Iterator<Item = RatFn>>(iter: I) -> Self {
        iter.fold(RatFn::zero(), |acc, f| &acc + &f)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rat::from(c))))
    }

    fn rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RatFn {
        RatFn::new(lp(num), lp(den)).unwrap()
    }

    #[test]
    fn cyclotomic_sum_matches_naive_sum() {
        let cases: Vec<(LaurentPoly, Vec<u32>)> = vec![
            (lp(&[(0, 1), (3, 2)]), vec![1, 2]),
            (lp(&[(-2, -1), (1, 1)]), vec![2, 3]),
            (lp(&[(0, 5)]), vec![6]),
            (lp(&[(4, 1), (0, -1)]), vec![4]),
        ];
        let naive = cases
            .iter()
            .map(|(p, ms)| {
                let den = ms.iter().fold(LaurentPoly::one(), |acc, &m| &acc * &lp(&[(i64::from(m), 1), (0, -1)]));
                RatFn::new(p.clone(), den).unwrap()
            })
            .fold(RatFn::zero(), |acc, f| &acc + &f);
        assert_eq!(RatFn::sum_over_cyclotomic(&cases), naive);
        // (λ+1)/(λ−1) − (λ+1)/(λ−1) = 0 and λ^2−1 over λ^2−1 cancels completely
        let p = lp(&[(1, 1), (0, 1)]);
        assert!(RatFn::sum_over_cyclotomic(&[(p.clone(), vec![1]), (-&p, vec![1])]).is_zero());
        assert_eq!(RatFn::sum_over_cyclotomic(&[(lp(&[(2, 1), (0, -1)]), vec![2])]), RatFn::one());
    }

    #[test]
    fn normalize_factorization() {
        let f = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, -1)]);
        assert_eq!(f, RatFn::from_laurent(lp(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn normalize_identity() {
        let num = &lp(&[(1, 1), (0, 1)]) * &lp(&[(1, 1), (0, -1)]);
        let f = RatFn::new(num, lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(f.is_constant(), Some(Rat::one()));
    }

    #[test]
    fn normalize_zero_numerator() {
        let f = rf(&[], &[(1, 1), (0, -3)]);
        assert_eq!(f, RatFn::zero());
        assert_eq!(f.is_constant(), Some(Rat::zero()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFn::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn canonical_denominator_shape() {
        // λ^-1 / (2λ^3 - 2λ^2) -> (1/2) λ^-3 / (λ - 1)
        let f = rf(&[(-1, 1)], &[(3, 2), (2, -2)]);
        assert_eq!(f.denominator(), &lp(&[(1, 1), (0, -1)]));
        assert_eq!(f.numerator(), &LaurentPoly::monomial(Rat::new(1, 2), -3));
    }

    #[test]
    fn evaluation() {
        let x = Rat::from(2);
        assert_eq!(rf(&[(1, 1), (0, 1)], &[(1, 1), (0, -1)]).eval(&x), Ok(Rat::from(3)));
        assert_eq!(RatFn::constant(Rat::from(5)).eval(&Rat::new(7, 3)), Ok(Rat::from(5)));
        assert_eq!(
            rf(&[(2, 1), (0, 1)], &[(2, 1), (0, -1)]).eval(&x),
            Ok(Rat::new(5, 3))
        );
    }

    #[test]
    fn evaluation_errors() {
        let f = rf(&[(1, 1), (0, 1)], &[(1, 1), (0, -1)]);
        assert_eq!(f.eval(&Rat::zero()), Err(AlgebraError::EvalAtZero));
        match f.eval(&Rat::one()) {
            Err(AlgebraError::Pole { at, factor }) => {
                assert_eq!(at, Rat::one());
                assert_eq!(factor, "(λ - 1)");
            }
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn constancy() {
        assert_eq!(rf(&[(2, 1), (0, -1)], &[(2, 1), (0, -1)]).is_constant(), Some(Rat::one()));
        assert_eq!(rf(&[(1, 1), (0, 1)], &[(1, 1), (0, -1)]).is_constant(), None);
    }

    #[test]
    fn limits_at_one() {
        // Unreduced input exercises the synthetic-division path directly.
        let f = RatFn {
            num: lp(&[(2, 1), (0, -1)]),
            den: lp(&[(1, 1), (0, -1)]),
        };
        assert_eq!(f.limit_at_one(), Ok(Rat::from(2)));
        assert_eq!(RatFn::one().limit_at_one(), Ok(Rat::one()));
        assert_eq!(
            rf(&[(1, 1), (0, 1)], &[(1, 1), (0, -1)]).limit_at_one(),
            Err(AlgebraError::PoleAtOne)
        );
    }

    #[test]
    fn field_operations() {
        let f = rf(&[(1, 1)], &[(1, 1), (0, -1)]);
        let g = rf(&[(0, 1)], &[(1, 1), (0, 1)]);
        let x = Rat::new(3, 2);
        let (fx, gx) = (f.eval(&x).unwrap(), g.eval(&x).unwrap());
        assert_eq!((&f + &g).eval(&x).unwrap(), &fx + &gx);
        assert_eq!((&f - &g).eval(&x).unwrap(), &fx - &gx);
        assert_eq!((&f * &g).eval(&x).unwrap(), &fx * &gx);
        assert_eq!((&f / &g).eval(&x).unwrap(), &fx / &gx);
        assert!(f.checked_div(&RatFn::zero()).is_err());
    }
}
