//! Exact arithmetic: rationals, Laurent polynomials in λ, reduced rational functions,
//! truncated power series and graded polynomials in Pontrjagin symbols.

mod graded;
mod laurent;
mod partition;
mod rat;
mod ratfn;
mod series;
mod upoly;

pub use graded::{bernoulli, bernoulli_numbers, l_polynomials, newton_s_from_p, GradedPoly};
pub use laurent::LaurentPoly;
pub use partition::{partitions, Partition};
pub use rat::{ParseRatError, Rat};
pub use ratfn::RatFn;
pub use series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation at λ = 0")]
    EvalAtZero,
    #[error("pole at λ = {at}: denominator factor {factor} vanishes")]
    Pole { at: Rat, factor: String },
    #[error("genuine pole at λ = 1: weight data is inadmissible")]
    PoleAtOne,
}

/// Canonical normal form of `num/den`.
pub fn ratfn_normalize(num: LaurentPoly, den: LaurentPoly) -> Result<RatFn, AlgebraError> {
    RatFn::new(num, den)
}
