//! Dense univariate polynomials over the rationals, coefficients in ascending order.
//!
//! Only the handful of routines the rational-function normal form needs.

use super::Rat;

pub(crate) type Dense = Vec<Rat>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
}

pub(crate) fn div_rem(a: &[Rat], b: &[Rat]) -> (Dense, Dense) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rat::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            rem[shift + i] -= t;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn make_monic(p: &mut Dense) {
    if let Some(lead) = p.last().cloned() {
        for c in p.iter_mut() {
            *c /= &lead;
        }
    }
}

/// Monic greatest common divisor; the gcd of two zero polynomials is zero.
pub(crate) fn gcd(a: &[Rat], b: &[Rat]) -> Dense {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
        make_monic(&mut y);
    }
    make_monic(&mut x);
    x
}

pub(crate) fn mul(a: &[Rat], b: &[Rat]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// `Φ_d` for every `d` in `ds`, built from `λ^d − 1 = ∏_{e | d} Φ_e`.
pub(crate) fn cyclotomics(ds: impl IntoIterator<Item = u32>) -> std::collections::BTreeMap<u32, Dense> {
    let mut out = std::collections::BTreeMap::new();
    for d in ds {
        cyclotomic_into(d, &mut out);
    }
    out
}

fn cyclotomic_into(d: u32, memo: &mut std::collections::BTreeMap<u32, Dense>) {
    if memo.contains_key(&d) {
        return;
    }
    let mut p = vec![Rat::zero(); d as usize + 1];
    p[0] = Rat::from(-1);
    p[d as usize] = Rat::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        cyclotomic_into(e, memo);
        p = div_rem(&p, &memo[&e]).0;
    }
    memo.insert(d, p);
}

pub(crate) fn eval_at_one(p: &[Rat]) -> Rat {
    p.iter().sum()
}

/// Quotient by `λ - 1` via synthetic division. The caller guarantees `p(1) = 0`.
pub(crate) fn deflate_at_one(p: &[Rat]) -> Dense {
    debug_assert!(eval_at_one(p).is_zero());
    let mut out = vec![Rat::zero(); p.len().saturating_sub(1)];
    let mut carry = Rat::zero();
    for i in (1..p.len()).rev() {
        carry += &p[i];
        out[i - 1] = carry.clone();
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Dense {
        c.iter().map(|&x| Rat::from(x)).collect()
    }

    #[test]
    fn division_with_remainder() {
        // (λ^3 - 1) = (λ - 1)(λ^2 + λ + 1)
        let (q, r) = div_rem(&poly(&[-1, 0, 0, 1]), &poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1, 1]));
        assert!(r.is_empty());
        let (q, r) = div_rem(&poly(&[1, 0, 1]), &poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert_eq!(r, poly(&[2]));
    }

    #[test]
    fn gcd_is_monic() {
        let g = gcd(&poly(&[-2, 0, 2]), &poly(&[3, 3]));
        assert_eq!(g, poly(&[1, 1]));
        assert_eq!(gcd(&poly(&[2]), &poly(&[0, 1])), poly(&[1]));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let c = cyclotomics([1, 4, 6, 12]);
        assert_eq!(c[&1], poly(&[-1, 1]));
        assert_eq!(c[&2], poly(&[1, 1]));
        assert_eq!(c[&4], poly(&[1, 0, 1]));
        assert_eq!(c[&6], poly(&[1, -1, 1]));
        assert_eq!(c[&12], poly(&[1, 0, -1, 0, 1]));
        assert_eq!(mul(&c[&1], &c[&2]), poly(&[-1, 0, 1]));
    }

    #[test]
    fn synthetic_division() {
        assert_eq!(deflate_at_one(&poly(&[-1, 0, 1])), poly(&[1, 1]));
        assert_eq!(deflate_at_one(&poly(&[1, -2, 1])), poly(&[-1, 1]));
    }
}
