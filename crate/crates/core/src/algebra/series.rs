use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rat;

/// Power series `c_0 + c_1 t + … + c_T t^T` truncated at order `T`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(coeffs: Vec<Rat>, order: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, Rat::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `1 + c·t`.
    pub fn linear(c: Rat, order: usize) -> Self {
        Self::new(vec![Rat::one(), c], order)
    }

    /// `exp(c·t)`.
    pub fn exp_linear(c: &Rat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rat::one();
        for i in 0..=order {
            coeffs.push(term.clone());
            term = term * c / Rat::from(i as u64 + 1);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `f(c·t)`.
    pub fn dilate(&self, c: &Rat) -> Self {
        let mut pow = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &pow);
            pow *= c;
        }
        Self { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; `None` if the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0].checked_recip()?;
        let mut inv = vec![c0.clone()];
        for k in 1..self.coeffs.len() {
            let s: Rat = (1..=k).map(|j| &self.coeffs[j] * &inv[k - j]).sum();
            inv.push(-(s * &c0));
        }
        Some(Self { coeffs: inv })
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        // (log f)' = f'/f, integrated term by term.
        let order = self.order();
        let deriv = Self::new(
            (1..=order)
                .map(|i| &self.coeffs[i] * Rat::from(i as u64))
                .collect(),
            order,
        );
        let q = &deriv * &self.inverse()?;
        let mut coeffs = vec![Rat::zero()];
        for i in 1..=order {
            coeffs.push(q.coeff(i - 1) / Rat::from(i as u64));
        }
        Some(Self { coeffs })
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        TruncSeries { coeffs }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(t^{})]", self.order() + 1)
    }
}
