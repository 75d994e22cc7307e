//! Formal twist bundles: integer polynomials in `L_1^{±1}, …, L_k^{±1}` and `T`.
//!
//! Grammar accepted by [`BundleExpr::parse`]:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := integer | 'L' index | 'T' | '(' expr ')'
//! ```
//!
//! Negative exponents are allowed on single line bundles only.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `∏ L_j^{line[j]} · T^tangent`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BundleMonomial {
    pub line: Vec<i32>,
    pub tangent: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BundleExpr {
    k: usize,
    terms: BTreeMap<BundleMonomial, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("twist expression error at column {column}: {message}")]
pub struct BundleParseError {
    pub column: usize,
    pub message: String,
}

impl BundleExpr {
    pub fn zero(k: usize) -> Self {
        Self { k, terms: BTreeMap::new() }
    }

    pub fn constant(k: usize, c: i64) -> Self {
        Self::monomial(k, c, BundleMonomial { line: vec![0; k], tangent: 0 })
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, 1)
    }

    /// `L_{j+1}` (zero-based index).
    pub fn line(k: usize, j: usize) -> Self {
        assert!(j < k, "line bundle index out of range");
        let mut line = vec![0; k];
        line[j] = 1;
        Self::monomial(k, 1, BundleMonomial { line, tangent: 0 })
    }

    pub fn tangent(k: usize) -> Self {
        Self::monomial(k, 1, BundleMonomial { line: vec![0; k], tangent: 1 })
    }

    fn monomial(k: usize, c: i64, mono: BundleMonomial) -> Self {
        let mut out = Self::zero(k);
        out.add_term(mono, c);
        out
    }

    fn add_term(&mut self, mono: BundleMonomial, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&mono);
        }
    }

    /// Number of line bundles the expression ranges over.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BundleMonomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.k);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Parses `expr` over `k` line bundles.
    pub fn parse(expr: &str, k: usize) -> Result<Self, BundleParseError> {
        let mut parser = Parser { src: expr.as_bytes(), pos: 0, k };
        let e = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl Add for &BundleExpr {
    type Output = BundleExpr;
    fn add(self, rhs: &BundleExpr) -> BundleExpr {
        assert_eq!(self.k, rhs.k, "twist expressions over different line-bundle counts");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Neg for &BundleExpr {
    type Output = BundleExpr;
    fn neg(self) -> BundleExpr {
        BundleExpr {
            k: self.k,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &BundleExpr {
    type Output = BundleExpr;
    fn sub(self, rhs: &BundleExpr) -> BundleExpr {
        self + &(-rhs)
    }
}

impl Mul for &BundleExpr {
    type Output = BundleExpr;
    fn mul(self, rhs: &BundleExpr) -> BundleExpr {
        assert_eq!(self.k, rhs.k, "twist expressions over different line-bundle counts");
        let mut out = BundleExpr::zero(self.k);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let line = m1.line.iter().zip(&m2.line).map(|(a, b)| a + b).collect();
                out.add_term(BundleMonomial { line, tangent: m1.tangent + m2.tangent }, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (j, &e) in m.line.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("L{}", j + 1)),
                    e => factors.push(format!("L{}^{}", j + 1, e)),
                }
            }
            match m.tangent {
                0 => {}
                1 => factors.push("T".into()),
                t => factors.push(format!("T^{t}")),
            }
            let mag = c.unsigned_abs();
            match (i, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> BundleParseError {
        BundleParseError { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, BundleParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| BundleParseError { column: start + 1, message: "integer out of range".into() })
    }

    fn expr(&mut self) -> Result<BundleExpr, BundleParseError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BundleExpr, BundleParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BundleExpr, BundleParseError> {
        let (base, single_line) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let exp = self.integer()?;
        let exp = u32::try_from(exp).map_err(|_| self.error("exponent out of range"))?;
        if !negative {
            return Ok(base.pow(exp));
        }
        let Some(j) = single_line else {
            return Err(self.error("negative exponents apply to a single line bundle only"));
        };
        let mut line = vec![0; self.k];
        line[j] = -(exp as i32);
        Ok(BundleExpr::monomial(self.k, 1, BundleMonomial { line, tangent: 0 }))
    }

    /// Returns the atom and, for `L<j>`, its zero-based index.
    fn atom(&mut self) -> Result<(BundleExpr, Option<usize>), BundleParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok((e, None))
            }
            Some(b'T') => {
                self.pos += 1;
                Ok((BundleExpr::tangent(self.k), None))
            }
            Some(b'L') => {
                self.pos += 1;
                let at = self.pos;
                let idx = self.integer()?;
                if idx < 1 || idx as usize > self.k {
                    return Err(BundleParseError {
                        column: at + 1,
                        message: format!("L{idx} is not one of L1..L{}", self.k),
                    });
                }
                let j = idx as usize - 1;
                Ok((BundleExpr::line(self.k, j), Some(j)))
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.integer()?;
                Ok((BundleExpr::constant(self.k, c), None))
            }
            Some(_) => Err(self.error("expected an integer, L<j>, T or '('")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
