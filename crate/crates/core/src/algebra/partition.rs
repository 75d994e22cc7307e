use std::fmt;

/// Integer partition with parts stored in nonincreasing order.
///
/// Used both as a monomial `p_I = ∏ p_i` in the Pontrjagin classes and as a multidegree
/// index. The empty partition is the unit monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(part: u32) -> Self {
        Self::new(vec![part])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }
}

/// All partitions of `n`, largest first part first (`{n}` leads, `{1,…,1}` trails).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p1^2 p2` style rendering with the given symbol prefix.
pub(crate) fn render_monomial(f: &mut fmt::Formatter<'_>, prefix: &str, part: &Partition) -> fmt::Result {
    if part.is_empty() {
        return write!(f, "1");
    }
    let mut first = true;
    let mut parts = part.parts().to_vec();
    parts.sort_unstable();
    let mut i = 0;
    while i < parts.len() {
        let p = parts[i];
        let run = parts[i..].iter().take_while(|&&q| q == p).count();
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if run == 1 {
            write!(f, "{prefix}{p}")?;
        } else {
            write!(f, "{prefix}{p}^{run}")?;
        }
        i += run;
    }
    Ok(())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_monomial(f, "p", self)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn ordering_of_enumeration() {
        let p = partitions(3);
        assert_eq!(p, vec![Partition::new(vec![3]), Partition::new(vec![2, 1]), Partition::new(vec![1, 1, 1])]);
    }

    #[test]
    fn display() {
        assert_eq!(Partition::new(vec![1, 2, 1]).to_string(), "p1^2*p2");
        assert_eq!(Partition::empty().to_string(), "1");
    }
}
