use std::cmp::Ordering;

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then the exponent of `u1`, then `u2`, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    /// The monomial `u_var`.
    pub fn var(dim: usize, var: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[var] = 1;
        Monomial { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Returns the monomial with the exponent of `var` shifted by `delta`.
    /// The caller guarantees the result stays non-negative.
    pub(crate) fn shifted(&self, var: usize, delta: i32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var] = (exps[var] as i64 + delta as i64) as u32;
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![2, 0, 1]);
        let b = Monomial::new(vec![1, 2, 0]);
        let c = Monomial::new(vec![0, 0, 4]);
        let d = Monomial::new(vec![3, 0, 0]);
        assert!(a > b);
        assert!(c > a);
        assert!(d > a);
        assert!(Monomial::one(3) < Monomial::var(3, 2));
        assert!(Monomial::var(3, 0) > Monomial::var(3, 1));
    }
}
