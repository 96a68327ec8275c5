use std::cmp::Ordering;

/// Exponent vector over the generators of a presentation, in generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(num_generators: usize) -> Self {
        Monomial(vec![0; num_generators])
    }

    pub fn generator(num_generators: usize, index: usize) -> Self {
        let mut m = Self::one(num_generators);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0[index] > 0
    }

    /// Weighted degree with generator degrees `weights`.
    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn without(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.0[index] = 0;
        m
    }

    /// Graded-lexicographic comparison: weighted degree, then the first
    /// differing exponent in generator order.
    pub fn grlex_cmp(&self, other: &Monomial, weights: &[u32]) -> Ordering {
        self.degree(weights)
            .cmp(&other.degree(weights))
            .then_with(|| self.0.cmp(&other.0))
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials over generators of the given degrees with weighted degree
/// at most `max_degree`.
pub fn enumerate(weights: &[u32], max_degree: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == weights.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        let w = weights[idx];
        let mut e = 0;
        loop {
            cur[idx] = e;
            go(weights, idx + 1, left - e * w, cur, out);
            if (e + 1) * w > left {
                break;
            }
            e += 1;
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    go(weights, 0, max_degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial::from_exponents(vec![2, 0, 1]);
        let b = Monomial::from_exponents(vec![3, 1, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial::from_exponents(vec![1, 1, 0]));
        assert_eq!(a.mul(&a.quotient_of(&b)), b);
    }

    #[test]
    fn enumeration_counts() {
        // three degree-2 generators, degree <= 4: 1 + 3 + 6
        assert_eq!(enumerate(&[2, 2, 2], 4).len(), 10);
        assert_eq!(enumerate(&[], 0).len(), 1);
        assert!(enumerate(&[2, 4], 6).iter().all(|m| m.degree(&[2, 4]) <= 6));
    }

    #[test]
    fn formatting() {
        let names = vec!["alpha".to_string(), "theta".to_string()];
        assert_eq!(
            Monomial::from_exponents(vec![3, 2]).format(&names),
            "alpha^3*theta^2"
        );
        assert_eq!(Monomial::one(2).format(&names), "1");
    }
}
