//! Monomials with a graded reverse lexicographic order.

use std::cmp::Ordering;

/// Exponent vector of a single monomial; the length is the ambient arity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    /// Monomial with the given exponents.
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial 1 in the given arity.
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The single variable `x_var` (zero-based) in the given arity.
    pub fn var(arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable index {var} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[var] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two monomials of equal arity.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exact quotient, or `None` when some exponent of `other` exceeds ours.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    /// Same exponents with zeros appended up to `arity`.
    pub fn extended(&self, arity: usize) -> Monomial {
        assert!(arity >= self.arity());
        let mut e = self.0.clone();
        e.resize(arity, 0);
        Monomial(e)
    }
}

/// Graded reverse lexicographic order: compare total degrees first; on a tie
/// the monomial whose trailing exponent difference is negative is the larger.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given arity and exact total degree, sorted descending.
pub fn monomials_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; arity];
    fill(&mut out, &mut current, 0, degree);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}
