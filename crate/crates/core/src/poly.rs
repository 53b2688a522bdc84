//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in strictly descending graded reverse lexicographic order
//! with no zero coefficients, so equality is structural and printing is
//! canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::rat::{rat_string, Rat};

/// Polynomial in `arity` variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    arity: usize,
    terms: Vec<(Monomial, Rat)>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(arity: usize) -> Self {
        Poly { arity, terms: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rat::one())
    }

    /// A constant polynomial.
    pub fn constant(arity: usize, value: Rat) -> Self {
        if value.is_zero() {
            return Self::zero(arity);
        }
        Poly { arity, terms: vec![(Monomial::one(arity), value)] }
    }

    /// The variable `x_var` (zero-based).
    pub fn var(arity: usize, var: usize) -> Self {
        Poly { arity, terms: vec![(Monomial::var(arity, var), Rat::one())] }
    }

    /// A single term `coeff * monomial`.
    pub fn term(monomial: Monomial, coeff: Rat) -> Self {
        let arity = monomial.arity();
        if coeff.is_zero() {
            return Self::zero(arity);
        }
        Poly { arity, terms: vec![(monomial, coeff)] }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs:
    /// sorts, merges duplicates and drops zeros.
    pub fn from_terms(arity: usize, terms: Vec<(Monomial, Rat)>) -> Self {
        let mut terms = terms;
        for (m, _) in &terms {
            assert_eq!(m.arity(), arity, "term arity mismatch");
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Poly { arity, terms: merged }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    /// Leading (largest) term, if any.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, monomial: &Monomial) -> Rat {
        self.terms
            .iter()
            .find(|(m, _)| m == monomial)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// The coefficient of `var^k`, as a polynomial with that variable removed
    /// from every exponent (the arity is unchanged).
    pub fn coefficient_in(&self, var: usize, k: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == k)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[var] = 0;
                (Monomial::new(e), c.clone())
            })
            .collect();
        Poly::from_terms(self.arity, terms)
    }

    /// True when the variable occurs in some term.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    /// Same polynomial viewed in a larger arity (new variables unused).
    pub fn extended(&self, arity: usize) -> Poly {
        assert!(arity >= self.arity, "cannot shrink arity");
        Poly {
            arity,
            terms: self.terms.iter().map(|(m, c)| (m.extended(arity), c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Poly { arity: self.arity, terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.arity);
        }
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(existing) => *existing += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { arity: self.arity, terms }
    }

    pub fn scale(&self, factor: &Rat) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Poly {
        let mut result = Poly::one(self.arity);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact partial derivative with respect to `var` (zero-based).
    pub fn derive(&self, var: usize) -> Poly {
        assert!(var < self.arity, "variable index {var} out of range for arity {}", self.arity);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                let mut exps = m.exponents().to_vec();
                exps[var] = e - 1;
                (Monomial::new(exps), c * Rat::from_integer(e.into()))
            })
            .collect();
        Poly::from_terms(self.arity, terms)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.arity, "evaluation point arity mismatch");
        let mut powers: Vec<Vec<Rat>> = vec![Vec::new(); self.arity];
        for i in 0..self.arity {
            let max = self.degree_in(i).unwrap_or(0) as usize;
            let mut v = Vec::with_capacity(max + 1);
            v.push(Rat::one());
            for k in 1..=max {
                let next = &v[k - 1] * &point[i];
                v.push(next);
            }
            powers[i] = v;
        }
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    value *= &powers[i][e as usize];
                }
            }
            total += value;
        }
        total
    }

    /// Substitutes `replacements[i]` for variable `i`; the result lives in the
    /// common arity of the replacements.
    pub fn substitute(&self, replacements: &[Poly]) -> Poly {
        assert_eq!(replacements.len(), self.arity, "substitution arity mismatch");
        let target = if replacements.is_empty() { 0 } else { replacements[0].arity() };
        for r in replacements {
            assert_eq!(r.arity(), target, "replacement arity mismatch");
        }
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.arity);
        for i in 0..self.arity {
            let max = self.degree_in(i).unwrap_or(0) as usize;
            let mut v = Vec::with_capacity(max + 1);
            v.push(Poly::one(target));
            for k in 1..=max {
                let next = v[k - 1].mul(&replacements[i]);
                v.push(next);
            }
            powers.push(v);
        }
        let mut total = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut value = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    value = value.mul(&powers[i][e as usize]);
                }
            }
            total = total.add(&value);
        }
        total
    }

    /// Splits into homogeneous parts keyed by degree; empty for zero.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Poly> {
        let mut parts: BTreeMap<u32, Vec<(Monomial, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.degree()).or_default().push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, Poly::from_terms(self.arity, terms)))
            .collect()
    }

    /// True when every term has total degree `d` (vacuously true for zero).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == d)
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        if self.is_homogeneous(d) {
            Some(d)
        } else {
            None
        }
    }

    /// Renders with the given variable names; inverse of `parse` on the same
    /// name list.
    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        assert_eq!(names.len(), self.arity, "name list arity mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(rat_string(&abs));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[i].as_ref(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names `x1..xn`.
pub fn default_names(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_names(self.arity)))
    }
}
