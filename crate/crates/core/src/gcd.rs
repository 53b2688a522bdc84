//! Multivariate gcd by recursive primitive pseudo-remainder sequences, plus
//! exact division.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rat::{denominator_lcm, numerator_gcd, Rat};

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
/// Division by zero returns `None`.
pub fn try_div_exact(f: &Poly, g: &Poly) -> Option<Poly> {
    assert_eq!(f.arity(), g.arity(), "polynomial arity mismatch");
    if g.is_zero() {
        return None;
    }
    let arity = f.arity();
    let (gm, gc) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let mut remainder = f.clone();
    let mut quotient_terms = Vec::new();
    while let Some((rm, rc)) = remainder.leading() {
        let qm = rm.try_div(&gm)?;
        let qc = rc / &gc;
        let qt = Poly::term(qm.clone(), qc.clone());
        remainder = remainder.sub(&qt.mul(g));
        quotient_terms.push((qm, qc));
    }
    Some(Poly::from_terms(arity, quotient_terms))
}

/// Scales a nonzero polynomial so its coefficients are coprime integers and
/// the leading coefficient is positive; zero is returned unchanged.
pub fn normalize(f: &Poly) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let coeffs: Vec<Rat> = f.terms().iter().map(|(_, c)| c.clone()).collect();
    let lcm = denominator_lcm(&coeffs);
    let gcd = numerator_gcd(&coeffs, &lcm);
    let mut factor = Rat::new(lcm, gcd);
    if f.leading().unwrap().1.is_negative() {
        factor = -factor;
    }
    f.scale(&factor)
}

/// Normalized gcd of two polynomials; equals zero only when both are zero.
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    assert_eq!(f.arity(), g.arity(), "polynomial arity mismatch");
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    let arity = f.arity();
    let var = match (0..arity).rev().find(|&v| f.uses_var(v) || g.uses_var(v)) {
        Some(v) => v,
        None => return Poly::one(arity),
    };
    let (cont_f, pp_f) = content_split(f, var);
    let (cont_g, pp_g) = content_split(g, var);
    let mut a = pp_f;
    let mut b = pp_g;
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_remainder(&a, &b, var);
        a = b;
        b = if r.is_zero() { r } else { content_split(&r, var).1 };
    }
    let content_gcd = gcd(&cont_f, &cont_g);
    normalize(&content_gcd.mul(&a))
}

/// Normalized gcd of a sequence; errors when every entry is zero.
pub fn gcd_list(polys: &[Poly]) -> Result<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => normalize(p),
            Some(g) => gcd(&g, p),
        });
    }
    match acc {
        Some(g) if !g.is_zero() => Ok(g),
        _ => Err(Error::AllZero),
    }
}

/// Splits `f` into (content, primitive part) with respect to `var`: the
/// content is the gcd of the coefficients of the powers of `var`.
fn content_split(f: &Poly, var: usize) -> (Poly, Poly) {
    let coeffs = univariate_coefficients(f, var);
    let nonzero: Vec<Poly> = coeffs.into_iter().filter(|c| !c.is_zero()).collect();
    let content = gcd_list(&nonzero).expect("nonzero polynomial has nonzero coefficients");
    let primitive = try_div_exact(f, &content).expect("content divides exactly");
    (content, primitive)
}

/// Coefficients of `f` viewed as univariate in `var`; index = power of `var`.
fn univariate_coefficients(f: &Poly, var: usize) -> Vec<Poly> {
    let deg = f.degree_in(var).unwrap_or(0);
    (0..=deg).map(|k| f.coefficient_in(var, k)).collect()
}

/// Pseudo-remainder of `a` by `b` in the variable `var`.
fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let deg_b = b.degree_in(var).expect("divisor must be nonzero");
    let lc_b = b.coefficient_in(var, deg_b);
    let mut r = a.clone();
    while let Some(deg_r) = r.degree_in(var) {
        if r.is_zero() || deg_r < deg_b {
            break;
        }
        let lc_r = r.coefficient_in(var, deg_r);
        let shift = Poly::term(Monomial::var(a.arity(), var), Rat::one()).pow(deg_r - deg_b);
        r = r.mul(&lc_b).sub(&lc_r.mul(&shift).mul(b));
    }
    r
}
