//! Quasi-translations: maps `x + H` whose inverse is `x - H`.
//!
//! Verifies the three equivalent characterizations, computes nilpotency data
//! for the Jacobian, and manipulates verified maps: deformation by a fresh
//! indeterminate `t`, iteration, invariants, gcd stripping, conjugation,
//! homogenization, and the vanishing of `H(tH)` in the homogeneous case.

use std::fmt;

use crate::error::{internal_check, Error, Result};
use crate::gcd::{gcd_list, try_div_exact};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::polymap::PolyMap;

/// Outcome of checking the three equivalent conditions for `x + H` to be a
/// quasi-translation, plus nilpotency data for `JH`.
#[derive(Clone, Debug)]
pub struct QtReport {
    /// Condition (1): `(x - H)` composed with `(x + H)` is the identity.
    pub cond_inverse: bool,
    /// Condition (2): `H(x + tH) = H` identically in `t`.
    pub cond_deform: bool,
    /// Condition (3): `JH * H = 0`.
    pub cond_jhh: bool,
    /// Least `k <= n` with `(JH)^k = 0`, when one exists.
    pub nilpotency_index: Option<usize>,
    /// Whether `JH` evaluated at `x - tH` equals the truncated series
    /// `sum_k t^k (JH)^(k+1)`; only checkable when `JH` is nilpotent.
    pub series_identity: bool,
}

impl QtReport {
    /// True when all three equivalent conditions hold.
    pub fn is_qt(&self) -> bool {
        self.cond_inverse && self.cond_deform && self.cond_jhh
    }
}

/// Substitution list sending `x_i` to `x_i + t * H_i` in arity `n + 1`
/// (the new last variable is `t`).
fn deformed_point(h: &PolyMap) -> Vec<Poly> {
    let n = h.arity();
    let t = Poly::var(n + 1, n);
    (0..n)
        .map(|i| Poly::var(n + 1, i).add(&h.component(i).extended(n + 1).mul(&t)))
        .collect()
}

/// Evaluates the three equivalent quasi-translation conditions independently
/// and reports each, together with the nilpotency index of `JH` and the
/// truncated-series identity.
pub fn check_qt(h: &PolyMap) -> Result<QtReport> {
    if !h.is_square() {
        return Err(Error::NotSquareMap { components: h.len(), arity: h.arity() });
    }
    let n = h.arity();
    let cond_inverse = h.x_minus().compose(&h.x_plus())?.is_identity();
    let at_deformed = deformed_point(h);
    let cond_deform = (0..n).all(|i| {
        h.component(i).substitute(&at_deformed) == h.component(i).extended(n + 1)
    });
    let jh = h.jacobian();
    let cond_jhh = jh.mul_map(h)?.is_zero();
    let mut powers: Vec<PolyMatrix> = vec![jh.clone()];
    let mut nilpotency_index = None;
    for k in 1..=n {
        if powers.last().unwrap().is_zero() {
            nilpotency_index = Some(k);
            break;
        }
        if k < n {
            let next = powers.last().unwrap().matmul(&jh)?;
            powers.push(next);
        }
    }
    let series_identity = match nilpotency_index {
        Some(_) => {
            let minus_t = (0..n)
                .map(|i| {
                    let t = Poly::var(n + 1, n);
                    Poly::var(n + 1, i).sub(&h.component(i).extended(n + 1).mul(&t))
                })
                .collect::<Vec<_>>();
            let lhs = jh.substitute(&minus_t);
            let t = Poly::var(n + 1, n);
            let mut rhs = PolyMatrix::zero(n, n, n + 1);
            let mut t_power = Poly::one(n + 1);
            for p in &powers {
                if p.is_zero() {
                    break;
                }
                let lifted = PolyMatrix::from_fn(n, n, n + 1, |i, j| {
                    p.get(i, j).extended(n + 1)
                });
                rhs = rhs.add(&lifted.scale_poly(&t_power));
                t_power = t_power.mul(&t);
            }
            lhs == rhs
        }
        None => false,
    };
    Ok(QtReport { cond_inverse, cond_deform, cond_jhh, nilpotency_index, series_identity })
}

/// A square map `H` whose `x + H` has been verified to be a quasi-translation.
#[derive(Clone, Debug)]
pub struct QuasiTranslation {
    map: PolyMap,
    report: QtReport,
    homogeneous_degree: Option<u32>,
}

impl QuasiTranslation {
    /// Runs `check_qt` and wraps the map on success.
    pub fn verify(map: PolyMap) -> Result<Self> {
        let report = check_qt(&map)?;
        if !report.is_qt() {
            return Err(Error::NotQuasiTranslation(format!(
                "inverse: {}, deformation: {}, jacobian product: {}",
                report.cond_inverse, report.cond_deform, report.cond_jhh
            )));
        }
        let homogeneous_degree = common_homogeneous_degree(&map);
        Ok(QuasiTranslation { map, report, homogeneous_degree })
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    pub fn report(&self) -> &QtReport {
        &self.report
    }

    /// Common degree of the nonzero components when all are homogeneous of
    /// one degree; `None` for the zero map or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree
    }
}

fn common_homogeneous_degree(map: &PolyMap) -> Option<u32> {
    let mut degree = None;
    for c in map.components() {
        if c.is_zero() {
            continue;
        }
        let d = c.homogeneous_degree()?;
        match degree {
            None => degree = Some(d),
            Some(existing) if existing == d => {}
            Some(_) => return None,
        }
    }
    degree
}

/// `f(x + tH)`: a polynomial in the original variables plus a trailing `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    result: Poly,
    base_arity: usize,
}

impl Deformation {
    /// The deformed polynomial; `t` is the last variable.
    pub fn poly(&self) -> &Poly {
        &self.result
    }

    /// Degree in `t`; `None` when the deformation is zero.
    pub fn t_degree(&self) -> Option<u32> {
        self.result.degree_in(self.base_arity)
    }

    /// Coefficient of `t^k`, back in the original arity.
    pub fn t_coefficient(&self, k: u32) -> Poly {
        let n = self.base_arity;
        let mut subs: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        subs.push(Poly::zero(n));
        self.result.coefficient_in(n, k).substitute(&subs)
    }

    /// The value at `t = 0`, i.e. the original polynomial.
    pub fn at_t_zero(&self) -> Poly {
        self.t_coefficient(0)
    }
}

/// Degree in `t` of `f(x + tH)`; the zero polynomial gets a distinguished
/// minus-infinity value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiDegree {
    MinusInfinity,
    Finite(u32),
}

impl QuasiDegree {
    pub fn is_at_most(&self, bound: u32) -> bool {
        match self {
            QuasiDegree::MinusInfinity => true,
            QuasiDegree::Finite(d) => *d <= bound,
        }
    }
}

impl fmt::Display for QuasiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiDegree::MinusInfinity => write!(f, "minus infinity"),
            QuasiDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Deforms `f` along the verified quasi-translation: `f(x + tH)`.
pub fn deform(f: &Poly, qt: &QuasiTranslation) -> Deformation {
    assert_eq!(f.arity(), qt.arity(), "polynomial and map arity mismatch");
    let result = f.substitute(&deformed_point(qt.map()));
    let deformation = Deformation { result, base_arity: qt.arity() };
    debug_assert_eq!(deformation.at_t_zero(), *f);
    deformation
}

/// The quasi-degree `nu(f) = deg_t f(x + tH)`.
pub fn quasi_degree(f: &Poly, qt: &QuasiTranslation) -> QuasiDegree {
    match deform(f, qt).t_degree() {
        Some(d) => QuasiDegree::Finite(d),
        None => QuasiDegree::MinusInfinity,
    }
}

/// `x + mH`, checked against the `m`-fold composition of `x + H`.
pub fn iterate(qt: &QuasiTranslation, m: u32) -> Result<PolyMap> {
    let h = qt.map();
    let n = qt.arity();
    let result = PolyMap::identity(n)
        .add(&h.mul_poly(&Poly::constant(n, crate::rat::rat_int(i64::from(m)))));
    let mut composed = PolyMap::identity(n);
    let x_plus = h.x_plus();
    for _ in 0..m {
        composed = x_plus.compose(&composed)?;
    }
    internal_check(composed == result, "iterated composition disagrees with x + mH")?;
    Ok(result)
}

/// Whether `f` is invariant: `Jf * H = 0`. Cross-checked against
/// `f(x + H) = f` and `nu(f) <= 0`.
pub fn is_invariant(f: &Poly, qt: &QuasiTranslation) -> Result<bool> {
    assert_eq!(f.arity(), qt.arity(), "polynomial and map arity mismatch");
    let h = qt.map();
    let derivative_along = (0..qt.arity())
        .fold(Poly::zero(qt.arity()), |acc, i| acc.add(&f.derive(i).mul(h.component(i))));
    let by_jacobian = derivative_along.is_zero();
    let by_composition = f.substitute(h.x_plus().components()) == *f;
    let by_quasi_degree = quasi_degree(f, qt).is_at_most(0);
    internal_check(
        by_jacobian == by_composition && by_composition == by_quasi_degree,
        "the three invariance criteria disagree",
    )?;
    Ok(by_jacobian)
}

/// Divides out the gcd of the components: returns `(g, H/g)` with the
/// quotient verified to be a quasi-translation, `nu(g) = 0` for the new map,
/// and an invariance battery comparing old and new maps.
pub fn strip_gcd(qt: &QuasiTranslation) -> Result<(Poly, QuasiTranslation)> {
    let h = qt.map();
    let g = gcd_list(h.components())?;
    let quotient = PolyMap::new(
        h.components()
            .iter()
            .map(|c| try_div_exact(c, &g).expect("gcd divides every component"))
            .collect(),
    );
    let stripped = QuasiTranslation::verify(quotient)
        .map_err(|e| Error::Internal(format!("gcd-stripped map failed verification: {e}")))?;
    internal_check(
        quasi_degree(&g, &stripped) == QuasiDegree::Finite(0),
        "stripped gcd is not invariant under the reduced map",
    )?;
    for i in 0..h.len() {
        let component = stripped.map().component(i);
        internal_check(
            is_invariant(component, qt)? && is_invariant(component, &stripped)?,
            "a reduced component is not invariant under both maps",
        )?;
    }
    for j in 0..h.arity() {
        let coordinate = Poly::var(h.arity(), j);
        internal_check(
            is_invariant(&coordinate, qt)? == is_invariant(&coordinate, &stripped)?,
            "coordinate invariance differs between the maps",
        )?;
    }
    Ok((g, stripped))
}

/// Conjugates by a polynomial automorphism given with its exact inverse:
/// `x + H~ = G o (x + H) o F`. Requires `deg_t G_i(x + tH) <= 1` for all `i`.
pub fn conjugate(qt: &QuasiTranslation, f: &PolyMap, g: &PolyMap) -> Result<QuasiTranslation> {
    let n = qt.arity();
    if f.arity() != n || f.len() != n || g.arity() != n || g.len() != n {
        return Err(Error::DimensionMismatch(
            "conjugating maps must be square in the same variables".into(),
        ));
    }
    if !g.compose(f)?.is_identity() || !f.compose(g)?.is_identity() {
        return Err(Error::NotInverse);
    }
    for i in 0..n {
        if let Some(d) = deform(g.component(i), qt).t_degree() {
            if d > 1 {
                return Err(Error::QuasiDegreeTooHigh { index: i + 1, nu: d });
            }
        }
    }
    let conjugated = g.compose(&qt.map().x_plus().compose(f)?)?;
    let h_tilde = conjugated.sub(&PolyMap::identity(n));
    QuasiTranslation::verify(h_tilde)
        .map_err(|e| Error::Internal(format!("conjugated map failed verification: {e}")))
}

/// Degree-`d` homogenization in one extra variable:
/// each term `c x^a` of `H_i` becomes `c x^a x_{n+1}^(d - |a|)`, and a zero
/// last component is appended.
pub fn homogenize(qt: &QuasiTranslation, d: u32) -> Result<QuasiTranslation> {
    let h = qt.map();
    let n = qt.arity();
    let required = h.degree().unwrap_or(0);
    if d < required {
        return Err(Error::DegreeTooSmall { given: d, required });
    }
    let mut components: Vec<Poly> = h
        .components()
        .iter()
        .map(|c| {
            let terms = c
                .terms()
                .iter()
                .map(|(m, coeff)| {
                    let mut exps = m.exponents().to_vec();
                    exps.push(d - m.degree());
                    (crate::monomial::Monomial::new(exps), coeff.clone())
                })
                .collect();
            Poly::from_terms(n + 1, terms)
        })
        .collect();
    components.push(Poly::zero(n + 1));
    let lifted = PolyMap::new(components);
    for c in lifted.components() {
        internal_check(c.is_homogeneous(d), "homogenization produced a mixed-degree component")?;
    }
    QuasiTranslation::verify(lifted)
        .map_err(|e| Error::Internal(format!("homogenized map failed verification: {e}")))
}

/// For a homogeneous quasi-translation of degree `d >= 1`: whether
/// substituting `tH` for `x` annihilates every component. Cross-checked
/// against the vanishing of the leading `t`-coefficient of `H(x + tH)`.
pub fn check_homog_vanish(qt: &QuasiTranslation) -> Result<bool> {
    let h = qt.map();
    if h.is_zero() {
        return Ok(true);
    }
    let d = qt.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d == 0 {
        return Err(Error::NotHomogeneous);
    }
    let n = qt.arity();
    let t = Poly::var(n + 1, n);
    let t_times_h: Vec<Poly> =
        (0..n).map(|i| h.component(i).extended(n + 1).mul(&t)).collect();
    let direct = (0..n).all(|i| h.component(i).substitute(&t_times_h).is_zero());
    let by_leading_coefficient =
        (0..n).all(|i| deform(h.component(i), qt).t_coefficient(d).is_zero());
    internal_check(
        direct == by_leading_coefficient,
        "substitution and leading-coefficient routes disagree",
    )?;
    Ok(direct)
}
