//! Structure theory for quasi-translations in low dimension: conjugating the
//! zero components to the front, factoring rank-one maps as `g * c`, splitting
//! a two-component tail as `(b*g, a*g)` with `g` a polynomial expression in
//! `a*x_{n-1} - b*x_n`, and the combined classifier for dimension at most
//! three and homogeneous dimension four.

use std::collections::BTreeMap;

use crate::error::{internal_check, Error, Result};
use crate::gcd::{gcd_list, try_div_exact};
use crate::hessian::image_span;
use crate::linalg::QMatrix;
use crate::matrix::RankMode;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::quasitrans::{check_qt, QuasiTranslation};
use crate::rat::{rat_int, Rat};

/// Linear change of coordinates that moves every linear dependency of the
/// image to the front: `h_normalized = T^{-1} H(Tx)` has components `1..=s`
/// identically zero and the remaining components linearly independent.
#[derive(Clone, Debug)]
pub struct NormalForm {
    /// Invertible matrix of the coordinate change.
    pub t: QMatrix,
    /// Number of leading zero components after the change.
    pub s: usize,
    /// The conjugated map `T^{-1} H(Tx)`.
    pub h_normalized: PolyMap,
}

/// Conjugates a quasi-translation by an invertible matrix so that its zero
/// directions come first.
///
/// The rows of `T^{-1}` start with a basis of the annihilator space
/// `{c : c^t H = 0}`, completed by standard unit vectors with smallest
/// indices; the conjugate is again a quasi-translation and its last `n - s`
/// components are linearly independent.
pub fn normalize_zeros(qt: &QuasiTranslation) -> Result<NormalForm> {
    let h = qt.map();
    let n = h.arity();
    let span = image_span(h)?;
    let s = span.annihilators.len();

    let mut rows: Vec<Vec<Rat>> = span.annihilators.clone();
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut unit = vec![rat_int(0); n];
        unit[j] = rat_int(1);
        rows.push(unit);
        if QMatrix::from_rows(rows.clone()).rank() < rows.len() {
            rows.pop();
        }
    }
    internal_check(rows.len() == n, "annihilator basis completion fell short of a full basis")?;

    let m = QMatrix::from_rows(rows);
    let t = match m.inverse() {
        Some(t) => t,
        None => return Err(Error::Internal("completed basis matrix is singular".into())),
    };
    let h_normalized =
        PolyMap::linear(&m).compose(&h.compose(&PolyMap::linear(&t))?)?;

    internal_check(
        (0..s).all(|i| h_normalized.component(i).is_zero()),
        "conjugation failed to zero the annihilated components",
    )?;
    internal_check(
        check_qt(&h_normalized)?.is_qt(),
        "linear conjugate of a quasi-translation failed the quasi-translation test",
    )?;
    if s < n {
        let tail = PolyMap::new(h_normalized.components()[s..].to_vec());
        internal_check(
            image_span(&tail)?.annihilators.is_empty(),
            "trailing components are linearly dependent",
        )?;
    }

    Ok(NormalForm { t, s, h_normalized })
}

/// Factors a homogeneous quasi-translation as `H = g * c` with `c` a constant
/// vector, which is possible exactly when the Jacobian has rank at most one.
///
/// Returns `None` when the rank exceeds one; the rank is then certified to lie
/// in `2..=n-2`. The zero map factors as `(0, e_1)` by convention.
pub fn rank_one_decompose(qt: &QuasiTranslation) -> Result<Option<(Poly, Vec<Rat>)>> {
    let h = qt.map();
    let n = h.arity();
    if h.is_zero() {
        let mut c = vec![rat_int(0); n];
        c[0] = rat_int(1);
        return Ok(Some((Poly::zero(n), c)));
    }
    if qt.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }

    let rank = h.jacobian().rank(RankMode::Certified, 0)?.rank;
    if rank > 1 {
        internal_check(
            2 <= rank && rank + 2 <= n,
            "Jacobian rank of a homogeneous quasi-translation is outside 2..=n-2",
        )?;
        return Ok(None);
    }

    let g = gcd_list(h.components())?;
    let mut c = Vec::with_capacity(n);
    for (i, comp) in h.components().iter().enumerate() {
        let q = try_div_exact(comp, &g).ok_or_else(|| {
            Error::Internal(format!("component {} is not a multiple of the common factor", i + 1))
        })?;
        internal_check(q.is_constant(), "rank-one cofactor is not constant")?;
        c.push(q.coefficient(&Monomial::one(n)));
    }
    Ok(Some((g, c)))
}

/// Two-component tail of a quasi-translation whose other components vanish:
/// `H = (0, ..., 0, b*g, a*g)` with `a`, `b` free of the last two variables,
/// `gcd(a, b) = 1`, and `g = sum_k c_k (a x_{n-1} - b x_n)^k` with every `c_k`
/// free of the last two variables as well.
#[derive(Clone, Debug)]
pub struct QtFormDecomposition {
    /// Common factor of the two tail components.
    pub g: Poly,
    /// Cofactor of the last component: `H_n = a * g`.
    pub a: Poly,
    /// Cofactor of the second-to-last component: `H_{n-1} = b * g`.
    pub b: Poly,
    /// Pairs `(k, c_k)` with `g = sum_k c_k (a x_{n-1} - b x_n)^k`.
    pub parts: Vec<(u32, Poly)>,
}

/// Decomposes a quasi-translation of the shape `(0, ..., 0, b*g, a*g)`.
///
/// Requires at least two variables, all components except the last two zero,
/// and a nonzero tail. The certified byproducts are `b dg/dx_{n-1} +
/// a dg/dx_n = 0` and the exact rewriting of `g` in powers of
/// `a x_{n-1} - b x_n` grouped by degree in the last two variables.
pub fn decompose_two_tail(qt: &QuasiTranslation) -> Result<QtFormDecomposition> {
    let h = qt.map();
    let n = h.arity();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "a two-component tail needs at least 2 variables; the map has {n}"
        )));
    }
    for i in 0..n - 2 {
        if !h.component(i).is_zero() {
            return Err(Error::Precondition(format!(
                "component {} must be zero; only the last two components may be nonzero",
                i + 1
            )));
        }
    }
    let p = h.component(n - 2);
    let q = h.component(n - 1);
    if p.is_zero() && q.is_zero() {
        return Err(Error::Precondition(
            "the last two components must not both be zero".into(),
        ));
    }

    let g = gcd_list(&[p.clone(), q.clone()])?;
    let b = try_div_exact(p, &g)
        .ok_or_else(|| Error::Internal("gcd does not divide the second-to-last component".into()))?;
    let a = try_div_exact(q, &g)
        .ok_or_else(|| Error::Internal("gcd does not divide the last component".into()))?;
    internal_check(
        gcd_list(&[a.clone(), b.clone()])?.is_constant(),
        "tail cofactors are not coprime",
    )?;
    for (name, f) in [("a", &a), ("b", &b)] {
        internal_check(
            !f.uses_var(n - 2) && !f.uses_var(n - 1),
            &format!("cofactor {name} involves one of the last two variables"),
        )?;
    }
    internal_check(
        b.mul(&g.derive(n - 2)).add(&a.mul(&g.derive(n - 1))).is_zero(),
        "the directional derivative b dg/dx_{n-1} + a dg/dx_n does not vanish",
    )?;

    let omega = a.mul(&Poly::var(n, n - 2)).sub(&b.mul(&Poly::var(n, n - 1)));
    let mut groups: BTreeMap<u32, Vec<(Monomial, Rat)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let k = m.exponent(n - 2) + m.exponent(n - 1);
        groups.entry(k).or_default().push((m.clone(), c.clone()));
    }
    let mut parts = Vec::with_capacity(groups.len());
    let mut rebuilt = Poly::zero(n);
    for (k, terms) in groups {
        let piece = Poly::from_terms(n, terms);
        let c_k = try_div_exact(&piece, &omega.pow(k)).ok_or_else(|| {
            Error::Internal(format!(
                "the degree-{k} part of g in the last two variables is not divisible by \
                 (a*x{} - b*x{})^{k}",
                n - 1,
                n
            ))
        })?;
        internal_check(
            !c_k.uses_var(n - 2) && !c_k.uses_var(n - 1),
            "a coefficient of the tail expansion involves one of the last two variables",
        )?;
        rebuilt = rebuilt.add(&c_k.mul(&omega.pow(k)));
        parts.push((k, c_k));
    }
    internal_check(rebuilt == g, "tail expansion does not reassemble g")?;

    Ok(QtFormDecomposition { g, a, b, parts })
}

/// Complete description of a small-dimensional quasi-translation: the
/// zero-fronting normal form plus, when the map is nonzero and has at least
/// two variables, the decomposition of its two-component tail.
#[derive(Clone, Debug)]
pub struct SmallClassification {
    /// Coordinate change and leading zero count.
    pub normal_form: NormalForm,
    /// Tail decomposition; `None` for the zero map and in one variable.
    pub tail: Option<QtFormDecomposition>,
}

/// Classifies a quasi-translation in dimension at most three, or a
/// homogeneous one in dimension four.
///
/// Normalizes the zeros to the front, checks that at most two nonzero
/// components remain, decomposes the tail, and verifies that conjugating the
/// normal form back reproduces the input exactly.
pub fn classify_small(qt: &QuasiTranslation) -> Result<SmallClassification> {
    let h = qt.map();
    let n = h.arity();
    let homogeneous = h.is_zero() || qt.homogeneous_degree().is_some();
    if !(n <= 3 || (n == 4 && homogeneous)) {
        return Err(Error::Precondition(format!(
            "classification covers dimension at most 3, or homogeneous maps in dimension 4; \
             the map has dimension {n}{}",
            if n == 4 { " and is not homogeneous" } else { "" }
        )));
    }

    let normal_form = normalize_zeros(qt)?;
    let t_inv = normal_form
        .t
        .inverse()
        .ok_or_else(|| Error::Internal("normal-form matrix is singular".into()))?;
    let rebuilt = PolyMap::linear(&normal_form.t)
        .compose(&normal_form.h_normalized.compose(&PolyMap::linear(&t_inv))?)?;
    internal_check(rebuilt == *h, "conjugating the normal form back does not reproduce the map")?;

    let tail = if normal_form.s == n || n == 1 {
        None
    } else {
        internal_check(
            normal_form.s + 2 >= n,
            "more than two independent components in a small dimension",
        )?;
        let qt_normalized = QuasiTranslation::verify(normal_form.h_normalized.clone())
            .map_err(|e| Error::Internal(format!("normalized map rejected: {e}")))?;
        Some(decompose_two_tail(&qt_normalized)?)
    };

    if qt.homogeneous_degree().is_some() && normal_form.s + 1 == n {
        internal_check(
            rank_one_decompose(qt)?.is_some(),
            "span has dimension one but the rank-one factorization failed",
        )?;
    }

    Ok(SmallClassification { normal_form, tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_x;
    use crate::rat::rat;

    fn pm(texts: &[&str], arity: usize) -> PolyMap {
        PolyMap::new(texts.iter().map(|t| parse_x(t, arity).unwrap()).collect())
    }

    fn qt(texts: &[&str], arity: usize) -> QuasiTranslation {
        QuasiTranslation::verify(pm(texts, arity)).unwrap()
    }

    #[test]
    fn swap_tail_map_normalizes_to_two_leading_zeros() {
        let nf = normalize_zeros(&qt(&["x4", "x3", "0", "0"], 4)).unwrap();
        assert_eq!(nf.s, 2);
        assert_eq!(nf.h_normalized, pm(&["0", "0", "x2", "x1"], 4));
    }

    #[test]
    fn zero_map_normalizes_with_identity_and_full_zero_count() {
        let nf = normalize_zeros(&qt(&["0", "0", "0"], 3)).unwrap();
        assert_eq!(nf.s, 3);
        assert!(nf.t.is_identity());
        assert!(nf.h_normalized.is_zero());
    }

    #[test]
    fn chain_map_is_already_normalized() {
        let nf = normalize_zeros(&qt(&["0", "x1", "x1^2", "x1^3"], 4)).unwrap();
        assert_eq!(nf.s, 1);
        assert!(nf.t.is_identity());
        assert_eq!(nf.h_normalized, pm(&["0", "x1", "x1^2", "x1^3"], 4));
    }

    #[test]
    fn constant_map_normalizes_to_a_single_nonzero_slot() {
        let nf = normalize_zeros(&qt(&["2", "3"], 2)).unwrap();
        assert_eq!(nf.s, 1);
        assert_eq!(nf.h_normalized, pm(&["0", "2"], 2));
        // Reconstruction: T * normalized(T^{-1} x) gives back (2, 3).
        let t_inv = nf.t.inverse().unwrap();
        let back = PolyMap::linear(&nf.t)
            .compose(&nf.h_normalized.compose(&PolyMap::linear(&t_inv)).unwrap())
            .unwrap();
        assert_eq!(back, pm(&["2", "3"], 2));
    }

    #[test]
    fn two_blocks_interleave_into_an_independent_tail() {
        let nf = normalize_zeros(&qt(&["0", "x1", "0", "x3"], 4)).unwrap();
        assert_eq!(nf.s, 2);
        assert_eq!(nf.h_normalized, pm(&["0", "0", "x1", "x2"], 4));
    }

    #[test]
    fn rank_one_map_factors_into_gradient_direction_and_scalar() {
        let (g, c) = rank_one_decompose(&qt(&["0", "x1^2", "0"], 3)).unwrap().unwrap();
        assert_eq!(g, parse_x("x1^2", 3).unwrap());
        assert_eq!(c, vec![rat_int(0), rat_int(1), rat_int(0)]);
    }

    #[test]
    fn rank_one_normalization_pushes_units_into_the_scalar() {
        // (0, -2x1^2, 4x1^2): the factor is normalized to x1^2 with integer
        // cofactors carrying the sign and scale.
        let (g, c) = rank_one_decompose(&qt(&["0", "-2*x1^2", "4*x1^2"], 3)).unwrap().unwrap();
        assert_eq!(g, parse_x("x1^2", 3).unwrap());
        assert_eq!(c, vec![rat_int(0), rat_int(-2), rat_int(4)]);
    }

    #[test]
    fn quadratic_cofactor_map_has_rank_two_and_no_factorization() {
        let result = rank_one_decompose(&qt(&["0", "0", "x2^2", "-2*x1*x2", "x1^2"], 5)).unwrap();
        assert!(result.is_none());
    }

    #[test]
    fn zero_map_factors_by_convention() {
        let (g, c) = rank_one_decompose(&qt(&["0", "0", "0", "0"], 4)).unwrap().unwrap();
        assert!(g.is_zero());
        assert_eq!(c, vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn mixed_degrees_are_rejected_for_rank_one_factorization() {
        let err = rank_one_decompose(&qt(&["0", "x1", "x1^2", "x1^3"], 4)).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous));
    }

    #[test]
    fn three_variable_tail_yields_unit_expansion() {
        // H = (0, g, x1*g) with g = x1*x2 - x3.
        let d = decompose_two_tail(&qt(&["0", "x1*x2 - x3", "x1^2*x2 - x1*x3"], 3)).unwrap();
        assert_eq!(d.g, parse_x("x1*x2 - x3", 3).unwrap());
        assert_eq!(d.b, Poly::one(3));
        assert_eq!(d.a, parse_x("x1", 3).unwrap());
        assert_eq!(d.parts, vec![(1, Poly::one(3))]);
    }

    #[test]
    fn degenerate_tail_forces_a_zero_and_a_unit_cofactor() {
        // (g, 0) tail: b = 1, a = 0, and g must be free of x_{n-1}.
        let d = decompose_two_tail(&qt(&["0", "0", "x1^2 + x2", "0"], 4)).unwrap();
        assert_eq!(d.g, parse_x("x1^2 + x2", 4).unwrap());
        assert_eq!(d.b, Poly::one(4));
        assert!(d.a.is_zero());
        assert_eq!(d.parts, vec![(0, parse_x("x1^2 + x2", 4).unwrap())]);
    }

    #[test]
    fn last_component_tail_in_two_variables_expands_in_x1() {
        let d = decompose_two_tail(&qt(&["0", "x1^2"], 2)).unwrap();
        assert_eq!(d.g, parse_x("x1^2", 2).unwrap());
        assert!(d.b.is_zero());
        assert_eq!(d.a, Poly::one(2));
        assert_eq!(d.parts, vec![(2, Poly::one(2))]);
    }

    #[test]
    fn homogeneous_four_variable_tail_recovers_the_bilinear_factor() {
        // (0, 0, x2*g, x1*g) with g = x1*x3 - x2*x4.
        let d = decompose_two_tail(&qt(
            &["0", "0", "x1*x2*x3 - x2^2*x4", "x1^2*x3 - x1*x2*x4"],
            4,
        ))
        .unwrap();
        assert_eq!(d.g, parse_x("x1*x3 - x2*x4", 4).unwrap());
        assert_eq!(d.b, parse_x("x2", 4).unwrap());
        assert_eq!(d.a, parse_x("x1", 4).unwrap());
        assert_eq!(d.parts, vec![(1, Poly::one(4))]);
    }

    #[test]
    fn tail_expansion_with_two_distinct_degrees() {
        // g = 1 + (x1*x2 - x3)^2 under the tail (g, x1*g).
        let g = parse_x("1 + x1^2*x2^2 - 2*x1*x2*x3 + x3^2", 3).unwrap();
        let map = PolyMap::new(vec![
            Poly::zero(3),
            g.clone(),
            g.mul(&parse_x("x1", 3).unwrap()),
        ]);
        let d = decompose_two_tail(&QuasiTranslation::verify(map).unwrap()).unwrap();
        assert_eq!(d.g, g);
        assert_eq!(d.b, Poly::one(3));
        assert_eq!(d.a, parse_x("x1", 3).unwrap());
        assert_eq!(d.parts, vec![(0, Poly::one(3)), (2, Poly::one(3))]);
    }

    #[test]
    fn constant_tail_shares_a_unit_factor() {
        let d = decompose_two_tail(&qt(&["2", "3"], 2)).unwrap();
        assert_eq!(d.g, Poly::one(2));
        assert_eq!(d.b, parse_x("2", 2).unwrap());
        assert_eq!(d.a, parse_x("3", 2).unwrap());
        assert_eq!(d.parts, vec![(0, Poly::one(2))]);
    }

    #[test]
    fn nonzero_head_and_zero_tail_are_rejected() {
        let head = decompose_two_tail(&qt(&["0", "x1", "x1^2", "x1^3"], 4)).unwrap_err();
        assert!(matches!(head, Error::Precondition(_)));
        let tail = decompose_two_tail(&qt(&["0", "0", "0"], 3)).unwrap_err();
        assert!(matches!(tail, Error::Precondition(_)));
        let dim = decompose_two_tail(&qt(&["0"], 1)).unwrap_err();
        assert!(matches!(dim, Error::Precondition(_)));
    }

    #[test]
    fn three_variable_classification_produces_the_tail_descriptor() {
        let c = classify_small(&qt(&["0", "x1*x2 - x3", "x1^2*x2 - x1*x3"], 3)).unwrap();
        assert_eq!(c.normal_form.s, 1);
        assert!(c.normal_form.t.is_identity());
        let tail = c.tail.unwrap();
        assert_eq!(tail.a, parse_x("x1", 3).unwrap());
        assert_eq!(tail.b, Poly::one(3));
        assert_eq!(tail.parts, vec![(1, Poly::one(3))]);
    }

    #[test]
    fn two_variable_constant_map_classifies_as_a_shifted_translation() {
        let c = classify_small(&qt(&["2", "3"], 2)).unwrap();
        assert_eq!(c.normal_form.s, 1);
        assert_eq!(c.normal_form.h_normalized, pm(&["0", "2"], 2));
        let tail = c.tail.unwrap();
        assert_eq!(tail.g, Poly::one(2));
        assert!(tail.b.is_zero());
        assert_eq!(tail.a, parse_x("2", 2).unwrap());
    }

    #[test]
    fn homogenized_three_variable_case_lands_in_the_four_variable_form() {
        let base = qt(&["0", "x1*x2 - x3", "x1^2*x2 - x1*x3"], 3);
        let lifted = crate::quasitrans::homogenize(&base, 3).unwrap();
        let c = classify_small(&lifted).unwrap();
        assert_eq!(c.normal_form.s, 2);
        assert_eq!(
            c.normal_form.h_normalized,
            pm(&["0", "0", "x1*x2*x3 - x2^2*x4", "x1^2*x3 - x1*x2*x4"], 4)
        );
        let tail = c.tail.unwrap();
        assert_eq!(tail.g, parse_x("x1*x3 - x2*x4", 4).unwrap());
        assert_eq!(tail.b, parse_x("x2", 4).unwrap());
        assert_eq!(tail.a, parse_x("x1", 4).unwrap());
        assert_eq!(tail.parts, vec![(1, Poly::one(4))]);
    }

    #[test]
    fn zero_map_classification_has_no_tail() {
        let c = classify_small(&qt(&["0", "0", "0", "0"], 4)).unwrap();
        assert_eq!(c.normal_form.s, 4);
        assert!(c.tail.is_none());
    }

    #[test]
    fn one_variable_maps_classify_without_a_tail() {
        let c = classify_small(&qt(&["5"], 1)).unwrap();
        assert_eq!(c.normal_form.s, 0);
        assert!(c.tail.is_none());
        let z = classify_small(&qt(&["0"], 1)).unwrap();
        assert_eq!(z.normal_form.s, 1);
        assert!(z.tail.is_none());
    }

    #[test]
    fn single_component_homogeneous_map_passes_the_rank_one_cross_check() {
        let c = classify_small(&qt(&["0", "0", "0", "x1^2"], 4)).unwrap();
        assert_eq!(c.normal_form.s, 3);
        let tail = c.tail.unwrap();
        assert_eq!(tail.g, parse_x("x1^2", 4).unwrap());
        assert!(tail.b.is_zero());
        assert_eq!(tail.a, Poly::one(4));
        assert_eq!(tail.parts, vec![(0, parse_x("x1^2", 4).unwrap())]);
    }

    #[test]
    fn classification_rejects_large_or_inhomogeneous_dimensions() {
        let four = classify_small(&qt(&["0", "x1", "x1^2", "x1^3"], 4)).unwrap_err();
        assert!(matches!(four, Error::Precondition(_)));
        let five = classify_small(&qt(&["0", "0", "x2^2", "-2*x1*x2", "x1^2"], 5)).unwrap_err();
        assert!(matches!(five, Error::Precondition(_)));
    }

    #[test]
    fn rational_coefficients_survive_the_round_trip() {
        let map = PolyMap::new(vec![
            Poly::zero(2),
            parse_x("1/2*x1^2 + 1/3*x1", 2).unwrap(),
        ]);
        let c = classify_small(&QuasiTranslation::verify(map).unwrap()).unwrap();
        assert_eq!(c.normal_form.s, 1);
        let tail = c.tail.unwrap();
        // g is content-normalized; the rational content moves into a.
        assert_eq!(tail.g, parse_x("3*x1^2 + 2*x1", 2).unwrap());
        assert_eq!(tail.a, Poly::constant(2, rat(1, 6)));
        assert!(tail.b.is_zero());
    }
}
