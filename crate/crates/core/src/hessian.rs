//! The singular-Hessian pipeline: minimal relations among gradient
//! components, quasi-translations built from them, linear-dependence
//! certificates for gradients, image-span dimension, and transport of the
//! whole picture under affine changes of variables.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{internal_check, Error, Result};
use crate::linalg::{to_coprime_integers, QMatrix};
use crate::matrix::{RankMode, RankReport};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Poly;
use crate::polymap::{gradient, hessian, PolyMap};
use crate::quasitrans::check_qt;
use crate::rat::Rat;

/// A verified algebraic relation `R(G) = 0` among the components of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    r: Poly,
    target: PolyMap,
    degree: u32,
    minimal: bool,
}

impl Relation {
    /// Wraps an externally supplied relation after verifying `R(G) = 0`
    /// exactly; the result is not marked minimal.
    pub fn new(r: Poly, target: PolyMap) -> Result<Relation> {
        if r.is_zero() {
            return Err(Error::NotARelation);
        }
        if r.arity() != target.len() {
            return Err(Error::DimensionMismatch(format!(
                "relation in {} variables cannot apply to a map with {} components",
                r.arity(),
                target.len()
            )));
        }
        if !r.substitute(target.components()).is_zero() {
            return Err(Error::NotARelation);
        }
        let degree = r.degree().expect("nonzero polynomial has a degree");
        Ok(Relation { r, target, degree, minimal: false })
    }

    pub fn r(&self) -> &Poly {
        &self.r
    }

    pub fn target(&self) -> &PolyMap {
        &self.target
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }
}

/// Outcome of the degree-incremental relation search.
#[derive(Clone, Debug)]
pub enum RelationSearch {
    /// A relation was found at the smallest degree the search visits.
    Found(Relation),
    /// No relation exists at any degree: the Jacobian has full certified
    /// rank, so the components are algebraically independent.
    Independent { rank: RankReport },
    /// No relation up to the cap; existence beyond it is undecided.
    NoneUpToCap { cap: u32 },
}

/// Images of y-monomials under substitution by the target components,
/// memoized across degrees.
struct PowerCache<'a> {
    target: &'a PolyMap,
    memo: BTreeMap<Monomial, Poly>,
}

impl<'a> PowerCache<'a> {
    fn new(target: &'a PolyMap) -> Self {
        PowerCache { target, memo: BTreeMap::new() }
    }

    fn image(&mut self, m: &Monomial) -> Poly {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        let arity = self.target.arity();
        let result = if m.is_one() {
            Poly::one(arity)
        } else {
            let i = (0..m.arity()).find(|&i| m.exponent(i) > 0).unwrap();
            let reduced = m.try_div(&Monomial::var(m.arity(), i)).unwrap();
            self.image(&reduced).mul(self.target.component(i))
        };
        self.memo.insert(m.clone(), result.clone());
        result
    }
}

/// Candidate y-monomials for one search stage, in descending canonical
/// order: exactly degree `d`, or all degrees `d` down to `0`.
fn candidate_monomials(arity: usize, d: u32, exactly: bool) -> Vec<Monomial> {
    if exactly {
        monomials_of_degree(arity, d)
    } else {
        (0..=d).rev().flat_map(|k| monomials_of_degree(arity, k)).collect()
    }
}

/// Coefficient matrix of the candidate images: rows are x-monomials of the
/// combined support, columns are candidates.
fn relation_matrix(cache: &mut PowerCache<'_>, candidates: &[Monomial]) -> QMatrix {
    let images: Vec<Poly> = candidates.iter().map(|m| cache.image(m)).collect();
    let mut support: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &images {
        for (m, _) in p.terms() {
            support.entry(m).or_insert(0);
        }
    }
    for (index, (_, slot)) in support.iter_mut().rev().enumerate() {
        *slot = index;
    }
    let mut matrix = QMatrix::zeros(support.len(), candidates.len());
    for (col, p) in images.iter().enumerate() {
        for (m, coeff) in p.terms() {
            matrix.set(support[m], col, coeff.clone());
        }
    }
    matrix
}

/// Searches for a relation `R(G) = 0` by increasing degree, solving one
/// exact linear system per degree. The first kernel found yields `R`; the
/// minimality flag records that the degree-capped system below it had
/// trivial kernel. After an exhausted cap, a full certified Jacobian rank
/// upgrades the answer to algebraic independence.
pub fn find_relation(g: &PolyMap, deg_cap: u32, want_homogeneous: bool) -> Result<RelationSearch> {
    if !g.is_square() {
        return Err(Error::NotSquareMap { components: g.len(), arity: g.arity() });
    }
    if deg_cap < 1 {
        return Err(Error::Precondition("the degree cap must be at least 1".into()));
    }
    let n = g.len();
    let mut cache = PowerCache::new(g);
    for d in 1..=deg_cap {
        let candidates = candidate_monomials(n, d, want_homogeneous);
        let kernel = relation_matrix(&mut cache, &candidates).kernel_basis();
        let Some(first) = kernel.first() else {
            continue;
        };
        let coeffs = to_coprime_integers(first);
        let r = Poly::from_terms(
            n,
            candidates.iter().cloned().zip(coeffs).collect(),
        );
        internal_check(
            r.substitute(g.components()).is_zero(),
            "kernel vector does not yield a relation",
        )?;
        internal_check(r.degree() == Some(d), "relation degree disagrees with the stage")?;
        let minimal = if d == 1 {
            true
        } else {
            let lower = candidate_monomials(n, d - 1, false);
            relation_matrix(&mut cache, &lower).kernel_basis().is_empty()
        };
        if !want_homogeneous {
            internal_check(minimal, "a lower-degree relation escaped the incremental search")?;
        }
        return Ok(RelationSearch::Found(Relation { r, target: g.clone(), degree: d, minimal }));
    }
    let rank = g.jacobian().rank(RankMode::Certified, 0)?;
    if rank.rank == n {
        Ok(RelationSearch::Independent { rank })
    } else {
        Ok(RelationSearch::NoneUpToCap { cap: deg_cap })
    }
}

/// Builds `H = (grad_y R)(grad h)` from a relation on the gradient of `h`.
/// The row dependence `H^t * Hessian(h) = 0` is checked unconditionally;
/// when the column dependence also holds, the map is verified to be a
/// quasi-translation, and a minimal relation never produces the zero map.
pub fn qt_from_relation(h: &Poly, rel: &Relation) -> Result<PolyMap> {
    let grad = gradient(h);
    if *rel.target() != grad {
        return Err(Error::Precondition(
            "the relation target is not the gradient of the given polynomial".into(),
        ));
    }
    let n = h.arity();
    let components: Vec<Poly> = (0..n)
        .map(|i| rel.r().derive(i).substitute(grad.components()))
        .collect();
    let map = PolyMap::new(components);
    let jac = grad.jacobian();
    internal_check(
        map.as_row_matrix().matmul(&jac)?.is_zero(),
        "row dependence fails for a verified relation",
    )?;
    if rel.minimal() {
        internal_check(!map.is_zero(), "a minimal relation produced the zero map")?;
    }
    if jac.mul_map(&map)?.is_zero() {
        internal_check(
            check_qt(&map)?.is_qt(),
            "column dependence holds but the map is not a quasi-translation",
        )?;
    }
    Ok(map)
}

/// An exact linear dependence among the partial derivatives:
/// `sum_j c_j dh/dx_j = c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HesseCertificate {
    pub c: Vec<Rat>,
    pub c0: Rat,
}

/// Searches for constants with `sum_j c_j dh/dx_j = c0` (`c0` fixed to zero
/// unless `allow_affine`). Returns a substitution-verified certificate with
/// `c` nonzero, or `None` when only the trivial solution exists.
pub fn hesse_check(h: &Poly, allow_affine: bool) -> Result<Option<HesseCertificate>> {
    let n = h.arity();
    let derivatives: Vec<Poly> = (0..n).map(|j| h.derive(j)).collect();
    let mut columns = derivatives.clone();
    if allow_affine {
        columns.push(Poly::constant(n, -Rat::from_integer(1.into())));
    }
    let mut support: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &columns {
        for (m, _) in p.terms() {
            support.entry(m).or_insert(0);
        }
    }
    for (index, (_, slot)) in support.iter_mut().rev().enumerate() {
        *slot = index;
    }
    let mut matrix = QMatrix::zeros(support.len(), columns.len());
    for (col, p) in columns.iter().enumerate() {
        for (m, coeff) in p.terms() {
            matrix.set(support[m], col, coeff.clone());
        }
    }
    let kernel = matrix.kernel_basis();
    let Some(first) = kernel.first() else {
        return Ok(None);
    };
    let mut v = to_coprime_integers(first);
    internal_check(
        v[..n].iter().any(|x| !x.is_zero()),
        "kernel vector has no dependence part",
    )?;
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x < &Rat::from_integer(0.into())) {
        for x in &mut v {
            *x = -x.clone();
        }
    }
    let c0 = if allow_affine { v[n].clone() } else { Rat::from_integer(0.into()) };
    let c = v[..n].to_vec();
    let combination = c
        .iter()
        .zip(&derivatives)
        .fold(Poly::zero(n), |acc, (coeff, d)| acc.add(&d.scale(coeff)));
    internal_check(
        combination == Poly::constant(n, c0.clone()),
        "certificate does not satisfy the dependence equation",
    )?;
    Ok(Some(HesseCertificate { c, c0 }))
}

/// Dimension and basis of the linear span of the values of `H`, with the
/// annihilator vectors `c` satisfying `c^t H = 0` identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub dim: usize,
    pub basis: Vec<Vec<Rat>>,
    pub annihilators: Vec<Vec<Rat>>,
}

/// Computes the span data from the coefficient matrix of `H` (rows indexed
/// by monomials, columns by components): over an infinite field the row
/// space is exactly the span of the image, and the kernel is the
/// annihilator space.
pub fn image_span(h: &PolyMap) -> Result<SpanReport> {
    let m = h.len();
    let mut support: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in h.components() {
        for (mono, _) in p.terms() {
            support.entry(mono).or_insert(0);
        }
    }
    for (index, (_, slot)) in support.iter_mut().rev().enumerate() {
        *slot = index;
    }
    let mut matrix = QMatrix::zeros(support.len(), m);
    for (col, p) in h.components().iter().enumerate() {
        for (mono, coeff) in p.terms() {
            matrix.set(support[mono], col, coeff.clone());
        }
    }
    let (echelon, pivots) = matrix.rref();
    let dim = pivots.len();
    let basis: Vec<Vec<Rat>> =
        (0..dim).map(|r| to_coprime_integers(echelon.row(r))).collect();
    let annihilators: Vec<Vec<Rat>> =
        matrix.kernel_basis().iter().map(|v| to_coprime_integers(v)).collect();
    internal_check(dim + annihilators.len() == m, "rank-nullity violation")?;
    for c in &annihilators {
        let combination = c
            .iter()
            .zip(h.components())
            .fold(Poly::zero(h.arity()), |acc, (coeff, p)| acc.add(&p.scale(coeff)));
        internal_check(combination.is_zero(), "annihilator fails on the components")?;
    }
    Ok(SpanReport { dim, basis, annihilators })
}

/// From a homogeneous-style certificate (`c0 = 0`), builds an invertible
/// matrix `T` with last column `c` such that `h(Tx)` does not involve the
/// last variable.
pub fn reduce_variables(h: &Poly, cert: &HesseCertificate) -> Result<QMatrix> {
    let n = h.arity();
    if cert.c.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "certificate length {} does not match arity {n}",
            cert.c.len()
        )));
    }
    if !cert.c0.is_zero() {
        return Err(Error::Precondition(
            "variable reduction needs a homogeneous certificate with c0 = 0".into(),
        ));
    }
    let Some(j) = cert.c.iter().position(|x| !x.is_zero()) else {
        return Err(Error::AllZero);
    };
    let combination = cert
        .c
        .iter()
        .enumerate()
        .fold(Poly::zero(n), |acc, (k, coeff)| acc.add(&h.derive(k).scale(coeff)));
    if !combination.is_zero() {
        return Err(Error::Precondition(
            "certificate does not annihilate the gradient".into(),
        ));
    }
    let kept: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    let t = QMatrix::from_fn(n, n, |row, col| {
        if col + 1 == n {
            cert.c[row].clone()
        } else if kept[col] == row {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer(0.into())
        }
    });
    internal_check(t.inverse().is_some(), "reduction matrix is singular")?;
    let transformed = h.substitute(PolyMap::linear(&t).components());
    internal_check(
        transformed.derive(n - 1).is_zero(),
        "transformed polynomial still involves the last variable",
    )?;
    Ok(t)
}

/// Transports `(h, R, H)` along `x -> Tx + c` with linear-term shift `c~`:
/// returns `h~ = h(Tx+c) - c~^t x`, the relation `R~ = R((T^t)^{-1}(y + c~))`
/// on the new gradient, and `H~` computed both as `(grad_y R~)(grad h~)` and
/// as `T^{-1} H(Tx+c)`, asserted equal. On arities up to 5 the Hessian
/// determinants of `h` and `h~` are checked to vanish together.
pub fn affine_transport(
    h: &Poly,
    rel: &Relation,
    t: &QMatrix,
    c: &[Rat],
    c_tilde: &[Rat],
) -> Result<(Poly, Relation, PolyMap)> {
    let n = h.arity();
    if t.rows() != n || t.cols() != n || c.len() != n || c_tilde.len() != n {
        return Err(Error::DimensionMismatch(
            "transport data must match the arity of h".into(),
        ));
    }
    if *rel.target() != gradient(h) {
        return Err(Error::Precondition(
            "the relation target is not the gradient of the given polynomial".into(),
        ));
    }
    let t_inv = t.inverse().ok_or(Error::SingularMatrix)?;
    let substitution = PolyMap::affine(t, c);
    let linear_shift = c_tilde
        .iter()
        .enumerate()
        .fold(Poly::zero(n), |acc, (i, coeff)| acc.add(&Poly::var(n, i).scale(coeff)));
    let h_tilde = h.substitute(substitution.components()).sub(&linear_shift);
    let tt_inv = t_inv.transpose();
    let y_subs = PolyMap::affine(&tt_inv, &tt_inv.mul_vec(c_tilde));
    let r_tilde = rel.r().substitute(y_subs.components());
    internal_check(
        r_tilde.degree() == Some(rel.degree()),
        "affine substitution changed the relation degree",
    )?;
    let grad_tilde = gradient(&h_tilde);
    internal_check(
        r_tilde.substitute(grad_tilde.components()).is_zero(),
        "transported relation fails on the transported gradient",
    )?;
    let rel_tilde = Relation {
        r: r_tilde,
        target: grad_tilde,
        degree: rel.degree(),
        minimal: rel.minimal(),
    };
    let h_map = qt_from_relation(h, rel)?;
    let direct = qt_from_relation(&h_tilde, &rel_tilde)?;
    let transported =
        PolyMap::linear(&t_inv).compose(&h_map.compose(&substitution)?)?;
    internal_check(direct == transported, "the two transport routes disagree")?;
    if n <= 5 {
        let before = hessian(h).det()?.is_zero();
        let after = hessian(&h_tilde).det()?.is_zero();
        internal_check(
            before == after,
            "Hessian singularity is not preserved by the transport",
        )?;
    }
    Ok((h_tilde, rel_tilde, direct))
}
