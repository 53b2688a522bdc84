//! Polynomial maps: column vectors of polynomials in shared variables.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rat::Rat;

/// A map with `components.len()` output coordinates, each a polynomial in
/// `arity` input variables. Never empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    arity: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(components: Vec<Poly>) -> Self {
        let arity = components.first().expect("a map needs at least one component").arity();
        for c in &components {
            assert_eq!(c.arity(), arity, "component arity mismatch");
        }
        PolyMap { arity, components }
    }

    /// The identity map `x` in `n` variables.
    pub fn identity(n: usize) -> Self {
        PolyMap::new((0..n).map(|i| Poly::var(n, i)).collect())
    }

    /// A constant map with the given values, read as polynomials in `arity`
    /// variables.
    pub fn constant(arity: usize, values: &[Rat]) -> Self {
        PolyMap::new(values.iter().map(|v| Poly::constant(arity, v.clone())).collect())
    }

    /// The linear map `x -> M x` for a constant matrix.
    pub fn linear(matrix: &crate::linalg::QMatrix) -> Self {
        let n = matrix.cols();
        PolyMap::new(
            (0..matrix.rows())
                .map(|i| {
                    (0..n).fold(Poly::zero(n), |acc, j| {
                        acc.add(&Poly::var(n, j).scale(matrix.get(i, j)))
                    })
                })
                .collect(),
        )
    }

    /// The affine map `x -> Mx + shift`.
    pub fn affine(matrix: &crate::linalg::QMatrix, shift: &[Rat]) -> Self {
        assert_eq!(matrix.rows(), shift.len(), "shift length must match row count");
        let linear = PolyMap::linear(matrix);
        let n = linear.arity();
        PolyMap::new(
            linear
                .components
                .iter()
                .zip(shift)
                .map(|(p, s)| p.add(&Poly::constant(n, s.clone())))
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_square(&self) -> bool {
        self.len() == self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.arity)
    }

    /// Largest component degree; `None` for the zero map.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(|c| c.degree()).max()
    }

    /// The composition `self(other)`. The component count of `other` must
    /// equal the arity of `self`.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        if other.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "composing a map in {} variables with {} components",
                self.arity,
                other.len()
            )));
        }
        Ok(PolyMap::new(
            self.components.iter().map(|c| c.substitute(other.components())).collect(),
        ))
    }

    pub fn add(&self, other: &PolyMap) -> PolyMap {
        assert_eq!(self.len(), other.len(), "component count mismatch");
        PolyMap::new(
            self.components
                .iter()
                .zip(other.components())
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &PolyMap) -> PolyMap {
        assert_eq!(self.len(), other.len(), "component count mismatch");
        PolyMap::new(
            self.components
                .iter()
                .zip(other.components())
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyMap {
        PolyMap::new(self.components.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, factor: &Rat) -> PolyMap {
        PolyMap::new(self.components.iter().map(|c| c.scale(factor)).collect())
    }

    pub fn mul_poly(&self, factor: &Poly) -> PolyMap {
        PolyMap::new(self.components.iter().map(|c| c.mul(factor)).collect())
    }

    /// `x + self`; requires a square map.
    pub fn x_plus(&self) -> PolyMap {
        assert!(self.is_square(), "x + H needs a square map");
        Self::identity(self.arity).add(self)
    }

    /// `x - self`; requires a square map.
    pub fn x_minus(&self) -> PolyMap {
        assert!(self.is_square(), "x - H needs a square map");
        Self::identity(self.arity).sub(self)
    }

    /// Jacobian matrix; rows = components, columns = variables.
    pub fn jacobian(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.len(), self.arity, self.arity, |i, j| {
            self.components[i].derive(j)
        })
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Rat> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Components viewed in a larger arity.
    pub fn extended(&self, arity: usize) -> PolyMap {
        PolyMap::new(self.components.iter().map(|c| c.extended(arity)).collect())
    }

    /// One-row matrix holding the components.
    pub fn as_row_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(1, self.len(), self.arity, |_, j| self.components[j].clone())
    }

    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.components
            .iter()
            .map(|c| c.display_with(names))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&crate::poly::default_names(self.arity)))
    }
}

/// Gradient of `h` as a map (the transpose of the one-row Jacobian).
pub fn gradient(h: &Poly) -> PolyMap {
    PolyMap::new((0..h.arity()).map(|i| h.derive(i)).collect())
}

/// Hessian matrix of `h`: the Jacobian of the gradient, always symmetric.
pub fn hessian(h: &Poly) -> PolyMatrix {
    gradient(h).jacobian()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_x;

    fn map(texts: &[&str], arity: usize) -> PolyMap {
        PolyMap::new(texts.iter().map(|t| parse_x(t, arity).unwrap()).collect())
    }

    fn cubic_chain() -> PolyMap {
        map(&["0", "x1", "x1^2", "x1^3"], 4)
    }

    #[test]
    fn inverse_composition_gives_identity() {
        let h = cubic_chain();
        let composed = h.x_minus().compose(&h.x_plus()).unwrap();
        assert!(composed.is_identity());
    }

    #[test]
    fn identity_is_a_two_sided_unit() {
        let f = map(&["x1*x2", "x2^2 - x1"], 2);
        let id = PolyMap::identity(2);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn composition_is_associative() {
        let f = map(&["x1 + x2^2", "x2"], 2);
        let g = map(&["x2", "x1*x2"], 2);
        let h = map(&["x1 - 1", "x2 + x1"], 2);
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn jacobian_of_the_cubic_chain() {
        let j = cubic_chain().jacobian();
        assert_eq!(j.rows(), 4);
        assert_eq!(j.cols(), 4);
        assert_eq!(*j.get(1, 0), parse_x("1", 4).unwrap());
        assert_eq!(*j.get(2, 0), parse_x("2*x1", 4).unwrap());
        assert_eq!(*j.get(3, 0), parse_x("3*x1^2", 4).unwrap());
        for i in 0..4 {
            for jcol in 1..4 {
                assert!(j.get(i, jcol).is_zero());
            }
        }
    }

    #[test]
    fn hessian_is_symmetric() {
        let h = parse_x("x1^3*x2 + x2*x3^2 - x1*x2*x3", 3).unwrap();
        let m = hessian(&h);
        assert_eq!(m, m.transpose());
    }

    #[test]
    fn hessian_of_a_product_of_two_variables() {
        let m = hessian(&parse_x("x3*x4", 4).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                let expected = ((i, j) == (2, 3)) || ((i, j) == (3, 2));
                assert_eq!(!m.get(i, j).is_zero(), expected);
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = map(&["x1", "x2", "x1 + x2"], 2);
        assert!(f.compose(&f).is_err());
    }
}
