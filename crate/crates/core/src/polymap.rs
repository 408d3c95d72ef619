//! Square polynomial maps `F = (F_1, ..., F_n)` and the Keller gate.

use crate::error::{AlgebraError, MapError};
use crate::matrix::PolyMatrix;
use crate::polynomial::{Degree, Polynomial};
use crate::rational::Rational;

/// A polynomial map from n-space to itself.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        let n = components.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if let Some(bad) = components.iter().find(|p| p.nvars() != n) {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(PolyMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            components: (0..n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, p)| *p == Polynomial::var(self.nvars(), i))
    }

    /// `F(0)`.
    pub fn value_at_origin(&self) -> Vec<Rational> {
        self.components.iter().map(Polynomial::constant_term).collect()
    }

    /// `F + b` for a constant vector `b`.
    pub fn translated(&self, shift: &[Rational]) -> Result<PolyMap, AlgebraError> {
        if shift.len() != self.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars(),
                found: shift.len(),
            });
        }
        let n = self.nvars();
        Ok(PolyMap {
            components: self
                .components
                .iter()
                .zip(shift)
                .map(|(p, b)| p + &Polynomial::constant(n, b.clone()))
                .collect(),
        })
    }

    /// Total number of stored terms over all components.
    pub fn term_count(&self) -> usize {
        self.components.iter().map(Polynomial::len).sum()
    }
}

/// Entry `(i, j)` is `∂F_i/∂X_j`.
pub fn jacobian(map: &PolyMap) -> PolyMatrix {
    let entries = map.components.iter().flat_map(Polynomial::gradient).collect();
    PolyMatrix::new(map.nvars(), map.nvars(), entries).expect("jacobian of a square map is square")
}

/// Returns `det(J_F)` when it is a nonzero constant.
pub fn keller_check(map: &PolyMap) -> Result<Rational, MapError> {
    let det = jacobian(map).determinant()?;
    match det.as_constant() {
        Some(c) if !c.is_zero() => Ok(c),
        _ => Err(MapError::KellerViolation { det }),
    }
}

/// `F ∘ G`: each component of `outer` with `X_j` replaced by `inner_j`.
pub fn compose_maps(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap, AlgebraError> {
    if outer.nvars() != inner.nvars() {
        return Err(AlgebraError::DimensionMismatch {
            expected: outer.nvars(),
            found: inner.nvars(),
        });
    }
    let components = outer
        .components
        .iter()
        .map(|p| p.substitute(&inner.components))
        .collect::<Result<Vec<_>, _>>()?;
    PolyMap::new(components)
}

/// Maximum component degree, floored at one. All-constant maps are rejected.
pub fn map_degree(map: &PolyMap) -> Result<u32, MapError> {
    let max = map
        .components
        .iter()
        .map(Polynomial::degree)
        .max()
        .unwrap_or(Degree::MinusInf);
    match max {
        Degree::Finite(d) if d >= 1 => Ok(d),
        _ => Err(MapError::ConstantMap),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&shear());
        let y = Polynomial::var(2, 1);
        let expected = PolyMatrix::from_rows(vec![
            vec![konst(2, 1), y.scale(&Rational::from_int(2))],
            vec![konst(2, 0), konst(2, 1)],
        ])
        .unwrap();
        assert_eq!(j, expected);
        assert_eq!(jacobian(&PolyMap::identity(3)), PolyMatrix::identity(3, 3));
        let j = jacobian(&non_keller());
        let expected = PolyMatrix::from_rows(vec![
            vec![konst(2, 1), konst(2, 0)],
            vec![Polynomial::var(2, 1), Polynomial::var(2, 0)],
        ])
        .unwrap();
        assert_eq!(j, expected);
    }

    #[test]
    fn keller_examples() {
        assert_eq!(keller_check(&shear()).unwrap(), Rational::one());
        assert_eq!(keller_check(&affine()).unwrap(), Rational::from_int(10));
        match keller_check(&non_keller()) {
            Err(MapError::KellerViolation { det }) => assert_eq!(det, Polynomial::var(2, 0)),
            other => panic!("expected violation, got {other:?}"),
        }
        match keller_check(&square_x()) {
            Err(MapError::KellerViolation { det }) => {
                assert_eq!(det, Polynomial::var(2, 0).scale(&Rational::from_int(2)))
            }
            other => panic!("expected violation, got {other:?}"),
        }
        let zero = PolyMap::new(vec![Polynomial::zero(2), Polynomial::var(2, 1)]).unwrap();
        assert!(matches!(keller_check(&zero), Err(MapError::KellerViolation { det }) if det.is_zero()));
    }

    #[test]
    fn compose_examples() {
        assert!(compose_maps(&shear(), &shear_inverse()).unwrap().is_identity());
        let f = nagata();
        assert_eq!(compose_maps(&f, &PolyMap::identity(3)).unwrap(), f);
        assert_eq!(compose_maps(&PolyMap::identity(3), &f).unwrap(), f);
        assert!(compose_maps(&f, &shear()).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(map_degree(&shear()).unwrap(), 2);
        assert_eq!(map_degree(&affine()).unwrap(), 1);
        assert_eq!(map_degree(&nagata()).unwrap(), 5);
        let constant = PolyMap::new(vec![konst(2, 1), konst(2, 3)]).unwrap();
        assert!(matches!(map_degree(&constant), Err(MapError::ConstantMap)));
    }

    #[test]
    fn construction_errors() {
        assert!(PolyMap::new(vec![]).is_err());
        assert!(PolyMap::new(vec![Polynomial::var(3, 0), Polynomial::var(3, 1)]).is_err());
        assert!(shear().translated(&[Rational::one()]).is_err());
    }
}
