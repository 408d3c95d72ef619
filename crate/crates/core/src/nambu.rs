//! The Nambu derivations of a Keller map.
//!
//! For `F` with constant Jacobian determinant `c`, the derivations
//! `δ = (J_F⁻¹)ᵀ ∂` are stored as the polynomial matrix `S = adj(J_F)ᵀ`
//! together with `c`, so `δ_i = (1/c) Σ_j S[i][j] ∂/∂X_j`. Since `c` is a
//! constant, each `δ_i` maps polynomials to polynomials, and `δ_i(F_j)` is
//! the Kronecker delta.

use crate::error::{AlgebraError, MapError};
use crate::matrix::PolyMatrix;
use crate::polymap::{jacobian, PolyMap};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NambuFrame {
    scaled_matrix: PolyMatrix,
    det_constant: Rational,
    // rows of S already divided by c
    coefficients: Vec<Vec<Polynomial>>,
}

impl NambuFrame {
    pub fn new(map: &PolyMap) -> Result<Self, MapError> {
        let jac = jacobian(map);
        let adj = jac.adjugate()?;
        // first-row expansion, reusing the cofactors
        let det = (0..map.nvars()).fold(Polynomial::zero(map.nvars()), |acc, j| {
            &acc + &(jac.get(0, j) * adj.get(j, 0))
        });
        let det_constant = match det.as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(MapError::KellerViolation { det }),
        };
        let scaled_matrix = adj.transpose();
        let inv_det = det_constant.recip().expect("Keller constant is nonzero");
        let coefficients = scaled_matrix
            .rows()
            .map(|r| r.iter().map(|p| p.scale(&inv_det)).collect())
            .collect();
        Ok(NambuFrame {
            scaled_matrix,
            det_constant,
            coefficients,
        })
    }

    pub fn nvars(&self) -> usize {
        self.scaled_matrix.nrows()
    }

    /// `adj(J_F)ᵀ`.
    pub fn scaled_matrix(&self) -> &PolyMatrix {
        &self.scaled_matrix
    }

    /// `det(J_F)`.
    pub fn det_constant(&self) -> &Rational {
        &self.det_constant
    }

    /// Coefficients of `δ_i` in the basis `∂/∂X_1, ..., ∂/∂X_n`.
    pub fn derivation_coefficients(&self, i: usize) -> &[Polynomial] {
        &self.coefficients[i]
    }

    /// `δ_i(p)` with a 0-based derivation index.
    pub fn apply(&self, i: usize, p: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let n = self.nvars();
        if i >= n {
            return Err(AlgebraError::IndexOutOfRange { index: i, len: n });
        }
        if p.nvars() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: p.nvars(),
            });
        }
        Ok(self.apply_unchecked(i, p))
    }

    pub(crate) fn apply_unchecked(&self, i: usize, p: &Polynomial) -> Polynomial {
        p.apply_derivation(&self.coefficients[i])
    }

    /// Lifts the frame to `2n` variables `(X, Y)`: the same derivations acting
    /// on the first `n` variables, with the `Y` block treated as constants.
    pub(crate) fn lifted_rows(&self) -> Vec<Vec<Polynomial>> {
        let n = self.nvars();
        self.coefficients
            .iter()
            .map(|r| r.iter().map(|p| p.embed(2 * n, 0)).collect())
            .collect()
    }
}

/// Convenience wrapper for [`NambuFrame::new`].
pub fn nambu_frame(map: &PolyMap) -> Result<NambuFrame, MapError> {
    NambuFrame::new(map)
}
