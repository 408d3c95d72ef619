//! Invertibility deciders for Keller maps.
//!
//! Three independent routes decide whether a map with constant nonzero
//! Jacobian determinant has a polynomial inverse:
//!
//! - [`taylor_criterion`]: expand each `X_i` in the Nambu derivatives
//!   `δ^α X_i`; the expansion terminates exactly when `X_i` lies in `C[F]`,
//!   and its Taylor coefficients at the origin give the inverse.
//! - [`essen_criterion`]: nilpotency of `D = Σ Y_j δ_j` on the `X_i`, in
//!   `2n` variables.
//! - [`series_inverse_oracle`]: fixed-point iteration for the formal inverse.
//!
//! All three run behind the Keller gate and check their certificate with
//! [`verify_inverse`] before reporting a map invertible.

mod essen;
mod report;
mod series;
mod taylor;

use std::fmt;

pub use essen::{essen_criterion, essen_run, EssenState};
pub use report::{cross_check, run_criteria, run_criteria_timed, CriterionReport, CriterionRun, Execution};
pub use series::{series_inverse_oracle, series_run};
pub use taylor::{build_inverse, taylor_criterion, taylor_run, DerivativeTable};

use crate::error::{AlgebraError, MapError};
use crate::monomial::Monomial;
use crate::nambu::NambuFrame;
use crate::polymap::{compose_maps, map_degree, PolyMap};
use crate::polynomial::{Degree, Polynomial};
use crate::rational::Rational;

/// A concrete nonzero object showing the search ended without a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// 0-based component index `i`.
    pub component: usize,
    /// `|α|` for a derivative, `k` for `D^k`, the truncation degree for a
    /// series residual.
    pub level: u64,
    /// `α` when the witness is a table entry `δ^α X_i`.
    pub multi_index: Option<Monomial>,
    pub value: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Invertible { inverse: PolyMap, levels: u64 },
    NotInvertibleWithinBound { bound: u64, witness: Witness },
    KellerViolation { det: Polynomial },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Invertible { .. } => "invertible",
            Verdict::NotInvertibleWithinBound { .. } => "not-within-bound",
            Verdict::KellerViolation { .. } => "keller-violation",
        }
    }

    pub fn is_invertible(&self) -> bool {
        matches!(self, Verdict::Invertible { .. })
    }

    pub fn inverse(&self) -> Option<&PolyMap> {
        match self {
            Verdict::Invertible { inverse, .. } => Some(inverse),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Taylor,
    Essen,
    Series,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Taylor, Criterion::Essen, Criterion::Series];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Taylor => "taylor",
            Criterion::Essen => "essen",
            Criterion::Series => "series",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Criterion {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "taylor" => Ok(Criterion::Taylor),
            "essen" => Ok(Criterion::Essen),
            "series" => Ok(Criterion::Series),
            other => Err(format!("unknown criterion `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriterionError {
    #[error("derivative table has no all-zero level")]
    IncompleteTable,
    #[error("{criterion} produced an inverse that fails verification")]
    CertificateRejected { criterion: Criterion },
    #[error("criteria disagree: {details}")]
    Disagreement { details: String },
    #[error("map has only constant components")]
    ConstantMap,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Counters gathered while a decider runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Table levels, `D` powers or fixed-point iterations performed.
    pub iterations: u64,
    /// Largest number of terms held at once across one level or iterate.
    pub peak_terms: usize,
}

/// A verdict together with its [`RunStats`].
#[derive(Clone, Debug)]
pub struct Run {
    pub verdict: Verdict,
    pub stats: RunStats,
}

/// `true` iff `F` and `G` are mutually inverse, checked exactly.
///
/// For polynomial maps of `Q^n` a one-sided inverse is two-sided: from
/// `F ∘ G = id` the Jacobian of `G` has constant nonzero determinant and `G`
/// is injective, so `G` is an automorphism and `F` is its inverse. Only one
/// composition is formed, with the lower-degree map outside since expanding
/// high powers of the inner map dominates the cost.
pub fn verify_inverse(f: &PolyMap, g: &PolyMap) -> Result<bool, AlgebraError> {
    if f.nvars() != g.nvars() {
        return Err(AlgebraError::DimensionMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    let cost = |m: &PolyMap| (max_degree(m), m.term_count());
    let (outer, inner) = if cost(f) <= cost(g) { (f, g) } else { (g, f) };
    Ok(compose_maps(outer, inner)?.is_identity())
}

fn max_degree(m: &PolyMap) -> Degree {
    m.components()
        .iter()
        .map(Polynomial::degree)
        .max()
        .unwrap_or(Degree::MinusInf)
}

/// The termination bound `d^(n-1)` with `d` the map degree, saturating.
pub fn default_bound(f: &PolyMap) -> Result<u64, CriterionError> {
    let d = map_degree(f).map_err(|_| CriterionError::ConstantMap)? as u64;
    let exp = u32::try_from(f.nvars() - 1).unwrap_or(u32::MAX);
    Ok(d.saturating_pow(exp))
}

/// Passes the Keller gate, or returns the verdict for a violation.
pub(crate) fn gate(f: &PolyMap) -> Result<Result<NambuFrame, Verdict>, CriterionError> {
    match NambuFrame::new(f) {
        Ok(frame) => Ok(Ok(frame)),
        Err(MapError::KellerViolation { det }) => Ok(Err(Verdict::KellerViolation { det })),
        Err(MapError::ConstantMap) => Err(CriterionError::ConstantMap),
        Err(MapError::Algebra(e)) => Err(e.into()),
    }
}

/// Turns expansions in powers of `Y − F(0)` into polynomials in `Y`.
pub(crate) fn recenter(expansions: Vec<Vec<(Monomial, Rational)>>, f: &PolyMap) -> Result<PolyMap, AlgebraError> {
    let n = f.nvars();
    let origin = f.value_at_origin();
    let components: Vec<Polynomial> = if origin.iter().all(Rational::is_zero) {
        expansions
            .into_iter()
            .map(|terms| Polynomial::from_terms(n, terms))
            .collect()
    } else {
        let shifted: Vec<Polynomial> = origin
            .into_iter()
            .enumerate()
            .map(|(j, b)| &Polynomial::var(n, j) - &Polynomial::constant(n, b))
            .collect();
        expansions
            .into_iter()
            .map(|terms| Polynomial::from_terms(n, terms).substitute(&shifted))
            .collect::<Result<_, _>>()?
    };
    PolyMap::new(components)
}

/// Checks the inverse of an `Invertible` run by composition.
pub(crate) fn certified(criterion: Criterion, f: &PolyMap, run: Run) -> Result<Run, CriterionError> {
    if let Verdict::Invertible { inverse, .. } = &run.verdict {
        certify(criterion, f, inverse)?;
    }
    Ok(run)
}

pub(crate) fn certify(criterion: Criterion, f: &PolyMap, g: &PolyMap) -> Result<(), CriterionError> {
    if verify_inverse(f, g)? {
        Ok(())
    } else {
        Err(CriterionError::CertificateRejected { criterion })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::rational::Rational;

    #[test]
    fn verify_examples() {
        assert!(verify_inverse(&shear(), &shear_inverse()).unwrap());
        assert!(verify_inverse(&PolyMap::identity(2), &PolyMap::identity(2)).unwrap());
        let (x, y) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
        let wrong = PolyMap::new(vec![&x + &(&y * &y), y.clone()]).unwrap();
        assert!(!verify_inverse(&shear(), &wrong).unwrap());
        let residual = compose_maps(&shear(), &wrong).unwrap();
        assert_eq!(residual.component(0), &(&x + &(&y * &y).scale(&Rational::from_int(2))));
        assert!(verify_inverse(&shear(), &PolyMap::identity(3)).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(default_bound(&shear()).unwrap(), 2);
        assert_eq!(default_bound(&nagata()).unwrap(), 25);
        assert_eq!(default_bound(&PolyMap::identity(4)).unwrap(), 1);
    }
}
