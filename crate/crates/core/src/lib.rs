//! Exact arithmetic for polynomial maps `F: Q^n -> Q^n` with constant
//! Jacobian determinant: deciding invertibility and building the inverse.

pub mod catalog;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod io;
pub mod matrix;
pub mod monomial;
pub mod nambu;
pub mod polymap;
pub mod polynomial;
pub mod rational;

pub use criteria::{
    cross_check, essen_criterion, run_criteria, series_inverse_oracle, taylor_criterion, verify_inverse, Criterion,
    CriterionError, Verdict, Witness,
};
pub use error::{AlgebraError, MapError};
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use nambu::{nambu_frame, NambuFrame};
pub use polymap::{compose_maps, jacobian, keller_check, map_degree, PolyMap};
pub use polynomial::{Degree, Polynomial};
pub use rational::Rational;
