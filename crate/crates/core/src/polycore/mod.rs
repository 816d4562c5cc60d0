//! Symbolic substrate: exact scalars, sparse polynomials, the text format,
//! apolarity, Gröbner bases and dense linear algebra.

mod groebner;
pub mod linalg;
mod monomial;
mod order;
mod parse;
mod polynomial;
pub mod scalar;

pub use groebner::{
    groebner_basis, groebner_basis_bounded, normal_form, standard_monomial_basis, Budget,
    GroebnerBasis,
};
pub use linalg::{Matrix, Vector};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use parse::parse_polynomial;
pub use polynomial::{
    apply_diff_operator, homogeneous_component, poly_mul, substitute_linear, var_list, Degree,
    Polynomial,
};
pub use scalar::Scalar;
