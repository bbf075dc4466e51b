//! Exact rational arithmetic, sparse polynomials, monomial enumeration and
//! echelon-form linear algebra over spans of polynomials.

mod linalg;
mod monomial;
mod polynomial;

pub use linalg::{echelon_span, kernel, membership, Echelon, Membership, ReducedBasis, SparseVec};
pub use monomial::{monomials_of_degree, Monomial};
pub use polynomial::{poly_arith, ArithOp, Polynomial};

/// Arbitrary-precision rational, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
