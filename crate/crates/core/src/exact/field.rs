use std::fmt;

use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;

use super::matrix::{bareiss_rank, Matrix};

/// Exact field arithmetic shared by matrices and polynomials.
///
/// Operations take references so that big-number scalars are not cloned on
/// every use. Division by zero panics, as it does for the underlying types.
pub trait Field:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn inv_ref(&self) -> Self {
        Self::one().div_ref(self)
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.sub_ref(rhs);
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }

    /// Rank of a matrix over this field. Defaults to Gaussian elimination.
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        m.rank_by_elimination()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }

    fn one() -> Self {
        Rational::ONE
    }

    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }

    fn is_zero(&self) -> bool {
        *self == Rational::ZERO
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        bareiss_rank(m)
    }
}
