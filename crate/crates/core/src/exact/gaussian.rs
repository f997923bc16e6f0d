use std::fmt;

use malachite_q::Rational;

use super::field::Field;
use super::rational::is_negative;

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if is_negative(&self.im) {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }

    fn one() -> Self {
        Self::real(Rational::one())
    }

    fn from_i64(v: i64) -> Self {
        Self::real(Rational::from(v))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        let n = rhs.norm_sq();
        assert!(!n.is_zero(), "division by zero");
        let p = self.mul_ref(&rhs.conj());
        Self {
            re: p.re / &n,
            im: p.im / n,
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.mul_ref(&i), GaussianRational::from_i64(-1));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = GaussianRational::new(frac(3, 2), rat(-2));
        let b = GaussianRational::new(rat(1), frac(1, 3));
        assert_eq!(a.mul_ref(&b).div_ref(&b), a);
        assert_eq!(a.to_string(), "3/2-2i");
    }
}
