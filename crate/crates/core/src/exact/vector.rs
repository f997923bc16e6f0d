//! Column vectors as plain `Vec<Rational>`.

use super::field::Field;
use super::rational::Rational;

pub fn zero(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero(n);
    v[i] = Rational::one();
    v
}

pub fn from_i64s(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Field::is_zero)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

/// Euclidean dot product `Σ aᵢbᵢ`.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul_assign(x, y);
    }
    acc
}

/// `a·x + b·y`
pub fn combine(a: &Rational, x: &[Rational], b: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}
