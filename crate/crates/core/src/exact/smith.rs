//! Invariant factors of `t·Id − A` over `F[t]`.
//!
//! Two routes produce the same sequence. [`smith_invariant_factors`] runs the
//! Smith normal form elimination on the full characteristic matrix.
//! [`invariant_factors`] first restricts a low-rank `A` to a small invariant
//! subspace that carries all of its non-trivial structure, which keeps
//! 32-dimensional curvature operators cheap.

use super::field::Field;
use super::matrix::Matrix;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Diagonal of the Smith normal form of a polynomial matrix.
///
/// Pivot is the nonzero entry of least degree, ties broken by the smallest
/// `(row, col)`. Returned entries are monic and form a divisibility chain;
/// zero diagonal entries are reported as zero polynomials at the end.
pub fn smith_diagonal<F: Field>(mut m: Vec<Vec<Polynomial<F>>>) -> Vec<Polynomial<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let size = rows.min(cols);
    let mut diag = Vec::with_capacity(size);
    for k in 0..size {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                diag.resize(size, Polynomial::zero());
                return diag;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let pivot = m[k][k].clone();
            let mut clean = true;

            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].div_rem(&pivot);
                for j in k..cols {
                    if !m[k][j].is_zero() {
                        m[i][j] = m[i][j].sub(&q.mul(&m[k][j]));
                    }
                }
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].div_rem(&pivot);
                for row in m.iter_mut().skip(k) {
                    if !row[k].is_zero() {
                        row[j] = row[j].sub(&q.mul(&row[k]));
                    }
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }

            let offending =
                (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !pivot.divides(&m[i][j])));
            if let Some(i) = offending {
                for j in k..cols {
                    m[k][j] = m[k][j].add(&m[i][j]);
                }
                continue;
            }
            diag.push(pivot.monic());
            break;
        }
    }
    diag
}

/// The characteristic matrix `t·Id − A`.
pub fn characteristic_matrix<F: Field>(a: &Matrix<F>) -> Vec<Vec<Polynomial<F>>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let c = a.get(i, j).neg_ref();
                    if i == j {
                        Polynomial::new(vec![c, F::one()])
                    } else {
                        Polynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect()
}

/// Invariant factors by Smith normal form of the full characteristic matrix.
/// Constant factors are elided.
pub fn smith_invariant_factors<F: Field>(a: &Matrix<F>) -> Result<Vec<Polynomial<F>>> {
    ensure_square(a)?;
    Ok(smith_diagonal(characteristic_matrix(a))
        .into_iter()
        .filter(|p| !p.is_constant())
        .collect())
}

/// `A` restricted to an invariant subspace `T` with a complementary
/// invariant subspace inside `ker A`.
///
/// `V = T ⊕ C` with `A·C = 0`, so `A` is similar to `matrix ⊕ 0`, where the
/// zero block has size `trivial`.
#[derive(Clone, Debug)]
pub struct CoreRestriction<F> {
    pub matrix: Matrix<F>,
    /// Columns span `T`.
    pub basis: Matrix<F>,
    pub trivial: usize,
}

/// Builds `T = span{e_j, A e_j : j pivot column of A}`.
///
/// Returns `None` when `T` would not be smaller than the whole space.
pub fn core_restriction<F: Field>(a: &Matrix<F>) -> Option<CoreRestriction<F>> {
    let n = a.rows();
    let pivots = a.pivot_columns();
    if 2 * pivots.len() >= n {
        return None;
    }
    if pivots.is_empty() {
        return Some(CoreRestriction {
            matrix: Matrix::zeros(0, 0),
            basis: Matrix::zeros(n, 0),
            trivial: n,
        });
    }
    let mut gens: Vec<Vec<F>> = pivots
        .iter()
        .map(|&j| {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            e
        })
        .collect();
    gens.extend(pivots.iter().map(|&j| a.col(j)));
    let g = Matrix::from_columns(&gens);
    let independent = g.pivot_columns();
    let basis = Matrix::from_columns(&independent.iter().map(|&j| g.col(j)).collect::<Vec<_>>());
    let d = basis.cols();
    let image = a.mul(&basis);
    // d independent rows of the basis give an invertible d×d system
    let rows = basis.transpose().pivot_columns();
    let pick = |m: &Matrix<F>| {
        Matrix::from_rows(rows.iter().map(|&i| m.row(i).to_vec()).collect()).expect("rectangular")
    };
    let sub_inv = pick(&basis)
        .inverse()
        .expect("selected rows are independent");
    let matrix = sub_inv.mul(&pick(&image));
    Some(CoreRestriction {
        matrix,
        basis,
        trivial: n - d,
    })
}

/// Invariant factors of `diag(factors…, t, …, t)` with `zero_blocks` copies
/// of `t`, i.e. of `A ⊕ 0` given the invariant factors of `A`.
pub fn merge_zero_blocks<F: Field>(
    factors: Vec<Polynomial<F>>,
    zero_blocks: usize,
) -> Vec<Polynomial<F>> {
    let mut list = factors;
    list.extend(std::iter::repeat_n(Polynomial::t(), zero_blocks));
    diagonal_smith(list)
}

/// Smith form of a diagonal matrix of monic polynomials via pairwise gcd/lcm.
pub fn diagonal_smith<F: Field>(mut list: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if list[i].divides(&list[j]) {
                continue;
            }
            let g = list[i].gcd(&list[j]);
            let l = list[i].lcm(&list[j]);
            list[i] = g;
            list[j] = l;
        }
    }
    list.into_iter().filter(|p| !p.is_constant()).collect()
}

/// Invariant factors of `t·Id − A`: monic, each dividing the next, constant
/// factors elided, product equal to the characteristic polynomial.
pub fn invariant_factors<F: Field>(a: &Matrix<F>) -> Result<Vec<Polynomial<F>>> {
    ensure_square(a)?;
    match core_restriction(a) {
        None => smith_invariant_factors(a),
        Some(core) => Ok(merge_zero_blocks(
            smith_invariant_factors(&core.matrix)?,
            core.trivial,
        )),
    }
}

fn ensure_square<F: Field>(a: &Matrix<F>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}
