//! Algebraic curvature tensors `Σ λᵢ R_{φᵢ}`, their symmetry validation, and
//! curvature operators on planes.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::is_negative;
use crate::exact::{vector, Field, RMatrix, Rational, Vector};
use crate::space::{
    classify_plane, AdmissibleMap, CausalType, ComplexStructure, InnerProductSpace, PlaneBasis,
    PlaneSampler,
};

/// Largest dimension expanded to a dense `m⁴` array by default.
pub const DENSE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub lambda: Rational,
    pub phi: AdmissibleMap,
}

/// Components `R(eᵢ, eⱼ, eₖ, eₗ)` stored row-major in `(i, j, k, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTensor {
    dim: usize,
    entries: Vec<Rational>,
}

impl DenseTensor {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Rational::zero(); dim.pow(4)],
        }
    }

    pub fn from_entries(dim: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != dim.pow(4) {
            return Err(Error::DimensionMismatch {
                expected: dim.pow(4),
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    fn index(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.entries[self.index(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: Rational) {
        let idx = self.index(i, j, k, l);
        self.entries[idx] = v;
    }
}

/// A curvature tensor stored as a list of `λ·R_φ` terms.
///
/// A dense expansion is computed on first use for dimensions up to
/// [`DENSE_LIMIT`]. A tensor read from a file may instead carry an explicit
/// dense array, which then takes precedence in symmetry validation.
#[derive(Clone, Debug)]
pub struct CurvatureTensor {
    space: InnerProductSpace,
    terms: Vec<Term>,
    dense: OnceLock<DenseTensor>,
    explicit_dense: bool,
}

impl PartialEq for CurvatureTensor {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl CurvatureTensor {
    pub fn new(space: InnerProductSpace, terms: Vec<Term>) -> Result<Self> {
        for term in &terms {
            let phi = term.phi.matrix();
            if phi.rows() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    found: phi.rows(),
                });
            }
        }
        Ok(Self {
            space,
            terms,
            dense: OnceLock::new(),
            explicit_dense: false,
        })
    }

    pub fn zero(space: InnerProductSpace) -> Self {
        Self {
            space,
            terms: Vec::new(),
            dense: OnceLock::new(),
            explicit_dense: false,
        }
    }

    /// Attaches a dense array that is used as-is, whether or not it matches
    /// the terms.
    pub fn with_dense(self, dense: DenseTensor) -> Result<Self> {
        if dense.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: dense.dim(),
            });
        }
        let cell = OnceLock::new();
        let _ = cell.set(dense);
        Ok(Self {
            dense: cell,
            explicit_dense: true,
            ..self
        })
    }

    pub fn space(&self) -> &InnerProductSpace {
        &self.space
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn has_explicit_dense(&self) -> bool {
        self.explicit_dense
    }

    /// `λ·R` for every term.
    pub fn scale(&self, c: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                lambda: &t.lambda * c,
                phi: t.phi.clone(),
            })
            .collect();
        Self::zero(self.space.clone()).with_terms(terms)
    }

    fn with_terms(mut self, terms: Vec<Term>) -> Self {
        self.terms = terms;
        self
    }

    /// `R(eᵢ, eⱼ, eₖ, eₗ)` evaluated from the terms.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        TermEvaluator::new(self).component(i, j, k, l)
    }

    /// The dense array, expanding it from the terms if needed.
    pub fn dense(&self) -> Result<&DenseTensor> {
        self.dense_with_limit(DENSE_LIMIT)
    }

    pub fn dense_with_limit(&self, limit: usize) -> Result<&DenseTensor> {
        if let Some(d) = self.dense.get() {
            return Ok(d);
        }
        let n = self.dim();
        if n > limit {
            return Err(Error::DenseTooLarge { dim: n, limit });
        }
        Ok(self.dense.get_or_init(|| TermEvaluator::new(self).expand()))
    }

    /// First component where an attached dense array disagrees with the
    /// terms. Tensors without an explicit array trivially agree.
    pub fn dense_matches_terms(&self) -> Option<[usize; 4]> {
        if !self.explicit_dense {
            return None;
        }
        let dense = self.dense.get()?;
        let eval = TermEvaluator::new(self);
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if *dense.get(i, j, k, l) != eval.component(i, j, k, l) {
                            return Some([i, j, k, l]);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Precomputed `Bᵢ = G φᵢ`, so that
/// `R(eᵢ,eⱼ,eₖ,eₗ) = Σ λ (B[k][j]·B[l][i] − B[k][i]·B[l][j])`.
struct TermEvaluator<'a> {
    dim: usize,
    terms: Vec<(&'a Rational, RMatrix)>,
}

impl<'a> TermEvaluator<'a> {
    fn new(t: &'a CurvatureTensor) -> Self {
        let terms = t
            .terms
            .iter()
            .filter(|term| !term.lambda.is_zero())
            .map(|term| (&term.lambda, t.space.gram().mul(term.phi.matrix())))
            .collect();
        Self {
            dim: t.dim(),
            terms,
        }
    }

    fn component(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        let mut acc = Rational::zero();
        for (lambda, b) in &self.terms {
            let mut v = Rational::zero();
            v.add_mul_assign(b.get(k, j), b.get(l, i));
            let mut w = Rational::zero();
            w.add_mul_assign(b.get(k, i), b.get(l, j));
            if v != w {
                acc += *lambda * (v - w);
            }
        }
        acc
    }

    fn expand(&self) -> DenseTensor {
        let n = self.dim;
        let mut d = DenseTensor::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        d.set(i, j, k, l, self.component(i, j, k, l));
                    }
                }
            }
        }
        d
    }
}

/// `c·R_φ`.
pub fn build_r_phi(
    space: &InnerProductSpace,
    phi: &AdmissibleMap,
    c: Rational,
) -> Result<CurvatureTensor> {
    CurvatureTensor::new(
        space.clone(),
        vec![Term {
            lambda: c,
            phi: phi.clone(),
        }],
    )
}

/// Sum of two tensors over the same space.
pub fn combine(t1: &CurvatureTensor, t2: &CurvatureTensor) -> Result<CurvatureTensor> {
    if t1.space != t2.space {
        return Err(Error::SpaceMismatch);
    }
    let mut terms = t1.terms.clone();
    terms.extend(t2.terms.iter().cloned());
    CurvatureTensor::new(t1.space.clone(), terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    /// `R(x,y,z,w) = −R(y,x,z,w)`
    Antisymmetry,
    /// `R(x,y,z,w) = R(z,w,x,y)`
    PairSymmetry,
    /// `R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0`
    FirstBianchi,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Antisymmetry => "antisymmetry",
            Symmetry::PairSymmetry => "pair_symmetry",
            Symmetry::FirstBianchi => "first_bianchi",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryViolation {
    pub symmetry: Symmetry,
    pub indices: [usize; 4],
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub dim: usize,
    pub quadruples: usize,
    pub used_dense: bool,
    pub violation: Option<SymmetryViolation>,
    /// First component where an attached dense array disagrees with the terms.
    pub dense_mismatch: Option<[usize; 4]>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.dense_mismatch.is_none()
    }
}

/// Checks the three symmetries on every index quadruple.
///
/// An explicit dense array is validated directly. Otherwise components are
/// generated from the terms, through a dense expansion when the dimension
/// allows one.
pub fn validate_symmetries(t: &CurvatureTensor) -> SymmetryReport {
    let n = t.dim();
    let (violation, used_dense) = match t.dense() {
        Ok(d) => (
            check_symmetries(n, |i, j, k, l| d.get(i, j, k, l).clone()),
            true,
        ),
        Err(_) => {
            let eval = TermEvaluator::new(t);
            (
                check_symmetries(n, |i, j, k, l| eval.component(i, j, k, l)),
                false,
            )
        }
    };
    SymmetryReport {
        dim: n,
        quadruples: n.pow(4),
        used_dense,
        violation,
        dense_mismatch: t.dense_matches_terms(),
    }
}

fn check_symmetries(
    n: usize,
    r: impl Fn(usize, usize, usize, usize) -> Rational,
) -> Option<SymmetryViolation> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let base = r(i, j, k, l);
                    let residual = &base + r(j, i, k, l);
                    if !residual.is_zero() {
                        return Some(SymmetryViolation {
                            symmetry: Symmetry::Antisymmetry,
                            indices: [i, j, k, l],
                            residual,
                        });
                    }
                    let residual = &base - r(k, l, i, j);
                    if !residual.is_zero() {
                        return Some(SymmetryViolation {
                            symmetry: Symmetry::PairSymmetry,
                            indices: [i, j, k, l],
                            residual,
                        });
                    }
                    let residual = base + r(j, k, i, l) + r(k, i, j, l);
                    if !residual.is_zero() {
                        return Some(SymmetryViolation {
                            symmetry: Symmetry::FirstBianchi,
                            indices: [i, j, k, l],
                            residual,
                        });
                    }
                }
            }
        }
    }
    None
}

/// `z ↦ (φy, z)φx − (φx, z)φy`
pub fn r_phi_operator(
    space: &InnerProductSpace,
    phi: &RMatrix,
    x: &[Rational],
    y: &[Rational],
) -> RMatrix {
    sum_outer_products(space.dim(), &r_phi_factors(space, phi, x, y))
}

pub fn r_phi_factors(
    space: &InnerProductSpace,
    phi: &RMatrix,
    x: &[Rational],
    y: &[Rational],
) -> Vec<OuterProduct> {
    let u = phi.mul_vec(x);
    let v = phi.mul_vec(y);
    let (gu, gv) = (space.lower(&u), space.lower(&v));
    vec![
        OuterProduct {
            c: Rational::one(),
            a: u,
            b: gv,
        },
        OuterProduct {
            c: -Rational::one(),
            a: v,
            b: gu,
        },
    ]
}

/// `R(x, y)` as a sum of outer products `Σ c·a bᵀ`.
pub fn operator_factors(
    t: &CurvatureTensor,
    x: &[Rational],
    y: &[Rational],
) -> Result<Vec<OuterProduct>> {
    let n = t.dim();
    for len in [x.len(), y.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let mut out = Vec::with_capacity(2 * t.terms.len());
    for term in t.terms.iter().filter(|term| !term.lambda.is_zero()) {
        let u = term.phi.matrix().mul_vec(x);
        let v = term.phi.matrix().mul_vec(y);
        let (gu, gv) = (t.space.lower(&u), t.space.lower(&v));
        out.push(OuterProduct {
            c: term.lambda.clone(),
            a: u,
            b: gv,
        });
        out.push(OuterProduct {
            c: -&term.lambda,
            a: v,
            b: gu,
        });
    }
    Ok(out)
}

/// `c·a bᵀ`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterProduct {
    pub c: Rational,
    pub a: Vector,
    pub b: Vector,
}

/// Dense `Σ c·a bᵀ` of size `n × n`.
pub fn sum_outer_products(n: usize, parts: &[OuterProduct]) -> RMatrix {
    let mut m = RMatrix::zeros(n, n);
    for part in parts.iter().filter(|p| !p.c.is_zero()) {
        for (i, ai) in part.a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let cai = &part.c * ai;
            for (j, bj) in part.b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let cur = m.get(i, j) + &cai * bj;
                m.set(i, j, cur);
            }
        }
    }
    m
}

/// The endomorphism `R(x, y)` with `(R(x,y)z, w) = R(x,y,z,w)`.
pub fn curvature_operator(t: &CurvatureTensor, x: &[Rational], y: &[Rational]) -> Result<RMatrix> {
    Ok(sum_outer_products(t.dim(), &operator_factors(t, x, y)?))
}

/// `R(x, y)` obtained by raising the last index of a dense array.
pub fn curvature_operator_from_dense(
    space: &InnerProductSpace,
    dense: &DenseTensor,
    x: &[Rational],
    y: &[Rational],
) -> Result<RMatrix> {
    let n = space.dim();
    if dense.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: dense.dim(),
        });
    }
    // lowered[w][z] = R(x, y, e_z, e_w)
    let mut lowered = RMatrix::zeros(n, n);
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let c = xi * yj;
            for z in 0..n {
                for w in 0..n {
                    let r = dense.get(i, j, z, w);
                    if !r.is_zero() {
                        let cur = lowered.get(w, z) + &c * r;
                        lowered.set(w, z, cur);
                    }
                }
            }
        }
    }
    let inv = space.gram().inverse().ok_or(Error::DegenerateGram {
        rank: space.gram().rank(),
        dim: n,
    })?;
    Ok(inv.mul(&lowered))
}

/// `R(e₁, e₂)` for a plane basis, together with `det h`.
///
/// The normalized operator `|det h|^{-1/2}·m_raw` is only formed when
/// `|det h|` is a rational square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewOperator {
    pub m_raw: RMatrix,
    pub det_h: Rational,
    pub plane: PlaneBasis,
    /// `det h < 0`: the normalizer is imaginary and left to the caller.
    pub mixed: bool,
}

impl SkewOperator {
    /// `G·m_raw` is antisymmetric.
    pub fn is_skew_adjoint(&self, space: &InnerProductSpace) -> bool {
        let gm = space.gram().mul(&self.m_raw);
        gm.add(&gm.transpose()).is_zero()
    }

    /// `m_raw / √|det h|` when the root is rational.
    pub fn normalized(&self) -> Option<RMatrix> {
        let root = crate::exact::rational::checked_sqrt(&crate::exact::rational::abs(&self.det_h))?;
        Some(self.m_raw.scale(&root.inv_ref()))
    }
}

pub fn skew_operator(t: &CurvatureTensor, plane: &PlaneBasis) -> Result<SkewOperator> {
    if plane.is_degenerate() {
        return Err(Error::DegeneratePlane);
    }
    let m_raw = curvature_operator(t, &plane.e1, &plane.e2)?;
    Ok(SkewOperator {
        m_raw,
        det_h: plane.det_h.clone(),
        plane: plane.clone(),
        mixed: is_negative(&plane.det_h),
    })
}

/// Ranks of `R(π)` over sampled planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub samples: usize,
    pub seed: u64,
    pub ranks_constant: bool,
    /// The rank of the first sample.
    pub rank: usize,
    /// First sample whose rank differs from the first one.
    pub witness: Option<RankWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWitness {
    pub first: PlaneBasis,
    pub first_rank: usize,
    pub index: usize,
    pub other: PlaneBasis,
    pub other_rank: usize,
}

/// Samples spacelike planes (complex lines when `j` is given) and compares
/// `rank(m_raw)`.
pub fn spacelike_rank_profile(
    t: &CurvatureTensor,
    n_samples: usize,
    seed: u64,
    bound: i64,
    j: Option<&ComplexStructure>,
) -> Result<RankProfile> {
    let mut sampler = PlaneSampler::new(seed, bound);
    let mut first: Option<(PlaneBasis, usize)> = None;
    for index in 0..n_samples {
        let plane = match j {
            Some(j) => sampler.complex_line(t.space(), j, CausalType::Spacelike)?,
            None => sampler.plane(t.space(), CausalType::Spacelike)?,
        };
        let rank = skew_operator(t, &plane)?.m_raw.rank();
        match &first {
            None => first = Some((plane, rank)),
            Some((p0, r0)) if *r0 != rank => {
                return Ok(RankProfile {
                    samples: index + 1,
                    seed,
                    ranks_constant: false,
                    rank: *r0,
                    witness: Some(RankWitness {
                        first: p0.clone(),
                        first_rank: *r0,
                        index,
                        other: plane,
                        other_rank: rank,
                    }),
                });
            }
            Some(_) => {}
        }
    }
    Ok(RankProfile {
        samples: n_samples,
        seed,
        ranks_constant: true,
        rank: first.map_or(0, |(_, r)| r),
        witness: None,
    })
}

/// Plane spanned by `x` and `y`, orthogonalized the same way the sampler does.
pub fn plane_of(space: &InnerProductSpace, x: &[Rational], y: &[Rational]) -> Result<PlaneBasis> {
    let p = classify_plane(space, x, y)?;
    let h11 = p.h.get(0, 0);
    if h11.is_zero() {
        return Ok(p);
    }
    let c = -(p.h.get(0, 1) / h11);
    classify_plane(space, x, &vector::combine(&Rational::one(), y, &c, x))
}
