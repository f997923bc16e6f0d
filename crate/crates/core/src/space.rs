//! Inner product spaces of signature `(p, q)`, causal character of 2-planes,
//! seeded plane samplers, and admissibility of the maps `φ`, `J` and triples
//! `(φ₁, φ₂, J)` used to build curvature tensors.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{is_negative, is_positive};
use crate::exact::{vector, Field, RMatrix, Rational, Vector};

/// Default half-width of the integer box vectors are drawn from.
pub const DEFAULT_BOUND: i64 = 7;
/// Default number of rejection-sampling attempts before giving up.
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

/// Counts of negative, positive and zero squares of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub negative: usize,
    pub positive: usize,
    pub zero: usize,
}

/// Sylvester inertia by exact symmetric congruence diagonalization.
/// The input is assumed symmetric.
pub fn inertia(gram: &RMatrix) -> Inertia {
    let n = gram.rows();
    let mut a = gram.to_rows();
    let mut out = Inertia {
        negative: 0,
        positive: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ← e_k + e_j makes the diagonal entry 2·a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                out.zero += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if is_positive(&pivot) {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
            a[i][k] = Rational::zero();
        }
        for j in k + 1..n {
            a[k][j] = Rational::zero();
        }
    }
    out
}

/// `(p, q)`: counts of negative and positive squares. `p + q < dim` signals a
/// degenerate form.
pub fn signature(gram: &RMatrix) -> Result<(usize, usize)> {
    if !gram.is_square() {
        return Err(Error::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let i = inertia(gram);
    Ok((i.negative, i.positive))
}

/// A real vector space with a nondegenerate symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProductSpace {
    gram: RMatrix,
    p: usize,
    q: usize,
}

impl InnerProductSpace {
    pub fn new(gram: RMatrix) -> Result<Self> {
        let (p, q) = signature(&gram)?;
        if p + q != gram.rows() {
            return Err(Error::DegenerateGram {
                rank: p + q,
                dim: gram.rows(),
            });
        }
        Ok(Self { gram, p, q })
    }

    /// Diagonal form with the given entries.
    pub fn diagonal(diag: &[i64]) -> Result<Self> {
        Self::new(RMatrix::diagonal_i64(diag))
    }

    pub fn euclidean(dim: usize) -> Self {
        Self {
            gram: RMatrix::identity(dim),
            p: 0,
            q: dim,
        }
    }

    /// Tensor product space, Gram matrix `self.gram ⊗ other.gram`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::new(self.gram.kron(&other.gram)).expect("tensor product of nondegenerate forms")
    }

    pub fn gram(&self) -> &RMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_riemannian(&self) -> bool {
        self.p == 0
    }

    /// `G x`, the covector of `x`.
    pub fn lower(&self, x: &[Rational]) -> Vector {
        self.gram.mul_vec(x)
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        vector::dot(x, &self.lower(y))
    }

    pub fn norm_sq(&self, x: &[Rational]) -> Rational {
        self.inner(x, x)
    }

    /// `G A = Aᵀ G`.
    pub fn is_self_adjoint(&self, a: &RMatrix) -> bool {
        let ga = self.gram.mul(a);
        ga.is_symmetric()
    }

    /// Adjoint `A* = G⁻¹ Aᵀ G`.
    pub fn adjoint(&self, a: &RMatrix) -> RMatrix {
        let inv = self.gram.inverse().expect("nondegenerate gram");
        inv.mul(&a.transpose()).mul(&self.gram)
    }

    /// Gram matrix of the form restricted to the span of `basis`.
    pub fn restricted_gram(&self, basis: &[Vector]) -> RMatrix {
        let k = basis.len();
        let lowered: Vec<Vector> = basis.iter().map(|b| self.lower(b)).collect();
        let mut h = RMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                h.set(i, j, vector::dot(&basis[i], &lowered[j]));
            }
        }
        h
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }

    fn check_square_map(&self, a: &RMatrix) -> Result<()> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        self.check_dim(a.rows())
    }
}

/// Causal character of a 2-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalType {
    Spacelike,
    Timelike,
    Mixed,
    Degenerate,
}

impl CausalType {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::Mixed => "mixed",
            CausalType::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CausalType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spacelike" => Ok(CausalType::Spacelike),
            "timelike" => Ok(CausalType::Timelike),
            "mixed" => Ok(CausalType::Mixed),
            "degenerate" => Ok(CausalType::Degenerate),
            other => Err(Error::Parse(format!("unknown plane type {other:?}"))),
        }
    }
}

/// An (ordered) basis of a 2-plane together with its induced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBasis {
    pub e1: Vector,
    pub e2: Vector,
    /// `h[i][j] = (eᵢ, eⱼ)`
    pub h: RMatrix,
    pub det_h: Rational,
    pub causal_type: CausalType,
}

impl PlaneBasis {
    pub fn is_degenerate(&self) -> bool {
        self.causal_type == CausalType::Degenerate
    }

    /// Same plane with the basis order swapped.
    pub fn reversed(&self, space: &InnerProductSpace) -> Result<Self> {
        classify_plane(space, &self.e2, &self.e1)
    }
}

pub fn classify_plane(
    space: &InnerProductSpace,
    e1: &[Rational],
    e2: &[Rational],
) -> Result<PlaneBasis> {
    space.check_dim(e1.len())?;
    space.check_dim(e2.len())?;
    if RMatrix::from_columns(&[e1.to_vec(), e2.to_vec()]).rank() < 2 {
        return Err(Error::DependentVectors);
    }
    let h = space.restricted_gram(&[e1.to_vec(), e2.to_vec()]);
    let det_h = h.get(0, 0) * h.get(1, 1) - h.get(0, 1) * h.get(0, 1);
    let causal_type = if det_h.is_zero() {
        CausalType::Degenerate
    } else if is_negative(&det_h) {
        CausalType::Mixed
    } else if is_positive(h.get(0, 0)) {
        CausalType::Spacelike
    } else {
        CausalType::Timelike
    };
    Ok(PlaneBasis {
        e1: e1.to_vec(),
        e2: e2.to_vec(),
        h,
        det_h,
        causal_type,
    })
}

/// Seeded source of integer vectors.
///
/// The generator is SplitMix64 with its state initialized to the seed; an
/// entry in `[-bound, bound]` is `next_u64() mod (2·bound + 1) − bound`.
#[derive(Clone, Debug)]
pub struct VectorSampler {
    rng: SplitMix64,
    bound: i64,
}

impl VectorSampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1, "sampling bound must be positive");
        Self {
            rng: SplitMix64::seed_from_u64(seed),
            bound,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn entry(&mut self) -> i64 {
        let width = (2 * self.bound + 1) as u64;
        (self.rng.next_u64() % width) as i64 - self.bound
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        (0..n).map(|_| Rational::from(self.entry())).collect()
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vector {
        loop {
            let v = self.vector(n);
            if !vector::is_zero(&v) {
                return v;
            }
        }
    }
}

/// Rejection sampler for planes and complex lines of a prescribed type.
#[derive(Clone, Debug)]
pub struct PlaneSampler {
    vectors: VectorSampler,
    max_attempts: usize,
}

impl PlaneSampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        Self {
            vectors: VectorSampler::new(seed, bound),
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn with_max_attempts(mut self, max_attempts: usize) -> Self {
        self.max_attempts = max_attempts;
        self
    }

    pub fn vectors(&mut self) -> &mut VectorSampler {
        &mut self.vectors
    }

    /// Draws integer pairs until one spans a plane of the wanted type, then
    /// orthogonalizes `e2` against `e1` (no normalization).
    pub fn plane(&mut self, space: &InnerProductSpace, wanted: CausalType) -> Result<PlaneBasis> {
        if wanted == CausalType::Degenerate {
            return Err(Error::InvalidArgument(
                "cannot sample degenerate planes".into(),
            ));
        }
        let n = space.dim();
        for _ in 0..self.max_attempts {
            let e1 = self.vectors.vector(n);
            let e2 = self.vectors.vector(n);
            let Ok(plane) = classify_plane(space, &e1, &e2) else {
                continue;
            };
            if plane.causal_type != wanted {
                continue;
            }
            let h11 = plane.h.get(0, 0);
            if h11.is_zero() {
                return Ok(plane);
            }
            let c = -(plane.h.get(0, 1) / h11);
            let e2 = vector::combine(&Rational::one(), &e2, &c, &e1);
            return classify_plane(space, &e1, &e2);
        }
        Err(Error::SamplerExhausted {
            wanted,
            attempts: self.max_attempts,
        })
    }

    /// Draws `x` with `(x, x)` of the wanted sign and returns `{x, Jx}`.
    pub fn complex_line(
        &mut self,
        space: &InnerProductSpace,
        j: &ComplexStructure,
        wanted: CausalType,
    ) -> Result<PlaneBasis> {
        match wanted {
            CausalType::Spacelike | CausalType::Timelike => {}
            CausalType::Mixed => return Err(Error::NoMixedComplexLines),
            CausalType::Degenerate => {
                return Err(Error::InvalidArgument(
                    "cannot sample degenerate complex lines".into(),
                ))
            }
        }
        let n = space.dim();
        for _ in 0..self.max_attempts {
            let x = self.vectors.vector(n);
            let s = space.norm_sq(&x);
            let ok = match wanted {
                CausalType::Spacelike => is_positive(&s),
                _ => is_negative(&s),
            };
            if ok {
                let jx = j.matrix().mul_vec(&x);
                return classify_plane(space, &x, &jx);
            }
        }
        Err(Error::SamplerExhausted {
            wanted,
            attempts: self.max_attempts,
        })
    }
}

pub fn sample_plane(
    space: &InnerProductSpace,
    wanted: CausalType,
    seed: u64,
    bound: i64,
) -> Result<PlaneBasis> {
    PlaneSampler::new(seed, bound).plane(space, wanted)
}

pub fn sample_complex_line(
    space: &InnerProductSpace,
    j: &ComplexStructure,
    wanted: CausalType,
    seed: u64,
    bound: i64,
) -> Result<PlaneBasis> {
    PlaneSampler::new(seed, bound).complex_line(space, j, wanted)
}

/// Which of `φ² = Id`, `φ² = −Id`, `φ² = 0` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Delta {
    Plus,
    Minus,
    Zero,
}

impl Delta {
    pub const ALL: [Delta; 3] = [Delta::Plus, Delta::Minus, Delta::Zero];

    pub fn value(self) -> i64 {
        match self {
            Delta::Plus => 1,
            Delta::Minus => -1,
            Delta::Zero => 0,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Delta::Plus),
            -1 => Ok(Delta::Minus),
            0 => Ok(Delta::Zero),
            other => Err(Error::InvalidArgument(format!(
                "delta must be +1, -1 or 0, got {other}"
            ))),
        }
    }

    pub fn is_zero(self) -> bool {
        self == Delta::Zero
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Delta::Plus => "+1",
            Delta::Minus => "-1",
            Delta::Zero => "0",
        })
    }
}

impl FromStr for Delta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" => Ok(Delta::Plus),
            "-1" => Ok(Delta::Minus),
            "0" | "+0" | "-0" => Ok(Delta::Zero),
            other => Err(Error::Parse(format!(
                "delta must be +1, -1 or 0, got {other:?}"
            ))),
        }
    }
}

impl Serialize for Delta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Delta {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Delta::from_value(v).map_err(serde::de::Error::custom)
    }
}

/// Self-adjoint `φ` with `φ² = δ·Id` whose kernel has no spacelike vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleMap {
    phi: RMatrix,
    delta: Delta,
}

impl AdmissibleMap {
    pub fn matrix(&self) -> &RMatrix {
        &self.phi
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }
}

pub fn check_admissible(space: &InnerProductSpace, phi: &RMatrix) -> Result<AdmissibleMap> {
    space.check_square_map(phi)?;
    if !space.is_self_adjoint(phi) {
        return Err(Error::NotSelfAdjoint);
    }
    let n = space.dim();
    let sq = phi.mul(phi);
    let id = RMatrix::identity(n);
    let delta = if sq == id {
        Delta::Plus
    } else if sq == id.neg() {
        Delta::Minus
    } else if sq.is_zero() {
        Delta::Zero
    } else {
        return Err(Error::BadSquare);
    };
    let kernel = phi.kernel_basis();
    if !kernel.is_empty() && inertia(&space.restricted_gram(&kernel)).positive > 0 {
        return Err(Error::SpacelikeKernel);
    }
    Ok(AdmissibleMap {
        phi: phi.clone(),
        delta,
    })
}

/// `J² = −Id` preserving the inner product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    j: RMatrix,
}

impl ComplexStructure {
    pub fn new(space: &InnerProductSpace, j: RMatrix) -> Result<Self> {
        space.check_square_map(&j)?;
        let n = space.dim();
        let (p, q) = space.signature();
        if !n.is_multiple_of(2) || p % 2 != 0 || q % 2 != 0 {
            return Err(Error::InvalidComplexStructure("p and q must both be even"));
        }
        if j.mul(&j) != RMatrix::identity(n).neg() {
            return Err(Error::InvalidComplexStructure("J^2 = -Id"));
        }
        if j.transpose().mul(space.gram()).mul(&j) != *space.gram() {
            return Err(Error::InvalidComplexStructure("(Jx, Jy) = (x, y)"));
        }
        Ok(Self { j })
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.j
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.j.mul_vec(x)
    }
}

/// `(φ₁, φ₂, J)` with `Jφ₁ = φ₁J`, `Jφ₂ = −φ₂J`, `φ₁φ₂ + φ₂φ₁ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTriple {
    pub phi1: AdmissibleMap,
    pub phi2: AdmissibleMap,
    pub j: ComplexStructure,
    pub epsilon1: i8,
    pub epsilon2: i8,
}

impl AdmissibleTriple {
    pub fn deltas(&self) -> (Delta, Delta) {
        (self.phi1.delta, self.phi2.delta)
    }
}

pub fn check_triple(
    space: &InnerProductSpace,
    phi1: &RMatrix,
    phi2: &RMatrix,
    j: &RMatrix,
) -> Result<AdmissibleTriple> {
    let phi1 =
        check_admissible(space, phi1).map_err(|_| Error::TripleViolation("phi1 admissible"))?;
    let phi2 =
        check_admissible(space, phi2).map_err(|_| Error::TripleViolation("phi2 admissible"))?;
    let j = ComplexStructure::new(space, j.clone())
        .map_err(|_| Error::TripleViolation("J pseudo-Hermitian complex structure"))?;
    let (a, b, jm) = (phi1.matrix(), phi2.matrix(), j.matrix());
    if !a.mul(b).add(&b.mul(a)).is_zero() {
        return Err(Error::TripleViolation("phi1 phi2 + phi2 phi1 = 0"));
    }
    if jm.mul(a) != a.mul(jm) {
        return Err(Error::TripleViolation("J phi1 = phi1 J"));
    }
    if jm.mul(b) != b.mul(jm).neg() {
        return Err(Error::TripleViolation("J phi2 = -phi2 J"));
    }
    if phi1.delta.is_zero() && phi2.delta.is_zero() {
        return Err(Error::TripleViolation("phi1^2 != 0 or phi2^2 != 0"));
    }
    Ok(AdmissibleTriple {
        phi1,
        phi2,
        j,
        epsilon1: 1,
        epsilon2: -1,
    })
}

/// Sign `ε` with `Jφ = εφJ`, if any.
pub fn commutation_sign(phi: &RMatrix, j: &ComplexStructure) -> Option<i8> {
    let jp = j.matrix().mul(phi);
    let pj = phi.mul(j.matrix());
    if jp == pj {
        Some(1)
    } else if jp == pj.neg() {
        Some(-1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn v(xs: &[i64]) -> Vector {
        vector::from_i64s(xs)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&RMatrix::identity(4)).unwrap(), (0, 4));
        assert_eq!(signature(&RMatrix::diagonal_i64(&[-1, 1])).unwrap(), (1, 1));
        let g = RMatrix::diagonal_i64(&[-1, 1]);
        assert_eq!(signature(&g.kron(&g)).unwrap(), (2, 2));
        assert_eq!(
            signature(&RMatrix::from_i64s(2, 2, &[0, 1, 0, 0])),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn signature_of_hyperbolic_plane_without_diagonal() {
        // [[0,1],[1,0]] has a zero diagonal and signature (1,1)
        assert_eq!(
            signature(&RMatrix::from_i64s(2, 2, &[0, 1, 1, 0])).unwrap(),
            (1, 1)
        );
        let degenerate = RMatrix::from_i64s(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(
            inertia(&degenerate),
            Inertia {
                negative: 1,
                positive: 1,
                zero: 1
            }
        );
        assert!(matches!(
            InnerProductSpace::new(degenerate),
            Err(Error::DegenerateGram { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let e4 = InnerProductSpace::euclidean(4);
        let p = classify_plane(&e4, &v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).unwrap();
        assert_eq!(
            (p.causal_type, p.det_h.clone()),
            (CausalType::Spacelike, rat(1))
        );

        let s22 = InnerProductSpace::diagonal(&[-1, -1, 1, 1]).unwrap();
        let p = classify_plane(&s22, &v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).unwrap();
        assert_eq!(p.causal_type, CausalType::Timelike);

        // h = diag(-1, 1), det -1
        let s11 = InnerProductSpace::diagonal(&[-1, 1]).unwrap();
        let p = classify_plane(&s11, &v(&[1, 0]), &v(&[0, 1])).unwrap();
        assert_eq!((p.causal_type, p.det_h), (CausalType::Mixed, rat(-1)));

        let p = classify_plane(&s11, &v(&[1, 1]), &v(&[1, 0])).unwrap();
        assert_eq!(p.causal_type, CausalType::Mixed);
        assert_eq!(
            classify_plane(&s11, &v(&[1, 1]), &v(&[2, 2])),
            Err(Error::DependentVectors)
        );
    }

    #[test]
    fn degenerate_plane_detected() {
        let s = InnerProductSpace::diagonal(&[-1, 1, 1]).unwrap();
        // span{(1,1,0), (0,0,1)}: h = [[0,0],[0,1]]
        let p = classify_plane(&s, &v(&[1, 1, 0]), &v(&[0, 0, 1])).unwrap();
        assert_eq!(p.causal_type, CausalType::Degenerate);
    }

    #[test]
    fn splitmix_reference_output() {
        // SplitMix64 reference stream for seed 0
        let mut s = VectorSampler::new(0, 1);
        assert_eq!(s.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(s.next_u64(), 0x6e789e6aa1b965f4);
    }

    #[test]
    fn spacelike_sample_is_orthogonal() {
        let space = InnerProductSpace::euclidean(4);
        let p = sample_plane(&space, CausalType::Spacelike, 42, 5).unwrap();
        assert!(is_positive(&p.det_h));
        assert!(p.h.get(0, 1).is_zero());
        for x in p.e1.iter().chain(&p.e2) {
            assert!(crate::exact::rational::abs(x) <= rat(5) || x.to_string().contains('/'));
        }
    }

    #[test]
    fn impossible_request_exhausts() {
        let space = InnerProductSpace::diagonal(&[-1, 1]).unwrap();
        let err = PlaneSampler::new(9, 3)
            .with_max_attempts(500)
            .plane(&space, CausalType::Spacelike);
        assert_eq!(
            err,
            Err(Error::SamplerExhausted {
                wanted: CausalType::Spacelike,
                attempts: 500
            })
        );
    }

    #[test]
    fn mixed_sample_in_lorentzian_six_space() {
        let space = InnerProductSpace::diagonal(&[-1, 1, 1, 1, 1, 1]).unwrap();
        let p = sample_plane(&space, CausalType::Mixed, 7, 3).unwrap();
        assert!(is_negative(&p.det_h));
    }

    #[test]
    fn sampler_is_reproducible() {
        let space = InnerProductSpace::diagonal(&[-1, -1, 1, 1, 1]).unwrap();
        let a = sample_plane(&space, CausalType::Timelike, 11, 7).unwrap();
        let b = sample_plane(&space, CausalType::Timelike, 11, 7).unwrap();
        assert_eq!(a, b);
    }

    fn block_rotation(n: usize) -> RMatrix {
        let j0 = RMatrix::from_i64s(2, 2, &[0, 1, -1, 0]);
        RMatrix::identity(n / 2).kron(&j0)
    }

    #[test]
    fn complex_line_structure() {
        let space = InnerProductSpace::euclidean(4);
        let j = ComplexStructure::new(&space, block_rotation(4)).unwrap();
        let line = sample_complex_line(&space, &j, CausalType::Spacelike, 1, 7).unwrap();
        let s = line.h.get(0, 0).clone();
        assert!(is_positive(&s));
        assert_eq!(line.h, RMatrix::identity(2).scale(&s));
        assert_eq!(
            sample_complex_line(&space, &j, CausalType::Mixed, 1, 7),
            Err(Error::NoMixedComplexLines)
        );
    }

    #[test]
    fn timelike_complex_line_in_split_signature() {
        let space = InnerProductSpace::diagonal(&[-1, -1, 1, 1]).unwrap();
        let j = ComplexStructure::new(&space, block_rotation(4)).unwrap();
        let line = sample_complex_line(&space, &j, CausalType::Timelike, 3, 7).unwrap();
        let s = line.h.get(0, 0).clone();
        assert!(is_negative(&s));
        assert!(line.h.get(0, 1).is_zero());
        assert_eq!(line.det_h, &s * &s);
    }

    #[test]
    fn admissible_examples() {
        let e4 = InnerProductSpace::euclidean(4);
        assert_eq!(
            check_admissible(&e4, &RMatrix::identity(4))
                .unwrap()
                .delta(),
            Delta::Plus
        );

        let s11 = InnerProductSpace::diagonal(&[-1, 1]).unwrap();
        let gamma = RMatrix::from_i64s(2, 2, &[1, -1, 1, -1]);
        let a = check_admissible(&s11, &gamma).unwrap();
        assert_eq!(a.delta(), Delta::Zero);
        assert_eq!(gamma.kernel_basis(), vec![v(&[1, 1])]);

        let e2 = InnerProductSpace::euclidean(2);
        let j0 = RMatrix::from_i64s(2, 2, &[0, 1, -1, 0]);
        assert_eq!(check_admissible(&e2, &j0), Err(Error::NotSelfAdjoint));
    }

    #[test]
    fn admissibility_error_paths() {
        let e2 = InnerProductSpace::euclidean(2);
        assert_eq!(
            check_admissible(&e2, &RMatrix::diagonal_i64(&[1, 2])),
            Err(Error::BadSquare)
        );
        // zero map on a space with spacelike vectors
        assert_eq!(
            check_admissible(&e2, &RMatrix::zeros(2, 2)),
            Err(Error::SpacelikeKernel)
        );
        // φ = [[0,1],[0,0]] on Id₂ is not self-adjoint; on the hyperbolic plane
        // with kernel e₁ spacelike it fails the kernel test
        let s = InnerProductSpace::diagonal(&[1, -1]).unwrap();
        let phi = RMatrix::from_i64s(2, 2, &[1, 1, -1, -1]);
        assert!(s.is_self_adjoint(&phi));
        assert_eq!(check_admissible(&s, &phi).unwrap().delta(), Delta::Zero);
        assert!(matches!(
            check_admissible(&e2, &RMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_map_admissible_when_no_spacelike_vectors() {
        let s = InnerProductSpace::diagonal(&[-1, -1]).unwrap();
        assert_eq!(
            check_admissible(&s, &RMatrix::zeros(2, 2)).unwrap().delta(),
            Delta::Zero
        );
    }

    #[test]
    fn triple_rejects_commuting_identities() {
        let space = InnerProductSpace::euclidean(4);
        let j = block_rotation(4);
        let id = RMatrix::identity(4);
        assert_eq!(
            check_triple(&space, &id, &id, &j),
            Err(Error::TripleViolation("phi1 phi2 + phi2 phi1 = 0"))
        );
    }

    #[test]
    fn complex_structure_checks() {
        let space = InnerProductSpace::euclidean(4);
        assert!(ComplexStructure::new(&space, block_rotation(4).scale(&frac(1, 2))).is_err());
        let odd = InnerProductSpace::diagonal(&[-1, 1, 1, 1]).unwrap();
        assert_eq!(
            ComplexStructure::new(&odd, block_rotation(4)),
            Err(Error::InvalidComplexStructure("p and q must both be even"))
        );
    }
}
