//! Scale-free Jordan invariants of `R(π)`, sampled IP constancy checks, the
//! almost complex identity, spectra of `J R(π)` on complex lines, and the
//! block verifiers for triples.

use malachite_base::num::arithmetic::traits::UnsignedAbs;
use malachite_nz::natural::Natural;

use crate::curvature::{
    operator_factors, r_phi_factors, skew_operator, sum_outer_products, CurvatureTensor,
    OuterProduct, SkewOperator,
};
use crate::error::{Error, Result};
use crate::exact::rational::{abs, checked_sqrt, denominator, is_positive};
use crate::exact::{
    core_restriction, invariant_factors, merge_zero_blocks, vector, Field, GaussianRational,
    Matrix, RMatrix, RPoly, Rational, Vector,
};
use crate::factory::triple_tensor;
use crate::space::{
    AdmissibleTriple, CausalType, ComplexStructure, InnerProductSpace, PlaneBasis, PlaneSampler,
    VectorSampler, DEFAULT_MAX_ATTEMPTS,
};

/// `(invariant factors of m_raw²/det h, ranks of m_raw^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanInvariant {
    pub inv_factors_sq: Vec<RPoly>,
    /// Stops at the first repeated rank or at rank 0.
    pub rank_seq: Vec<usize>,
}

pub fn jordan_invariant(op: &SkewOperator) -> Result<JordanInvariant> {
    if op.det_h.is_zero() {
        return Err(Error::DegeneratePlane);
    }
    let (core, trivial) = match core_restriction(&op.m_raw) {
        Some(c) => (c.matrix, c.trivial),
        None => (op.m_raw.clone(), 0),
    };
    let sq = core.mul(&core).scale(&op.det_h.inv_ref());
    let inv_factors_sq = merge_zero_blocks(invariant_factors(&sq)?, trivial);
    Ok(JordanInvariant {
        inv_factors_sq,
        rank_seq: rank_sequence(&core),
    })
}

/// `rank(A), rank(A²), …` up to the first repetition or zero.
pub fn rank_sequence(a: &RMatrix) -> Vec<usize> {
    let mut seq: Vec<usize> = Vec::new();
    let mut power = a.clone();
    loop {
        let r = power.rank();
        let done = r == 0 || seq.last() == Some(&r);
        seq.push(r);
        if done {
            return seq;
        }
        power = power.mul(a);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpConfig {
    pub plane_type: CausalType,
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
    /// Sample complex lines `{x, Jx}` instead of arbitrary planes.
    pub complex_lines: bool,
    /// Also compare invariant factors of `m_raw` itself between planes whose
    /// `det h` values differ by a rational square.
    pub strict: bool,
    pub max_attempts: usize,
}

impl Default for IpConfig {
    fn default() -> Self {
        Self {
            plane_type: CausalType::Spacelike,
            samples: 200,
            seed: 42,
            bound: 7,
            complex_lines: false,
            strict: false,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub first: PlaneBasis,
    pub first_invariant: JordanInvariant,
    /// Sample index of `other`.
    pub index: usize,
    pub other: PlaneBasis,
    pub other_invariant: JordanInvariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictReport {
    pub compared: usize,
    /// Planes whose `det h` ratio to the first plane is not a rational square.
    pub skipped: usize,
    pub constant: bool,
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IPReport {
    pub config: IpConfig,
    /// Planes examined; fewer than requested only after a mismatch.
    pub examined: usize,
    pub invariant: Option<JordanInvariant>,
    pub constant: bool,
    pub counterexample: Option<Counterexample>,
    pub strict: Option<StrictReport>,
}

impl IPReport {
    pub fn passed(&self) -> bool {
        self.constant && self.strict.as_ref().is_none_or(|s| s.constant)
    }
}

/// Samples planes of one causal type and compares every invariant with the
/// first sample's.
pub fn ip_check(
    t: &CurvatureTensor,
    config: &IpConfig,
    j: Option<&ComplexStructure>,
) -> Result<IPReport> {
    if config.plane_type == CausalType::Degenerate {
        return Err(Error::InvalidArgument(
            "plane type must be spacelike, timelike or mixed".into(),
        ));
    }
    if config.complex_lines && config.plane_type == CausalType::Mixed {
        return Err(Error::NoMixedComplexLines);
    }
    let j = match (config.complex_lines, j) {
        (true, None) => {
            return Err(Error::InvalidArgument(
                "complex lines need a complex structure".into(),
            ))
        }
        (true, Some(j)) => Some(j),
        (false, _) => None,
    };
    let mut sampler =
        PlaneSampler::new(config.seed, config.bound).with_max_attempts(config.max_attempts);
    let mut first: Option<(SkewOperator, JordanInvariant, Vec<RPoly>)> = None;
    let mut strict = config.strict.then_some(StrictReport {
        compared: 0,
        skipped: 0,
        constant: true,
        first_mismatch: None,
    });
    for index in 0..config.samples {
        let plane = match j {
            Some(j) => sampler.complex_line(t.space(), j, config.plane_type)?,
            None => sampler.plane(t.space(), config.plane_type)?,
        };
        let op = skew_operator(t, &plane)?;
        let inv = jordan_invariant(&op)?;
        let Some((op0, inv0, full0)) = &first else {
            let full0 = if config.strict {
                invariant_factors(&op.m_raw)?
            } else {
                Vec::new()
            };
            first = Some((op, inv, full0));
            continue;
        };
        if let Some(s) = strict.as_mut() {
            match checked_sqrt(&(&op.det_h / &op0.det_h)) {
                Some(r) => {
                    s.compared += 1;
                    if invariant_factors(&op.m_raw.scale(&r.inv_ref()))? != *full0 && s.constant {
                        s.constant = false;
                        s.first_mismatch = Some(index);
                    }
                }
                None => s.skipped += 1,
            }
        }
        if inv != *inv0 {
            return Ok(IPReport {
                config: config.clone(),
                examined: index + 1,
                invariant: Some(inv0.clone()),
                constant: false,
                counterexample: Some(Counterexample {
                    first: op0.plane.clone(),
                    first_invariant: inv0.clone(),
                    index,
                    other: plane,
                    other_invariant: inv,
                }),
                strict,
            });
        }
    }
    Ok(IPReport {
        config: config.clone(),
        examined: config.samples,
        invariant: first.map(|(_, inv, _)| inv),
        constant: true,
        counterexample: None,
        strict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostComplexReport {
    pub holds: bool,
    /// Basis vectors `eᵢ` and sums `eᵢ + eⱼ` checked.
    pub basis_checked: usize,
    pub samples_checked: usize,
    pub witness: Option<Vector>,
}

fn check_structure(t: &CurvatureTensor, j: &ComplexStructure) -> Result<()> {
    let m = j.matrix();
    if m.rows() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: m.rows(),
        });
    }
    Ok(())
}

/// `J R(x, Jx) = R(x, Jx) J`.
pub fn commutes_at(t: &CurvatureTensor, j: &ComplexStructure, x: &[Rational]) -> Result<bool> {
    let jx = j.apply(x);
    let parts = operator_factors(t, x, &jx)?;
    // J·(a bᵀ) − (a bᵀ)·J = (Ja) bᵀ − a (Jᵀb)ᵀ
    let jt = j.matrix().transpose();
    let mut diff = Vec::with_capacity(2 * parts.len());
    for p in parts {
        diff.push(OuterProduct {
            c: p.c.clone(),
            a: j.apply(&p.a),
            b: p.b.clone(),
        });
        diff.push(OuterProduct {
            c: -p.c,
            a: p.a,
            b: jt.mul_vec(&p.b),
        });
    }
    Ok(sum_outer_products(t.dim(), &diff).is_zero())
}

/// Checks `J R(x,Jx) = R(x,Jx) J` on every `eᵢ` and `eᵢ + eⱼ`, which
/// determines the quadratic identity completely, and on sampled integer `x`.
pub fn almost_complex_check(
    t: &CurvatureTensor,
    j: &ComplexStructure,
    n_samples: usize,
    seed: u64,
    bound: i64,
) -> Result<AlmostComplexReport> {
    check_structure(t, j)?;
    let n = t.dim();
    let mut basis_checked = 0;
    let fail = |x: Vector, basis_checked, samples_checked| AlmostComplexReport {
        holds: false,
        basis_checked,
        samples_checked,
        witness: Some(x),
    };
    for i in 0..n {
        for k in i..n {
            let mut x = vector::unit(n, i);
            if k != i {
                x[k] = Rational::one();
            }
            basis_checked += 1;
            if !commutes_at(t, j, &x)? {
                return Ok(fail(x, basis_checked, 0));
            }
        }
    }
    let mut sampler = VectorSampler::new(seed, bound);
    for s in 0..n_samples {
        let x = sampler.vector(n);
        if !commutes_at(t, j, &x)? {
            return Ok(fail(x, basis_checked, s + 1));
        }
    }
    Ok(AlmostComplexReport {
        holds: true,
        basis_checked,
        samples_checked: n_samples,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: Rational,
    /// Multiplicity as an eigenvalue of the complex-linear map.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Real dimension `m`.
    pub dim: usize,
    /// Sorted by multiplicity (largest first), then zero first, then value.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Number of classes after the dominant one.
    pub ell: usize,
    /// Multiplicities `μ₁ ≥ … ≥ μ_ℓ` after the dominant class.
    pub tail_multiplicities: Vec<usize>,
    pub pattern_ok: bool,
}

/// `m ≡ 2 mod 4`: `ℓ = 1, μ₁ = 1`. `m ≡ 0 mod 4`: `ℓ = 1, μ₁ ≤ 2` or
/// `ℓ = 2, μ₁ = μ₂ = 1`. An empty list passes vacuously.
pub fn multiplicity_pattern_check(m: usize, mults: &[usize]) -> bool {
    if mults.is_empty() {
        return true;
    }
    match m % 4 {
        2 => mults == [1],
        0 => (mults.len() == 1 && mults[0] <= 2) || mults == [1, 1],
        _ => false,
    }
}

/// Spectrum of `K = J·R(π)` on a complex line `{x, Jx}`, with
/// `R(π) = m_raw/|s|` and `s = (x, x)`.
pub fn jr_spectrum(
    t: &CurvatureTensor,
    j: &ComplexStructure,
    line: &PlaneBasis,
) -> Result<SpectrumReport> {
    check_structure(t, j)?;
    if line.e2 != j.apply(&line.e1) {
        return Err(Error::InvalidArgument(
            "the plane is not a complex line {x, Jx}".into(),
        ));
    }
    let s = line.h.get(0, 0).clone();
    if s.is_zero() {
        return Err(Error::DegeneratePlane);
    }
    let op = skew_operator(t, line)?;
    let k = j.matrix().mul(&op.m_raw).scale(&abs(&s).inv_ref());
    if k.mul(j.matrix()) != j.matrix().mul(&k) {
        return Err(Error::NotComplexLinear);
    }
    let complex = complex_matrix(&k, j);
    let cp = complex.char_poly().expect("square");
    let mut real = Vec::with_capacity(cp.coeffs().len());
    for c in cp.coeffs() {
        if !c.im.is_zero() {
            return Err(Error::NonRationalSpectrum(format!(
                "non-real characteristic coefficient {c}"
            )));
        }
        real.push(c.re.clone());
    }
    let mut eigenvalues: Vec<Eigenvalue> = rational_roots(&RPoly::new(real))?
        .into_iter()
        .map(|(value, multiplicity)| Eigenvalue {
            value,
            multiplicity,
        })
        .collect();
    eigenvalues.sort_by(|a, b| {
        b.multiplicity
            .cmp(&a.multiplicity)
            .then_with(|| b.value.is_zero().cmp(&a.value.is_zero()))
            .then_with(|| a.value.cmp(&b.value))
    });
    let tail: Vec<usize> = eigenvalues.iter().skip(1).map(|e| e.multiplicity).collect();
    let dim = t.dim();
    Ok(SpectrumReport {
        dim,
        ell: tail.len(),
        pattern_ok: multiplicity_pattern_check(dim, &tail),
        tail_multiplicities: tail,
        eigenvalues,
    })
}

/// Matrix over `ℚ(i)` of a `J`-linear map, with `J` acting as `i`, on a basis
/// `b₁…b_r` such that `{bₖ, J bₖ}` is a real basis.
pub fn complex_matrix(k: &RMatrix, j: &ComplexStructure) -> Matrix<GaussianRational> {
    let n = k.rows();
    let mut basis: Vec<Vector> = Vec::new();
    let mut real: Vec<Vector> = Vec::new();
    for i in 0..n {
        if 2 * basis.len() == n {
            break;
        }
        let e = vector::unit(n, i);
        let je = j.apply(&e);
        let mut trial = real.clone();
        trial.push(e.clone());
        trial.push(je.clone());
        if RMatrix::from_columns(&trial).rank() == trial.len() {
            basis.push(e);
            real = trial;
        }
    }
    let r = basis.len();
    // columns ordered b₁…b_r, Jb₁…Jb_r
    let mut cols = basis.clone();
    cols.extend(basis.iter().map(|b| j.apply(b)));
    let inv = RMatrix::from_columns(&cols)
        .inverse()
        .expect("J-adapted basis");
    let mut out = Matrix::zeros(r, r);
    for (c, b) in basis.iter().enumerate() {
        let coords = inv.mul_vec(&k.mul_vec(b));
        for row in 0..r {
            out.set(
                row,
                c,
                GaussianRational::new(coords[row].clone(), coords[r + row].clone()),
            );
        }
    }
    out
}

/// Rational roots with multiplicities, or an error if some root is not
/// rational.
pub fn rational_roots(p: &RPoly) -> Result<Vec<(Rational, usize)>> {
    let mut out = Vec::new();
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut rest = p.monic();
    let mut zeros = 0;
    while !rest.is_constant() && rest.coeff(0).is_zero() {
        rest = RPoly::new(rest.coeffs()[1..].to_vec());
        zeros += 1;
    }
    if zeros > 0 {
        out.push((Rational::zero(), zeros));
    }
    for (g, k) in rest.squarefree_decomposition() {
        let mut g = g;
        for root in root_candidates(&g)? {
            if g.is_constant() {
                break;
            }
            if g.eval(&root).is_zero() {
                g = g.div_rem(&RPoly::linear(&root)).0;
                out.push((root, k));
            }
        }
        if !g.is_constant() {
            return Err(Error::NonRationalSpectrum(format!(
                "factor {g} has irrational roots"
            )));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

const MAX_CANDIDATE: u64 = 1 << 40;

/// `±a/b` with `a | c₀` and `b | c_d` for the integer multiple of `g`.
fn root_candidates(g: &RPoly) -> Result<Vec<Rational>> {
    let scale = g.coeffs().iter().fold(Natural::from(1u32), |acc, c| {
        let d = denominator(c).unsigned_abs();
        use malachite_base::num::arithmetic::traits::Lcm;
        acc.lcm(d)
    });
    let scale = Rational::from(scale);
    let to_u64 = |c: &Rational| -> Result<u64> {
        let n = crate::exact::rational::numerator(&(c * &scale)).unsigned_abs();
        u64::try_from(&n)
            .ok()
            .filter(|v| *v <= MAX_CANDIDATE)
            .ok_or_else(|| {
                Error::NonRationalSpectrum(
                    "coefficients too large for the rational root test".into(),
                )
            })
    };
    let c0 = to_u64(&g.coeff(0))?;
    let cd = to_u64(g.leading().expect("nonconstant"))?;
    let mut out = Vec::new();
    for a in divisors(c0) {
        for b in divisors(cd) {
            let r = Rational::from(a) / Rational::from(b);
            if !out.contains(&r) {
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    Ok(out)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOrthogonalityReport {
    pub x_norm: Rational,
    pub spacelike: bool,
    /// The six pairwise inner products among `φ₁x, φ₁Jx, φ₂x, φ₂Jx`.
    pub inner_products: Vec<(&'static str, Rational)>,
    pub orthogonal: bool,
    pub rank: usize,
    pub independent: bool,
}

impl LemmaOrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.spacelike && self.orthogonal && self.independent
    }
}

pub fn verify_lemma_orthogonality(
    space: &InnerProductSpace,
    triple: &AdmissibleTriple,
    x: &[Rational],
) -> LemmaOrthogonalityReport {
    let x_norm = space.norm_sq(x);
    let jx = triple.j.apply(x);
    let (p1, p2) = (triple.phi1.matrix(), triple.phi2.matrix());
    let vs = [
        p1.mul_vec(x),
        p1.mul_vec(&jx),
        p2.mul_vec(x),
        p2.mul_vec(&jx),
    ];
    const NAMES: [&str; 6] = [
        "(phi1 x, phi1 Jx)",
        "(phi1 x, phi2 x)",
        "(phi1 x, phi2 Jx)",
        "(phi1 Jx, phi2 x)",
        "(phi1 Jx, phi2 Jx)",
        "(phi2 x, phi2 Jx)",
    ];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let inner_products: Vec<(&'static str, Rational)> = NAMES
        .iter()
        .zip(pairs)
        .map(|(name, (a, b))| (*name, space.inner(&vs[a], &vs[b])))
        .collect();
    let orthogonal = inner_products.iter().all(|(_, v)| v.is_zero());
    let rank = RMatrix::from_columns(&vs).rank();
    LemmaOrthogonalityReport {
        spacelike: is_positive(&x_norm),
        x_norm,
        inner_products,
        orthogonal,
        rank,
        independent: rank == 4,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductVanishingReport {
    pub r1_r2_zero: bool,
    pub r2_r1_zero: bool,
}

impl ProductVanishingReport {
    pub fn passed(&self) -> bool {
        self.r1_r2_zero && self.r2_r1_zero
    }
}

/// `(Σ c a bᵀ)(Σ c' a' b'ᵀ) = Σ c c' (b·a') a b'ᵀ`
fn product_is_zero(n: usize, left: &[OuterProduct], right: &[OuterProduct]) -> bool {
    let mut parts = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            let c = &l.c * &r.c * vector::dot(&l.b, &r.a);
            parts.push(OuterProduct {
                c,
                a: l.a.clone(),
                b: r.b.clone(),
            });
        }
    }
    sum_outer_products(n, &parts).is_zero()
}

/// `R_{φ₁}(x,Jx)·R_{φ₂}(x,Jx) = R_{φ₂}(x,Jx)·R_{φ₁}(x,Jx) = 0`.
pub fn verify_product_vanishing(
    space: &InnerProductSpace,
    triple: &AdmissibleTriple,
    x: &[Rational],
) -> ProductVanishingReport {
    let jx = triple.j.apply(x);
    let r1 = r_phi_factors(space, triple.phi1.matrix(), x, &jx);
    let r2 = r_phi_factors(space, triple.phi2.matrix(), x, &jx);
    let n = space.dim();
    ProductVanishingReport {
        r1_r2_zero: product_is_zero(n, &r1, &r2),
        r2_r1_zero: product_is_zero(n, &r2, &r1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCheck {
    pub vector: &'static str,
    pub expected: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem5Report {
    pub s: Rational,
    pub blocks: Vec<BlockCheck>,
    /// `V₀`: orthogonal complement of the blocks `φᵢπ` with `δᵢ ≠ 0`.
    pub v0_dim: usize,
    pub v0_zero: bool,
    pub rank_r: usize,
    /// `2·#{i : λᵢ ≠ 0}`
    pub expected_rank_r: usize,
    pub rank_p: usize,
    /// `2·#{i : λᵢ ≠ 0, δᵢ ≠ 0}`
    pub expected_rank_p: usize,
    pub p_invariant_factors: Vec<RPoly>,
}

impl Theorem5Report {
    pub fn passed(&self) -> bool {
        self.blocks.iter().all(|b| b.holds)
            && self.v0_zero
            && self.rank_r == self.expected_rank_r
            && self.rank_p == self.expected_rank_p
    }
}

/// Checks the block structure of `P = R(π)²` with `R(π) = m_raw/s` on a
/// spacelike complex line `{x, Jx}`.
pub fn verify_theorem5_blocks(
    space: &InnerProductSpace,
    triple: &AdmissibleTriple,
    lambda1: &Rational,
    lambda2: &Rational,
    line: &PlaneBasis,
) -> Result<Theorem5Report> {
    if line.e2 != triple.j.apply(&line.e1) || line.causal_type != CausalType::Spacelike {
        return Err(Error::InvalidArgument(
            "expected a spacelike complex line {x, Jx}".into(),
        ));
    }
    let t = triple_tensor(space, triple, lambda1, lambda2)?;
    let s = line.h.get(0, 0).clone();
    let r = skew_operator(&t, line)?.m_raw.scale(&s.inv_ref());
    let p = r.mul(&r);
    let (x, jx) = (&line.e1, &line.e2);
    let mut blocks = Vec::new();
    let mut active: Vec<Vector> = Vec::new();
    let entries = [
        (
            triple.phi1.matrix(),
            triple.phi1.delta(),
            lambda1,
            ["phi1 x", "phi1 Jx"],
        ),
        (
            triple.phi2.matrix(),
            triple.phi2.delta(),
            lambda2,
            ["phi2 x", "phi2 Jx"],
        ),
    ];
    for (phi, delta, lambda, names) in entries {
        if delta.is_zero() {
            continue;
        }
        let expected = -(lambda * lambda);
        for (v, name) in [phi.mul_vec(x), phi.mul_vec(jx)].into_iter().zip(names) {
            let holds = p.mul_vec(&v) == vector::scale(&v, &expected);
            blocks.push(BlockCheck {
                vector: name,
                expected: expected.clone(),
                holds,
            });
            active.push(v);
        }
    }
    let v0 = if active.is_empty() {
        (0..space.dim())
            .map(|i| vector::unit(space.dim(), i))
            .collect()
    } else {
        let lowered: Vec<Vec<Rational>> = active.iter().map(|v| space.lower(v)).collect();
        RMatrix::from_rows(lowered)
            .expect("rectangular")
            .kernel_basis()
    };
    let v0_zero = v0.iter().all(|b| vector::is_zero(&p.mul_vec(b)));
    let nonzero = |l: &Rational| usize::from(!l.is_zero());
    let active_nonzero =
        |l: &Rational, d: crate::space::Delta| usize::from(!l.is_zero() && !d.is_zero());
    Ok(Theorem5Report {
        s,
        blocks,
        v0_dim: v0.len(),
        v0_zero,
        rank_r: r.rank(),
        expected_rank_r: 2 * (nonzero(lambda1) + nonzero(lambda2)),
        rank_p: p.rank(),
        expected_rank_p: 2
            * (active_nonzero(lambda1, triple.phi1.delta())
                + active_nonzero(lambda2, triple.phi2.delta())),
        p_invariant_factors: invariant_factors(&p)?,
    })
}
