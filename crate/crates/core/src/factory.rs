//! The explicit base matrices, the `τ` selector, and admissible triples for
//! every `(δ₁, δ₂)` case built from Kronecker products.

use crate::curvature::{CurvatureTensor, Term};
use crate::error::{Error, Result};
use crate::exact::{RMatrix, Rational};
use crate::space::{
    check_admissible, check_triple, AdmissibleMap, AdmissibleTriple, Delta, InnerProductSpace,
    VectorSampler,
};

/// `e₁, e₂` on `ℝ^(0,4)`, `J₀, α` on `ℝ^(0,2)`, `β, γ` on `ℝ^(1,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMatrices {
    pub e1: RMatrix,
    pub e2: RMatrix,
    pub j0: RMatrix,
    pub alpha: RMatrix,
    pub beta: RMatrix,
    pub gamma: RMatrix,
    pub gram4: RMatrix,
    pub gram2: RMatrix,
    pub gram11: RMatrix,
}

impl BaseMatrices {
    /// Every identity of the relation table, by name.
    pub fn relations(&self) -> Vec<(&'static str, bool)> {
        let adj = |g: &RMatrix, a: &RMatrix| g.inverse().unwrap().mul(&a.transpose()).mul(g);
        let id = RMatrix::identity;
        let (e1, e2, j0, al, be, ga) = (
            &self.e1,
            &self.e2,
            &self.j0,
            &self.alpha,
            &self.beta,
            &self.gamma,
        );
        let range_gamma = ga.rank() == 1 && ga.mul(ga).is_zero();
        vec![
            ("e1* = e1", adj(&self.gram4, e1) == *e1),
            ("e2* = e2", adj(&self.gram4, e2) == *e2),
            ("e1^2 = Id", e1.mul(e1) == id(4)),
            ("e2^2 = Id", e2.mul(e2) == id(4)),
            ("e1 e2 + e2 e1 = 0", e1.mul(e2).add(&e2.mul(e1)).is_zero()),
            ("J0* = -J0", adj(&self.gram2, j0) == j0.neg()),
            ("J0^2 = -Id", j0.mul(j0) == id(2).neg()),
            ("alpha* = alpha", adj(&self.gram2, al) == *al),
            ("alpha^2 = Id", al.mul(al) == id(2)),
            ("J0 alpha = -alpha J0", j0.mul(al) == al.mul(j0).neg()),
            ("beta* = beta", adj(&self.gram11, be) == *be),
            ("beta^2 = -Id", be.mul(be) == id(2).neg()),
            ("gamma* = gamma", adj(&self.gram11, ga) == *ga),
            ("gamma^2 = 0", ga.mul(ga).is_zero()),
            ("Range gamma = ker gamma", range_gamma),
        ]
    }
}

pub fn base_matrices() -> BaseMatrices {
    let b = BaseMatrices {
        e1: RMatrix::from_i64s(4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]),
        e2: RMatrix::from_i64s(4, 4, &[0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0]),
        j0: RMatrix::from_i64s(2, 2, &[0, 1, -1, 0]),
        alpha: RMatrix::from_i64s(2, 2, &[0, 1, 1, 0]),
        beta: RMatrix::from_i64s(2, 2, &[0, 1, -1, 0]),
        gamma: RMatrix::from_i64s(2, 2, &[1, -1, 1, -1]),
        gram4: RMatrix::identity(4),
        gram2: RMatrix::identity(2),
        gram11: RMatrix::diagonal_i64(&[-1, 1]),
    };
    for (name, holds) in b.relations() {
        assert!(holds, "base matrix relation {name} fails");
    }
    b
}

/// `τ(δ)` on `W = ℝ^(1,1) ⊗ ℝ^(1,1)`, with the Gram matrix of `W`.
pub fn tau(delta: Delta) -> (RMatrix, RMatrix) {
    let b = base_matrices();
    let id2 = RMatrix::identity(2);
    let m = match delta {
        Delta::Plus => RMatrix::identity(4),
        Delta::Minus => b.beta.kron(&id2),
        Delta::Zero => id2.kron(&b.gamma),
    };
    (m, b.gram11.kron(&b.gram11))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleSpec {
    pub delta1: Delta,
    pub delta2: Delta,
    pub lambda1: Rational,
    pub lambda2: Rational,
    /// The 8-dimensional Riemannian variant; only for `δ₁ = δ₂ = +1`.
    pub reduced: bool,
}

impl ExampleSpec {
    pub fn new(delta1: Delta, delta2: Delta, lambda1: Rational, lambda2: Rational) -> Self {
        Self {
            delta1,
            delta2,
            lambda1,
            lambda2,
            reduced: false,
        }
    }

    pub fn reduced(lambda1: Rational, lambda2: Rational) -> Self {
        Self {
            delta1: Delta::Plus,
            delta2: Delta::Plus,
            lambda1,
            lambda2,
            reduced: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta1.is_zero() && self.delta2.is_zero() {
            return Err(Error::InvalidExample(
                "delta1 and delta2 cannot both be 0".into(),
            ));
        }
        if self.reduced && (self.delta1, self.delta2) != (Delta::Plus, Delta::Plus) {
            return Err(Error::InvalidExample(
                "the reduced example requires delta1 = delta2 = +1".into(),
            ));
        }
        Ok(())
    }

    /// The eight admissible `(δ₁, δ₂)` pairs on the 32-dimensional space.
    pub fn all(lambda1: &Rational, lambda2: &Rational) -> Vec<Self> {
        let mut out = Vec::new();
        for d1 in Delta::ALL {
            for d2 in Delta::ALL {
                if !(d1.is_zero() && d2.is_zero()) {
                    out.push(Self::new(d1, d2, lambda1.clone(), lambda2.clone()));
                }
            }
        }
        out
    }
}

/// The space and triple of a spec, verified by [`check_triple`].
pub fn build_triple(spec: &ExampleSpec) -> Result<(InnerProductSpace, AdmissibleTriple)> {
    spec.validate()?;
    let b = base_matrices();
    let id2 = RMatrix::identity(2);
    let (space, phi1, phi2, j) = if spec.reduced {
        let space = InnerProductSpace::new(b.gram4.kron(&b.gram2))?;
        (
            space,
            b.e1.kron(&id2),
            b.e2.kron(&b.alpha),
            RMatrix::identity(4).kron(&b.j0),
        )
    } else {
        let (tau1, gram_w) = tau(spec.delta1);
        let (tau2, _) = tau(spec.delta2);
        let space = InnerProductSpace::new(b.gram4.kron(&b.gram2).kron(&gram_w))?;
        (
            space,
            b.e1.kron(&id2).kron(&tau1),
            b.e2.kron(&b.alpha).kron(&tau2),
            RMatrix::identity(4).kron(&b.j0).kron(&RMatrix::identity(4)),
        )
    };
    let triple = check_triple(&space, &phi1, &phi2, &j)?;
    if triple.deltas() != (spec.delta1, spec.delta2) {
        return Err(Error::InvalidExample(format!(
            "detected deltas ({}, {}) differ from the requested ({}, {})",
            triple.phi1.delta(),
            triple.phi2.delta(),
            spec.delta1,
            spec.delta2
        )));
    }
    Ok((space, triple))
}

/// `λ₁ R_{φ₁} + λ₂ R_{φ₂}` on a triple.
pub fn triple_tensor(
    space: &InnerProductSpace,
    triple: &AdmissibleTriple,
    lambda1: &Rational,
    lambda2: &Rational,
) -> Result<CurvatureTensor> {
    CurvatureTensor::new(
        space.clone(),
        vec![
            Term {
                lambda: lambda1.clone(),
                phi: triple.phi1.clone(),
            },
            Term {
                lambda: lambda2.clone(),
                phi: triple.phi2.clone(),
            },
        ],
    )
}

/// A spec together with everything built from it.
#[derive(Clone, Debug)]
pub struct Example {
    pub spec: ExampleSpec,
    pub space: InnerProductSpace,
    pub triple: AdmissibleTriple,
    pub tensor: CurvatureTensor,
}

pub fn build_example(spec: &ExampleSpec) -> Result<Example> {
    let (space, triple) = build_triple(spec)?;
    let tensor = triple_tensor(&space, &triple, &spec.lambda1, &spec.lambda2)?;
    Ok(Example {
        spec: spec.clone(),
        space,
        triple,
        tensor,
    })
}

pub fn build_example_tensor(spec: &ExampleSpec) -> Result<CurvatureTensor> {
    Ok(build_example(spec)?.tensor)
}

/// A random admissible map on a space of signature `(p, q)` with `φ² = δ·Id`.
///
/// A block-diagonal model map is conjugated by a random invertible integer
/// matrix `P`: the Gram matrix becomes `PᵀGP` and the map `P⁻¹φP`. The sign
/// case `δ = −1` needs `p = q`, and `δ = 0` needs `p ≥ q`.
pub fn random_admissible_map(
    p: usize,
    q: usize,
    delta: Delta,
    sampler: &mut VectorSampler,
) -> Result<(InnerProductSpace, AdmissibleMap)> {
    let n = p + q;
    let gram = RMatrix::diagonal(
        &(0..n)
            .map(|i| Rational::from(if i < p { -1 } else { 1 }))
            .collect::<Vec<_>>(),
    );
    let mut phi = RMatrix::zeros(n, n);
    let set = |phi: &mut RMatrix, i: usize, j: usize, v: i64| phi.set(i, j, Rational::from(v));
    match delta {
        Delta::Plus => {
            // signs on each block, with swaps inside a sign block
            for block in [0..p, p..n] {
                let idx: Vec<usize> = block.collect();
                let mut k = 0;
                while k < idx.len() {
                    if k + 1 < idx.len() && sampler.next_u64().is_multiple_of(2) {
                        set(&mut phi, idx[k], idx[k + 1], 1);
                        set(&mut phi, idx[k + 1], idx[k], 1);
                        k += 2;
                    } else {
                        set(
                            &mut phi,
                            idx[k],
                            idx[k],
                            if sampler.next_u64().is_multiple_of(2) {
                                1
                            } else {
                                -1
                            },
                        );
                        k += 1;
                    }
                }
            }
        }
        Delta::Minus | Delta::Zero => {
            if delta == Delta::Minus && p != q {
                return Err(Error::InvalidArgument("phi^2 = -Id needs p = q".into()));
            }
            if delta == Delta::Zero && p < q {
                return Err(Error::InvalidArgument("phi^2 = 0 needs p >= q".into()));
            }
            let b = base_matrices();
            let block = if delta == Delta::Minus {
                b.beta
            } else {
                b.gamma
            };
            // pair the timelike e_i with the spacelike e_{p+i}
            for i in 0..q {
                let idx = [i, p + i];
                for r in 0..2 {
                    for c in 0..2 {
                        phi.set(idx[r], idx[c], block.get(r, c).clone());
                    }
                }
            }
        }
    }
    let change = loop {
        let entries: Vec<Rational> = (0..n * n)
            .map(|_| Rational::from(sampler.entry()))
            .collect();
        let m = RMatrix::new(n, n, entries);
        if m.rank() == n {
            break m;
        }
    };
    let inv = change.inverse().expect("full rank");
    let space = InnerProductSpace::new(change.transpose().mul(&gram).mul(&change))?;
    let phi = inv.mul(&phi).mul(&change);
    let map = check_admissible(&space, &phi)?;
    debug_assert_eq!(map.delta(), delta);
    Ok((space, map))
}

/// Random nonzero rational with numerator and denominator drawn from the
/// sampler's box.
pub fn random_nonzero_rational(sampler: &mut VectorSampler) -> Rational {
    loop {
        let num = sampler.entry();
        let den = sampler.entry();
        if num != 0 && den != 0 {
            return Rational::from(num) / Rational::from(den);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Field};

    #[test]
    fn relation_table_holds() {
        let b = base_matrices();
        assert!(b.relations().iter().all(|(_, ok)| *ok));
        assert!(b.e1.mul(&b.e2).add(&b.e2.mul(&b.e1)).is_zero());
        assert!(b.gamma.mul(&b.gamma).is_zero());
        // diag(-1,1)·β = [[0,-1],[-1,0]] = βᵀ·diag(-1,1)
        assert_eq!(
            b.gram11.mul(&b.beta),
            RMatrix::from_i64s(2, 2, &[0, -1, -1, 0])
        );
        assert_eq!(
            b.beta.transpose().mul(&b.gram11),
            RMatrix::from_i64s(2, 2, &[0, -1, -1, 0])
        );
    }

    #[test]
    fn tau_cases() {
        let (t, g) = tau(Delta::Plus);
        assert_eq!(t, RMatrix::identity(4));
        assert_eq!(crate::space::signature(&g).unwrap(), (2, 2));
        let (t, _) = tau(Delta::Minus);
        assert_eq!(t.mul(&t), RMatrix::identity(4).neg());
        let (t, g) = tau(Delta::Zero);
        assert!(t.mul(&t).is_zero());
        let w = InnerProductSpace::new(g).unwrap();
        let kernel = t.kernel_basis();
        assert_eq!(kernel.len(), 2);
        assert!(w.restricted_gram(&kernel).is_zero());
    }

    #[test]
    fn reduced_example_is_riemannian() {
        let (space, triple) = build_triple(&ExampleSpec::reduced(rat(2), rat(3))).unwrap();
        assert_eq!(space.signature(), (0, 8));
        assert_eq!(triple.deltas(), (Delta::Plus, Delta::Plus));
    }

    #[test]
    fn all_eight_cases_build() {
        let specs = ExampleSpec::all(&rat(2), &rat(3));
        assert_eq!(specs.len(), 8);
        for spec in specs {
            let (space, triple) = build_triple(&spec).unwrap();
            assert_eq!(space.signature(), (16, 16));
            assert_eq!(triple.deltas(), (spec.delta1, spec.delta2));
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        let zero = ExampleSpec::new(Delta::Zero, Delta::Zero, rat(1), rat(1));
        assert!(matches!(build_triple(&zero), Err(Error::InvalidExample(_))));
        let bad = ExampleSpec {
            reduced: true,
            ..ExampleSpec::new(Delta::Minus, Delta::Plus, rat(1), rat(1))
        };
        assert!(matches!(build_triple(&bad), Err(Error::InvalidExample(_))));
    }

    #[test]
    fn zero_lambdas_give_zero_tensor() {
        let t = build_example_tensor(&ExampleSpec::reduced(rat(0), rat(0))).unwrap();
        assert!(t.dense().unwrap().entries().iter().all(Field::is_zero));
    }

    #[test]
    fn random_maps_are_admissible() {
        let mut s = VectorSampler::new(5, 2);
        for (p, q, d) in [
            (0, 6, Delta::Plus),
            (2, 4, Delta::Plus),
            (3, 3, Delta::Minus),
            (3, 3, Delta::Zero),
            (4, 2, Delta::Zero),
        ] {
            let (space, map) = random_admissible_map(p, q, d, &mut s).unwrap();
            assert_eq!(space.signature(), (p, q));
            assert_eq!(map.delta(), d);
        }
        assert!(random_admissible_map(1, 5, Delta::Minus, &mut s).is_err());
        assert!(random_admissible_map(1, 5, Delta::Zero, &mut s).is_err());
    }
}
