//! JSON formats: matrices as arrays of rational strings, tensor files, triple
//! sidecars, and report encodings.
//!
//! Every rational is written as a string (`"3"`, `"-1/2"`) and polynomials as
//! coefficient-string arrays, lowest degree first.

use serde_json::{json, Map, Value};

use crate::curvature::{CurvatureTensor, DenseTensor, RankProfile, SymmetryReport, Term};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, RMatrix, RPoly, Rational};
use crate::jordan::{
    AlmostComplexReport, IPReport, JordanInvariant, LemmaOrthogonalityReport,
    ProductVanishingReport, SpectrumReport, Theorem5Report,
};
use crate::space::{
    check_admissible, check_triple, AdmissibleTriple, Delta, InnerProductSpace, PlaneBasis,
};

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

pub fn rational_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &RMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

pub fn poly_json(p: &RPoly) -> Value {
    vector_json(p.coeffs())
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.at(path)),
        Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().unwrap())),
        _ => Err(Error::Parse("expected a rational string such as \"-1/2\"".into()).at(path)),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array".into()).at(path))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse("expected an object".into()).at(path))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")).at(path))
}

pub fn vector_from_json(v: &Value, path: &str) -> Result<Vec<Rational>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<RMatrix> {
    let rows: Vec<Vec<Rational>> = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| vector_from_json(r, &format!("{path}[{i}]")))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()).at(path));
    }
    RMatrix::from_rows(rows)
        .ok_or_else(|| Error::Parse("rows have different lengths".into()).at(path))
}

fn delta_from_json(v: &Value, path: &str) -> Result<Delta> {
    let d = match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::Parse("expected 1, -1 or 0".into()).at(path))?,
        Value::String(s) => return s.parse().map_err(|e: Error| e.at(path)),
        _ => return Err(Error::Parse("expected 1, -1 or 0".into()).at(path)),
    };
    Delta::from_value(d).map_err(|e| e.at(path))
}

fn space_from_json(v: &Value, path: &str) -> Result<InnerProductSpace> {
    let gram_path = format!("{path}.gram");
    let gram = matrix_from_json(field(object(v, path)?, "gram", path)?, &gram_path)?;
    InnerProductSpace::new(gram).map_err(|e| e.at(gram_path))
}

pub fn space_json(space: &InnerProductSpace) -> Value {
    let (p, q) = space.signature();
    json!({ "gram": matrix_json(space.gram()), "signature": [p, q] })
}

/// Reads `{ "space": {"gram"}, "terms": [{"lambda", "phi", "delta"}], "dense"? }`.
pub fn tensor_from_json(v: &Value) -> Result<CurvatureTensor> {
    let root = object(v, "$")?;
    let space = space_from_json(field(root, "space", "$")?, "$.space")?;
    let mut terms = Vec::new();
    for (i, term) in array(field(root, "terms", "$")?, "$.terms")?
        .iter()
        .enumerate()
    {
        let path = format!("$.terms[{i}]");
        let obj = object(term, &path)?;
        let lambda = rational_from_json(field(obj, "lambda", &path)?, &format!("{path}.lambda"))?;
        let phi_path = format!("{path}.phi");
        let phi = matrix_from_json(field(obj, "phi", &path)?, &phi_path)?;
        let phi = check_admissible(&space, &phi).map_err(|e| e.at(&phi_path))?;
        if let Some(d) = obj.get("delta") {
            let declared = delta_from_json(d, &format!("{path}.delta"))?;
            if declared != phi.delta() {
                return Err(Error::Parse(format!(
                    "declared delta {declared} but the map squares to delta {}",
                    phi.delta()
                ))
                .at(format!("{path}.delta")));
            }
        }
        terms.push(Term { lambda, phi });
    }
    let tensor = CurvatureTensor::new(space, terms)?;
    match root.get("dense") {
        None | Some(Value::Null) => Ok(tensor),
        Some(d) => {
            let dense = dense_from_json(d, tensor.dim())?;
            tensor.with_dense(dense)
        }
    }
}

pub fn read_tensor(text: &str) -> Result<CurvatureTensor> {
    tensor_from_json(&parse_json(text)?)
}

fn dense_from_json(v: &Value, n: usize) -> Result<DenseTensor> {
    let mut entries = Vec::with_capacity(n.pow(4));
    let expect_len = |arr: &Vec<Value>, path: &str| {
        if arr.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: arr.len(),
            }
            .at(path))
        }
    };
    let a = array(v, "$.dense")?;
    expect_len(a, "$.dense")?;
    for (i, vi) in a.iter().enumerate() {
        let pi = format!("$.dense[{i}]");
        let b = array(vi, &pi)?;
        expect_len(b, &pi)?;
        for (j, vj) in b.iter().enumerate() {
            let pj = format!("{pi}[{j}]");
            let c = array(vj, &pj)?;
            expect_len(c, &pj)?;
            for (k, vk) in c.iter().enumerate() {
                let pk = format!("{pj}[{k}]");
                let row = vector_from_json(vk, &pk)?;
                if row.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: row.len(),
                    }
                    .at(pk));
                }
                entries.extend(row);
            }
        }
    }
    DenseTensor::from_entries(n, entries)
}

pub fn dense_json(d: &DenseTensor) -> Value {
    let n = d.dim();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                (0..n)
                                    .map(|k| {
                                        Value::Array(
                                            (0..n)
                                                .map(|l| rational_json(d.get(i, j, k, l)))
                                                .collect(),
                                        )
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// The tensor file for `t`, with the dense array when `with_dense` is set.
pub fn tensor_json(t: &CurvatureTensor, with_dense: bool) -> Result<Value> {
    let terms: Vec<Value> = t
        .terms()
        .iter()
        .map(|term| {
            json!({
                "lambda": rational_json(&term.lambda),
                "phi": matrix_json(term.phi.matrix()),
                "delta": term.phi.delta().value(),
            })
        })
        .collect();
    let mut out = json!({ "space": space_json(t.space()), "terms": terms });
    if with_dense {
        out["dense"] = dense_json(t.dense()?);
    }
    Ok(out)
}

/// A triple together with the space it lives on and its coefficients.
#[derive(Clone, Debug)]
pub struct TripleFile {
    pub space: InnerProductSpace,
    pub triple: AdmissibleTriple,
    pub lambda1: Option<Rational>,
    pub lambda2: Option<Rational>,
}

pub fn triple_json(
    space: &InnerProductSpace,
    triple: &AdmissibleTriple,
    lambdas: Option<(&Rational, &Rational)>,
) -> Value {
    let mut out = json!({
        "gram": matrix_json(space.gram()),
        "phi1": matrix_json(triple.phi1.matrix()),
        "phi2": matrix_json(triple.phi2.matrix()),
        "j": matrix_json(triple.j.matrix()),
        "delta1": triple.phi1.delta().value(),
        "delta2": triple.phi2.delta().value(),
    });
    if let Some((l1, l2)) = lambdas {
        out["lambda1"] = rational_json(l1);
        out["lambda2"] = rational_json(l2);
    }
    out
}

pub fn triple_from_json(v: &Value) -> Result<TripleFile> {
    let root = object(v, "$")?;
    let gram = matrix_from_json(field(root, "gram", "$")?, "$.gram")?;
    let space = InnerProductSpace::new(gram).map_err(|e| e.at("$.gram"))?;
    let m = |key: &str| matrix_from_json(field(root, key, "$")?, &format!("$.{key}"));
    let triple = check_triple(&space, &m("phi1")?, &m("phi2")?, &m("j")?)?;
    for (key, detected) in [
        ("delta1", triple.phi1.delta()),
        ("delta2", triple.phi2.delta()),
    ] {
        if let Some(d) = root.get(key) {
            let path = format!("$.{key}");
            let declared = delta_from_json(d, &path)?;
            if declared != detected {
                return Err(Error::Parse(format!(
                    "declared delta {declared} but detected {detected}"
                ))
                .at(path));
            }
        }
    }
    let opt = |key: &str| -> Result<Option<Rational>> {
        root.get(key)
            .map(|x| rational_from_json(x, &format!("$.{key}")))
            .transpose()
    };
    Ok(TripleFile {
        lambda1: opt("lambda1")?,
        lambda2: opt("lambda2")?,
        space,
        triple,
    })
}

pub fn read_triple(text: &str) -> Result<TripleFile> {
    triple_from_json(&parse_json(text)?)
}

pub fn plane_json(p: &PlaneBasis) -> Value {
    json!({
        "e1": vector_json(&p.e1),
        "e2": vector_json(&p.e2),
        "h": matrix_json(&p.h),
        "det_h": rational_json(&p.det_h),
        "causal_type": p.causal_type.as_str(),
    })
}

pub fn invariant_json(inv: &JordanInvariant) -> Value {
    json!({
        "inv_factors_sq": inv.inv_factors_sq.iter().map(poly_json).collect::<Vec<_>>(),
        "rank_seq": inv.rank_seq,
    })
}

pub fn ip_report_json(r: &IPReport) -> Value {
    json!({
        "plane_type": r.config.plane_type.as_str(),
        "samples": r.config.samples,
        "seed": r.config.seed,
        "bound": r.config.bound,
        "complex_lines": r.config.complex_lines,
        "examined": r.examined,
        "constant": r.constant,
        "invariant": r.invariant.as_ref().map(invariant_json),
        "counterexample": r.counterexample.as_ref().map(|c| json!({
            "first": plane_json(&c.first),
            "first_invariant": invariant_json(&c.first_invariant),
            "index": c.index,
            "other": plane_json(&c.other),
            "other_invariant": invariant_json(&c.other_invariant),
        })),
        "strict_square_class": r.strict.as_ref().map(|s| json!({
            "compared": s.compared,
            "skipped": s.skipped,
            "constant": s.constant,
            "first_mismatch": s.first_mismatch,
        })),
    })
}

pub fn symmetry_report_json(r: &SymmetryReport) -> Value {
    json!({
        "dim": r.dim,
        "quadruples": r.quadruples,
        "used_dense": r.used_dense,
        "passed": r.passed(),
        "violation": r.violation.as_ref().map(|v| json!({
            "symmetry": v.symmetry.to_string(),
            "indices": v.indices,
            "residual": rational_json(&v.residual),
        })),
        "dense_mismatch": r.dense_mismatch,
    })
}

pub fn rank_profile_json(r: &RankProfile) -> Value {
    json!({
        "samples": r.samples,
        "seed": r.seed,
        "constant": r.ranks_constant,
        "rank": r.rank,
        "witness": r.witness.as_ref().map(|w| json!({
            "first": plane_json(&w.first),
            "first_rank": w.first_rank,
            "index": w.index,
            "other": plane_json(&w.other),
            "other_rank": w.other_rank,
        })),
    })
}

pub fn spectrum_report_json(r: &SpectrumReport) -> Value {
    json!({
        "dim": r.dim,
        "eigenvalues": r.eigenvalues.iter().map(|e| json!({
            "value": rational_json(&e.value),
            "complex_multiplicity": e.multiplicity,
        })).collect::<Vec<_>>(),
        "ell": r.ell,
        "tail_multiplicities": r.tail_multiplicities,
        "pattern_ok": r.pattern_ok,
    })
}

pub fn almost_complex_report_json(r: &AlmostComplexReport) -> Value {
    json!({
        "holds": r.holds,
        "basis_checked": r.basis_checked,
        "samples_checked": r.samples_checked,
        "witness": r.witness.as_ref().map(|w| vector_json(w)),
    })
}

pub fn lemma_report_json(
    x: &[Rational],
    o: &LemmaOrthogonalityReport,
    p: &ProductVanishingReport,
) -> Value {
    json!({
        "x": vector_json(x),
        "x_norm": rational_json(&o.x_norm),
        "spacelike": o.spacelike,
        "inner_products": o.inner_products.iter().map(|(k, v)| json!({"pair": k, "value": rational_json(v)})).collect::<Vec<_>>(),
        "orthogonal": o.orthogonal,
        "rank": o.rank,
        "independent": o.independent,
        "r1_r2_zero": p.r1_r2_zero,
        "r2_r1_zero": p.r2_r1_zero,
        "passed": o.passed() && p.passed(),
    })
}

pub fn theorem5_report_json(r: &Theorem5Report) -> Value {
    json!({
        "s": rational_json(&r.s),
        "blocks": r.blocks.iter().map(|b| json!({
            "vector": b.vector,
            "expected_eigenvalue": rational_json(&b.expected),
            "holds": b.holds,
        })).collect::<Vec<_>>(),
        "v0_dim": r.v0_dim,
        "v0_zero": r.v0_zero,
        "rank_r": r.rank_r,
        "expected_rank_r": r.expected_rank_r,
        "rank_p": r.rank_p,
        "expected_rank_p": r.expected_rank_p,
        "p_invariant_factors": r.p_invariant_factors.iter().map(poly_json).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}
