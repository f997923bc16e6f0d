//! Independent oracles for worked examples. Floating-point oracles use
//! nalgebra; the others unroll definitions by hand on small integer data.

use nalgebra::{DMatrix, DVector};

use ipcurv::curvature::{build_r_phi, curvature_operator, skew_operator};
use ipcurv::exact::{invariant_factors, rat, RMatrix, RPoly, Rational};
use ipcurv::factory::{base_matrices, build_example, build_triple, tau, ExampleSpec};
use ipcurv::jordan::{
    almost_complex_check, ip_check, jordan_invariant, jr_spectrum, verify_product_vanishing,
    IpConfig,
};
use ipcurv::space::{
    check_admissible, check_triple, classify_plane, sample_complex_line, sample_plane, signature,
    CausalType, ComplexStructure, Delta, InnerProductSpace, PlaneSampler,
};

fn to_f64(x: &Rational) -> f64 {
    let s = x.to_string();
    match s.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

fn dmatrix(m: &RMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| to_f64(m.get(i, j)))
}

fn dvector(v: &[Rational]) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().map(to_f64))
}

fn m(rows: &[&[i64]]) -> RMatrix {
    let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    RMatrix::from_i64s(rows.len(), rows[0].len(), &flat)
}

/// Eigenvalues rounded to the nearest integer, sorted.
fn integer_eigenvalues(a: &DMatrix<f64>) -> Vec<i64> {
    let mut out: Vec<i64> = a
        .complex_eigenvalues()
        .iter()
        .map(|z| {
            assert!(z.im.abs() < 1e-8, "non-real eigenvalue {z}");
            assert!(
                (z.re - z.re.round()).abs() < 1e-8,
                "non-integer eigenvalue {z}"
            );
            z.re.round() as i64
        })
        .collect();
    out.sort();
    out
}

/// `R(x,y)z = Σ λ [(φy,z)φx − (φx,z)φy]` evaluated directly.
fn operator_oracle(
    g: &DMatrix<f64>,
    terms: &[(f64, DMatrix<f64>)],
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> DMatrix<f64> {
    let n = g.nrows();
    let mut out = DMatrix::zeros(n, n);
    for k in 0..n {
        let z = DVector::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 });
        let mut col = DVector::zeros(n);
        for (lambda, phi) in terms {
            let (px, py) = (phi * x, phi * y);
            let ip = |a: &DVector<f64>, b: &DVector<f64>| (a.transpose() * g * b)[(0, 0)];
            col += (ip(&py, &z) * &px - ip(&px, &z) * &py) * *lambda;
        }
        out.set_column(k, &col);
    }
    out
}

#[test]
fn rank_of_dependent_rows() {
    let a = m(&[&[1, 2], &[2, 4]]);
    let oracle = dmatrix(&a).rank(1e-9);
    assert_eq!(oracle, 1);
    assert_eq!(a.rank(), 1);
}

#[test]
fn characteristic_polynomial_of_diagonal() {
    // (t−2)(t−2)(t−3) by repeated multiplication by a linear factor
    let mut coeffs = vec![1i64];
    for root in [2, 2, 3] {
        let mut next = vec![0i64; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= root * c;
        }
        coeffs = next;
    }
    assert_eq!(coeffs, vec![-12, 16, -7, 1]);
    let a = RMatrix::diagonal_i64(&[2, 2, 3]);
    assert_eq!(a.char_poly().unwrap(), RPoly::from_i64s(&coeffs));
}

#[test]
fn invariant_factors_of_small_forms() {
    // nilpotent block: minimal polynomial t², one block
    let n = m(&[&[0, 1], &[0, 0]]);
    assert!(n.mul(&n).is_zero() && !n.is_zero());
    assert_eq!(
        invariant_factors(&n).unwrap(),
        vec![RPoly::from_i64s(&[0, 0, 1])]
    );
    // elementary divisors (t−2), (t−2), (t−3) → [t−2, (t−2)(t−3)]
    let d = RMatrix::diagonal_i64(&[2, 2, 3]);
    assert_eq!(
        invariant_factors(&d).unwrap(),
        vec![RPoly::from_i64s(&[-2, 1]), RPoly::from_i64s(&[6, -5, 1])]
    );
}

#[test]
fn kronecker_by_definition() {
    let a = m(&[&[0, 1], &[1, 0]]);
    let b = m(&[&[2]]);
    assert_eq!(a.kron(&b), m(&[&[0, 2], &[2, 0]]));
    let a = m(&[&[1, -2], &[3, 0]]);
    let b = m(&[&[0, 5, 1], &[-1, 2, 4]]);
    let k = a.kron(&b);
    for i in 0..2 {
        for j in 0..2 {
            for r in 0..2 {
                for c in 0..3 {
                    assert_eq!(k.get(i * 2 + r, j * 3 + c), &(a.get(i, j) * b.get(r, c)));
                }
            }
        }
    }
}

#[test]
fn kronecker_gram_signature() {
    let g = RMatrix::diagonal_i64(&[-1, 1]).kron(&RMatrix::diagonal_i64(&[-1, 1]));
    let eig = dmatrix(&g).symmetric_eigen().eigenvalues;
    let neg = eig.iter().filter(|&&x| x < 0.0).count();
    let pos = eig.iter().filter(|&&x| x > 0.0).count();
    assert_eq!((neg, pos), (2, 2));
    assert_eq!(signature(&g).unwrap(), (2, 2));
}

#[test]
fn basis_plane_in_lorentz_plane_is_mixed() {
    let space = InnerProductSpace::diagonal(&[-1, 1]).unwrap();
    let p = classify_plane(&space, &[rat(1), rat(0)], &[rat(0), rat(1)]).unwrap();
    // h = [[−1, 0], [0, 1]]
    let det = -1;
    assert_eq!(p.det_h, rat(det));
    assert_eq!(p.causal_type, CausalType::Mixed);
}

#[test]
fn sampled_mixed_plane_has_negative_det() {
    let space = InnerProductSpace::diagonal(&[-1, 1, 1, 1, 1, 1]).unwrap();
    let p = sample_plane(&space, CausalType::Mixed, 7, 3).unwrap();
    let g = dmatrix(space.gram());
    let (x, y) = (dvector(&p.e1), dvector(&p.e2));
    let ip = |a: &DVector<f64>, b: &DVector<f64>| (a.transpose() * &g * b)[(0, 0)];
    assert!(ip(&x, &x) * ip(&y, &y) - ip(&x, &y).powi(2) < 0.0);
    assert!(ipcurv::exact::rational::is_negative(&p.det_h));
}

#[test]
fn sampled_timelike_complex_line() {
    let space = InnerProductSpace::diagonal(&[-1, -1, 1, 1]).unwrap();
    // rotation in each sign block
    let j = ComplexStructure::new(
        &space,
        m(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
    )
    .unwrap();
    let p = sample_complex_line(&space, &j, CausalType::Timelike, 3, 7).unwrap();
    let g = dmatrix(space.gram());
    let (x, jx) = (dvector(&p.e1), dvector(&p.e2));
    let s = (x.transpose() * &g * &x)[(0, 0)];
    assert_eq!((x.transpose() * &g * &jx)[(0, 0)], 0.0);
    assert!(s < 0.0);
    assert_eq!(to_f64(&p.det_h), s * s);
}

#[test]
fn factory_triple_minus_zero_identities() {
    let (space, triple) =
        build_triple(&ExampleSpec::new(Delta::Minus, Delta::Zero, rat(1), rat(1))).unwrap();
    let g = dmatrix(space.gram());
    let (p1, p2, j) = (
        dmatrix(triple.phi1.matrix()),
        dmatrix(triple.phi2.matrix()),
        dmatrix(triple.j.matrix()),
    );
    let id = DMatrix::<f64>::identity(32, 32);
    let zero = DMatrix::<f64>::zeros(32, 32);
    assert_eq!(&p1 * &p1, -&id);
    assert_eq!(&p2 * &p2, zero);
    assert_eq!(&j * &j, -&id);
    assert_eq!(&g * &p1, p1.transpose() * &g);
    assert_eq!(&g * &p2, p2.transpose() * &g);
    assert_eq!(j.transpose() * &g * &j, g);
    assert_eq!(&p1 * &p2 + &p2 * &p1, zero);
    // J only touches the middle factor, where φ₁ is Id and φ₂ is α
    assert_eq!(&j * &p1, &p1 * &j);
    assert_eq!(&j * &p2, -(&p2 * &j));
    assert_eq!(triple.deltas(), (Delta::Minus, Delta::Zero));
}

#[test]
fn r_id_component() {
    let space = InnerProductSpace::euclidean(2);
    let phi = check_admissible(&space, &RMatrix::identity(2)).unwrap();
    let t = build_r_phi(&space, &phi, rat(1)).unwrap();
    assert_eq!(t.component(0, 1, 1, 0), rat(1));
}

#[test]
fn r_gamma_component() {
    let space = InnerProductSpace::diagonal(&[-1, 1]).unwrap();
    let gamma = base_matrices().gamma;
    let phi = check_admissible(&space, &gamma).unwrap();
    let t = build_r_phi(&space, &phi, rat(1)).unwrap();
    // (φe₂,e₂)(φe₁,e₁) − (φe₁,e₂)(φe₂,e₁) with (u,v) = −u₀v₀ + u₁v₁
    let g = |u: [i64; 2], v: [i64; 2]| -u[0] * v[0] + u[1] * v[1];
    let phi_e1 = [1, 1];
    let phi_e2 = [-1, -1];
    let expected = g(phi_e2, [0, 1]) * g(phi_e1, [1, 0]) - g(phi_e1, [0, 1]) * g(phi_e2, [1, 0]);
    assert_eq!(t.component(0, 1, 1, 0), rat(expected));
}

#[test]
fn rotation_generator() {
    let space = InnerProductSpace::euclidean(4);
    let phi = check_admissible(&space, &RMatrix::identity(4)).unwrap();
    let t = build_r_phi(&space, &phi, rat(1)).unwrap();
    let x: Vec<Rational> = [1, 0, 0, 0].iter().map(|&v| rat(v)).collect();
    let y: Vec<Rational> = [0, 0, 1, 0].iter().map(|&v| rat(v)).collect();
    let op = curvature_operator(&t, &x, &y).unwrap();
    let oracle = operator_oracle(
        &DMatrix::identity(4, 4),
        &[(1.0, DMatrix::identity(4, 4))],
        &dvector(&x),
        &dvector(&y),
    );
    assert_eq!(dmatrix(&op), oracle);
    assert_eq!(dmatrix(&op) * dvector(&x), -dvector(&y));
    assert_eq!(dmatrix(&op) * dvector(&y), dvector(&x));
}

#[test]
fn r_id_invariant_on_a_plane() {
    let space = InnerProductSpace::euclidean(4);
    let phi = check_admissible(&space, &RMatrix::identity(4)).unwrap();
    let t = build_r_phi(&space, &phi, rat(1)).unwrap();
    let x: Vec<Rational> = [1, 2, 0, -1].iter().map(|&v| rat(v)).collect();
    let y: Vec<Rational> = [0, 1, 3, 1].iter().map(|&v| rat(v)).collect();
    let plane = classify_plane(&space, &x, &y).unwrap();
    let g = DMatrix::identity(4, 4);
    let m_raw = operator_oracle(&g, &[(1.0, g.clone())], &dvector(&x), &dvector(&y));
    let n = &m_raw * &m_raw / to_f64(&plane.det_h);
    assert_eq!(integer_eigenvalues(&n), vec![-1, -1, 0, 0]);
    // N is symmetric, so diagonalizable: elementary divisors t, t, t+1, t+1
    let inv = jordan_invariant(&skew_operator(&t, &plane).unwrap()).unwrap();
    let t_t1 = RPoly::from_i64s(&[0, 1, 1]);
    assert_eq!(inv.inv_factors_sq, vec![t_t1.clone(), t_t1]);
    assert_eq!(inv.rank_seq, vec![2, 2]);
}

#[test]
fn off_complex_line_verdict_is_recorded() {
    let ex = build_example(&ExampleSpec::reduced(rat(2), rat(3))).unwrap();
    let config = IpConfig {
        samples: 20,
        ..IpConfig::default()
    };
    let report = ip_check(&ex.tensor, &config, None).unwrap();
    // no expectation either way; the report must be complete
    assert!(report.examined >= 1 && report.invariant.is_some());
    assert_eq!(report.constant, report.counterexample.is_none());
}

#[test]
fn pair_condition_violation_has_witness() {
    let space = InnerProductSpace::euclidean(4);
    let j = ComplexStructure::new(
        &space,
        m(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
    )
    .unwrap();
    let phi = RMatrix::diagonal_i64(&[1, -1, 1, 1]);
    let jm = j.matrix();
    assert!(jm.mul(&phi) != phi.mul(jm) && jm.mul(&phi) != phi.mul(jm).neg());
    let t = build_r_phi(&space, &check_admissible(&space, &phi).unwrap(), rat(1)).unwrap();
    let report = almost_complex_check(&t, &j, 10, 1, 3).unwrap();
    assert!(!report.holds);
    let x = report.witness.unwrap();
    // confirm the witness independently
    let g = DMatrix::identity(4, 4);
    let r = operator_oracle(
        &g,
        &[(1.0, dmatrix(&phi))],
        &dvector(&x),
        &(dmatrix(jm) * dvector(&x)),
    );
    let jf = dmatrix(jm);
    assert!((&jf * &r - &r * &jf).abs().max() > 1e-9);
}

#[test]
fn broken_triple_products_do_not_vanish() {
    let ex = build_example(&ExampleSpec::new(Delta::Plus, Delta::Minus, rat(1), rat(1))).unwrap();
    let mut broken = ex.triple.clone();
    broken.phi2 = broken.phi1.clone();
    let mut sampler = PlaneSampler::new(2, 5);
    let x = sampler
        .complex_line(&ex.space, &ex.triple.j, CausalType::Spacelike)
        .unwrap()
        .e1;
    let report = verify_product_vanishing(&ex.space, &broken, &x);
    assert!(!report.passed());
    // R_φ(x,Jx)² is −(x,x)²·Id on span{φx, φJx}, never 0
    let g = dmatrix(ex.space.gram());
    let p = dmatrix(broken.phi1.matrix());
    let (xf, jxf) = (dvector(&x), dmatrix(ex.triple.j.matrix()) * dvector(&x));
    let r = operator_oracle(&g, &[(1.0, p)], &xf, &jxf);
    assert!((&r * &r).abs().max() > 1e-9);
}

#[test]
fn beta_is_self_adjoint_for_lorentz_gram() {
    let b = base_matrices().beta;
    let g = RMatrix::diagonal_i64(&[-1, 1]);
    // β = [[0,1],[−1,0]]: gβ = [[0,−1],[−1,0]] = βᵀg
    assert_eq!(g.mul(&b), m(&[&[0, -1], &[-1, 0]]));
    assert_eq!(b.transpose().mul(&g), m(&[&[0, -1], &[-1, 0]]));
}

#[test]
fn tau_zero_kernel_is_isotropic() {
    let (t0, gram) = tau(Delta::Zero);
    assert!(t0.mul(&t0).is_zero());
    let kernel = t0.kernel_basis();
    assert_eq!(kernel.len(), 2);
    // W_β ⊗ span(1,1)
    let expected = [[1, 1, 0, 0], [0, 0, 1, 1]];
    let span = RMatrix::from_columns(&kernel);
    for v in expected {
        let v: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        let mut cols = kernel.clone();
        cols.push(v);
        assert_eq!(RMatrix::from_columns(&cols).rank(), span.rank());
    }
    let g = dmatrix(&gram);
    for a in &kernel {
        for b in &kernel {
            assert_eq!((dvector(a).transpose() * &g * dvector(b))[(0, 0)], 0.0);
        }
    }
}

#[test]
fn reduced_triple_identities() {
    let (space, triple) = build_triple(&ExampleSpec::reduced(rat(1), rat(1))).unwrap();
    assert_eq!(space.signature(), (0, 8));
    let (p1, p2, j) = (
        dmatrix(triple.phi1.matrix()),
        dmatrix(triple.phi2.matrix()),
        dmatrix(triple.j.matrix()),
    );
    let id = DMatrix::<f64>::identity(8, 8);
    assert_eq!(&p1 * &p1, id);
    assert_eq!(&p2 * &p2, id);
    assert_eq!(&p1 * &p2 + &p2 * &p1, DMatrix::zeros(8, 8));
    assert_eq!(&p1, &p1.transpose());
    assert_eq!(&p2, &p2.transpose());
    assert_eq!(&j * &j, -&id);
    assert_eq!(&j * &p1, &p1 * &j);
    assert_eq!(&j * &p2, -(&p2 * &j));
    assert!(check_triple(
        &space,
        triple.phi1.matrix(),
        triple.phi2.matrix(),
        triple.j.matrix()
    )
    .is_ok());
}

/// Fixes the signs of the reduced example's spectrum: the real eigenvalues
/// of `K = J·R(x,Jx)/(x,x)` computed in floating point from the definition.
#[test]
fn reduced_spectrum_signs() {
    let ex = build_example(&ExampleSpec::reduced(rat(2), rat(3))).unwrap();
    let g = dmatrix(ex.space.gram());
    let terms = [
        (2.0, dmatrix(ex.triple.phi1.matrix())),
        (3.0, dmatrix(ex.triple.phi2.matrix())),
    ];
    let jf = dmatrix(ex.triple.j.matrix());
    let mut sampler = PlaneSampler::new(42, 7);
    for _ in 0..5 {
        let line = sampler
            .complex_line(&ex.space, &ex.triple.j, CausalType::Spacelike)
            .unwrap();
        let x = dvector(&line.e1);
        let s = (x.transpose() * &g * &x)[(0, 0)];
        let r = operator_oracle(&g, &terms, &x, &(&jf * &x));
        let k = &jf * r / s.abs();
        // each complex eigenvalue of the complex-linear map appears twice
        assert_eq!(integer_eigenvalues(&k), vec![-3, -3, 0, 0, 0, 0, 2, 2]);
        let report = jr_spectrum(&ex.tensor, &ex.triple.j, &line).unwrap();
        let spectrum: Vec<(Rational, usize)> = report
            .eigenvalues
            .iter()
            .map(|e| (e.value.clone(), e.multiplicity))
            .collect();
        assert_eq!(spectrum, vec![(rat(0), 2), (rat(-3), 1), (rat(2), 1)]);
    }
}
