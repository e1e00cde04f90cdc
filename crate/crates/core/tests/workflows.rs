//! Cross-module scenarios through the public API.

use fdq_core::algebra::{FiniteBasis, MatrixAlgebra, StarAlgebra};
use fdq_core::functional::{deform_delta, positivity_scan, Functional};
use fdq_core::io::{json, parse, parse_series, Signature};
use fdq_core::linalg::Matrix;
use fdq_core::module::{
    fedosov_project, gram_psd_check, idempotent_equivalence_verify, morita_class_check, rieffel_tensor, Bimodule,
    MoritaClassData, MoritaVerdict, PreHilbertModule,
};
use fdq_core::observables::{involution, origin, oscillator, to_holomorphic};
use fdq_core::rep::gns::{compare_with_classical_gns, gns_build, GnsResult, MatrixFunctional};
use fdq_core::rep::{wickrep, DiffOperator};
use fdq_core::star::{apply_equiv, star_multiply, EquivOperatorSpec, StarProductSpec};
use fdq_core::poly::Poly;
use fdq_core::{GaussianRational as C, Scalar, Series, SignVerdict, Vars};

const K: usize = 6;

#[test]
fn delta_fails_positivity_for_weyl_but_deformed_delta_does_not() {
    let weyl = StarProductSpec::weyl(1, K);
    let h = oscillator::<C>(1, K);
    let hh = star_multiply(&weyl, &h, &h).unwrap();
    let plain = Functional::delta_origin(1).evaluate(&hh).unwrap();
    assert_eq!(plain.sign().unwrap(), SignVerdict::Negative);

    let w = deform_delta(origin(1), K).unwrap();
    assert_eq!(w.evaluate(&hh).unwrap(), parse_series("1/4*l^2", K).unwrap());
    assert!(positivity_scan(&w, &weyl, 2).positive_on_samples());
    assert!(!positivity_scan(&Functional::delta_origin(1), &weyl, 2).positive_on_samples());
}

#[test]
fn oscillator_in_the_fock_picture() {
    // S(H) = H + λ/2 and wickrep(z z̄) = 2λ ȳ∂_ȳ, so ȳ³ has eigenvalue 7λ/2.
    let h = oscillator::<C>(1, K);
    let s = EquivOperatorSpec::s_operator(1, K);
    let op = wickrep(&to_holomorphic(&apply_equiv(&s, &h).unwrap()).unwrap()).unwrap();
    let fock = Vars::fock(1);
    let y = Poly::var(fock, 0, K);
    let y3 = &(&y * &y) * &y;
    assert_eq!(op.apply(&y3).unwrap(), y3.scale_series(&Series::monomial(C::ratio(7, 2), 1, K)));
    assert_eq!(op.apply(&Poly::one(fock, K)).unwrap(), Poly::constant(fock, Series::monomial(C::ratio(1, 2), 1, K)));
    assert_eq!(DiffOperator::multiplication(&y).apply(&y).unwrap(), &y * &y);
}

#[test]
fn gns_round_trips_through_json_and_has_a_classical_limit() {
    let alg = MatrixAlgebra::plain(2, 4);
    let mut w = Matrix::zeros(2, 2, 4);
    w.set(0, 0, Series::one(4));
    w.set(1, 1, Series::lambda(4));
    let r = gns_build(&alg, &MatrixFunctional::new(w), &alg.basis()).unwrap();
    assert_eq!(r.dim(), 4);
    let back: GnsResult = json::from_str(&json::to_string(&r)).unwrap();
    assert_eq!(back.gram, r.gram);
    let cmp = compare_with_classical_gns(&r).unwrap();
    assert_eq!(cmp.limit.dim(), 2);
    assert!(cmp.equivalent());
}

#[test]
fn fedosov_projection_on_the_deformed_matrix_family() {
    let alg = MatrixAlgebra::deformed(Matrix::unit(2, 2, 0, 1, K)).unwrap();
    let h = C::ratio(1, 2);
    let p0 = Matrix::from_scalars(&[vec![h.clone(), h.clone()], vec![h.clone(), h]], K).unwrap();
    let p = fedosov_project(&alg, &p0).unwrap();
    assert_eq!(alg.mul(&p, &p), p);
    let c = (&Series::constant(C::from_i64(2), K) + &Series::lambda(K)).invert().unwrap();
    let c = &c * &Series::constant(C::from_i64(2), K);
    assert_eq!(p, p0.scale(&c));
    assert!(idempotent_equivalence_verify(&alg, &p, &p, &p, &p).unwrap());
    assert!(idempotent_equivalence_verify(&alg, &p0, &p0, &p0.scale(&c), &p0).unwrap());
    assert!(!idempotent_equivalence_verify(&alg, &p, &p0, &p, &p0).unwrap());
}

#[test]
fn induced_module_is_positive_and_parses_back() {
    let m2 = MatrixAlgebra::plain(2, 4);
    let module = PreHilbertModule::canonical(m2.clone(), 2);
    let text = json::to_string(&module);
    let back: PreHilbertModule<MatrixAlgebra> = json::from_str(&text).unwrap();
    assert_eq!(back.gram(), module.gram());
    let unit = rieffel_tensor(&Bimodule::regular(m2.clone()), &Bimodule::regular(m2.clone())).unwrap();
    assert_eq!(unit.module.gram(), Bimodule::regular(m2).module.gram());
    let induced = rieffel_tensor(&Bimodule::column(2, 4), &Bimodule::regular(fdq_core::algebra::ScalarAlgebra { order: 4 })).unwrap();
    let d = induced.module.rank();
    let g = Matrix::from_fn(d, d, 4, |i, j| induced.module.gram()[i][j].clone());
    assert!(gram_psd_check(&g).unwrap().is_psd());
}

#[test]
fn morita_verdicts_follow_integrality() {
    let zero = MoritaClassData::zero(2, K);
    let cls = |a: &str, b: &str| MoritaClassData::new(Vec::new(), vec![parse_series(a, K).unwrap(), parse_series(b, K).unwrap()], true).unwrap();
    assert_eq!(morita_class_check(&zero, &cls("2", "-5")).unwrap(), MoritaVerdict::Equivalent);
    assert_eq!(morita_class_check(&zero, &cls("2", "1/3")).unwrap(), MoritaVerdict::NotEquivalent);
    let inexact = MoritaClassData::new(Vec::new(), vec![Series::zero(K), Series::zero(K)], false).unwrap();
    assert_eq!(morita_class_check(&zero, &inexact).unwrap(), MoritaVerdict::Indeterminate);
}

#[test]
fn involution_reverses_star_products() {
    let sig = Signature::new(2, K);
    let f = parse("q1*p2 + i*p1^2", sig).unwrap();
    let g = parse("(1 + l)*q2*q1 - p2", sig).unwrap();
    for spec in [StarProductSpec::weyl(2, K), StarProductSpec::wick(2, K)] {
        let lhs = involution(&star_multiply(&spec, &f, &g).unwrap());
        let rhs = star_multiply(&spec, &involution(&g), &involution(&f)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
