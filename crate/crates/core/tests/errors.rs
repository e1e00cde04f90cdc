//! Every error kind, triggered through the public API, against golden strings.

use fdq_core::algebra::{MatrixAlgebra, ScalarAlgebra, StarAlgebra};
use fdq_core::functional::{verify_certificate, Functional, PositivityCertificate};
use fdq_core::io::{json, parse, Signature};
use fdq_core::linalg::{kernel, Matrix};
use fdq_core::module::{fedosov_project, rieffel_tensor, Bimodule, PreHilbertModule};
use fdq_core::rep::gns::{gns_build, gns_uniqueness_check, Candidate, MatrixFunctional};
use fdq_core::series::RootExponent;
use fdq_core::star::{star_multiply, StarProductSpec};
use fdq_core::{Error, GaussianRational as C, Rational, Result, Scalar, Series};

const K: usize = 3;

fn err<T: std::fmt::Debug>(r: Result<T>) -> Error {
    r.expect_err("operation should fail")
}

fn diag(a: i64, b: i64) -> MatrixFunctional {
    let mut w = Matrix::zeros(2, 2, K);
    w.set(0, 0, Series::constant(C::from_i64(a), K));
    w.set(1, 1, Series::constant(C::from_i64(b), K));
    MatrixFunctional::new(w)
}

fn trivial_left(module: PreHilbertModule<MatrixAlgebra>) -> Bimodule<ScalarAlgebra, MatrixAlgebra> {
    let id = vec![vec![vec![MatrixAlgebra::plain(2, K).unit()]]];
    Bimodule::new(ScalarAlgebra { order: K }, module, id).unwrap()
}

fn triggered() -> Vec<Error> {
    let sig = Signature::new(1, K);
    let m2 = MatrixAlgebra::plain(2, K);
    let scalar = ScalarAlgebra { order: K };
    let q1 = parse("q1", sig).unwrap();
    vec![
        err(Series::one(3).checked_add(&Series::one(4))),
        err(Series::constant(C::i(), K).sign()),
        err(Series::lambda(K).invert()),
        err(Series::constant(C::from_i64(2), K).sqrt_binomial(RootExponent::Half)),
        err(star_multiply(&StarProductSpec::weyl(1, K), &parse("q2", Signature::new(2, K)).unwrap(), &q1)),
        err(Functional::delta(vec![C::from_i64(0); 3])),
        err(verify_certificate(
            &PositivityCertificate { target: q1.clone(), summands: vec![(Rational::from_integer((-1).into()), q1.clone())] },
            &StarProductSpec::weyl(1, K),
        )),
        err(gns_build(&m2, &diag(1, -1), &[])),
        err(kernel(&Matrix::from_fn(2, 2, 2, |_, _| Series::lambda(2)))),
        {
            let r = gns_build(&m2, &diag(1, 0), &[]).unwrap();
            let mut c = Candidate::defining(&m2);
            c.cyclic = Matrix::zeros(2, 1, K);
            err(gns_uniqueness_check(&r, &c))
        },
        err(PreHilbertModule::canonical(scalar.clone(), 2).inner(&[Series::one(K)], &[Series::one(K), Series::one(K)])),
        err(PreHilbertModule::new(scalar.clone(), vec![vec![Series::one(K), Series::one(K)], vec![Series::zero(K), Series::one(K)]])),
        err(rieffel_tensor(&trivial_left(PreHilbertModule::canonical(m2.clone(), 1)), &Bimodule::column(3, K))),
        {
            let gram = vec![vec![Matrix::unit(2, 2, 0, 0, K)]];
            let f = trivial_left(PreHilbertModule::new(m2.clone(), gram).unwrap());
            err(rieffel_tensor(&f, &Bimodule::regular(m2.clone())))
        },
        err(fedosov_project(&m2, &Matrix::identity(2, K).scale_scalar(&C::from_i64(2)))),
        err(Matrix::identity(2, K).checked_mul(&Matrix::identity(3, K))),
        err(parse("q1 +", sig)),
        err(parse("q2", sig)),
        err(parse("q1*z1", sig)),
        err(json::from_str::<Series>("{}")),
    ]
}

#[test]
fn error_strings_match_golden_file() {
    let actual: Vec<String> = triggered().iter().map(|e| format!("{}\t{}", e.kind(), e)).collect();
    let golden = include_str!("golden/errors.txt");
    let expected: Vec<&str> = golden.lines().collect();
    for (a, e) in actual.iter().zip(&expected) {
        assert_eq!(a, e);
    }
    assert_eq!(actual.len(), expected.len(), "actual:\n{}", actual.join("\n"));
}

#[test]
fn every_kind_is_reachable() {
    let mut kinds: Vec<&str> = triggered().iter().map(Error::kind).collect();
    kinds.sort_unstable();
    kinds.dedup();
    assert_eq!(kinds.len(), 20, "{:?}", kinds);
}
