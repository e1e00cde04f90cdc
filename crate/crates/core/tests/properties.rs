//! Randomised invariants of the series ring, star products, matrices and text IO.

use proptest::prelude::*;

use fdq_core::io::{parse, parse_series, Signature};
use fdq_core::linalg::Matrix;
use fdq_core::observables::involution;
use fdq_core::poly::{Monomial, Poly};
use fdq_core::series::RootExponent;
use fdq_core::star::{commutator, star_multiply, StarProductSpec};
use fdq_core::{Chart, GaussianRational as C, Observable, Rational, Scalar, Series, SignVerdict, Vars};

const K: usize = 4;

fn gaussian() -> impl Strategy<Value = C> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(a, d, b)| {
        C::new(Rational::new(a.into(), d.into()), Rational::from_integer(b.into()))
    })
}

fn real() -> impl Strategy<Value = C> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, d)| C::ratio(a, d))
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(gaussian(), K).prop_map(Series::from_coeffs)
}

fn real_series() -> impl Strategy<Value = Series> {
    prop::collection::vec(real(), K).prop_map(Series::from_coeffs)
}

fn observable(vars: Vars) -> impl Strategy<Value = Observable> {
    let nv = vars.count();
    prop::collection::vec((prop::collection::vec(0u32..=2, nv), series()), 0..4)
        .prop_map(move |terms| Poly::from_terms(vars, K, terms.into_iter().map(|(e, c)| (Monomial::new(e), c)).collect::<Vec<_>>()))
}

fn phase_space() -> impl Strategy<Value = Observable> {
    observable(Vars::phase_space(1))
}

fn spec() -> impl Strategy<Value = StarProductSpec> {
    prop_oneof![Just(StarProductSpec::weyl(1, K)), Just(StarProductSpec::wick(1, K)), Just(StarProductSpec::std(1, K))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Series::one(K), a.clone());
        prop_assert_eq!(&a - &a, Series::zero(K));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn units_invert(a in series()) {
        match a.invert() {
            Ok(inv) => prop_assert_eq!(&a * &inv, Series::one(K)),
            Err(_) => prop_assert!(*a.coeff(0) == C::from_i64(0)),
        }
    }

    #[test]
    fn sign_is_multiplicative(a in real_series(), b in real_series()) {
        let (sa, sb) = (a.sign().unwrap(), b.sign().unwrap());
        let small = a.valuation().zip(b.valuation()).is_some_and(|(x, y)| x + y < K);
        if small {
            prop_assert_eq!((&a * &b).sign().unwrap(), sa.times(sb));
        }
        prop_assert_eq!((-&a).sign().unwrap(), match sa {
            SignVerdict::Positive => SignVerdict::Negative,
            SignVerdict::Negative => SignVerdict::Positive,
            z => z,
        });
        if sa == SignVerdict::Positive && sb == SignVerdict::Positive {
            prop_assert_eq!((&a + &b).sign().unwrap(), SignVerdict::Positive);
        }
    }

    #[test]
    fn binomial_roots_round_trip(tail in prop::collection::vec(gaussian(), K - 1)) {
        let mut coeffs = vec![C::from_i64(1)];
        coeffs.extend(tail);
        let s = Series::from_coeffs(coeffs);
        let root = s.sqrt_binomial(RootExponent::Half).unwrap();
        prop_assert_eq!(&root * &root, s.clone());
        let inv_root = s.sqrt_binomial(RootExponent::MinusHalf).unwrap();
        prop_assert_eq!(&(&inv_root * &inv_root) * &s, Series::one(K));
    }

    #[test]
    fn star_is_associative_and_hermitian(spec in spec(), f in phase_space(), g in phase_space(), h in phase_space()) {
        let fg_h = star_multiply(&spec, &star_multiply(&spec, &f, &g).unwrap(), &h).unwrap();
        let f_gh = star_multiply(&spec, &f, &star_multiply(&spec, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(fg_h, f_gh);
        if spec.kind().name() != "std" {
            let lhs = involution(&star_multiply(&spec, &f, &g).unwrap());
            let rhs = star_multiply(&spec, &involution(&g), &involution(&f)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commutator_leibniz_and_jacobi(spec in spec(), f in phase_space(), g in phase_space(), h in phase_space()) {
        let star = |a: &Observable, b: &Observable| star_multiply(&spec, a, b).unwrap();
        let br = |a: &Observable, b: &Observable| commutator(&spec, a, b).unwrap();
        prop_assert_eq!(br(&f, &star(&g, &h)), &star(&br(&f, &g), &h) + &star(&g, &br(&f, &h)));
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn print_then_parse_is_identity(f in (
        prop_oneof![Just(Chart::PhaseSpace), Just(Chart::Holomorphic), Just(Chart::Fock), Just(Chart::Configuration)],
        1usize..=2,
    ).prop_flat_map(|(chart, n)| observable(Vars { chart, n }))) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text, Signature::with_chart(f.vars().n, K, f.vars().chart)).unwrap(), f);
    }

    #[test]
    fn series_print_then_parse(s in series()) {
        prop_assert_eq!(parse_series(&s.to_string(), K).unwrap(), s);
    }

    #[test]
    fn matrix_inverse(entries in prop::collection::vec(series(), 4), d0 in 1i64..=3, d1 in 1i64..=3) {
        // A diagonally dominant classical part keeps the matrix invertible.
        let lam = Series::lambda(K);
        let a = Matrix::from_fn(2, 2, K, |i, j| {
            let base = if i == j { Series::constant(C::from_i64(if i == 0 { 10 * d0 } else { 10 * d1 }), K) } else { Series::zero(K) };
            &base + &(&entries[2 * i + j] * &lam)
        });
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, Matrix::identity(2, K));
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }
}
