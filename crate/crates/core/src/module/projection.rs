use crate::algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational as C, Rational, Scalar};
use crate::series::binomial;
use crate::Series;

/// Deforms an idempotent up to `O(λ)` into a `⋆`-idempotent:
/// `P = ½ + (P₀ − ½) ⋆ (1 + 4(P₀⋆P₀ − P₀))^{−½}`, the root taken as the
/// binomial series, which terminates at the truncation order.
pub fn fedosov_project<A: StarAlgebra>(alg: &A, p0: &A::Elem) -> Result<A::Elem> {
    alg.validate(p0)?;
    let k = alg.order();
    let defect = alg.sub(&alg.mul(p0, p0), p0);
    if !alg.is_zero(&alg.classical_part(&defect)) {
        return Err(Error::DefectNotSmall);
    }
    let x = alg.scale(&Series::constant(C::from_i64(4), k), &defect);
    let minus_half = Rational::new((-1).into(), 2.into());
    let mut power = alg.unit();
    let mut root = alg.zero();
    for n in 0..k {
        let c = Series::constant(C::from_rational(binomial(&minus_half, n)), k);
        root = alg.add(&root, &alg.scale(&c, &power));
        power = alg.mul(&power, &x);
        if alg.is_zero(&power) {
            break;
        }
    }
    let half_unit = alg.scale(&Series::constant(C::ratio(1, 2), k), &alg.unit());
    Ok(alg.add(&half_unit, &alg.mul(&alg.sub(p0, &half_unit), &root)))
}

/// `P = U ⋆ V` and `Q = V ⋆ U` up to the truncation order.
pub fn idempotent_equivalence_verify<A: StarAlgebra>(
    alg: &A,
    p: &A::Elem,
    q: &A::Elem,
    u: &A::Elem,
    v: &A::Elem,
) -> Result<bool> {
    for x in [p, q, u, v] {
        alg.validate(x)?;
    }
    let uv = alg.mul(u, v);
    let vu = alg.mul(v, u);
    Ok(alg.is_zero(&alg.sub(p, &uv)) && alg.is_zero(&alg.sub(q, &vu)))
}

/// `1 + a* ⋆ a` is invertible.
pub fn condition_one<A: StarAlgebra>(alg: &A, a: &A::Elem) -> bool {
    let x = alg.add(&alg.unit(), &alg.mul(&alg.star(a), a));
    alg.inverse(&x).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::linalg::Matrix;

    const K: usize = 6;

    fn p0() -> Matrix {
        let h = C::ratio(1, 2);
        Matrix::from_scalars(&[vec![h.clone(), h.clone()], vec![h.clone(), h]], K).unwrap()
    }

    fn deformed() -> MatrixAlgebra {
        MatrixAlgebra::deformed(Matrix::unit(2, 2, 0, 1, K)).unwrap()
    }

    #[test]
    fn closed_form_example() {
        let alg = deformed();
        let p = fedosov_project(&alg, &p0()).unwrap();
        // 2/(2+λ) = Σ (−λ/2)^r
        let c = Series::from_coeffs((0..K).map(|r| C::ratio(if r % 2 == 0 { 1 } else { -1 }, 1 << r)).collect());
        assert_eq!(p, p0().scale(&c));
        assert_eq!(alg.mul(&p, &p), p);
        assert_eq!(p.classical_part(), p0().classical_part());
    }

    #[test]
    fn trivial_projections() {
        let plain = MatrixAlgebra::plain(2, K);
        assert_eq!(fedosov_project(&plain, &p0()).unwrap(), p0());
        let alg = deformed();
        assert_eq!(fedosov_project(&alg, &alg.zero()).unwrap(), alg.zero());
        assert_eq!(fedosov_project(&alg, &alg.unit()).unwrap(), alg.unit());
        assert!(matches!(fedosov_project(&plain, &Matrix::identity(2, K).scale(&Series::constant(C::from_i64(2), K))), Err(Error::DefectNotSmall)));
    }

    #[test]
    fn equivalence_witnesses() {
        let alg = deformed();
        let p = fedosov_project(&alg, &p0()).unwrap();
        let c = Series::from_coeffs((0..K).map(|r| C::ratio(if r % 2 == 0 { 1 } else { -1 }, 1 << r)).collect());
        assert!(idempotent_equivalence_verify(&alg, &p, &p, &p, &p).unwrap());
        assert!(idempotent_equivalence_verify(&alg, &p0(), &p0(), &p0().scale(&c), &p0()).unwrap());
        assert!(!idempotent_equivalence_verify(&alg, &p, &p0(), &p0().scale(&c), &p0()).unwrap());
        let bad = Matrix::identity(3, K);
        assert!(matches!(idempotent_equivalence_verify(&alg, &bad, &p, &p, &p), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn condition_one_on_matrices() {
        let alg = MatrixAlgebra::plain(2, K);
        for b in crate::algebra::FiniteBasis::basis(&alg) {
            assert!(condition_one(&alg, &b));
        }
    }
}
