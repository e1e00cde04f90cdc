//! GNS construction for positive functionals on matrix algebras over
//! `R = ℂ(i)[[λ]]/λᴷ`, uniqueness up to unitary intertwiners, commutants
//! and the classical-limit functor on pre-Hilbert data.

use crate::algebra::{FiniteBasis, MatrixAlgebra, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, Matrix};
use crate::scalar::{GaussianRational as C, Scalar};
use crate::Series;

/// `ω(A) = Σᵢⱼ Wᵢⱼ Aᵢⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFunctional {
    pub weights: Matrix,
}

impl MatrixFunctional {
    pub fn new(weights: Matrix) -> Self {
        MatrixFunctional { weights }
    }

    pub fn evaluate(&self, a: &Matrix) -> Series {
        let w = &self.weights;
        let mut acc = Series::zero(w.order().min(a.order()));
        for i in 0..w.rows() {
            for j in 0..w.cols() {
                acc = &acc + &(w.get(i, j) * a.get(i, j));
            }
        }
        acc
    }

    /// `λ = 0` part.
    pub fn classical(&self) -> MatrixFunctional {
        MatrixFunctional { weights: self.weights.lambda_part(0) }
    }
}

/// Output of [`gns_build`]. Quotient vectors are written in the basis of
/// the classes of `representatives`.
#[derive(Clone, Debug, PartialEq)]
pub struct GnsResult {
    pub algebra: MatrixAlgebra,
    pub omega: MatrixFunctional,
    /// Algebra elements whose classes form a basis of the quotient.
    pub representatives: Vec<Matrix>,
    /// `⟨ψ_a, ψ_b⟩ = ω(a* ⋆ b)` on the representatives.
    pub gram: Matrix,
    pub generators: Vec<Matrix>,
    pub pi_generators: Vec<Matrix>,
    /// `π` of the algebra basis (matrix units in row-major order).
    pub pi_basis: Vec<Matrix>,
    /// Class of the unit.
    pub cyclic: Matrix,
}

impl GnsResult {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// `π(a)` for an arbitrary algebra element, as a combination of the
    /// images of the basis.
    pub fn pi(&self, a: &Matrix) -> Matrix {
        let coords = self.algebra.coordinates(a);
        let d = self.dim();
        let mut acc = Matrix::zeros(d, d, self.gram.order());
        for (c, p) in coords.iter().zip(&self.pi_basis) {
            if !c.is_zero() {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    }

    /// Checks the defining identities exactly: Hermitian Gram, `π` a
    /// `*`-homomorphism with respect to the Gram adjoint and
    /// `ω(a) = ⟨Ω, π(a)Ω⟩`, all on the algebra basis.
    pub fn verify(&self) -> bool {
        let g = &self.gram;
        if !g.is_hermitian() {
            return false;
        }
        let basis = self.algebra.basis();
        for (x, px) in basis.iter().zip(&self.pi_basis) {
            let pxs = self.pi(&self.algebra.star(x));
            if &pxs.adjoint() * g != g * px {
                return false;
            }
            let vacuum = &(&self.cyclic.adjoint() * g) * &(px * &self.cyclic);
            if *vacuum.get(0, 0) != self.omega.evaluate(x) {
                return false;
            }
            for (y, py) in basis.iter().zip(&self.pi_basis) {
                if self.pi(&self.algebra.mul(x, y)) != px * py {
                    return false;
                }
            }
        }
        true
    }
}

/// The sample set of the positivity precheck: matrix units and all
/// `x + c y` with `c ∈ {1, −1, i, −i}`.
fn positivity_samples(alg: &MatrixAlgebra) -> Vec<Matrix> {
    let basis = alg.basis();
    let mut out = basis.clone();
    let phases = [C::from_i64(1), C::from_i64(-1), C::i(), -C::i()];
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            for c in &phases {
                out.push(&basis[i] + &basis[j].scale_scalar(c));
            }
        }
    }
    out
}

fn check_positive(alg: &MatrixAlgebra, omega: &MatrixFunctional) -> Result<()> {
    for a in positivity_samples(alg) {
        let v = omega.evaluate(&alg.mul(&alg.star(&a), &a));
        let ok = matches!(v.sign(), Ok(s) if s.is_nonnegative());
        if !ok {
            return Err(Error::PositivityRefuted { witness: a.to_string(), value: v.to_string() });
        }
    }
    Ok(())
}

/// GNS representation of `ω` on `alg`.
///
/// The Gram matrix `ω(xᵢ* ⋆ xⱼ)` on the matrix units is reduced by
/// valuation-pivoted elimination; its kernel is the Gel'fand ideal.
pub fn gns_build(alg: &MatrixAlgebra, omega: &MatrixFunctional, generators: &[Matrix]) -> Result<GnsResult> {
    let m = alg.size();
    if omega.weights.rows() != m || omega.weights.cols() != m {
        return Err(Error::ShapeMismatch(format!("functional weights must be {0}x{0}", m)));
    }
    for g in generators {
        alg.validate(g)?;
    }
    let order = alg.order().min(omega.weights.order());
    check_positive(alg, omega)?;
    let basis = alg.basis();
    let n = basis.len();
    let big_gram = Matrix::from_fn(n, n, order, |i, j| omega.evaluate(&alg.mul(&alg.star(&basis[i]), &basis[j])));
    let elim = eliminate(&big_gram)?;
    // Forces the precision check on the Gel'fand ideal.
    elim.kernel()?;
    let reps_coords = elim.quotient_representatives();
    let r = elim.rank;
    let representatives: Vec<Matrix> = (0..r).map(|k| alg.from_coordinates(&reps_coords.col(k))).collect();
    let gram = &(&reps_coords.adjoint() * &big_gram) * &reps_coords;

    let coords_of = |a: &Matrix| -> Result<Matrix> {
        let y = Matrix::column(alg.coordinates(a), order);
        elim.quotient_coordinates(&y)
    };
    let pi_of = |a: &Matrix| -> Result<Matrix> {
        let cols: Result<Vec<Matrix>> = representatives.iter().map(|rep| coords_of(&alg.mul(a, rep))).collect();
        if r == 0 {
            return Ok(Matrix::zeros(0, 0, order));
        }
        Matrix::hstack(&cols?)
    };
    let pi_basis = basis.iter().map(pi_of).collect::<Result<Vec<_>>>()?;
    let pi_generators = generators.iter().map(pi_of).collect::<Result<Vec<_>>>()?;
    let cyclic = coords_of(&alg.unit())?;
    Ok(GnsResult {
        algebra: alg.clone(),
        omega: omega.clone(),
        representatives,
        gram,
        generators: generators.to_vec(),
        pi_generators,
        pi_basis,
        cyclic,
    })
}

/// A representation to compare with a GNS result: a Gram matrix on `R^d`,
/// the images of the algebra basis and a cyclic vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub gram: Matrix,
    pub pi_basis: Vec<Matrix>,
    pub cyclic: Matrix,
}

impl From<&GnsResult> for Candidate {
    fn from(r: &GnsResult) -> Self {
        Candidate { gram: r.gram.clone(), pi_basis: r.pi_basis.clone(), cyclic: r.cyclic.clone() }
    }
}

impl Candidate {
    /// `id: M_m → M_m` on `R^m` with the standard inner product and `Ω = e₁`.
    pub fn defining(alg: &MatrixAlgebra) -> Candidate {
        let (m, k) = (alg.size(), alg.order());
        Candidate { gram: Matrix::identity(m, k), pi_basis: alg.basis(), cyclic: Matrix::unit(m, 1, 0, 0, k) }
    }

    fn pi(&self, coords: &[Series]) -> Matrix {
        let d = self.gram.rows();
        let mut acc = Matrix::zeros(d, d, self.gram.order());
        for (c, p) in coords.iter().zip(&self.pi_basis) {
            if !c.is_zero() {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    }
}

/// `U ψ_b = π'(b) Ω'` from the GNS quotient to the candidate module.
pub fn gns_intertwiner(result: &GnsResult, candidate: &Candidate) -> Result<Matrix> {
    let d = candidate.gram.rows();
    if candidate.pi_basis.len() != result.pi_basis.len() || candidate.cyclic.rows() != d {
        return Err(Error::ShapeMismatch("candidate does not match the algebra".into()));
    }
    let cols: Vec<Matrix> = result
        .representatives
        .iter()
        .map(|b| &candidate.pi(&result.algebra.coordinates(b)) * &candidate.cyclic)
        .collect();
    let u = if cols.is_empty() { Matrix::zeros(d, 0, candidate.gram.order()) } else { Matrix::hstack(&cols)? };
    let e = eliminate(&u)?;
    let units = e.pivots.iter().filter(|p| p.valuation() == Some(0)).count();
    if units < d {
        return Err(Error::NotCyclic { rank: units, dim: d });
    }
    Ok(u)
}

/// Whether the candidate is unitarily equivalent to the GNS representation
/// through `U ψ_b = π'(b) Ω'`: isometry and intertwining on the basis.
pub fn gns_uniqueness_check(result: &GnsResult, candidate: &Candidate) -> Result<bool> {
    let u = gns_intertwiner(result, candidate)?;
    let order = u.order().min(result.gram.order());
    let isometric = (&(&u.adjoint() * &candidate.gram) * &u).truncate(order) == result.gram.truncate(order);
    if !isometric {
        return Ok(false);
    }
    for (x_pi, cand_pi) in result.pi_basis.iter().zip(&candidate.pi_basis) {
        if (&u * x_pi).truncate(order) != (cand_pi * &u).truncate(order) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of `{X : [Aᵢ, X] = 0 ∀i}`.
pub fn commutant(reps: &[Matrix], d: usize, order: usize) -> Result<Vec<Matrix>> {
    for a in reps {
        if a.rows() != d || a.cols() != d {
            return Err(Error::ShapeMismatch(format!("expected {0}x{0} matrices", d)));
        }
    }
    // Unknowns X_{kl} at index k*d + l; equation rows (i, a, b) for [Aᵢ, X]_{ab}.
    let n = d * d;
    let mut lin = Matrix::zeros(reps.len() * n, n, order);
    for (i, a) in reps.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                let row = i * n + r * d + c;
                // (A X)_{rc} = Σ_k A_{rk} X_{kc}
                for k in 0..d {
                    let idx = k * d + c;
                    lin.set(row, idx, lin.get(row, idx) + a.get(r, k));
                }
                // (X A)_{rc} = Σ_k X_{rk} A_{kc}
                for k in 0..d {
                    let idx = r * d + k;
                    lin.set(row, idx, lin.get(row, idx) - a.get(k, c));
                }
            }
        }
    }
    let ker = eliminate(&lin)?.kernel()?;
    Ok((0..ker.cols()).map(|j| Matrix::from_fn(d, d, order, |r, c| ker.get(r * d + c, j).clone())).collect())
}

/// Whether `x` lies in the `R`-span of `basis`.
pub fn in_span(basis: &[Matrix], x: &Matrix) -> Result<bool> {
    let order = x.order();
    if basis.is_empty() {
        return Ok(x.is_zero());
    }
    let cols: Vec<Matrix> = basis.iter().map(|b| Matrix::column(b.vectorize(), order)).collect();
    let a = Matrix::hstack(&cols)?;
    let b = Matrix::column(x.vectorize(), order);
    Ok(eliminate(&a)?.solve(&b)?.is_some())
}

/// Classical limit of a pre-Hilbert module `(R^d, G)` with operators: the
/// quotient of `ℂ^d` by the radical of `G(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalLimit {
    /// Order-1 matrix; columns span a complement of the radical.
    pub representatives: Matrix,
    pub gram: Matrix,
    pub operators: Vec<Matrix>,
    q_inv_head: Matrix,
    radical: Matrix,
}

impl ClassicalLimit {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// Class of a vector of the deformed module.
    pub fn project(&self, v: &Matrix) -> Matrix {
        &self.q_inv_head * &v.lambda_part(0)
    }

    /// `cl(A)` for an operator on the deformed module.
    pub fn operator(&self, a: &Matrix) -> Matrix {
        let a0 = a.lambda_part(0);
        if self.dim() == 0 {
            return Matrix::zeros(0, 0, 1);
        }
        &(&self.q_inv_head * &a0) * &self.representatives
    }

    /// Basis of the radical of `G(0)`.
    pub fn radical(&self) -> &Matrix {
        &self.radical
    }
}

/// Quotient by `{v : ⟨v, v⟩|_{λ=0} = 0}` with induced operators.
pub fn classical_limit_rep(gram: &Matrix, reps: &[Matrix]) -> Result<ClassicalLimit> {
    if let Some((row, col)) = gram.hermitian_violation() {
        return Err(Error::NotHermitian { row, col });
    }
    let g0 = gram.lambda_part(0);
    let e = eliminate(&g0)?;
    let radical = e.kernel()?;
    let r = e.rank;
    let representatives = e.quotient_representatives();
    let q_inv_head = e.q_inv.row_block(0..r);
    let g = &(&representatives.adjoint() * &g0) * &representatives;
    let limit = ClassicalLimit { representatives, gram: g, operators: Vec::new(), q_inv_head, radical };
    let operators = reps.iter().map(|a| limit.operator(a)).collect();
    Ok(ClassicalLimit { operators, ..limit })
}

/// Report of the comparison between the classical limit of a deformed GNS
/// representation and the GNS representation of the classical limit state.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedGnsComparison {
    pub limit: ClassicalLimit,
    pub classical: GnsResult,
    /// `U: cl(ψ_a) ↦ ψ_{cl(a)}`.
    pub unitary: Matrix,
    pub well_defined: bool,
    pub invertible: bool,
    pub isometric: bool,
    pub intertwining: bool,
}

impl DeformedGnsComparison {
    pub fn equivalent(&self) -> bool {
        self.well_defined && self.invertible && self.isometric && self.intertwining
    }
}

/// Builds `U: cl(ψ_a) ↦ ψ_{cl(a)}` from the classical limit of the GNS
/// module of `ω` to the GNS module of `cl(ω)` and checks that it is a
/// well-defined unitary intertwiner.
pub fn compare_with_classical_gns(result: &GnsResult) -> Result<DeformedGnsComparison> {
    let limit = classical_limit_rep(&result.gram, &result.pi_basis)?;
    let cl_alg = result.algebra.classical();
    let classical = gns_build(&cl_alg, &result.omega.classical(), &[])?;
    // U₀ e_k = coordinates of ψ_{cl(rep_k)} in the classical GNS module.
    let cl_elim = {
        let basis = cl_alg.basis();
        let w = &classical.omega;
        let n = basis.len();
        let g = Matrix::from_fn(n, n, 1, |i, j| w.evaluate(&cl_alg.mul(&cl_alg.star(&basis[i]), &basis[j])));
        eliminate(&g)?
    };
    let coords = |a: &Matrix| -> Result<Matrix> {
        let y = Matrix::column(cl_alg.coordinates(&a.lambda_part(0)), 1);
        cl_elim.quotient_coordinates(&y)
    };
    let d0 = classical.dim();
    let u0_cols = result.representatives.iter().map(coords).collect::<Result<Vec<_>>>()?;
    let u0 = if u0_cols.is_empty() { Matrix::zeros(d0, 0, 1) } else { Matrix::hstack(&u0_cols)? };
    let well_defined = limit.radical().cols() == 0 || (&u0 * limit.radical()).is_zero();
    let unitary = if limit.dim() == 0 { Matrix::zeros(d0, 0, 1) } else { &u0 * &limit.representatives };
    let invertible = unitary.is_square() && (unitary.rows() == 0 || unitary.inverse().is_ok());
    let isometric = &(&unitary.adjoint() * &classical.gram) * &unitary == limit.gram;
    let intertwining = limit
        .operators
        .iter()
        .zip(&classical.pi_basis)
        .all(|(a, b)| &unitary * a == b * &unitary);
    Ok(DeformedGnsComparison { limit, classical, unitary, well_defined, invertible, isometric, intertwining })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::FormalSeries;

    const K: usize = 4;

    fn weights(a: i64, b_lambda: i64) -> MatrixFunctional {
        let mut w = Matrix::zeros(2, 2, K);
        w.set(0, 0, Series::constant(C::from_i64(a), K));
        w.set(1, 1, Series::monomial(C::from_i64(b_lambda), 1, K));
        MatrixFunctional::new(w)
    }

    #[test]
    fn vector_state_recovers_defining_representation() {
        let alg = MatrixAlgebra::plain(2, K);
        let r = gns_build(&alg, &weights(1, 0), &alg.basis()).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.gram, Matrix::identity(2, K));
        assert!(r.verify());
        assert!(gns_uniqueness_check(&r, &Candidate::defining(&alg)).unwrap());
        assert!(gns_uniqueness_check(&r, &Candidate::from(&r)).unwrap());
        let mut scaled = Candidate::defining(&alg);
        scaled.cyclic = scaled.cyclic.scale(&FormalSeries::from_coeffs(vec![C::from_i64(1), C::from_i64(1), C::from_i64(0), C::from_i64(0)]));
        assert!(!gns_uniqueness_check(&r, &scaled).unwrap());
    }

    #[test]
    fn scalar_algebra() {
        let alg = MatrixAlgebra::plain(1, K);
        let r = gns_build(&alg, &MatrixFunctional::new(Matrix::identity(1, K)), &[]).unwrap();
        assert_eq!(r.dim(), 1);
        let a = Matrix::from_rows(vec![vec![FormalSeries::from_coeffs(vec![C::from_i64(3), C::from_i64(1), C::from_i64(0), C::from_i64(0)])]]).unwrap();
        assert_eq!(r.pi(&a), a);
    }

    #[test]
    fn faithful_deformed_state() {
        let alg = MatrixAlgebra::plain(2, K);
        let r = gns_build(&alg, &weights(1, 1), &[]).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(r.verify());
        let cmp = compare_with_classical_gns(&r).unwrap();
        assert_eq!(cmp.limit.dim(), 2);
        assert_eq!(cmp.limit.gram, Matrix::identity(2, 1));
        assert!(cmp.equivalent(), "{:?}", cmp);
    }

    #[test]
    fn negative_functional_is_refuted() {
        let alg = MatrixAlgebra::plain(2, K);
        assert!(matches!(gns_build(&alg, &weights(1, -1), &[]), Err(Error::PositivityRefuted { .. })));
    }

    #[test]
    fn non_cyclic_candidate() {
        let alg = MatrixAlgebra::plain(2, K);
        let r = gns_build(&alg, &weights(1, 0), &[]).unwrap();
        let mut c = Candidate::defining(&alg);
        c.cyclic = Matrix::zeros(2, 1, K);
        assert!(matches!(gns_uniqueness_check(&r, &c), Err(Error::NotCyclic { rank: 0, dim: 2 })));
    }

    #[test]
    fn commutants() {
        let alg = MatrixAlgebra::plain(2, K);
        let c = commutant(&alg.basis(), 2, K).unwrap();
        assert_eq!(c.len(), 1);
        assert!(in_span(&c, &Matrix::identity(2, K)).unwrap());

        // Left regular representation on M₂ ≅ R⁴ (row-major coordinates).
        let basis = alg.basis();
        let left: Vec<Matrix> = basis
            .iter()
            .map(|a| {
                let cols: Vec<Matrix> = basis.iter().map(|b| Matrix::column(alg.coordinates(&(a * b)), K)).collect();
                Matrix::hstack(&cols).unwrap()
            })
            .collect();
        let c = commutant(&left, 4, K).unwrap();
        assert_eq!(c.len(), 4);
        for a in &basis {
            let cols: Vec<Matrix> = basis.iter().map(|b| Matrix::column(alg.coordinates(&(b * a)), K)).collect();
            assert!(in_span(&c, &Matrix::hstack(&cols).unwrap()).unwrap());
        }

        let c = commutant(&[], 1, K).unwrap();
        assert_eq!(c, vec![Matrix::identity(1, K)]);
    }

    #[test]
    fn classical_limits() {
        let mut g = Matrix::identity(2, K);
        g.set(1, 1, Series::lambda(K));
        assert_eq!(classical_limit_rep(&g, &[]).unwrap().dim(), 1);
        assert_eq!(classical_limit_rep(&Matrix::identity(3, K), &[]).unwrap().dim(), 3);
        let l = classical_limit_rep(&Matrix::identity(2, K).scale(&Series::lambda(K)), &[]).unwrap();
        assert_eq!(l.dim(), 0);
    }
}
