//! Pre-Hilbert modules over finite-rank `*`-algebras: Gram data, adjointable
//! and rank-one operators, positivity of Gram matrices, fullness, Rieffel
//! induction, deformed projections and the Morita class test.

mod morita;
mod projection;
mod rieffel;

pub use morita::{hermitian_class_check, morita_class_check, MoritaClassData, MoritaVerdict};
pub use projection::{condition_one, fedosov_project, idempotent_equivalence_verify};
pub use rieffel::{classical_limit_module, rieffel_tensor, Bimodule};

use rayon::prelude::*;

use crate::algebra::{FiniteBasis, MatrixAlgebra, ScalarAlgebra, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, Matrix};
use crate::scalar::{GaussianRational as C, Scalar};
use crate::series::SignVerdict;
use crate::Series;

/// Matrix with entries in a base algebra, stored by rows.
pub type Block<E> = Vec<Vec<E>>;

pub(crate) fn block_zero<A: StarAlgebra>(alg: &A, rows: usize, cols: usize) -> Block<A::Elem> {
    vec![vec![alg.zero(); cols]; rows]
}

pub(crate) fn block_mul<A: StarAlgebra>(alg: &A, x: &Block<A::Elem>, y: &Block<A::Elem>) -> Block<A::Elem> {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(alg.zero(), |acc, k| alg.add(&acc, &alg.mul(&row[k], &y[k][j]))))
                .collect()
        })
        .collect()
}

/// Transpose with the involution applied entrywise.
pub(crate) fn block_adjoint<A: StarAlgebra>(alg: &A, x: &Block<A::Elem>, cols: usize) -> Block<A::Elem> {
    (0..cols).map(|j| x.iter().map(|row| alg.star(&row[j])).collect()).collect()
}

fn block_eq<A: StarAlgebra>(alg: &A, x: &Block<A::Elem>, y: &Block<A::Elem>) -> bool {
    x.len() == y.len()
        && x.iter().zip(y).all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(p, q)| alg.is_zero(&alg.sub(p, q))))
}

/// Base algebras whose elements are matrices over `R`; positivity of
/// algebra-valued Gram matrices is decided on the flattened block matrix.
pub trait MatrixValued: FiniteBasis {
    fn as_matrix(&self, a: &Self::Elem) -> Matrix;
    fn is_scalar(&self) -> bool;
}

impl MatrixValued for ScalarAlgebra {
    fn as_matrix(&self, a: &Series) -> Matrix {
        Matrix::column(vec![a.clone()], self.order)
    }
    fn is_scalar(&self) -> bool {
        true
    }
}

impl MatrixValued for MatrixAlgebra {
    fn as_matrix(&self, a: &Matrix) -> Matrix {
        a.clone()
    }
    fn is_scalar(&self) -> bool {
        self.size() == 1 && self.deformation().is_none()
    }
}

/// Flattens an `n×n` block matrix over `A` into an `R`-matrix.
pub fn flatten<A: MatrixValued>(alg: &A, x: &Block<A::Elem>) -> Matrix {
    let n = x.len();
    if n == 0 {
        return Matrix::zeros(0, 0, alg.order());
    }
    let blocks: Vec<Vec<Matrix>> = x.iter().map(|row| row.iter().map(|e| alg.as_matrix(e)).collect()).collect();
    let (br, bc) = (blocks[0][0].rows(), blocks[0][0].cols());
    let cols = x[0].len();
    Matrix::from_fn(n * br, cols * bc, alg.order(), |i, j| blocks[i / br][j / bc].get(i % br, j % bc).clone())
}

/// Free right module `A^d` with an `A`-valued inner product
/// `⟨x, y⟩ = Σ xᵢ* Gᵢⱼ yⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreHilbertModule<A: StarAlgebra> {
    pub base: A,
    gram: Block<A::Elem>,
}

impl<A: FiniteBasis> PreHilbertModule<A> {
    pub fn new(base: A, gram: Block<A::Elem>) -> Result<Self> {
        let d = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != d {
                return Err(Error::ShapeMismatch(format!("Gram row {} has {} entries, expected {}", i, row.len(), d)));
            }
            for e in row {
                base.validate(e)?;
            }
        }
        for i in 0..d {
            for j in i..d {
                if !base.is_zero(&base.sub(&gram[i][j], &base.star(&gram[j][i]))) {
                    return Err(Error::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(PreHilbertModule { base, gram })
    }

    /// `Aⁿ` with `⟨x, y⟩ = Σ xᵢ* ⋆ yᵢ`.
    pub fn canonical(base: A, n: usize) -> Self {
        let u = base.unit();
        let uu = base.mul(&base.star(&u), &u);
        let mut gram = block_zero(&base, n, n);
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = uu.clone();
        }
        PreHilbertModule { base, gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Block<A::Elem> {
        &self.gram
    }

    pub fn inner(&self, x: &[A::Elem], y: &[A::Elem]) -> Result<A::Elem> {
        let d = self.rank();
        if x.len() != d || y.len() != d {
            return Err(Error::RankMismatch(format!("vectors must have {} coordinates", d)));
        }
        let a = &self.base;
        let mut acc = a.zero();
        for i in 0..d {
            let xi = a.star(&x[i]);
            for j in 0..d {
                acc = a.add(&acc, &a.mul(&a.mul(&xi, &self.gram[i][j]), &y[j]));
            }
        }
        Ok(acc)
    }

    /// `Gᵢⱼ` for the listed vectors.
    pub fn gram_of(&self, vectors: &[Vec<A::Elem>]) -> Result<Block<A::Elem>> {
        vectors.iter().map(|x| vectors.iter().map(|y| self.inner(x, y)).collect()).collect()
    }

    /// `x = eᵢ · a`.
    pub fn basis_vector(&self, i: usize, a: &A::Elem) -> Vec<A::Elem> {
        (0..self.rank()).map(|k| if k == i { a.clone() } else { self.base.zero() }).collect()
    }
}

/// An operator between free modules given by a matrix over the base algebra
/// together with a candidate adjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointableOp<E> {
    pub matrix: Block<E>,
    pub adjoint: Block<E>,
}

impl<E: Clone> AdjointableOp<E> {
    pub fn adjoint_op(&self) -> AdjointableOp<E> {
        AdjointableOp { matrix: self.adjoint.clone(), adjoint: self.matrix.clone() }
    }
}

impl<E: Clone + PartialEq> AdjointableOp<E> {
    pub fn apply<A: StarAlgebra<Elem = E>>(&self, alg: &A, x: &[E]) -> Vec<E> {
        let col: Block<E> = x.iter().map(|e| vec![e.clone()]).collect();
        block_mul(alg, &self.matrix, &col).into_iter().map(|mut r| r.remove(0)).collect()
    }

    pub fn compose<A: StarAlgebra<Elem = E>>(&self, alg: &A, other: &AdjointableOp<E>) -> AdjointableOp<E> {
        AdjointableOp {
            matrix: block_mul(alg, &self.matrix, &other.matrix),
            adjoint: block_mul(alg, &other.adjoint, &self.adjoint),
        }
    }

    /// `⟨φ, Aψ⟩ = ⟨A*φ, ψ⟩` on basis vectors, i.e. `G'·A = (A*)ᴴ·G`.
    pub fn is_adjointable<A: FiniteBasis<Elem = E>>(&self, source: &PreHilbertModule<A>, target: &PreHilbertModule<A>) -> bool {
        let alg = &source.base;
        let lhs = block_mul(alg, &target.gram, &self.matrix);
        let rhs = block_mul(alg, &block_adjoint(alg, &self.adjoint, target.rank()), &source.gram);
        block_eq(alg, &lhs, &rhs)
    }
}

fn theta<A: FiniteBasis>(module: &PreHilbertModule<A>, psi: &[A::Elem], phi: &[A::Elem]) -> Block<A::Elem> {
    let a = &module.base;
    let d = module.rank();
    // ⟨φ, eⱼ⟩ = Σₖ φₖ* Gₖⱼ
    let row: Vec<A::Elem> = (0..d)
        .map(|j| (0..d).fold(a.zero(), |acc, k| a.add(&acc, &a.mul(&a.star(&phi[k]), &module.gram[k][j]))))
        .collect();
    psi.iter().map(|p| row.iter().map(|r| a.mul(p, r)).collect()).collect()
}

/// `Θ_{ψ,φ} χ = ψ · ⟨φ, χ⟩` with adjoint `Θ_{φ,ψ}`.
pub fn rank_one<A: FiniteBasis>(psi: &[A::Elem], phi: &[A::Elem], module: &PreHilbertModule<A>) -> Result<AdjointableOp<A::Elem>> {
    let d = module.rank();
    if psi.len() != d || phi.len() != d {
        return Err(Error::RankMismatch(format!(
            "rank-one operator on a rank {} module needs {} coordinates, got {} and {}",
            d,
            d,
            psi.len(),
            phi.len()
        )));
    }
    Ok(AdjointableOp { matrix: theta(module, psi, phi), adjoint: theta(module, phi, psi) })
}

/// Outcome of [`gram_psd_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum PsdVerdict {
    PositiveDefinite,
    PositiveSemidefinite,
    /// A principal minor with negative sign.
    NotPsd { minor: Vec<usize>, value: Series },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        !matches!(self, PsdVerdict::NotPsd { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PsdVerdict::PositiveDefinite => "positive-definite",
            PsdVerdict::PositiveSemidefinite => "positive-semidefinite",
            PsdVerdict::NotPsd { .. } => "not-psd",
        }
    }
}

/// Decides positivity of a Hermitian matrix over the ordered series ring by
/// the signs of its principal minors.
pub fn gram_psd_check(h: &Matrix) -> Result<PsdVerdict> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch(format!("Gram matrix is {}x{}", h.rows(), h.cols())));
    }
    if let Some((row, col)) = h.hermitian_violation() {
        return Err(Error::NotHermitian { row, col });
    }
    let d = h.rows();
    if d > 20 {
        return Err(Error::ShapeMismatch(format!("principal-minor test limited to 20x20, got {}x{}", d, d)));
    }
    let masks: Vec<u32> = (1..(1u32 << d)).collect();
    let signs: Vec<(u32, Series, SignVerdict)> = masks
        .par_iter()
        .map(|&mask| {
            let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
            let m = h.minor(&idx, &idx);
            let s = m.sign()?;
            Ok((mask, m, s))
        })
        .collect::<Result<_>>()?;
    if let Some((mask, value, _)) = signs.iter().find(|(_, _, s)| *s == SignVerdict::Negative) {
        let minor = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        return Ok(PsdVerdict::NotPsd { minor, value: value.clone() });
    }
    let leading_positive = (1..=d).all(|k| {
        let mask = (1u32 << k) - 1;
        signs.iter().any(|(m, _, s)| *m == mask && *s == SignVerdict::Positive)
    });
    Ok(if leading_positive { PsdVerdict::PositiveDefinite } else { PsdVerdict::PositiveSemidefinite })
}

/// Result of sampling complete positivity of a module inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivitySampleReport {
    pub checked: usize,
    /// Indices into the sample vectors and the verdict of the first failure.
    pub failure: Option<(Vec<usize>, PsdVerdict)>,
}

impl PositivitySampleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Sample vectors `eᵢ·b` (b in the algebra basis) and `eᵢ + c eⱼ` for
/// `c ∈ {1, i}`.
pub fn module_samples<A: FiniteBasis>(module: &PreHilbertModule<A>) -> Vec<Vec<A::Elem>> {
    let a = &module.base;
    let d = module.rank();
    let mut out = Vec::new();
    for i in 0..d {
        for b in a.basis() {
            out.push(module.basis_vector(i, &b));
        }
    }
    let phases = [C::from_i64(1), C::i()];
    for i in 0..d {
        for j in (i + 1)..d {
            for c in &phases {
                let mut v = module.basis_vector(i, &a.unit());
                v[j] = a.scale(&Series::constant(c.clone(), a.order()), &a.unit());
                out.push(v);
            }
        }
    }
    out
}

/// Checks `gram_psd_check` on the Gram matrices of all pairs and triples
/// drawn from the first `limit` sample vectors.
pub fn sample_complete_positivity<A: MatrixValued>(module: &PreHilbertModule<A>, limit: usize) -> Result<PositivitySampleReport> {
    let samples: Vec<_> = module_samples(module).into_iter().take(limit).collect();
    let s = samples.len();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for i in 0..s {
        for j in (i + 1)..s {
            tuples.push(vec![i, j]);
            for k in (j + 1)..s {
                tuples.push(vec![i, j, k]);
            }
        }
    }
    tuples.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    let verdicts: Vec<PsdVerdict> = tuples
        .par_iter()
        .map(|t| {
            let vs: Vec<Vec<A::Elem>> = t.iter().map(|&i| samples[i].clone()).collect();
            gram_psd_check(&flatten(&module.base, &module.gram_of(&vs)?))
        })
        .collect::<Result<_>>()?;
    let failure = tuples.iter().zip(&verdicts).find(|(_, v)| !v.is_psd()).map(|(t, v)| (t.clone(), v.clone()));
    Ok(PositivitySampleReport { checked: tuples.len(), failure })
}

/// Whether the unit lies in the `R`-span of `{⟨eᵢ·a, eⱼ·b⟩}` with `a`, `b`
/// running over the algebra basis.
pub fn fullness_check<A: FiniteBasis>(module: &PreHilbertModule<A>) -> Result<bool> {
    let alg = &module.base;
    let d = module.rank();
    if d == 0 {
        return Ok(false);
    }
    let order = alg.order();
    let basis = alg.basis();
    let mut cols = Vec::new();
    for row in &module.gram {
        for g in row {
            for a in &basis {
                let ag = alg.mul(&alg.star(a), g);
                for b in &basis {
                    cols.push(Matrix::column(alg.coordinates(&alg.mul(&ag, b)), order));
                }
            }
        }
    }
    let span = Matrix::hstack(&cols)?;
    let unit = Matrix::column(alg.coordinates(&alg.unit()), order);
    Ok(eliminate(&span)?.solve(&unit)?.is_some())
}
