use super::{block_adjoint, block_eq, block_mul, MatrixValued, PreHilbertModule};
use super::Block;
use crate::algebra::{FiniteBasis, MatrixAlgebra, ScalarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, Matrix};
use crate::rep::gns::classical_limit_rep;
use crate::Series;

/// A pre-Hilbert module over `A` with a left action of `C`, given by the
/// matrices (over `A`) of the basis elements of `C`:
/// `c · eⱼ = Σᵢ eᵢ · ρ(c)ᵢⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule<Cl: FiniteBasis, A: FiniteBasis> {
    pub left: Cl,
    pub module: PreHilbertModule<A>,
    action: Vec<Block<A::Elem>>,
}

impl<Cl: FiniteBasis, A: FiniteBasis> Bimodule<Cl, A> {
    pub fn new(left: Cl, module: PreHilbertModule<A>, action: Vec<Block<A::Elem>>) -> Result<Self> {
        if action.len() != left.dim() {
            return Err(Error::ShapeMismatch(format!("{} action matrices for an algebra of dimension {}", action.len(), left.dim())));
        }
        let d = module.rank();
        for m in &action {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::ShapeMismatch(format!("action matrices must be {0}x{0}", d)));
            }
        }
        Ok(Bimodule { left, module, action })
    }

    pub fn action_basis(&self) -> &[Block<A::Elem>] {
        &self.action
    }

    /// `ρ(c)` for an arbitrary element of the left algebra.
    pub fn act(&self, c: &Cl::Elem) -> Block<A::Elem> {
        let a = &self.module.base;
        let d = self.module.rank();
        let coords = self.left.coordinates(c);
        let mut out = super::block_zero(a, d, d);
        for (x, m) in coords.iter().zip(&self.action) {
            if x.is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    out[i][j] = a.add(&out[i][j], &a.scale(x, &m[i][j]));
                }
            }
        }
        out
    }

    /// `⟨c·x, y⟩ = ⟨x, c*·y⟩` on basis vectors and `ρ` multiplicative.
    pub fn is_star_action(&self) -> bool {
        let a = &self.module.base;
        let g = self.module.gram();
        let d = self.module.rank();
        let basis = self.left.basis();
        for c in &basis {
            let rc = self.act(c);
            let rcs = self.act(&self.left.star(c));
            let lhs = block_mul(a, &block_adjoint(a, &rc, d), g);
            let rhs = block_mul(a, g, &rcs);
            if !block_eq(a, &lhs, &rhs) {
                return false;
            }
            for c2 in &basis {
                if !block_eq(a, &self.act(&self.left.mul(c, c2)), &block_mul(a, &rc, &self.act(c2))) {
                    return false;
                }
            }
        }
        true
    }
}

impl<A: FiniteBasis> Bimodule<A, A> {
    /// `A` as an `(A, A)`-bimodule with `⟨x, y⟩ = x* ⋆ y`.
    pub fn regular(alg: A) -> Self {
        let u = alg.unit();
        let gram = vec![vec![alg.mul(&alg.star(&u), &u)]];
        let action = alg.basis().into_iter().map(|b| vec![vec![b]]).collect();
        Bimodule { left: alg.clone(), module: PreHilbertModule { base: alg, gram }, action }
    }
}

impl Bimodule<MatrixAlgebra, ScalarAlgebra> {
    /// `R^m` with the standard inner product and the defining action of `M_m`.
    pub fn column(m: usize, order: usize) -> Self {
        let base = ScalarAlgebra { order };
        let left = MatrixAlgebra::plain(m, order);
        let action = left.basis().iter().map(Matrix::to_rows).collect();
        let module = PreHilbertModule::canonical(base, m);
        Bimodule { left, module, action }
    }
}

fn scalar_matrix<A: FiniteBasis>(alg: &A, b: &Block<A::Elem>, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, alg.order(), |i, j| alg.coordinates(&b[i][j])[0].clone())
}

fn from_scalar_matrix<A: FiniteBasis>(alg: &A, m: &Matrix) -> Block<A::Elem> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| alg.from_coordinates(std::slice::from_ref(m.get(i, j)))).collect()).collect()
}

/// `{x ∈ A^N : G x = 0}` is trivial, decided on `R`-coordinates.
fn is_nondegenerate<A: FiniteBasis>(alg: &A, gram: &Block<A::Elem>) -> Result<bool> {
    let n = gram.len();
    let basis = alg.basis();
    let dim = basis.len();
    if n == 0 {
        return Ok(true);
    }
    let mut cols = Vec::with_capacity(n * dim);
    for j in 0..n {
        for b in &basis {
            let col: Vec<Series> = (0..n).flat_map(|i| alg.coordinates(&alg.mul(&gram[i][j], b))).collect();
            cols.push(Matrix::column(col, alg.order()));
        }
    }
    let e = eliminate(&Matrix::hstack(&cols)?)?;
    Ok(e.kernel()?.cols() == 0)
}

/// Internal tensor product `F ⊗̂_B E`: the Gram matrix on `xₖ ⊗ eᵢ` is
/// `⟨xₖ⊗eᵢ, xₗ⊗eⱼ⟩ = (G_E ρ(H_F,ₖₗ))ᵢⱼ`; the degeneracy space is removed
/// and the left action of `C` on `F` is transported.
///
/// Over scalar bases the quotient is computed by elimination and the basis
/// is kept when nothing is degenerate. Over larger bases a degenerate
/// result raises `NonFreeQuotient`, since the quotient need not be free.
pub fn rieffel_tensor<Cl, B, A>(f: &Bimodule<Cl, B>, e: &Bimodule<B, A>) -> Result<Bimodule<Cl, A>>
where
    Cl: FiniteBasis,
    B: FiniteBasis,
    A: MatrixValued,
{
    let b_alg = &f.module.base;
    if b_alg.describe() != e.left.describe() {
        return Err(Error::AlgebraMismatch(format!(
            "F is a module over {} but E carries a left action of {}",
            b_alg.describe(),
            e.left.describe()
        )));
    }
    let a = &e.module.base;
    let (fr, d) = (f.module.rank(), e.module.rank());
    let n = fr * d;
    let ge = e.module.gram();
    let hf = f.module.gram();
    let mut gram = super::block_zero(a, n, n);
    for k in 0..fr {
        for l in 0..fr {
            let blk = block_mul(a, ge, &e.act(&hf[k][l]));
            for i in 0..d {
                for j in 0..d {
                    gram[k * d + i][l * d + j] = blk[i][j].clone();
                }
            }
        }
    }
    let action: Vec<Block<A::Elem>> = f
        .action_basis()
        .iter()
        .map(|sigma| {
            let mut out = super::block_zero(a, n, n);
            for k in 0..fr {
                for l in 0..fr {
                    let blk = e.act(&sigma[k][l]);
                    for i in 0..d {
                        for j in 0..d {
                            out[k * d + i][l * d + j] = blk[i][j].clone();
                        }
                    }
                }
            }
            out
        })
        .collect();

    if !a.is_scalar() {
        if !is_nondegenerate(a, &gram)? {
            return Err(Error::NonFreeQuotient(format!("degeneracy space of the induced module over {} is nonzero", a.describe())));
        }
        let module = PreHilbertModule { base: a.clone(), gram };
        return Bimodule::new(f.left.clone(), module, action);
    }

    let g = scalar_matrix(a, &gram, n, n);
    let elim = eliminate(&g)?;
    elim.kernel()?;
    if elim.rank == n {
        let module = PreHilbertModule { base: a.clone(), gram };
        return Bimodule::new(f.left.clone(), module, action);
    }
    let q = elim.quotient_representatives();
    let r = elim.rank;
    let q_inv_head = elim.q_inv.row_block(0..r);
    let g_new = &(&q.adjoint() * &g) * &q;
    let act_new = action
        .iter()
        .map(|m| from_scalar_matrix(a, &(&(&q_inv_head * &scalar_matrix(a, m, n, n)) * &q)))
        .collect();
    let module = PreHilbertModule { base: a.clone(), gram: from_scalar_matrix(a, &g_new) };
    Bimodule::new(f.left.clone(), module, act_new)
}

/// Quotient by the radical of the Gram matrix at `λ = 0`; the result lives
/// over the scalars at order 1.
pub fn classical_limit_module<A: MatrixValued>(module: &PreHilbertModule<A>) -> Result<PreHilbertModule<ScalarAlgebra>> {
    let a = &module.base;
    if !a.is_scalar() {
        return Err(Error::NonFreeQuotient(format!("classical limit over {} is not computed", a.describe())));
    }
    let d = module.rank();
    let lim = classical_limit_rep(&scalar_matrix(a, module.gram(), d, d), &[])?;
    let base = ScalarAlgebra { order: 1 };
    let gram = from_scalar_matrix(&base, &lim.gram);
    Ok(PreHilbertModule { base, gram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{gram_psd_check, sample_complete_positivity};
    use crate::scalar::{GaussianRational as C, Scalar};

    const K: usize = 4;

    fn s(c: &[i64]) -> Series {
        let mut v: Vec<C> = c.iter().map(|&x| C::from_i64(x)).collect();
        v.resize(K, C::from_i64(0));
        Series::from_coeffs(v)
    }

    #[test]
    fn unit_bimodule_is_identity() {
        let base = ScalarAlgebra { order: K };
        let gram = vec![vec![s(&[2]), s(&[0, 1])], vec![s(&[0, 1]), s(&[1, 0, 3])]];
        let identity = vec![vec![s(&[1]), s(&[0])], vec![s(&[0]), s(&[1])]];
        let f = Bimodule::new(base.clone(), PreHilbertModule::new(base.clone(), gram.clone()).unwrap(), vec![identity]).unwrap();
        let e = Bimodule::regular(base);
        let out = rieffel_tensor(&f, &e).unwrap();
        assert_eq!(out.module.gram(), &gram);

        let m2 = MatrixAlgebra::plain(2, K);
        let fm = Bimodule::regular(m2.clone());
        let out = rieffel_tensor(&fm, &Bimodule::regular(m2)).unwrap();
        assert_eq!(out.module.gram(), fm.module.gram());
    }

    #[test]
    fn matrix_algebra_on_columns() {
        let b = MatrixAlgebra::plain(2, K);
        let f = Bimodule::regular(b.clone());
        let e = Bimodule::column(2, K);
        let out = rieffel_tensor(&f, &e).unwrap();
        assert_eq!(out.module.rank(), 2);
        assert_eq!(scalar_matrix(&out.module.base, out.module.gram(), 2, 2), Matrix::identity(2, K));
        for (x, m) in b.basis().iter().zip(out.action_basis()) {
            assert_eq!(&scalar_matrix(&out.module.base, m, 2, 2), x);
        }
        assert!(out.is_star_action());
        assert!(sample_complete_positivity(&out.module, 8).unwrap().passed());
    }

    #[test]
    fn degenerate_inner_product_gives_rank_zero() {
        let base = ScalarAlgebra { order: K };
        let left = MatrixAlgebra::plain(2, K);
        let zero = PreHilbertModule::new(base, vec![vec![s(&[0]), s(&[0])], vec![s(&[0]), s(&[0])]]).unwrap();
        let e = Bimodule::new(left.clone(), zero, left.basis().iter().map(Matrix::to_rows).collect()).unwrap();
        let out = rieffel_tensor(&Bimodule::regular(left), &e).unwrap();
        assert_eq!(out.module.rank(), 0);
    }

    #[test]
    fn partial_degeneracy_is_quotiented() {
        // E = R² with Gram diag(1, 0): the second basis vector dies.
        let base = ScalarAlgebra { order: K };
        let left = ScalarAlgebra { order: K };
        let g = PreHilbertModule::new(base, vec![vec![s(&[1]), s(&[0])], vec![s(&[0]), s(&[0])]]).unwrap();
        let e = Bimodule::new(left.clone(), g, vec![vec![vec![s(&[1]), s(&[0])], vec![s(&[0]), s(&[1])]]]).unwrap();
        let out = rieffel_tensor(&Bimodule::regular(left), &e).unwrap();
        assert_eq!(out.module.rank(), 1);
        let verdict = gram_psd_check(&scalar_matrix(&out.module.base, out.module.gram(), 1, 1)).unwrap();
        assert!(verdict.is_psd());
    }

    #[test]
    fn mismatched_algebras() {
        let f = Bimodule::regular(MatrixAlgebra::plain(2, K));
        let e = Bimodule::column(3, K);
        assert!(matches!(rieffel_tensor(&f, &e), Err(Error::AlgebraMismatch(_))));
    }

    #[test]
    fn module_classical_limit() {
        let base = ScalarAlgebra { order: K };
        let diag = |a: Series, b: Series| PreHilbertModule::new(base.clone(), vec![vec![a, s(&[0])], vec![s(&[0]), b]]).unwrap();
        assert_eq!(classical_limit_module(&diag(s(&[1]), s(&[0, 1]))).unwrap().rank(), 1);
        assert_eq!(classical_limit_module(&diag(s(&[1]), s(&[1]))).unwrap().rank(), 2);
        assert_eq!(classical_limit_module(&diag(s(&[0, 1]), s(&[0, 1]))).unwrap().rank(), 0);
        let m = PreHilbertModule::canonical(MatrixAlgebra::plain(2, K), 1);
        assert!(matches!(classical_limit_module(&m), Err(Error::NonFreeQuotient(_))));
    }
}
