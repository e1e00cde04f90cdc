//! Matrices over `R = ℂ(i)[[λ]]/λᴷ` and valuation-pivoted elimination.
//!
//! `R` is a local ring whose ideals are the `λʲR`, so every matrix has a
//! Smith form `P A Q = diag(d₁, …, d_r, 0, …)` with `val(d₁) ≤ val(d₂) ≤ …`
//! reachable by invertible integral row and column operations. The kernel,
//! quotient coordinates and solutions of linear systems are read off `P`,
//! `Q` and `Q⁻¹`.
//!
//! Entries are truncations of exact series, and dividing by a pivot of
//! valuation `v` loses `v` coefficients. The elimination records how many
//! coefficients of every entry are still trustworthy and refuses
//! ([`Error::PrecisionExhausted`]) to decide a rank from entries whose
//! vanishing is not certified to order `K`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::io::print::matrix_text;
use crate::scalar::GaussianRational as C;
use crate::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: usize,
    data: Vec<Series>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        Matrix { rows, cols, order, data: vec![Series::zero(order); rows * cols] }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = Series::one(order);
        }
        m
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize, order: usize) -> Self {
        let mut m = Self::zeros(rows, cols, order);
        m.data[i * cols + j] = Series::one(order);
        m
    }

    /// Builds a matrix from rows; all entries are brought to the smallest
    /// order among them.
    pub fn from_rows(rows: Vec<Vec<Series>>) -> Result<Self> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("rows of different length".into()));
        }
        let order = rows.iter().flatten().map(Series::order).min().unwrap_or(1);
        Self::from_rows_with_order(rows, order)
    }

    /// As [`Matrix::from_rows`] with an explicit order (needed for empty
    /// matrices). Longer entries are truncated, shorter ones zero-padded.
    pub fn from_rows_with_order(rows: Vec<Vec<Series>>, order: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("rows of different length".into()));
        }
        let data = rows.into_iter().flatten().map(|s| s.resized(order)).collect();
        Ok(Matrix { rows: r, cols: c, order, data })
    }

    pub fn from_scalars(rows: &[Vec<C>], order: usize) -> Result<Self> {
        Self::from_rows_with_order(
            rows.iter().map(|r| r.iter().map(|c| Series::constant(c.clone(), order)).collect()).collect(),
            order,
        )
    }

    pub fn from_fn(rows: usize, cols: usize, order: usize, f: impl Fn(usize, usize) -> Series) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).resized(order));
            }
        }
        Matrix { rows, cols, order, data }
    }

    /// Column vector.
    pub fn column(entries: Vec<Series>, order: usize) -> Self {
        let n = entries.len();
        Matrix { rows: n, cols: 1, order, data: entries.into_iter().map(|s| s.resized(order)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Series) {
        self.data[i * self.cols + j] = s.resized(self.order);
    }

    pub fn to_rows(&self) -> Vec<Vec<Series>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Series> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.rows, range.len(), self.order, |i, j| self.get(i, range.start + j).clone())
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(range.len(), self.cols, self.order, |i, j| self.get(range.start + i, j).clone())
    }

    /// Square submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), self.order, |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Series::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Series) -> Series) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, order: self.order, data: self.data.iter().map(f).collect() }
    }

    pub fn truncate(&self, order: usize) -> Matrix {
        let order = order.min(self.order);
        Matrix { rows: self.rows, cols: self.cols, order, data: self.data.iter().map(|s| s.truncate(order)).collect() }
    }

    pub fn resized(&self, order: usize) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, order, data: self.data.iter().map(|s| s.resized(order)).collect() }
    }

    pub fn scale(&self, c: &Series) -> Matrix {
        self.map(|s| s * c)
    }

    pub fn scale_scalar(&self, c: &C) -> Matrix {
        self.map(|s| s.scale(c))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.order, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.order, |i, j| self.get(j, i).conj())
    }

    /// First `(row, col)` with `A_{ij} ≠ conj(A_{ji})`.
    pub fn hermitian_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != self.get(j, i).conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_violation().is_none()
    }

    /// Coefficient matrix of `λʳ`, as a matrix of order 1.
    pub fn lambda_part(&self, r: usize) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: 1,
            data: self
                .data
                .iter()
                .map(|s| Series::constant(if r < s.order() { s.coeff(r).clone() } else { C::zero() }, 1))
                .collect(),
        }
    }

    /// `λ = 0` part, kept at the same order.
    pub fn classical_part(&self) -> Matrix {
        self.lambda_part(0).resized(self.order)
    }

    pub fn trace(&self) -> Series {
        (0..self.rows.min(self.cols)).fold(Series::zero(self.order), |acc, i| &acc + self.get(i, i))
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let order = self.order.min(other.order);
        let mut out = Matrix::zeros(self.rows, other.cols, order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Series, &Series) -> Series) -> Matrix {
        let order = self.order.min(other.order);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b).truncate(order)).collect(),
        }
    }

    /// Determinant by cofactor expansion along the first row. Meant for the
    /// small matrices of the positivity tests.
    pub fn determinant(&self) -> Result<Series> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// Determinant of the submatrix on `rows × cols` (equal lengths).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Series {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => Series::one(self.order),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => &(self.get(rows[0], cols[0]) * self.get(rows[1], cols[1])) - &(self.get(rows[0], cols[1]) * self.get(rows[1], cols[0])),
            _ => {
                let mut acc = Series::zero(self.order);
                let rest: Vec<usize> = rows[1..].to_vec();
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub: Vec<usize> = cols.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect();
                    let term = a * &self.minor(&rest, &sub);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Inverse over `R`; fails with [`Error::NotUnit`] unless the matrix is
    /// square with a unit determinant.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let e = eliminate(self)?;
        if e.rank != self.rows || e.pivots.iter().any(|d| d.valuation() != Some(0)) {
            return Err(Error::NotUnit);
        }
        // P A Q = D  ⇒  A⁻¹ = Q D⁻¹ P.
        let dinv = Matrix::from_fn(self.rows, self.rows, self.order, |i, j| {
            if i == j {
                e.pivots[i].invert().expect("unit pivot")
            } else {
                Series::zero(self.order)
            }
        });
        e.q.checked_mul(&dinv)?.checked_mul(&e.p)
    }

    /// Stacks the columns into one column vector.
    pub fn vectorize(&self) -> Vec<Series> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[Matrix]) -> Result<Matrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::ShapeMismatch("hstack of blocks with different row counts".into()));
        }
        let order = blocks.iter().map(|b| b.order).min().unwrap_or(1);
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols, order);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j).truncate(order));
                }
            }
            off += b.cols;
        }
        Ok(out)
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        self.checked_add(other).expect("matrix shapes")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        self.checked_sub(other).expect("matrix shapes")
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix shapes")
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|s| -s)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&matrix_text(&self.to_rows()))
    }
}

/// `P A Q = diag(pivots) ⊕ 0`.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub pivots: Vec<Series>,
    pub p: Matrix,
    pub q: Matrix,
    pub q_inv: Matrix,
    /// Trusted coefficients per column of `Q`.
    q_precision: Vec<usize>,
}

impl Elimination {
    pub fn valuations(&self) -> Vec<usize> {
        self.pivots.iter().map(|d| d.valuation().expect("nonzero pivot")).collect()
    }

    /// Free basis of `ker A` (columns `rank..` of `Q`).
    pub fn kernel(&self) -> Result<Matrix> {
        let k = self.q.order();
        if let Some(j) = (self.rank..self.q.cols()).find(|&j| self.q_precision[j] < k) {
            return Err(Error::PrecisionExhausted(format!(
                "kernel vector {} is only known to order {} of {}",
                j - self.rank + 1,
                self.q_precision[j],
                k
            )));
        }
        Ok(self.q.columns(self.rank..self.q.cols()))
    }

    /// Representatives of a basis of `Rⁿ / ker A` (columns `..rank` of `Q`).
    pub fn quotient_representatives(&self) -> Matrix {
        self.q.columns(0..self.rank)
    }

    /// Coordinates of `y` in the quotient basis.
    pub fn quotient_coordinates(&self, y: &Matrix) -> Result<Matrix> {
        Ok(self.q_inv.checked_mul(y)?.row_block(0..self.rank))
    }

    /// Solves `A x = b`. `None` when there is no solution over `R`.
    /// The second component is the number of trusted coefficients of `x`.
    pub fn solve(&self, b: &Matrix) -> Result<Option<(Matrix, usize)>> {
        let pb = self.p.checked_mul(b)?;
        let k = pb.order();
        let n = self.q.rows();
        let mut y = Matrix::zeros(n, b.cols(), k);
        let mut precision = k;
        for j in 0..b.cols() {
            for i in 0..pb.rows() {
                let e = pb.get(i, j);
                if i >= self.rank {
                    if !e.is_zero() {
                        return Ok(None);
                    }
                    continue;
                }
                let d = &self.pivots[i];
                let v = d.valuation().expect("nonzero pivot");
                if e.valuation().is_some_and(|w| w < v) {
                    return Ok(None);
                }
                let u = d.unshift(v).truncate(k - v).resized(k).invert()?;
                y.set(i, j, (&e.unshift(v) * &u).truncate(k - v).resized(k));
                if !e.is_zero() {
                    precision = precision.min(k - v);
                }
            }
        }
        Ok(Some((self.q.checked_mul(&y)?, precision)))
    }
}

/// Valuation-pivoted elimination to Smith form.
pub fn eliminate(a: &Matrix) -> Result<Elimination> {
    let (rows, cols, k) = (a.rows, a.cols, a.order);
    let mut w = a.clone();
    let mut prec = vec![k; rows * cols];
    let mut p = Matrix::identity(rows, k);
    let mut q = Matrix::identity(cols, k);
    let mut q_inv = Matrix::identity(cols, k);
    let mut q_prec = vec![k; cols];
    let mut pivots = Vec::new();

    for t in 0..rows.min(cols) {
        // Lowest-valuation nonzero entry, first in row-major order; the
        // least precision among entries that only look like zero.
        let mut best: Option<(usize, usize, usize)> = None;
        let mut uncertain = k;
        for i in t..rows {
            for j in t..cols {
                let e = w.get(i, j);
                match e.valuation() {
                    Some(v) if best.is_none_or(|b| v < b.0) => best = Some((v, i, j)),
                    Some(_) => {}
                    None => uncertain = uncertain.min(prec[i * cols + j]),
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            if uncertain < k {
                return Err(Error::PrecisionExhausted(format!(
                    "remaining block vanishes only to order {} of {}; rank undetermined",
                    uncertain, k
                )));
            }
            break;
        };
        if uncertain <= v {
            return Err(Error::PrecisionExhausted(format!(
                "an entry known only to order {} could undercut a pivot of valuation {}",
                uncertain, v
            )));
        }
        swap_rows(&mut w, &mut prec, t, pi);
        swap_rows_plain(&mut p, t, pi);
        swap_cols(&mut w, &mut prec, t, pj);
        swap_cols_plain(&mut q, t, pj);
        swap_rows_plain(&mut q_inv, t, pj);
        q_prec.swap(t, pj);

        let pivot = w.get(t, t).clone();
        let pivot_prec = prec[t * cols + t];
        let unit_inv = pivot.unshift(v).truncate(k - v).resized(k).invert()?;
        let quotient = |e: &Series| (&e.unshift(v) * &unit_inv).truncate(k - v).resized(k);

        for i in (t + 1)..rows {
            let e = w.get(i, t).clone();
            if e.is_zero() {
                continue;
            }
            let m = quotient(&e);
            let pm = prec[i * cols + t].min(pivot_prec) - v;
            let vm = m.valuation().unwrap_or(k);
            for j in (t + 1)..cols {
                let src = w.get(t, j).clone();
                let idx = i * cols + j;
                let s_prec = prec[t * cols + j];
                let bound = pm.saturating_add(src.valuation().unwrap_or(s_prec)).min(s_prec.saturating_add(vm));
                prec[idx] = prec[idx].min(bound).min(k);
                if !src.is_zero() {
                    w.data[idx] = &w.data[idx] - &(&m * &src);
                }
            }
            w.data[i * cols + t] = Series::zero(k);
            prec[i * cols + t] = k;
            for j in 0..rows {
                let s = p.get(t, j).clone();
                if !s.is_zero() {
                    let idx = i * rows + j;
                    p.data[idx] = &p.data[idx] - &(&m * &s);
                }
            }
        }
        for j in (t + 1)..cols {
            let e = w.get(t, j).clone();
            if e.is_zero() {
                continue;
            }
            let m = quotient(&e);
            let pm = prec[t * cols + j].min(pivot_prec) - v;
            let vm = m.valuation().unwrap_or(k);
            w.data[t * cols + j] = Series::zero(k);
            prec[t * cols + j] = k;
            // Q ← Q (I − m e_t e_jᵀ): column j −= m · column t.
            let col_t_val = (0..cols).filter_map(|r| q.get(r, t).valuation()).min().unwrap_or(k);
            q_prec[j] = q_prec[j].min(pm.saturating_add(col_t_val)).min(q_prec[t].saturating_add(vm));
            for r in 0..cols {
                let s = q.get(r, t).clone();
                if !s.is_zero() {
                    let idx = r * cols + j;
                    q.data[idx] = &q.data[idx] - &(&m * &s);
                }
            }
            // Q⁻¹ ← (I + m e_t e_jᵀ) Q⁻¹: row t += m · row j.
            for c in 0..cols {
                let s = q_inv.get(j, c).clone();
                if !s.is_zero() {
                    let idx = t * cols + c;
                    q_inv.data[idx] = &q_inv.data[idx] + &(&m * &s);
                }
            }
        }
        pivots.push(pivot);
    }
    Ok(Elimination { rank: pivots.len(), pivots, p, q, q_inv, q_precision: q_prec })
}

fn swap_rows(w: &mut Matrix, prec: &mut [usize], a: usize, b: usize) {
    if a == b {
        return;
    }
    let c = w.cols;
    for j in 0..c {
        w.data.swap(a * c + j, b * c + j);
        prec.swap(a * c + j, b * c + j);
    }
}

fn swap_cols(w: &mut Matrix, prec: &mut [usize], a: usize, b: usize) {
    if a == b {
        return;
    }
    let c = w.cols;
    for i in 0..w.rows {
        w.data.swap(i * c + a, i * c + b);
        prec.swap(i * c + a, i * c + b);
    }
}

fn swap_rows_plain(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let c = m.cols;
    for j in 0..c {
        m.data.swap(a * c + j, b * c + j);
    }
}

fn swap_cols_plain(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let c = m.cols;
    for i in 0..m.rows {
        m.data.swap(i * c + a, i * c + b);
    }
}

/// Free basis of the kernel of `a`.
pub fn kernel(a: &Matrix) -> Result<Matrix> {
    eliminate(a)?.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::series::FormalSeries;

    const K: usize = 4;

    fn s(c: &[i64]) -> Series {
        let mut v: Vec<C> = c.iter().map(|&x| C::from_i64(x)).collect();
        v.resize(K, C::zero());
        FormalSeries::from_coeffs(v)
    }

    fn m(rows: &[&[&[i64]]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|c| s(c)).collect()).collect()).unwrap()
    }

    fn check_smith(a: &Matrix, e: &Elimination) {
        let d = &(&e.p * a) * &e.q;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j && i < e.rank { e.pivots[i].clone() } else { Series::zero(K) };
                assert_eq!(*d.get(i, j), expected, "entry {} {}", i, j);
            }
        }
        assert_eq!(&e.q * &e.q_inv, Matrix::identity(a.cols(), K));
        let vals = e.valuations();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn smith_form_of_valued_matrix() {
        let a = m(&[&[&[0, 1], &[2, 0, 1]], &[&[0, 0, 3], &[1, 1]], &[&[0, 1], &[2]]]);
        let e = eliminate(&a).unwrap();
        check_smith(&a, &e);
        assert_eq!(e.rank, 2);
        let ker = e.kernel();
        assert!(ker.is_ok());
    }

    #[test]
    fn kernel_of_exact_zero_block() {
        let a = m(&[&[&[1], &[0]], &[&[0], &[0]]]);
        let e = eliminate(&a).unwrap();
        assert_eq!(e.rank, 1);
        let ker = e.kernel().unwrap();
        assert!((&a * &ker).is_zero());
        assert_eq!(ker.cols(), 1);
    }

    #[test]
    fn diag_lambda_has_full_rank() {
        let a = m(&[&[&[1], &[0]], &[&[0], &[0, 1]]]);
        let e = eliminate(&a).unwrap();
        assert_eq!(e.rank, 2);
        assert_eq!(e.valuations(), vec![0, 1]);
        assert_eq!(e.kernel().unwrap().cols(), 0);
    }

    #[test]
    fn precision_loss_is_reported() {
        // [[λ, λ], [λ, λ + λ³]] : after the first pivot the block is λ³,
        // computed from data divided by λ; fine. A zero block reached after
        // dividing by λ is only certified to order K − 1.
        let a = m(&[&[&[0, 1], &[0, 1]], &[&[0, 1], &[0, 1]]]);
        let e = eliminate(&a).unwrap();
        assert_eq!(e.rank, 1);
        assert!(matches!(e.kernel(), Err(Error::PrecisionExhausted(_))));

        let b = m(&[&[&[0, 1], &[0, 1, 1]], &[&[0, 1, 1], &[0, 0, 0]]]);
        let e = eliminate(&b).unwrap();
        check_smith(&b, &e);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[&[1, 1], &[2]], &[&[0, 1], &[1]]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2, K));
        assert_eq!(&inv * &a, Matrix::identity(2, K));
        let b = Matrix::column(vec![s(&[3]), s(&[0, 5])], K);
        let (x, prec) = eliminate(&a).unwrap().solve(&b).unwrap().unwrap();
        assert_eq!(prec, K);
        assert_eq!(&a * &x, b);

        let lam = m(&[&[&[0, 1], &[0]], &[&[0], &[0, 1]]]);
        let e = eliminate(&lam).unwrap();
        assert!(e.solve(&Matrix::column(vec![s(&[1]), s(&[0])], K)).unwrap().is_none());
        let (x, prec) = e.solve(&Matrix::column(vec![s(&[0, 2]), s(&[0])], K)).unwrap().unwrap();
        assert_eq!(prec, K - 1);
        assert_eq!(*x.get(0, 0), s(&[2]));
        assert!(matches!(lam.inverse(), Err(Error::NotUnit)));
    }

    #[test]
    fn determinants() {
        let a = m(&[&[&[2], &[1], &[0]], &[&[1], &[3], &[1]], &[&[0], &[1], &[4]]]);
        assert_eq!(a.determinant().unwrap(), s(&[18]));
        let g = m(&[&[&[0, 0, 1], &[0, 1]], &[&[0, 1], &[1]]]);
        assert!(g.determinant().unwrap().is_zero());
    }
}
