//! Dense exact linear algebra over a runtime field.
//!
//! Row-major matrices; a matrix represents a linear map sending a column
//! vector x to m*x, so a map V -> W with dim V = n, dim W = m is an m x n
//! matrix. All routines are plain Gaussian elimination, exact by
//! construction.

use crate::field::FieldOps;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }
}

pub fn zeros<F: FieldOps>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix {
        rows,
        cols,
        data: vec![f.zero(); rows * cols],
    }
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: FieldOps>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in mat_mul");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.at(i, j), &f.mul(aik, b.at(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_add<F: FieldOps>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let mut out = a.clone();
    for i in 0..a.data.len() {
        out.data[i] = f.add(&a.data[i], &b.data[i]);
    }
    out
}

pub fn mat_neg<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut out = a.clone();
    for v in out.data.iter_mut() {
        *v = f.neg(v);
    }
    out
}

pub fn mat_scale<F: FieldOps>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut out = a.clone();
    for v in out.data.iter_mut() {
        *v = f.mul(c, v);
    }
    out
}

pub fn mat_sub<F: FieldOps>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    mat_add(f, a, &mat_neg(f, b))
}

pub fn transpose<E: Clone + PartialEq + std::fmt::Debug>(a: &Matrix<E>) -> Matrix<E> {
    let mut data = Vec::with_capacity(a.rows * a.cols);
    for c in 0..a.cols {
        for r in 0..a.rows {
            data.push(a.at(r, c).clone());
        }
    }
    Matrix {
        rows: a.cols,
        cols: a.rows,
        data,
    }
}

/// Stack matrices vertically (same column count).
pub fn vstack<E: Clone + PartialEq + std::fmt::Debug>(blocks: &[&Matrix<E>]) -> Matrix<E> {
    let cols = blocks.first().map_or(0, |b| b.cols);
    assert!(blocks.iter().all(|b| b.cols == cols));
    let rows = blocks.iter().map(|b| b.rows).sum();
    let mut data = Vec::with_capacity(rows * cols);
    for b in blocks {
        data.extend_from_slice(&b.data);
    }
    Matrix { rows, cols, data }
}

/// Block diagonal of the given square-or-rectangular blocks.
pub fn block_diag<F: FieldOps>(f: &F, blocks: &[&Matrix<F::Elem>]) -> Matrix<F::Elem> {
    let rows = blocks.iter().map(|b| b.rows).sum();
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut out = zeros(f, rows, cols);
    let (mut ro, mut co) = (0, 0);
    for b in blocks {
        for r in 0..b.rows {
            for c in 0..b.cols {
                out.set(ro + r, co + c, b.at(r, c).clone());
            }
        }
        ro += b.rows;
        co += b.cols;
    }
    out
}

/// Result of row reduction: reduced matrix, pivot columns, and rank.
pub struct Rref<E> {
    pub mat: Matrix<E>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form.
pub fn rref<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Find a pivot in column c at or below row r.
        let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.at(i, c))) else {
            continue;
        };
        // Swap rows pr and r.
        if pr != r {
            for j in 0..m.cols {
                let tmp = m.at(r, j).clone();
                m.set(r, j, m.at(pr, j).clone());
                m.set(pr, j, tmp);
            }
        }
        // Scale row r to make the pivot 1.
        let inv = f.inv(m.at(r, c)).expect("nonzero pivot");
        for j in 0..m.cols {
            m.set(r, j, f.mul(&inv, m.at(r, j)));
        }
        // Eliminate column c from all other rows.
        for i in 0..m.rows {
            if i == r || f.is_zero(m.at(i, c)) {
                continue;
            }
            let factor = m.at(i, c).clone();
            for j in 0..m.cols {
                let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { mat: m, pivots }
}

pub fn rank<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> usize {
    if a.is_empty() {
        return 0;
    }
    rref(f, a).pivots.len()
}

/// Basis of the kernel of `a`, returned as columns of an (a.cols x k) matrix.
pub fn kernel_basis<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    if a.cols == 0 {
        return zeros(f, 0, 0);
    }
    if a.rows == 0 {
        return identity(f, a.cols);
    }
    let red = rref(f, a);
    let pivot_set: std::collections::HashSet<usize> = red.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut out = zeros(f, a.cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, f.one());
        for (ri, &pc) in red.pivots.iter().enumerate() {
            // x_pc = -R[ri, fc]
            out.set(pc, k, f.neg(red.mat.at(ri, fc)));
        }
    }
    out
}

/// Basis of the column space of `a`, as columns.
pub fn image_basis<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    if a.is_empty() {
        return zeros(f, a.rows, 0);
    }
    let red = rref(f, a);
    let mut out = zeros(f, a.rows, red.pivots.len());
    for (k, &c) in red.pivots.iter().enumerate() {
        for r in 0..a.rows {
            out.set(r, k, a.at(r, c).clone());
        }
    }
    out
}

/// Solve a * x = b for x (b has matching rows; may have several columns).
/// Returns None when inconsistent.
pub fn solve<F: FieldOps>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, b.rows);
    // Row reduce [a | b].
    let mut aug = zeros(f, a.rows, a.cols + b.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.at(r, c).clone());
        }
        for c in 0..b.cols {
            aug.set(r, a.cols + c, b.at(r, c).clone());
        }
    }
    let red = rref(f, &aug);
    // Inconsistent if a pivot lies in the b-part.
    if red.pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = zeros(f, a.cols, b.cols);
    for (ri, &pc) in red.pivots.iter().enumerate() {
        for c in 0..b.cols {
            x.set(pc, c, red.mat.at(ri, a.cols + c).clone());
        }
    }
    Some(x)
}

/// Inverse of a square matrix; None if singular.
pub fn inverse<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols);
    let sol = solve(f, a, &identity(f, a.rows))?;
    // solve() returns *a* solution; verify it is two-sided (square case: rank check).
    if rank(f, a) != a.rows {
        return None;
    }
    Some(sol)
}

/// Representatives of a complement of im(inner) inside the full space k^n:
/// returns columns extending im(inner) to a basis. Used for cokernels.
pub fn cokernel_reps<F: FieldOps>(f: &F, inner: &Matrix<F::Elem>, n: usize) -> Matrix<F::Elem> {
    // Columns of `inner` live in k^n. Pick standard basis vectors completing
    // the image to a basis, greedily.
    assert_eq!(inner.rows, n);
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    for c in 0..inner.cols {
        cols.push((0..n).map(|r| inner.at(r, c).clone()).collect());
    }
    let base_rank = {
        let m = cols_to_matrix(f, n, &cols);
        rank(f, &m)
    };
    let mut chosen = Vec::new();
    let mut cur_rank = base_rank;
    for i in 0..n {
        if cur_rank == n {
            break;
        }
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        cols.push(e.clone());
        let m = cols_to_matrix(f, n, &cols);
        let r = rank(f, &m);
        if r > cur_rank {
            cur_rank = r;
            chosen.push(e);
        } else {
            cols.pop();
        }
    }
    cols_to_matrix(f, n, &chosen)
}

fn cols_to_matrix<F: FieldOps>(f: &F, n: usize, cols: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for r in 0..n {
            m.set(r, c, col[r].clone());
        }
    }
    m
}

/// dim ker(a) for convenience.
pub fn nullity<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> usize {
    a.cols - rank(f, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::num::qi;

    #[test]
    fn rank_kernel_f2() {
        let f = Fp::new(2);
        // [[1,1,0],[0,1,1]] over F2: rank 2, kernel spanned by (1,1,1).
        let m = Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(rank(&f, &m), 2);
        let k = kernel_basis(&f, &m);
        assert_eq!((k.rows, k.cols), (3, 1));
        assert_eq!(k.data, vec![1, 1, 1]);
    }

    #[test]
    fn solve_and_inverse_q() {
        let f = Rationals;
        let a = Matrix::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), qi(1)]]);
        let inv = inverse(&f, &a).unwrap();
        let prod = mat_mul(&f, &a, &inv);
        assert_eq!(prod, identity(&f, 2));
        let singular = Matrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert!(inverse(&f, &singular).is_none());
    }

    #[test]
    fn cokernel_dimensions() {
        let f = Fp::new(3);
        let inner = Matrix::from_rows(vec![vec![1], vec![2], vec![0]]);
        let reps = cokernel_reps(&f, &inner, 3);
        assert_eq!(reps.cols, 2);
    }

    #[test]
    fn inconsistent_solve() {
        let f = Fp::new(2);
        let a = Matrix::from_rows(vec![vec![1, 1], vec![1, 1]]);
        let b = Matrix::from_rows(vec![vec![0], vec![1]]);
        assert!(solve(&f, &a, &b).is_none());
    }
}
