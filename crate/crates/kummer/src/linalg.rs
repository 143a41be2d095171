//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision; no floating point is used
//! anywhere. The workhorses are Smith normal form with unimodular
//! transforms, fraction-free determinants, exact signatures via rational
//! congruence diagonalization, and saturated integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of i64 values (convenience for tests and
    /// fixed Gram matrices).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn scale(&self, m: &BigInt) -> IntMatrix {
        let entries = self.entries.iter().map(|e| e * m).collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Block-diagonal stacking of two matrices.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i][j] = q;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Signature (positive count, negative count) of a symmetric
    /// nondegenerate matrix, via exact rational congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if self.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| BigRational::from(e.clone()))
                    .collect()
            })
            .collect();

        let mut pos = 0usize;
        let mut neg = 0usize;
        for k in 0..n {
            if a[k][k].is_zero() {
                // congruence pivot repair: prefer swapping in a later basis
                // vector with nonzero norm; otherwise v_k += v_j for some j
                // with a[k][j] != 0 makes the pivot 2*a[k][j]
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else {
                    let j = (k + 1..n)
                        .find(|&j| !a[k][j].is_zero())
                        .expect("nondegenerate matrix must have a usable pivot");
                    for col in 0..n {
                        let v = a[j][col].clone();
                        a[k][col] += v;
                    }
                    for row in 0..n {
                        let v = a[row][j].clone();
                        a[row][k] += v;
                    }
                }
            }
            let pivot = a[k][k].clone();
            debug_assert!(!pivot.is_zero());
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            // clear row and column k beyond the pivot: v_i -= factor * v_k
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for col in 0..n {
                    let sub = &factor * &a[k][col];
                    a[i][col] -= sub;
                }
                for row in 0..n {
                    let sub = &factor * &a[row][k];
                    a[row][i] -= sub;
                }
            }
        }
        Ok((pos, neg))
    }

    /// Basis (rows) of the saturated left kernel {x : x * m = 0}.
    ///
    /// The returned basis is primitive: the quotient of the ambient by the
    /// kernel sublattice is torsion-free. Rows are put in Hermite normal
    /// form so the output is reproducible.
    pub fn kernel_saturation(&self) -> IntMatrix {
        let snf = smith_normal_form(self);
        let r = self.rows;
        let effective_rank = snf.d.iter().filter(|d| !d.is_zero()).count();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in effective_rank..r {
            rows.push(snf.u.row(i).to_vec());
        }
        hermite_normal_form(&IntMatrix::from_rows_or_empty(rows, r))
    }

    fn from_rows_or_empty(rows: Vec<Vec<BigInt>>, cols_hint: usize) -> IntMatrix {
        if rows.is_empty() {
            IntMatrix::zero(0, cols_hint)
        } else {
            IntMatrix::from_rows(rows)
        }
    }

    /// Exact inverse of a unimodular integer matrix.
    pub fn inverse_unimodular(&self) -> IntMatrix {
        assert!(self.is_square());
        let det = self.det();
        assert!(det.abs().is_one(), "matrix is not unimodular");
        let n = self.rows;
        // Gauss-Jordan over the rationals, then the result is integral.
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|e| BigRational::from(e.clone()))
                    .collect();
                for j in 0..n {
                    row.push(if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    });
                }
                row
            })
            .collect();
        for k in 0..n {
            if a[k][k].is_zero() {
                let i = (k + 1..n)
                    .find(|&i| !a[i][k].is_zero())
                    .expect("invertible");
                a.swap(k, i);
            }
            let pivot = a[k][k].clone();
            for j in 0..2 * n {
                a[k][j] /= pivot.clone();
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let factor = a[i][k].clone();
                for j in 0..2 * n {
                    let sub = &factor * &a[k][j];
                    a[i][j] -= sub;
                }
            }
        }
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                assert!(
                    v.is_integer(),
                    "inverse of unimodular matrix must be integral"
                );
                out[(i, j)] = v.to_integer();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form u * m * v = diag(d) with unimodular u, v.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    /// Elementary divisors d_1 | d_2 | ..., each >= 0, length min(rows, cols).
    pub d: Vec<BigInt>,
    /// Left unimodular transform (rows x rows).
    pub u: IntMatrix,
    /// Right unimodular transform (cols x cols).
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// The diagonal as a full rows x cols matrix.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for (i, di) in self.d.iter().enumerate() {
            m[(i, i)] = di.clone();
        }
        m
    }

    /// Divisors greater than 1 (the invariant factors of the cokernel).
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.d
            .iter()
            .filter(|x| x.abs() > BigInt::one())
            .cloned()
            .collect()
    }
}

/// Computes the Smith normal form of an integer matrix.
///
/// Standard elimination: move a minimal nonzero entry to the pivot,
/// reduce its row and column with Euclidean steps, and fix up the
/// divisibility chain at the end. Total function; the zero matrix yields
/// an all-zero diagonal.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let k_max = rows.min(cols);

    loop {
        diagonalize(&mut a, &mut u, &mut v);
        for i in 0..k_max {
            if a[(i, i)].is_negative() {
                negate_row(&mut a, &mut u, i);
            }
        }
        // divisibility chain d_i | d_{i+1}: a violation is repaired by
        // adding column j to column i and re-running the elimination,
        // which replaces (d_i, d_j) with (gcd, lcm)
        let mut violated = None;
        'scan: for i in 0..k_max {
            if a[(i, i)].is_zero() {
                continue;
            }
            for j in i + 1..k_max {
                if !a[(j, j)].is_zero() && !(&a[(j, j)] % &a[(i, i)]).is_zero() {
                    violated = Some((i, j));
                    break 'scan;
                }
            }
        }
        match violated {
            Some((i, j)) => add_col(&mut a, &mut v, i, j),
            None => break,
        }
    }

    let d: Vec<BigInt> = (0..k_max).map(|i| a[(i, i)].clone()).collect();
    debug_assert!({
        let recomposed = u.mul(m).mul(&v);
        let mut ok = true;
        for i in 0..rows {
            for j in 0..cols {
                let expect = if i == j && i < k_max {
                    d[i].clone()
                } else {
                    BigInt::zero()
                };
                ok &= recomposed[(i, j)] == expect;
            }
        }
        ok
    });
    SnfDecomposition { d, u, v }
}

/// One full diagonalization pass: clears everything off the diagonal with
/// unimodular row/column operations mirrored into u and v.
fn diagonalize(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix) {
    let rows = a.rows();
    let cols = a.cols();
    let k_max = rows.min(cols);
    let mut k = 0;
    while k < k_max {
        // move a nonzero entry of minimal absolute value to the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if a[(i, j)].abs() < a[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(a, u, k, pi);
        swap_cols(a, v, k, pj);

        // reduce row and column k until both are clear beyond the pivot;
        // each swap shrinks |pivot|, so this terminates
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(i, k)], &a[(k, k)]);
                row_op(a, u, i, k, &q);
                if !a[(i, k)].is_zero() {
                    swap_rows(a, u, k, i);
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(k, j)], &a[(k, k)]);
                col_op(a, v, j, k, &q);
                if !a[(k, j)].is_zero() {
                    swap_cols(a, v, k, j);
                    dirty = true;
                }
            }
            let row_clear = (k + 1..rows).all(|i| a[(i, k)].is_zero());
            let col_clear = (k + 1..cols).all(|j| a[(k, j)].is_zero());
            if row_clear && col_clear && !dirty {
                break;
            }
        }
        k += 1;
    }
}

/// Row-style Hermite normal form of the row lattice of m.
///
/// Pivots are positive, strictly to the right as rows descend, and the
/// entries above each pivot are reduced into [0, pivot). Zero rows are
/// dropped. This is the unique canonical basis of the row lattice.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows.len() {
            break;
        }
        // gcd the column below pivot_row into a single row
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if row[col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if row[col].abs() < rows[b][col].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[i][col], &rows[pivot_row][col]);
                for c in 0..cols {
                    let sub = &q * &rows[pivot_row][c];
                    rows[i][c] -= sub;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for c in 0..cols {
                rows[pivot_row][c] = -rows[pivot_row][c].clone();
            }
        }
        // reduce the entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = rows[i][col].div_floor(&rows[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            for c in 0..cols {
                let sub = &q * &rows[pivot_row][c];
                rows[i][c] -= sub;
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    IntMatrix::from_rows_or_empty(rows, cols)
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient with remainder of minimal absolute value
    let (mut q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        let tmp = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = tmp;
    }
    for c in 0..u.cols() {
        let tmp = u[(i, c)].clone();
        u[(i, c)] = u[(j, c)].clone();
        u[(j, c)] = tmp;
    }
}

fn swap_cols(a: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows() {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
    }
    for r in 0..v.rows() {
        let tmp = v[(r, i)].clone();
        v[(r, i)] = v[(r, j)].clone();
        v[(r, j)] = tmp;
    }
}

/// row_i -= q * row_k, mirrored on u.
fn row_op(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for c in 0..a.cols() {
        let sub = q * &a[(k, c)];
        a[(i, c)] -= sub;
    }
    for c in 0..u.cols() {
        let sub = q * &u[(k, c)];
        u[(i, c)] -= sub;
    }
}

/// col_j -= q * col_k, mirrored on v.
fn col_op(a: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for r in 0..a.rows() {
        let sub = q * &a[(r, k)];
        a[(r, j)] -= sub;
    }
    for r in 0..v.rows() {
        let sub = q * &v[(r, k)];
        v[(r, j)] -= sub;
    }
}

/// col_i += col_j, mirrored on v.
fn add_col(a: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    for r in 0..a.rows() {
        let addend = a[(r, j)].clone();
        a[(r, i)] += addend;
    }
    for r in 0..v.rows() {
        let addend = v[(r, j)].clone();
        v[(r, i)] += addend;
    }
}

fn negate_row(a: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for c in 0..a.cols() {
        a[(i, c)] = -a[(i, c)].clone();
    }
    for c in 0..u.cols() {
        u[(i, c)] = -u[(i, c)].clone();
    }
}
