//! Even integral lattices presented by Gram matrices.
//!
//! Covers rescaling L(m), hyperbolic planes and U^3, discriminant forms
//! (A_L, q_L) with exact Q/2Z values, saturated orthogonal complements and
//! primitivity tests for sublattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};

/// A nondegenerate even lattice: symmetric Gram matrix with even diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenLattice {
    gram: IntMatrix,
}

impl EvenLattice {
    /// Validates symmetry, evenness and nondegeneracy.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for i in 0..gram.rows() {
            if gram[(i, i)].is_odd() {
                return Err(Error::NotEven);
            }
        }
        if gram.rows() > 0 && gram.det().is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(EvenLattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        if self.rank() == 0 {
            return Ok((0, 0));
        }
        self.gram.signature()
    }

    /// True iff the signature is (1, rank - 1).
    pub fn is_hyperbolic(&self) -> Result<bool> {
        let (pos, neg) = self.signature()?;
        Ok(pos == 1 && neg == self.rank() - 1)
    }

    pub fn is_indefinite(&self) -> Result<bool> {
        let (pos, neg) = self.signature()?;
        Ok(pos > 0 && neg > 0)
    }

    /// The lattice L(m): same module, form scaled by m.
    pub fn rescale(&self, m: &BigInt) -> Result<EvenLattice> {
        if m.is_zero() {
            return Err(Error::ZeroScale);
        }
        // scaling preserves evenness of the diagonal for any integer m
        EvenLattice::new(self.gram.scale(m))
    }

    /// Discriminant form (A_L, q_L) on the SNF generators of L*/L.
    pub fn discriminant_form(&self) -> FiniteQuadraticForm {
        let n = self.rank();
        if n == 0 {
            return FiniteQuadraticForm::trivial();
        }
        let snf = smith_normal_form(&self.gram);
        let u_inv = snf.u.inverse_unimodular();

        // A_L = Z^n / G Z^n via covector coordinates; the class of y
        // corresponds to u*y in the diagonal presentation, so the i-th
        // cyclic factor Z/d_i is generated by the class of u^{-1} e_i.
        // Values of the form on duals: b(y, y') = y^T G^{-1} y'.
        let g_inv = rational_inverse(&self.gram);
        let mut gens: Vec<usize> = Vec::new();
        for (i, d) in snf.d.iter().enumerate() {
            if d.abs() > BigInt::one() {
                gens.push(i);
            }
        }
        let orders: Vec<BigInt> = gens.iter().map(|&i| snf.d[i].clone()).collect();

        let m = gens.len();
        let mut values = vec![vec![BigRational::zero(); m]; m];
        for (r, &i) in gens.iter().enumerate() {
            for (s, &j) in gens.iter().enumerate() {
                // (u^{-1} e_i)^T G^{-1} (u^{-1} e_j)
                let mut acc = BigRational::zero();
                for p in 0..n {
                    for q in 0..n {
                        if u_inv[(p, i)].is_zero() || u_inv[(q, j)].is_zero() {
                            continue;
                        }
                        acc += BigRational::from(u_inv[(p, i)].clone())
                            * &g_inv[p][q]
                            * BigRational::from(u_inv[(q, j)].clone());
                    }
                }
                values[r][s] = acc;
            }
        }
        FiniteQuadraticForm::new(orders, values)
    }

    /// Gram matrix of the saturated orthogonal complement of the sublattice
    /// spanned by the rows of `image_basis` (coordinates in this lattice).
    pub fn orthogonal_complement(&self, image_basis: &IntMatrix) -> Result<EvenLattice> {
        if image_basis.cols() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "basis vectors have {} coordinates, ambient rank is {}",
                image_basis.cols(),
                self.rank()
            )));
        }
        let rank = smith_normal_form(image_basis)
            .d
            .iter()
            .filter(|d| !d.is_zero())
            .count();
        if rank != image_basis.rows() {
            return Err(Error::DegenerateInput);
        }
        // x is orthogonal to every row b iff x * (G * B^T) = 0
        let constraints = self.gram.mul(&image_basis.transpose());
        let kernel = constraints.kernel_saturation();
        let gram = kernel.mul(&self.gram).mul(&kernel.transpose());
        EvenLattice::new(gram)
    }

    /// True iff the rows span a primitive sublattice (torsion-free cokernel).
    pub fn is_primitive_embedding(&self, image_basis: &IntMatrix) -> bool {
        debug_assert_eq!(image_basis.cols(), self.rank());
        let snf = smith_normal_form(image_basis);
        snf.d.len() >= image_basis.rows()
            && snf.d.iter().take(image_basis.rows()).all(|d| d.is_one())
    }
}

/// The hyperbolic plane U with Gram ((0,1),(1,0)).
pub fn hyperbolic_plane() -> EvenLattice {
    EvenLattice::from_i64(&[&[0, 1], &[1, 0]]).expect("U is a valid even lattice")
}

/// U^3 in the frozen basis order e1, f1, e2, f2, e3, f3.
pub fn hyperbolic_u3() -> EvenLattice {
    let u = hyperbolic_plane();
    let gram = u.gram().block_diag(u.gram()).block_diag(u.gram());
    EvenLattice::new(gram).expect("U^3 is a valid even lattice")
}

/// Exact inverse of a nondegenerate integer matrix, as rationals.
fn rational_inverse(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m
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
                .expect("matrix must be invertible");
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
    (0..n).map(|i| a[i][n..].to_vec()).collect()
}

/// A finite abelian group with a Q/2Z-valued quadratic form.
///
/// Generators g_1, ..., g_m of orders m_1 | m_2 | ... (each >= 2);
/// `values[i][i]` stores q(g_i) reduced into [0, 2) and `values[i][j]`
/// (i != j) stores the bilinear value b(g_i, g_j) reduced into [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<BigInt>,
    values: Vec<Vec<BigRational>>,
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn new(orders: Vec<BigInt>, raw_values: Vec<Vec<BigRational>>) -> Self {
        let m = orders.len();
        assert_eq!(raw_values.len(), m);
        let mut values = raw_values;
        for i in 0..m {
            assert_eq!(values[i].len(), m);
            values[i][i] = reduce_mod(&values[i][i], 2);
            for j in 0..m {
                if i != j {
                    values[i][j] = reduce_mod(&values[i][j], 1);
                }
            }
        }
        FiniteQuadraticForm { orders, values }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// |A| = product of the cyclic orders.
    pub fn group_order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// l(A): the minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.orders.len()
    }

    /// q(x) in [0, 2) for x given in generator coordinates.
    pub fn q_value(&self, coords: &[BigInt]) -> BigRational {
        assert_eq!(coords.len(), self.orders.len());
        let mut acc = BigRational::zero();
        for i in 0..coords.len() {
            let xi = BigRational::from(coords[i].clone());
            acc += &xi * &xi * &self.values[i][i];
            for j in i + 1..coords.len() {
                let xj = BigRational::from(coords[j].clone());
                acc += BigRational::from(BigInt::from(2)) * &xi * &xj * &self.values[i][j];
            }
        }
        reduce_mod(&acc, 2)
    }

    /// b(x, y) in [0, 1) for x, y in generator coordinates.
    pub fn b_value(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        assert_eq!(x.len(), self.orders.len());
        assert_eq!(y.len(), self.orders.len());
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                let half_q = if i == j {
                    // b(g, g) = q(g)/2 mod Z
                    &self.values[i][i] / BigRational::from(BigInt::from(2))
                } else {
                    self.values[i][j].clone()
                };
                acc += BigRational::from(x[i].clone()) * BigRational::from(y[j].clone()) * half_q;
            }
        }
        reduce_mod(&acc, 1)
    }

    /// The form (A, -q).
    pub fn negate(&self) -> FiniteQuadraticForm {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| -v.clone()).collect())
            .collect();
        FiniteQuadraticForm::new(self.orders.clone(), values)
    }
}

/// Canonical representative of v modulo `modulus` (1 or 2), in [0, modulus).
fn reduce_mod(v: &BigRational, modulus: u32) -> BigRational {
    let m = BigRational::from(BigInt::from(modulus));
    let q = (v / &m).floor();
    v - q * m
}
