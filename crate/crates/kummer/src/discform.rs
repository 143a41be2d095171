//! Finite quadratic forms of squarefree (hence cyclic) order.
//!
//! For a cyclic discriminant group Z/m the orthogonal group is a subgroup
//! of the units mod m acting by multiplication, so isomorphism tests,
//! O(A) itself, the image of the lattice isometries and the double-coset
//! count of the counting formula all reduce to exhaustive unit arithmetic
//! at desk scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bqf::{automorph_generators, BinaryForm};
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::smith_normal_form;

/// A cyclic group Z/m with q(x) = q_gen * x^2 in Q/2Z, m squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicForm {
    m: u64,
    q_gen: BigRational,
}

impl CyclicForm {
    /// m must be squarefree; q_gen is reduced into [0, 2).
    pub fn new(m: u64, q_gen: BigRational) -> Result<Self> {
        if m == 0 || !crate::arith::is_squarefree_u64(m) {
            return Err(Error::NotCyclic(format!("order {m} is not squarefree")));
        }
        let q_gen = reduce_mod2(&q_gen);
        Ok(CyclicForm { m, q_gen })
    }

    pub fn trivial() -> Self {
        CyclicForm {
            m: 1,
            q_gen: BigRational::zero(),
        }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn q_gen(&self) -> &BigRational {
        &self.q_gen
    }

    /// q(x) = x^2 q_gen mod 2Z, in [0, 2).
    pub fn q_value(&self, x: u64) -> BigRational {
        let x2 = BigInt::from(x) * BigInt::from(x);
        reduce_mod2(&(BigRational::from(x2) * &self.q_gen))
    }

    pub fn negate(&self) -> CyclicForm {
        CyclicForm {
            m: self.m,
            q_gen: reduce_mod2(&-self.q_gen.clone()),
        }
    }
}

fn reduce_mod2(v: &BigRational) -> BigRational {
    let two = BigRational::from(BigInt::from(2));
    let q = (v / &two).floor();
    v - q * two
}

/// Extracts the discriminant form of a lattice with squarefree determinant
/// as a form on a single generator (the SNF generator).
pub fn cyclic_from_lattice(l: &EvenLattice) -> Result<CyclicForm> {
    let f = l.discriminant_form();
    if f.min_generators() > 1 {
        return Err(Error::NotCyclic(format!(
            "discriminant group has invariant factors {:?}",
            f.orders()
        )));
    }
    if f.is_trivial() {
        return Ok(CyclicForm::trivial());
    }
    let m: u64 = (&f.orders()[0])
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("group order {}", f.orders()[0])))?;
    let q_gen = f.q_value(&[BigInt::one()]);
    CyclicForm::new(m, q_gen)
}

/// Finite-form isomorphism for cyclic forms: same order and q_gen matching
/// up to a unit-square rescaling of the generator, decided exhaustively.
pub fn isomorphic_forms(f: &CyclicForm, g: &CyclicForm) -> bool {
    if f.m != g.m {
        return false;
    }
    if f.m == 1 {
        return true;
    }
    units(f.m).any(|u| {
        let u2 = BigInt::from(u) * BigInt::from(u);
        reduce_mod2(&(BigRational::from(u2) * &f.q_gen)) == g.q_gen
    })
}

fn units(m: u64) -> impl Iterator<Item = u64> {
    (1..m.max(2)).filter(move |&u| u.gcd(&m) == 1)
}

/// A multiplicatively closed set of units mod m (a subgroup of (Z/m)^x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupOfUnits {
    m: u64,
    elements: Vec<u64>,
}

impl SubgroupOfUnits {
    /// Validates closure under multiplication; elements are deduped and
    /// sorted. The identity is inserted if missing.
    pub fn new(m: u64, mut elements: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("modulus 0".into()));
        }
        if m == 1 {
            return Ok(SubgroupOfUnits {
                m,
                elements: vec![1],
            });
        }
        for e in elements.iter_mut() {
            *e %= m;
        }
        if !elements.contains(&1) {
            elements.push(1);
        }
        elements.sort_unstable();
        elements.dedup();
        for &e in &elements {
            if e.gcd(&m) != 1 {
                return Err(Error::NotSubgroup(format!("{e} is not a unit mod {m}")));
            }
        }
        let set: std::collections::BTreeSet<u64> = elements.iter().copied().collect();
        for &a in &elements {
            for &b in &elements {
                let p = mul_mod(a, b, m);
                if !set.contains(&p) {
                    return Err(Error::NotSubgroup(format!(
                        "{a} * {b} = {p} mod {m} escapes the set"
                    )));
                }
            }
        }
        Ok(SubgroupOfUnits { m, elements })
    }

    pub fn trivial(m: u64) -> Self {
        SubgroupOfUnits {
            m,
            elements: vec![1],
        }
    }

    /// The subgroup {1, -1} of the units mod m.
    pub fn plus_minus_one(m: u64) -> Self {
        if m <= 2 {
            Self::trivial(m)
        } else {
            SubgroupOfUnits {
                m,
                elements: vec![1, m - 1],
            }
        }
    }

    /// Multiplicative closure of arbitrary unit generators mod m.
    pub fn generated_by(m: u64, generators: &[u64]) -> Result<Self> {
        if m == 1 {
            return Ok(Self::trivial(1));
        }
        let mut set = std::collections::BTreeSet::new();
        set.insert(1u64);
        let gens: Vec<u64> = generators.iter().map(|&g| g % m).collect();
        for &g in &gens {
            if g.gcd(&m) != 1 {
                return Err(Error::NotSubgroup(format!(
                    "generator {g} is not a unit mod {m}"
                )));
            }
        }
        let mut frontier: Vec<u64> = vec![1];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = mul_mod(x, g, m);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(SubgroupOfUnits {
            m,
            elements: set.into_iter().collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, u: u64) -> bool {
        self.elements.binary_search(&(u % self.m.max(1))).is_ok() || (self.m == 1)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupOfUnits) -> bool {
        self.m == other.m && self.elements.iter().all(|&e| other.contains(e))
    }

    /// The product subgroup {a*b : a in self, b in other}.
    pub fn product(&self, other: &SubgroupOfUnits) -> Result<SubgroupOfUnits> {
        if self.m != other.m {
            return Err(Error::NotSubgroup(format!(
                "moduli differ: {} vs {}",
                self.m, other.m
            )));
        }
        let mut gens = self.elements.clone();
        gens.extend_from_slice(&other.elements);
        Self::generated_by(self.m, &gens)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// O(A) for a cyclic form: all units u mod m with (u^2 - 1) q_gen = 0
/// in Q/2Z, found by exhaustive search.
///
/// For squarefree odd m = pq with faithful q this group has order 4
/// (u = +-1 mod each prime factor); for prime m order 2; for m = 1 order 1.
pub fn orthogonal_group(f: &CyclicForm) -> SubgroupOfUnits {
    let m = f.order();
    if m == 1 {
        return SubgroupOfUnits::trivial(1);
    }
    // (u^2 - 1) * p / q = 0 mod 2  <=>  (u^2 - 1) * p = 0 mod 2q
    let p = f.q_gen().numer().clone();
    let q = f.q_gen().denom().clone();
    let two_q = BigInt::from(2) * &q;
    let elements: Vec<u64> = units(m)
        .filter(|&u| {
            let u2m1 = BigInt::from(u) * BigInt::from(u) - BigInt::one();
            ((u2m1 * &p) % &two_q).is_zero()
        })
        .collect();
    SubgroupOfUnits::new(m, elements).expect("orthogonality condition is multiplicative")
}

/// The image of O(S) -> O(A_S) for the rank-2 lattice of a binary form
/// with squarefree discriminant.
///
/// Every automorph generator is pushed through the SNF identification of
/// A_S = Z/m: an isometry g acts on dual covectors by (g^{-1})^T, and on
/// the SNF generator that action is multiplication by a unit.
pub fn image_of_lattice_isometries(f: &BinaryForm) -> Result<SubgroupOfUnits> {
    let lattice = f.lattice();
    let det = lattice.det().abs();
    let m: u64 = (&det)
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("determinant {det}")))?;
    if !crate::arith::is_squarefree_u64(m) {
        return Err(Error::NotCyclic(format!("|det| = {m} is not squarefree")));
    }
    if m == 1 {
        return Ok(SubgroupOfUnits::trivial(1));
    }
    let gram = lattice.gram();
    let snf = smith_normal_form(gram);
    let u_inv = snf.u.inverse_unimodular();
    let j = snf
        .d
        .iter()
        .position(|d| d.abs() > BigInt::one())
        .expect("m > 1 forces a nontrivial divisor");
    debug_assert_eq!(snf.d[j], BigInt::from(m));

    let m_big = BigInt::from(m);
    let mut scalars = Vec::new();
    for g in automorph_generators(f)? {
        let g_inv_t = inverse_transpose(&g);
        // w = u * (g^{-1})^T * u^{-1} e_j ; the action scalar is w_j mod m
        let pushed = snf.u.mul(&g_inv_t).mul(&u_inv);
        let k = pushed[(j, j)].mod_floor(&m_big);
        // off-generator coordinates land in trivial factors
        debug_assert!((0..snf.d.len()).all(|i| i == j || snf.d[i].is_one()));
        let k_u64: u64 = (&k).try_into().expect("residue fits");
        scalars.push(k_u64);
    }
    let image = SubgroupOfUnits::generated_by(m, &scalars)?;
    debug_assert!(image.is_subgroup_of(&orthogonal_group(&cyclic_from_lattice(&lattice)?)));
    Ok(image)
}

fn inverse_transpose(g: &crate::linalg::IntMatrix) -> crate::linalg::IntMatrix {
    g.inverse_unimodular().transpose()
}

/// |left \ full / right| for subgroups of an abelian unit group: the
/// double cosets are the cosets of the product subgroup left * right.
pub fn double_coset_count(
    left: &SubgroupOfUnits,
    full: &SubgroupOfUnits,
    right: &SubgroupOfUnits,
) -> Result<usize> {
    if !left.is_subgroup_of(full) {
        return Err(Error::NotSubgroup("left factor".into()));
    }
    if !right.is_subgroup_of(full) {
        return Err(Error::NotSubgroup("right factor".into()));
    }
    let product = left.product(right)?;
    debug_assert_eq!(full.order() % product.order(), 0);
    Ok(full.order() / product.order())
}
