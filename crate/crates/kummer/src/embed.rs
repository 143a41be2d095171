//! The explicit primitive embedding of a rank-2 even lattice into U^3,
//! its orthogonal complement, and the single-genus criterion for
//! indefinite lattices.

use num_bigint::BigInt;

use crate::bqf::BinaryForm;
use crate::error::{Error, Result};
use crate::lattice::{hyperbolic_u3, EvenLattice};
use crate::linalg::IntMatrix;

/// A primitive embedding of a rank-2 lattice into U^3, as the 2x6 matrix
/// of images of the basis vectors in the basis e1, f1, e2, f2, e3, f3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingMatrix {
    rows: IntMatrix,
}

impl EmbeddingMatrix {
    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    /// Gram matrix pulled back through the embedding.
    pub fn pullback_gram(&self) -> IntMatrix {
        let u3 = hyperbolic_u3();
        self.rows.mul(u3.gram()).mul(&self.rows.transpose())
    }
}

/// The explicit embedding of the form (a, b, c):
/// v1 -> e1 + a f1 and v2 -> b f1 + e2 + c f2.
///
/// The pullback Gram is ((2a, b), (b, 2c)) for every integer triple, and
/// the identity minor in the e1, e2 columns makes the image primitive.
pub fn standard_embedding_raw(a: &BigInt, b: &BigInt, c: &BigInt) -> EmbeddingMatrix {
    let z = BigInt::from(0);
    let one = BigInt::from(1);
    let rows = IntMatrix::from_rows(vec![
        vec![
            one.clone(),
            a.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
        ],
        vec![z.clone(), b.clone(), one, c.clone(), z.clone(), z],
    ]);
    EmbeddingMatrix { rows }
}

/// Standard embedding of a validated binary form.
pub fn standard_embedding(f: &BinaryForm) -> EmbeddingMatrix {
    standard_embedding_raw(&f.a, &f.b, &f.c)
}

/// The saturated orthogonal complement T of the embedded lattice in U^3.
///
/// For an embedded form of discriminant D the complement has rank 4,
/// signature (2, 2), |det| = D and discriminant form (A_S, -q_S).
pub fn complement_lattice(e: &EmbeddingMatrix) -> Result<EvenLattice> {
    let u3 = hyperbolic_u3();
    if !u3.is_primitive_embedding(e.rows()) {
        return Err(Error::NonPrimitive);
    }
    u3.orthogonal_complement(e.rows())
}

/// Nikulin's single-genus criterion: an indefinite even lattice with
/// rank >= 2 + l(A_L) is unique in its genus, and O(L) -> O(A_L) is onto.
pub fn nikulin_unique_genus(l: &EvenLattice) -> Result<bool> {
    if !l.is_indefinite()? {
        return Ok(false);
    }
    let ell = l.discriminant_form().min_generators();
    Ok(l.rank() >= 2 + ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discform::{cyclic_from_lattice, isomorphic_forms};
    use crate::lattice::hyperbolic_plane;
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn embedding_of_hyperbolic_form() {
        // (0, 1, 0) is U itself
        let e = standard_embedding_raw(&BigInt::from(0), &BigInt::from(1), &BigInt::from(0));
        assert_eq!(
            e.rows(),
            &IntMatrix::from_i64(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 1, 0, 0, 0],])
        );
        assert_eq!(e.pullback_gram(), IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        let t = complement_lattice(&e).unwrap();
        assert_eq!(t.rank(), 4);
        assert_eq!(t.det().abs(), BigInt::from(1));
        assert_eq!(t.signature().unwrap(), (2, 2));
    }

    #[test]
    fn embedding_of_disc5_form() {
        let f = BinaryForm::from_i64(1, 1, -1).unwrap();
        let e = standard_embedding(&f);
        assert_eq!(
            e.rows(),
            &IntMatrix::from_i64(&[&[1, 1, 0, 0, 0, 0], &[0, 1, 1, -1, 0, 0],])
        );
        assert_eq!(e.pullback_gram(), IntMatrix::from_i64(&[&[2, 1], &[1, -2]]));

        let t = complement_lattice(&e).unwrap();
        assert_eq!(t.rank(), 4);
        assert_eq!(t.det(), BigInt::from(5));
        assert_eq!(t.signature().unwrap(), (2, 2));

        // (A_T, q_T) = (A_S, -q_S)
        let qs = cyclic_from_lattice(&f.lattice()).unwrap();
        let qt = cyclic_from_lattice(&t).unwrap();
        assert!(isomorphic_forms(&qt, &qs.negate()));
        assert!(nikulin_unique_genus(&t).unwrap());
    }

    #[test]
    fn nikulin_examples() {
        // rank-2 hyperbolic with l = 1: 2 < 3, criterion does not apply
        let s = EvenLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        assert!(!nikulin_unique_genus(&s).unwrap());

        // positive definite: rejected regardless of rank
        let pos = EvenLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert!(!nikulin_unique_genus(&pos).unwrap());

        // U itself: indefinite, l = 0, 2 >= 2
        assert!(nikulin_unique_genus(&hyperbolic_plane()).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn prop_pullback_identity(a in -50i64..=50, b in -50i64..=50, c in -50i64..=50) {
            let e = standard_embedding_raw(
                &BigInt::from(a), &BigInt::from(b), &BigInt::from(c));
            let expect = IntMatrix::from_i64(&[&[2 * a, b], &[b, 2 * c]]);
            prop_assert_eq!(e.pullback_gram(), expect);
            // primitivity from the identity minor in columns e1, e2
            prop_assert!(hyperbolic_u3().is_primitive_embedding(e.rows()));
        }
    }

    proptest! {
        #[test]
        fn prop_complement_invariants(a in -30i64..=30, b in -30i64..=30, c in -30i64..=30) {
            let d = b * b - 4 * a * c;
            prop_assume!(d > 0);
            let e = standard_embedding_raw(
                &BigInt::from(a), &BigInt::from(b), &BigInt::from(c));
            let t = complement_lattice(&e).unwrap();
            prop_assert_eq!(t.rank(), 4);
            prop_assert_eq!(t.det().abs(), BigInt::from(d));
            prop_assert_eq!(t.signature().unwrap(), (2, 2));
            // signatures add up to (3, 3)
            let src = EvenLattice::new(e.pullback_gram()).unwrap();
            let (sp, sn) = src.signature().unwrap();
            prop_assert_eq!((sp + 2, sn + 2), (3, 3));
            // the discriminant group needs at most rank(T) generators
            prop_assert!(t.discriminant_form().min_generators() <= t.rank());
        }
    }
}
