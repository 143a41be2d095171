//! Counting G-equivalence classes of primitive embeddings T -> U^3 from
//! Neron-Severi lattice data, and the Kummer-structure reading of the
//! count.
//!
//! For rank-2 input with squarefree determinant the genus is enumerated
//! through binary forms and each class contributes a double-coset count
//! |O(S_j) \ O(A) / G|. For rank 3 with squarefree determinant and rank 4
//! with l(A) <= 2 the single-genus criterion forces the count to 1.

use num_traits::{One, Signed};

use crate::bqf::{class_group, genus_split, BinaryForm};
use crate::discform::{
    cyclic_from_lattice, double_coset_count, image_of_lattice_isometries, orthogonal_group,
    SubgroupOfUnits,
};
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::IntMatrix;

/// Result of the embedding-class count, with every intermediate kept for
/// auditing.
#[derive(Debug, Clone)]
pub struct FmCountReport {
    /// The input Gram matrix.
    pub ns_gram: IntMatrix,
    /// One binary form per lattice class of the genus (rank-2 path only).
    pub genus_reps: Vec<BinaryForm>,
    /// Double-coset count contributed by each genus class.
    pub per_class_cosets: Vec<usize>,
    /// Total number of G-equivalence classes of primitive embeddings.
    pub p_count: usize,
    /// Lower bound for the number of FM partners / Kummer structures.
    pub fm_bound_low: usize,
    /// Upper bound: each embedding class corresponds to at most two
    /// surfaces {B, B-hat}.
    pub fm_bound_high: usize,
    /// The unit subgroup G that was used.
    pub g_units: Vec<u64>,
    /// How the count was obtained.
    pub method: String,
    /// Interpretation of the count as Kummer structures, when requested.
    pub kummer_note: String,
    /// Modelling assumptions baked into the number.
    pub assumptions: Vec<String>,
}

/// Specification of the unit subgroup G acting on the discriminant group.
#[derive(Debug, Clone, Default)]
pub enum GSubgroup {
    /// {1, -1}: always contained in O(A) and the generic choice.
    #[default]
    PlusMinusOne,
    /// Subgroup generated by the listed units; must land inside O(A).
    GeneratedBy(Vec<u64>),
}

impl GSubgroup {
    fn realize(&self, modulus: u64, full: &SubgroupOfUnits) -> Result<SubgroupOfUnits> {
        let g = match self {
            GSubgroup::PlusMinusOne => SubgroupOfUnits::plus_minus_one(modulus),
            GSubgroup::GeneratedBy(units) => SubgroupOfUnits::generated_by(modulus, units)?,
        };
        if !g.is_subgroup_of(full) {
            return Err(Error::NotSubgroup(format!(
                "G = {:?} is not contained in O(A) = {:?}",
                g.elements(),
                full.elements()
            )));
        }
        Ok(g)
    }
}

/// Counts G-equivalence classes of primitive embeddings of the
/// transcendental complement into U^3, from the Neron-Severi Gram matrix.
pub fn count_embedding_classes(ns: &EvenLattice, g: &GSubgroup) -> Result<FmCountReport> {
    let (pos, neg) = ns.signature()?;
    if !(pos == 1 && neg + 1 == ns.rank()) {
        return Err(Error::NotHyperbolic(pos, neg));
    }
    match ns.rank() {
        2 => count_rank2(ns, g),
        3 | 4 => count_nikulin(ns, g),
        r => Err(Error::UnsupportedLattice(format!(
            "rank {r}: only rank 2 (squarefree det) and ranks 3, 4 are supported"
        ))),
    }
}

fn count_rank2(ns: &EvenLattice, g: &GSubgroup) -> Result<FmCountReport> {
    let det = ns.det();
    debug_assert!(det.is_negative(), "hyperbolic rank 2 has negative det");
    let abs_det = det.abs();
    let m: u64 = (&abs_det)
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("determinant {det}")))?;
    if !crate::arith::is_squarefree_u64(m) {
        return Err(Error::UnsupportedLattice(format!(
            "rank-2 determinant {det} is not squarefree; the discriminant group may be non-cyclic"
        )));
    }

    let mut assumptions = base_assumptions();
    if abs_det.is_one() {
        // unimodular: the genus is the single class U and O -> O(A) is onto
        return Ok(FmCountReport {
            ns_gram: ns.gram().clone(),
            genus_reps: Vec::new(),
            per_class_cosets: vec![1],
            p_count: 1,
            fm_bound_low: 1,
            fm_bound_high: 2,
            g_units: vec![1],
            method: "rank-2 unimodular: single-class genus, trivial discriminant group".into(),
            kummer_note: String::new(),
            assumptions,
        });
    }

    let form = BinaryForm::from_lattice(ns)?;
    let d = form.discriminant();
    debug_assert_eq!(d, abs_det);
    let cg = class_group(&d)?;
    let genera = genus_split(&cg)?;
    let own_class = cg.class_of(&form)?;
    let genus = genera
        .iter()
        .find(|g| g.contains(&own_class))
        .expect("every class lies in a genus");

    // lattice classes of the genus = GL2 classes among its SL2 classes
    let gl2_all = cg.gl2_classes();
    let gl2_in_genus: Vec<&Vec<usize>> = gl2_all
        .iter()
        .filter(|pair| genus.contains(&pair[0]))
        .collect();

    let full = orthogonal_group(&cyclic_from_lattice(ns)?);
    let g_sub = g.realize(m, &full)?;

    let mut genus_reps = Vec::new();
    let mut per_class_cosets = Vec::new();
    for pair in &gl2_in_genus {
        let rep = &cg.reps[pair[0]];
        let image = image_of_lattice_isometries(rep)?;
        let cosets = double_coset_count(&image, &full, &g_sub)?;
        genus_reps.push(rep.clone());
        per_class_cosets.push(cosets);
    }
    let p_count: usize = per_class_cosets.iter().sum();
    assumptions.push(format!(
        "genus membership decided by signature plus discriminant-form isomorphism; \
         genus of D = {d} split by assigned Legendre characters"
    ));

    Ok(FmCountReport {
        ns_gram: ns.gram().clone(),
        genus_reps,
        per_class_cosets,
        p_count,
        fm_bound_low: p_count,
        fm_bound_high: 2 * p_count,
        g_units: g_sub.elements().to_vec(),
        method: format!(
            "rank-2 genus enumeration: {} lattice classes, |O(A)| = {}",
            gl2_in_genus.len(),
            full.order()
        ),
        kummer_note: String::new(),
        assumptions,
    })
}

fn count_nikulin(ns: &EvenLattice, _g: &GSubgroup) -> Result<FmCountReport> {
    let ell = ns.discriminant_form().min_generators();
    if ns.rank() < 2 + ell {
        return Err(Error::UnsupportedLattice(format!(
            "rank {} < 2 + l(A) = {}: the single-genus criterion does not apply",
            ns.rank(),
            2 + ell
        )));
    }
    let mut assumptions = base_assumptions();
    assumptions.push(format!(
        "rank {} >= 2 + l(A) = {}: the genus is a single class and \
         O(S) -> O(A_S) is surjective, so every G gives one double coset",
        ns.rank(),
        2 + ell
    ));
    Ok(FmCountReport {
        ns_gram: ns.gram().clone(),
        genus_reps: Vec::new(),
        per_class_cosets: vec![1],
        p_count: 1,
        fm_bound_low: 1,
        fm_bound_high: 2,
        g_units: Vec::new(),
        method: format!("rank-{} single-genus criterion", ns.rank()),
        kummer_note: String::new(),
        assumptions,
    })
}

fn base_assumptions() -> Vec<String> {
    vec![
        "the image of O(S) in O(A_S) is generated by -1, the fundamental Pell automorph, \
         and one improper isometry when the class is ambiguous"
            .into(),
        "G defaults to {1, -1}, the generic image of the Hodge isometries on the \
         discriminant group; pass explicit units to model a larger group"
            .into(),
    ]
}

/// The same count, annotated with its Kummer-structure interpretation:
/// the number of abelian surfaces B with Km B isomorphic to Km A lies
/// between p_count and 2 * p_count.
pub fn kummer_structure_count(ns: &EvenLattice, g: &GSubgroup) -> Result<FmCountReport> {
    let mut report = count_embedding_classes(ns, g)?;
    let mut note = format!(
        "number of Kummer structures lies in [{}, {}]; each embedding class \
         corresponds to a dual pair {{B, B-hat}} of surfaces",
        report.fm_bound_low, report.fm_bound_high
    );
    if report.p_count == 1 {
        note.push_str("; with a single class, K(X) = {A, A-hat}, collapsing to {A} iff A = A-hat");
    }
    if ns.rank() == 4 {
        note.push_str("; rank NS = 4 forces A = E x F, hence A-hat = A and K(X) = {A}");
    }
    report.kummer_note = note;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn disc5_rank2_counts_one() {
        let ns = EvenLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        let report = count_embedding_classes(&ns, &GSubgroup::PlusMinusOne).unwrap();
        assert_eq!(report.p_count, 1);
        assert_eq!(report.genus_reps.len(), 1);
        assert_eq!(report.per_class_cosets, vec![1]);
        assert_eq!(report.fm_bound_low, 1);
        assert_eq!(report.fm_bound_high, 2);
    }

    #[test]
    fn rank2_unimodular_counts_one() {
        let ns = crate::lattice::hyperbolic_plane();
        let report = count_embedding_classes(&ns, &GSubgroup::PlusMinusOne).unwrap();
        assert_eq!(report.p_count, 1);
    }

    #[test]
    fn rank3_squarefree_counts_one() {
        // signature (1,2) even Gram with det 10 (squarefree)
        let ns = EvenLattice::from_i64(&[&[2, 1, 0], &[1, -2, 0], &[0, 0, -2]]).unwrap();
        assert_eq!(ns.det(), BigInt::from(10));
        let report = count_embedding_classes(&ns, &GSubgroup::PlusMinusOne).unwrap();
        assert_eq!(report.p_count, 1);
    }

    #[test]
    fn rank4_small_l_counts_one() {
        let ns =
            EvenLattice::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, -2, 1], &[0, 0, 1, -2]])
                .unwrap();
        let report = count_embedding_classes(&ns, &GSubgroup::PlusMinusOne).unwrap();
        assert_eq!(report.p_count, 1);
    }

    #[test]
    fn rejects_non_hyperbolic_and_bad_ranks() {
        let pos = EvenLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert!(matches!(
            count_embedding_classes(&pos, &GSubgroup::PlusMinusOne),
            Err(Error::NotHyperbolic(_, _))
        ));

        let rank5 = EvenLattice::from_i64(&[
            &[0, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, -2, 0, 0],
            &[0, 0, 0, -2, 0],
            &[0, 0, 0, 0, -2],
        ])
        .unwrap();
        assert!(matches!(
            count_embedding_classes(&rank5, &GSubgroup::PlusMinusOne),
            Err(Error::UnsupportedLattice(_))
        ));
    }

    #[test]
    fn rejects_non_squarefree_rank2() {
        // det = -4: non-cyclic discriminant group possible
        let ns = crate::lattice::hyperbolic_plane()
            .rescale(&BigInt::from(2))
            .unwrap();
        assert!(matches!(
            count_embedding_classes(&ns, &GSubgroup::PlusMinusOne),
            Err(Error::UnsupportedLattice(_))
        ));
    }

    #[test]
    fn count_is_genus_intrinsic() {
        // D = 229 is prime with h = 3: the genus has more than one class
        let cg = class_group(&BigInt::from(229)).unwrap();
        assert_eq!(cg.h_plus(), 3);
        let mut counts = Vec::new();
        for rep in &cg.reps {
            let report = count_embedding_classes(&rep.lattice(), &GSubgroup::PlusMinusOne).unwrap();
            counts.push(report.p_count);
        }
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
    }

    #[test]
    fn p_count_sums_per_class() {
        let cg = class_group(&BigInt::from(401)).unwrap();
        let ns = cg.reps[0].lattice();
        let report = count_embedding_classes(&ns, &GSubgroup::PlusMinusOne).unwrap();
        assert_eq!(
            report.p_count,
            report.per_class_cosets.iter().sum::<usize>()
        );
        assert!(report.p_count >= 1);
    }

    #[test]
    fn explicit_g_units_validated() {
        let ns = EvenLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        // 2 is a unit mod 5 but not in O(A): (4 - 1) * 2/5 = 6/5 not in 2Z
        let bad = GSubgroup::GeneratedBy(vec![2]);
        assert!(matches!(
            count_embedding_classes(&ns, &bad),
            Err(Error::NotSubgroup(_))
        ));
        // the full O(A) = {1, 4} is fine
        let ok = GSubgroup::GeneratedBy(vec![4]);
        assert!(count_embedding_classes(&ns, &ok).is_ok());
    }

    #[test]
    fn kummer_note_mentions_bounds_and_collapse() {
        let ns = EvenLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        let report = kummer_structure_count(&ns, &GSubgroup::PlusMinusOne).unwrap();
        assert!(report.kummer_note.contains("[1, 2]"));
        assert!(report.kummer_note.contains("A-hat"));

        let rank4 =
            EvenLattice::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, -2, 1], &[0, 0, 1, -2]])
                .unwrap();
        let r4 = kummer_structure_count(&rank4, &GSubgroup::PlusMinusOne).unwrap();
        assert!(r4.kummer_note.contains("K(X) = {A}"));
    }
}
