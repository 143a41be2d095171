//! Counting G-equivalence classes of primitive embeddings from
//! Neron-Severi data, with the Kummer-structure interpretation: rank-2
//! lattices go through the genus enumeration, ranks 3 and 4 through the
//! single-genus criterion.
//!
//!     cargo run --release -p kummer --example fm_partner_count

use kummer::fmcount::{kummer_structure_count, GSubgroup};
use kummer::lattice::EvenLattice;

fn main() {
    let inputs: Vec<(&str, EvenLattice)> = vec![
        (
            "rank 2, D = 5",
            EvenLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap(),
        ),
        (
            "rank 2, D = 401 (genus with several classes)",
            EvenLattice::from_i64(&[&[2, 19], &[19, -20]]).unwrap(),
        ),
        (
            "rank 3, squarefree det",
            EvenLattice::from_i64(&[&[2, 1, 0], &[1, -2, 0], &[0, 0, -2]]).unwrap(),
        ),
        (
            "rank 4, l(A) <= 2",
            EvenLattice::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, -2, 1], &[0, 0, 1, -2]])
                .unwrap(),
        ),
    ];

    for (label, ns) in inputs {
        let report = kummer_structure_count(&ns, &GSubgroup::PlusMinusOne).unwrap();
        println!("{label}:");
        println!("  method: {}", report.method);
        if !report.genus_reps.is_empty() {
            println!(
                "  genus classes: {:?}",
                report
                    .genus_reps
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
            );
            println!("  per-class double cosets: {:?}", report.per_class_cosets);
        }
        println!(
            "  p_count = {}, partner count in [{}, {}]",
            report.p_count, report.fm_bound_low, report.fm_bound_high
        );
        println!("  {}", report.kummer_note);
        println!();
    }
}
