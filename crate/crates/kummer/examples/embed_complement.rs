//! The explicit primitive embedding of a rank-2 even lattice into U^3 and
//! its orthogonal complement: pullback identity, signature bookkeeping and
//! the sign flip of the discriminant form.
//!
//!     cargo run --release -p kummer --example embed_complement

use kummer::bqf::BinaryForm;
use kummer::discform::{cyclic_from_lattice, isomorphic_forms};
use kummer::embed::{complement_lattice, nikulin_unique_genus, standard_embedding};

fn main() {
    for (a, b, c) in [(1i64, 1, -1), (2, 9, -8), (4, 7, -6)] {
        let f = BinaryForm::from_i64(a, b, c).unwrap();
        let d = f.discriminant();
        println!("form ({a}, {b}, {c}), D = {d}");

        let e = standard_embedding(&f);
        println!("  embedding rows (e1 f1 e2 f2 e3 f3):");
        for i in 0..2 {
            println!("    {:?}", e.rows().row(i));
        }
        println!(
            "  pullback Gram:\n{}",
            indent(&e.pullback_gram().to_string())
        );

        let t = complement_lattice(&e).unwrap();
        println!(
            "  complement: rank {}, det {}, signature {:?}",
            t.rank(),
            t.det(),
            t.signature().unwrap()
        );
        println!("  complement Gram:\n{}", indent(&t.gram().to_string()));

        let qs = cyclic_from_lattice(&f.lattice()).unwrap();
        let qt = cyclic_from_lattice(&t).unwrap();
        println!(
            "  q_T = -q_S: {} | complement alone in its genus: {}",
            isomorphic_forms(&qt, &qs.negate()),
            nikulin_unique_genus(&t).unwrap()
        );
        println!();
    }
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("    {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}
