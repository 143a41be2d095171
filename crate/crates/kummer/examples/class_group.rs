//! Narrow class groups of real quadratic discriminants: reduction cycles,
//! composition tables and the genus split.
//!
//!     cargo run --release -p kummer --example class_group

use num_bigint::BigInt;

use kummer::bqf::{class_group, genus_split};

fn main() {
    for d in [5i64, 65, 145, 229, 401] {
        let cg = class_group(&BigInt::from(d)).expect("fundamental discriminant");
        println!("D = {d}: h+ = {}", cg.h_plus());
        for (i, rep) in cg.reps.iter().enumerate() {
            let cycle = cg.cycle_of(i);
            println!(
                "  class {i}: rep {rep}, cycle length {}, ambiguous: {}",
                cycle.len(),
                cg.is_ambiguous(i)
            );
        }
        println!("  composition table: {:?}", cg.table);
        let genera = genus_split(&cg).expect("odd discriminant");
        println!("  genera (principal first): {genera:?}");
        println!("  lattice (GL2) classes: {:?}", cg.gl2_classes());
        println!();
    }
}
