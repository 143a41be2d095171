//! Construct N pairwise non-isomorphic even hyperbolic rank-2 lattices in
//! one genus, each primitively embedded into U^3 with a common orthogonal
//! complement, then re-verify every certificate.
//!
//!     cargo run --release -p kummer --example construct_family

use kummer::cache::ClassCache;
use kummer::pipeline::{construct_examples, verify_construction};

fn main() {
    let mut cache = ClassCache::in_memory();
    let n = 3;
    let result = construct_examples(n, 500, &mut cache).unwrap();

    println!(
        "N = {n}: first qualifying discriminant D = {} = {} * {} (n = {})",
        result.d, result.p, result.q, result.n_index
    );
    println!(
        "h+ = {}, genus sizes {:?}",
        result.certificates.h_plus, result.certificates.genus_sizes
    );
    for (i, gram) in result.lattices.iter().enumerate() {
        println!("  lattice {i}: Gram {gram:?}");
        println!("    embedding rows: {:?}", result.embeddings[i]);
        println!(
            "    cycle certificate ({} reduced forms), q(gen) = {}/{}",
            result.certificates.cycles[i].len(),
            result.certificates.q_gens[i].num,
            result.certificates.q_gens[i].den
        );
    }
    println!(
        "common complement T: Gram {:?}, det {}, signature {:?}, single genus: {}",
        result.complement,
        result.certificates.complement_det,
        result.certificates.complement_signature,
        result.certificates.nikulin_single_genus
    );

    let report = verify_construction(&result);
    println!("\nindependent re-verification:");
    for check in &report.checks {
        println!(
            "  [{}] {}",
            if check.pass { "ok" } else { "FAIL" },
            check.name
        );
    }
    println!("overall: {}", if report.ok { "verified" } else { "FAILED" });
}
