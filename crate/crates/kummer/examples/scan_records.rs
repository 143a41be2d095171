//! Scan the sequence D = 4n^2 + 1 for prime or two-prime discriminants
//! and print the class-group, genus and unit data of each record.
//!
//!     cargo run --release -p kummer --example scan_records

use kummer::cache::ClassCache;
use kummer::pipeline::scan_sequence_detailed;

fn main() {
    let mut cache = ClassCache::in_memory();
    let (records, skipped) = scan_sequence_detailed(40, &mut cache).unwrap();

    println!(
        "{:>3} {:>6} {:>5} {:>5} {:>4} {:>12} {:>14} {:>9}",
        "n", "D", "p", "q", "h+", "genus sizes", "GL2 per genus", "sb-ratio"
    );
    for r in &records {
        println!(
            "{:>3} {:>6} {:>5} {:>5} {:>4} {:>12} {:>14} {:>9.6}",
            r.n,
            r.d,
            r.p,
            r.q,
            r.h_plus,
            format!("{:?}", r.genus_sizes),
            format!("{:?}", r.gl2_per_genus),
            r.sb_ratio
        );
    }
    println!("\nskipped (not of pq shape):");
    for s in &skipped {
        println!("  n = {:>3}, D = {:>6}: {}", s.n, s.d, s.reason);
    }
}
