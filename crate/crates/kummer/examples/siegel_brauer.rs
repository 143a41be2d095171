//! Siegel-Brauer trend along the pipeline discriminants: since the
//! fundamental unit stays below D, the ratio log(h log eps)/log D drives
//! h to infinity; the printed ratios drift toward 1/2.
//!
//!     cargo run --release -p kummer --example siegel_brauer

use kummer::cache::ClassCache;
use kummer::pipeline::{sb_rows_to_csv, scan_sequence, siegel_brauer_table};

fn main() {
    let mut cache = ClassCache::in_memory();
    let records = scan_sequence(120, &mut cache).unwrap();
    let rows = siegel_brauer_table(&records).unwrap();

    // running record class numbers
    let mut best = 0usize;
    println!("record h+ values:");
    for r in &records {
        if r.h_plus > best {
            best = r.h_plus;
            println!(
                "  D = {:>6}: h+ = {:>3}, ratio = {:.6}",
                r.d, r.h_plus, r.sb_ratio
            );
        }
    }

    println!("\nlast rows of the table (CSV):");
    let tail: Vec<_> = rows.iter().rev().take(10).rev().cloned().collect();
    print!("{}", sb_rows_to_csv(&tail));
}
