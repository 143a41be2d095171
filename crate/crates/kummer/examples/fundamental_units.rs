//! Fundamental units of real quadratic orders from the reduction cycle of
//! the principal form, with exact norm signs and 50-digit decimals.
//!
//!     cargo run --release -p kummer --example fundamental_units

use num_bigint::BigInt;

use kummer::bqf::fundamental_unit;

fn main() {
    println!("{:>6}  {:>8} {:>6} {:>5}  epsilon", "D", "t", "u", "norm");
    for d in [5i64, 8, 13, 17, 41, 65, 97, 145, 401] {
        let unit = fundamental_unit(&BigInt::from(d)).expect("non-square discriminant");
        println!(
            "{d:>6}  {:>8} {:>6} {:>5}  {}",
            unit.t, unit.u, unit.norm_sign, unit.epsilon_approx
        );
    }

    // along the pipeline sequence D = 4n^2 + 1 the unit 2n + sqrt(D) has
    // norm -1, so the fundamental unit stays below D
    println!("\npipeline discriminants D = 4n^2 + 1:");
    for n in [1i64, 2, 4, 6, 10, 100] {
        let d = 4 * n * n + 1;
        let unit = fundamental_unit(&BigInt::from(d)).unwrap();
        let (t4, u4) = unit.pell_plus4();
        println!(
            "  n = {n:>3}: D = {d:>6}, (t, u) = ({}, {}), norm {}, squared unit solves t^2 - D u^2 = 4 with ({t4}, {u4})",
            unit.t, unit.u, unit.norm_sign
        );
    }
}
