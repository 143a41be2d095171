//! Even lattices and their finite discriminant forms (A_L, q_L):
//! rescaling, Q/2Z values on SNF generators, negation and the orthogonal
//! group of a cyclic form.
//!
//!     cargo run --release -p kummer --example discriminant_forms

use num_bigint::BigInt;

use kummer::discform::{cyclic_from_lattice, isomorphic_forms, orthogonal_group};
use kummer::lattice::{hyperbolic_plane, hyperbolic_u3, EvenLattice};

fn main() {
    let u = hyperbolic_plane();
    println!(
        "U: det = {}, discriminant group trivial: {}",
        u.det(),
        u.discriminant_form().is_trivial()
    );

    let u2 = u.rescale(&BigInt::from(2)).unwrap();
    let f = u2.discriminant_form();
    println!(
        "U(2): det = {}, A = Z/{} x Z/{}, l(A) = {}",
        u2.det(),
        f.orders()[0],
        f.orders()[1],
        f.min_generators()
    );
    for coords in [[1i64, 0], [0, 1], [1, 1]] {
        let x = [BigInt::from(coords[0]), BigInt::from(coords[1])];
        println!("  q({coords:?}) = {} mod 2Z", f.q_value(&x));
    }

    let s = EvenLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
    let cyclic = cyclic_from_lattice(&s).unwrap();
    println!(
        "\nGram ((2,1),(1,-2)): A = Z/{}, q(1) = {} mod 2Z",
        cyclic.order(),
        cyclic.q_gen()
    );
    println!("  negated: q(1) = {} mod 2Z", cyclic.negate().q_gen());
    println!(
        "  q and -q isomorphic (norm -1 exists for D = 5): {}",
        isomorphic_forms(&cyclic, &cyclic.negate())
    );
    println!("  O(A) = {:?}", orthogonal_group(&cyclic).elements());

    let u3 = hyperbolic_u3();
    println!(
        "\nU^3: rank {}, det = {}, signature {:?}",
        u3.rank(),
        u3.det(),
        u3.signature().unwrap()
    );
}
