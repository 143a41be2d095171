//! Exact-arithmetic lattice tools for counting Fourier-Mukai partners /
//! Kummer structures of abelian surfaces from Neron-Severi data, and for
//! constructing arbitrarily large families of even hyperbolic rank-2
//! lattices in one genus with explicit primitive embeddings into U^3.
//!
//! Everything is integer or rational arithmetic; no floating point touches
//! any decision. The main entry points:
//!
//! - [`fmcount::count_embedding_classes`] / [`fmcount::kummer_structure_count`]:
//!   the embedding-class count from a Neron-Severi Gram matrix, through the
//!   rank-2 genus enumeration or the rank-3/4 single-genus criterion.
//! - [`pipeline::scan_sequence`]: walk D = 4n^2 + 1 keeping the prime and
//!   two-prime discriminants, with class numbers, genus splits, fundamental
//!   units and Siegel-Brauer ratios per record.
//! - [`pipeline::construct_examples`] / [`pipeline::verify_construction`]:
//!   produce N pairwise non-isomorphic lattices in one genus, embedded into
//!   U^3 with a common orthogonal complement, plus re-checkable
//!   certificates.
//!
//! Layer by layer:
//!
//! - [`linalg`]: arbitrary-precision integer matrices, Smith and Hermite
//!   normal forms, exact determinants and signatures, saturated kernels.
//! - [`lattice`]: even lattices as Gram matrices, rescaling L(m), U and
//!   U^3, discriminant forms (A_L, q_L), orthogonal complements,
//!   primitivity tests.
//! - [`bqf`]: indefinite binary quadratic forms, reduction cycles,
//!   SL2/GL2 equivalence, Gauss composition, narrow class groups, genus
//!   characters, fundamental units and automorphs.
//! - [`discform`]: cyclic finite quadratic forms, their orthogonal groups,
//!   the image of the lattice isometries, double-coset counts.
//! - [`embed`]: the explicit primitive embedding into U^3, complements,
//!   the single-genus criterion.
//! - [`fmcount`], [`pipeline`], [`cache`]: the counting formula, the
//!   search-and-construct pipeline and its optional JSON cache.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `kummer` binary exposes the same functionality as subcommands (`scan`,
//! `classgroup`, `fmcount`, `construct`, `verify`, `sbtable`).

// indexed loops mirror the matrix algebra, and `x % n == 0` is the
// divisibility idiom throughout the number-theoretic code
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod arith;
pub mod bqf;
pub mod cache;
pub mod discform;
pub mod embed;
pub mod error;
pub mod fmcount;
pub mod lattice;
pub mod linalg;
pub mod pipeline;

pub use bqf::{BinaryForm, ClassGroup, UnitData};
pub use error::{Error, Result};
pub use lattice::{EvenLattice, FiniteQuadraticForm};
pub use linalg::{IntMatrix, SnfDecomposition};
