//! The search-and-construct pipeline over discriminants D = 4n^2 + 1.
//!
//! `scan_sequence` walks n = 1..n_max, keeps the n where D is prime or a
//! product of two distinct primes, and attaches class-group, genus, unit
//! and Siegel-Brauer data to each. `construct_examples` turns the first
//! qualifying D whose genus holds N pairwise GL2-inequivalent classes into
//! explicit Gram matrices with primitive embeddings into U^3 and a common
//! orthogonal complement, plus machine-checkable certificates.
//! `verify_construction` re-derives every certificate from scratch.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{self, SemiprimeShape};
use crate::bqf::{class_group, fundamental_unit, genus_split, BinaryForm};
use crate::cache::{CachedClassData, ClassCache};
use crate::discform::{cyclic_from_lattice, isomorphic_forms, CyclicForm};
use crate::embed::{complement_lattice, nikulin_unique_genus, standard_embedding};
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::IntMatrix;

/// Fundamental-unit data serialized with a record.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnitWire {
    pub t: u64,
    pub u: u64,
    pub norm_sign: i32,
    /// (t + u sqrt D)/2 to 50 significant digits.
    pub epsilon_approx: String,
}

/// One row of the search pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: u64,
    pub d: u64,
    /// Smaller prime factor, or 1 when D itself is prime.
    pub p: u64,
    pub q: u64,
    pub h_plus: usize,
    /// SL2 classes per genus, principal genus first.
    pub genus_sizes: Vec<usize>,
    /// GL2 (lattice) classes per genus.
    pub gl2_per_genus: Vec<usize>,
    pub unit: UnitWire,
    /// log(h * log epsilon) / log D.
    pub sb_ratio: f64,
}

/// An n that was scanned but does not have the 4n^2 + 1 = pq shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkippedN {
    pub n: u64,
    pub d: u64,
    pub reason: String,
}

/// Scan n = 1..=n_max and keep the records of pipeline shape.
pub fn scan_sequence(n_max: u64, cache: &mut ClassCache) -> Result<Vec<SearchRecord>> {
    Ok(scan_sequence_detailed(n_max, cache)?.0)
}

/// As `scan_sequence`, also reporting the skipped n with reasons.
pub fn scan_sequence_detailed(
    n_max: u64,
    cache: &mut ClassCache,
) -> Result<(Vec<SearchRecord>, Vec<SkippedN>)> {
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=n_max {
        let d = pipeline_discriminant(n)?;
        match arith::semiprime_shape(d) {
            None => {
                skipped.push(SkippedN {
                    n,
                    d,
                    reason: "not prime and not a product of two distinct primes".into(),
                });
            }
            Some(shape) => {
                records.push(build_record(n, d, shape, cache)?);
            }
        }
    }
    Ok((records, skipped))
}

fn pipeline_discriminant(n: u64) -> Result<u64> {
    n.checked_mul(n)
        .and_then(|n2| n2.checked_mul(4))
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::OverflowScope(format!("4 * {n}^2 + 1 exceeds 64 bits")))
}

fn build_record(
    n: u64,
    d: u64,
    shape: SemiprimeShape,
    cache: &mut ClassCache,
) -> Result<SearchRecord> {
    let (p, q) = match shape {
        SemiprimeShape::Prime(q) => (1, q),
        SemiprimeShape::TwoPrimes(p, q) => (p, q),
    };
    let data = class_data_for(d, cache)?;
    let genus_sizes: Vec<usize> = data.genera.iter().map(|g| g.len()).collect();
    let gl2_per_genus = gl2_counts_per_genus(&data);

    let unit = fundamental_unit(&BigInt::from(d))?;
    // the element 2n + sqrt(D) has norm -1, so the fundamental unit does
    // too and is bounded by it
    assert_eq!(unit.norm_sign, -1, "norm +1 fundamental unit at D = {d}");
    assert!(
        unit.le_half_surd(&BigInt::from(4 * n), &BigInt::from(2)),
        "unit bound fails at D = {d}"
    );
    if genus_sizes.len() == 2 {
        assert_eq!(genus_sizes[0], genus_sizes[1], "unequal genera at D = {d}");
    }
    let max_gl2 = gl2_per_genus.iter().copied().max().unwrap_or(0);
    assert!(4 * max_gl2 >= data.h_plus, "GL2 bound fails at D = {d}");

    let t: u64 = (&unit.t)
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("unit t at D = {d}")))?;
    let u: u64 = (&unit.u)
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("unit u at D = {d}")))?;
    let epsilon = (t as f64 + u as f64 * (d as f64).sqrt()) / 2.0;
    let sb_ratio = (data.h_plus as f64 * epsilon.ln()).ln() / (d as f64).ln();

    Ok(SearchRecord {
        n,
        d,
        p,
        q,
        h_plus: data.h_plus,
        genus_sizes,
        gl2_per_genus,
        unit: UnitWire {
            t,
            u,
            norm_sign: unit.norm_sign,
            epsilon_approx: unit.epsilon_approx,
        },
        sb_ratio,
    })
}

/// Class-group data for D, from the cache when available.
fn class_data_for(d: u64, cache: &mut ClassCache) -> Result<CachedClassData> {
    if let Some(hit) = cache.get(d) {
        return Ok(hit.clone());
    }
    let cg = class_group(&BigInt::from(d))?;
    let genera = genus_split(&cg)?;
    let data = CachedClassData {
        d,
        h_plus: cg.h_plus(),
        reps: cg.reps.iter().map(form_to_triple).collect::<Result<_>>()?,
        genera,
        gl2_classes: cg.gl2_classes(),
    };
    cache.insert(data.clone());
    Ok(data)
}

fn gl2_counts_per_genus(data: &CachedClassData) -> Vec<usize> {
    data.genera
        .iter()
        .map(|genus| {
            data.gl2_classes
                .iter()
                .filter(|pair| {
                    // a GL2 class never straddles genera
                    debug_assert!(
                        pair.iter().all(|i| genus.contains(i))
                            || pair.iter().all(|i| !genus.contains(i))
                    );
                    genus.contains(&pair[0])
                })
                .count()
        })
        .collect()
}

fn form_to_triple(f: &BinaryForm) -> Result<[i64; 3]> {
    let conv = |v: &BigInt| -> Result<i64> {
        v.try_into()
            .map_err(|_| Error::OverflowScope(format!("form coefficient {v}")))
    };
    Ok([conv(&f.a)?, conv(&f.b)?, conv(&f.c)?])
}

fn triple_to_form(t: &[i64; 3]) -> Result<BinaryForm> {
    BinaryForm::from_i64(t[0], t[1], t[2])
}

fn matrix_to_wire(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let v: i64 = (&m[(i, j)])
                .try_into()
                .map_err(|_| Error::OverflowScope(format!("matrix entry {}", m[(i, j)])))?;
            row.push(v);
        }
        out.push(row);
    }
    Ok(out)
}

fn matrix_from_wire(w: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(
        w.iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

/// Wire matrix with a rectangularity check, for untrusted verify input.
fn rect_matrix_from_wire(w: &[Vec<i64>]) -> std::result::Result<IntMatrix, String> {
    if w.is_empty() {
        return Err("empty matrix".into());
    }
    let cols = w[0].len();
    if cols == 0 || w.iter().any(|row| row.len() != cols) {
        return Err("ragged or empty matrix rows".into());
    }
    Ok(matrix_from_wire(w))
}

/// An exact rational carried in certificates.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RationalWire {
    pub num: i64,
    pub den: i64,
}

/// Evidence shipped with a construction so every claim can be re-checked.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificates {
    /// Full reduction cycle of each lattice's form, sorted; distinct
    /// lattices have disjoint cycles (SL2-inequivalence) and stay disjoint
    /// against opposites (GL2-inequivalence).
    pub cycles: Vec<Vec<[i64; 3]>>,
    /// Discriminant-form value q(generator) of each lattice; pairwise
    /// isomorphic forms witness one genus.
    pub q_gens: Vec<RationalWire>,
    pub h_plus: usize,
    pub genus_sizes: Vec<usize>,
    pub complement_det: i64,
    pub complement_signature: (usize, usize),
    pub nikulin_single_genus: bool,
}

/// N pairwise non-isomorphic even hyperbolic rank-2 lattices in one genus,
/// each with an explicit primitive embedding into U^3, and the common
/// orthogonal complement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub n_requested: usize,
    /// Index in the search sequence: d = 4 n_index^2 + 1.
    pub n_index: u64,
    pub d: u64,
    pub p: u64,
    pub q: u64,
    /// 2x2 Gram matrices, pairwise GL2-inequivalent, one genus.
    pub lattices: Vec<Vec<Vec<i64>>>,
    /// 2x6 images of the basis vectors in e1, f1, e2, f2, e3, f3.
    pub embeddings: Vec<Vec<Vec<i64>>>,
    /// Gram of the common complement T (computed from the first embedding;
    /// all complements are isometric by the single-genus criterion).
    pub complement: Vec<Vec<i64>>,
    pub certificates: Certificates,
}

impl ConstructionResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("construction serializes")
    }
}

/// Searches for the smallest pipeline D whose genus holds at least N
/// pairwise GL2-inequivalent classes and materializes the construction.
///
/// Selection is deterministic: smallest qualifying D, first qualifying
/// genus in principal-first order, classes ordered by the lexicographically
/// smallest reduced form of each GL2 class.
pub fn construct_examples(
    n_requested: usize,
    n_max: u64,
    cache: &mut ClassCache,
) -> Result<ConstructionResult> {
    if n_requested < 1 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let mut best: (u64, usize) = (0, 0);
    for n in 1..=n_max {
        let d = pipeline_discriminant(n)?;
        let Some(shape) = arith::semiprime_shape(d) else {
            continue;
        };
        let data = class_data_for(d, cache)?;
        let counts = gl2_counts_per_genus(&data);
        let max_count = counts.iter().copied().max().unwrap_or(0);
        if max_count > best.1 {
            best = (d, max_count);
        }
        if max_count < n_requested {
            continue;
        }
        let genus_idx = counts
            .iter()
            .position(|&c| c >= n_requested)
            .expect("max_count qualified");
        return materialize(n, d, shape, &data, genus_idx, n_requested);
    }
    Err(Error::SearchExhausted {
        n_max,
        best_d: best.0,
        best_gl2: best.1,
    })
}

fn materialize(
    n: u64,
    d: u64,
    shape: SemiprimeShape,
    data: &CachedClassData,
    genus_idx: usize,
    n_requested: usize,
) -> Result<ConstructionResult> {
    let (p, q) = match shape {
        SemiprimeShape::Prime(q) => (1, q),
        SemiprimeShape::TwoPrimes(p, q) => (p, q),
    };
    let genus = &data.genera[genus_idx];

    // canonical form of a GL2 class: the lexicographically smallest
    // positive-a reduced form over the union of its member cycles
    let mut class_forms: Vec<BinaryForm> = Vec::new();
    for pair in data
        .gl2_classes
        .iter()
        .filter(|pair| genus.contains(&pair[0]))
    {
        let mut candidates: Vec<BinaryForm> = Vec::new();
        for &idx in pair {
            let rep = triple_to_form(&data.reps[idx])?;
            candidates.extend(rep.cycle());
        }
        let min = candidates
            .into_iter()
            .filter(|f| f.a.is_positive())
            .min()
            .expect("every cycle has a positive-a member");
        class_forms.push(min);
    }
    class_forms.sort();
    class_forms.truncate(n_requested);

    let mut lattices = Vec::new();
    let mut embeddings = Vec::new();
    let mut cycles = Vec::new();
    let mut q_gens = Vec::new();
    for f in &class_forms {
        lattices.push(matrix_to_wire(&f.gram())?);
        embeddings.push(matrix_to_wire(standard_embedding(f).rows())?);
        let mut cyc: Vec<[i64; 3]> = f
            .cycle()
            .iter()
            .map(form_to_triple)
            .collect::<Result<_>>()?;
        cyc.sort_unstable();
        cycles.push(cyc);
        q_gens.push(rational_wire(&cyclic_from_lattice(&f.lattice())?)?);
    }

    let complement = complement_lattice(&standard_embedding(&class_forms[0]))?;
    let (cpos, cneg) = complement.signature()?;
    let certificates = Certificates {
        cycles,
        q_gens,
        h_plus: data.h_plus,
        genus_sizes: data.genera.iter().map(|g| g.len()).collect(),
        complement_det: (&complement.det())
            .try_into()
            .map_err(|_| Error::OverflowScope("complement det".into()))?,
        complement_signature: (cpos, cneg),
        nikulin_single_genus: nikulin_unique_genus(&complement)?,
    };

    Ok(ConstructionResult {
        n_requested,
        n_index: n,
        d,
        p,
        q,
        lattices,
        embeddings,
        complement: matrix_to_wire(complement.gram())?,
        certificates,
    })
}

fn rational_wire(f: &CyclicForm) -> Result<RationalWire> {
    let num: i64 = f
        .q_gen()
        .numer()
        .try_into()
        .map_err(|_| Error::OverflowScope("q_gen numerator".into()))?;
    let den: i64 = f
        .q_gen()
        .denom()
        .try_into()
        .map_err(|_| Error::OverflowScope("q_gen denominator".into()))?;
    Ok(RationalWire { num, den })
}

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Full re-verification report; `ok` iff every check passed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub first_failure: Option<String>,
    pub checks: Vec<CheckResult>,
}

/// Re-checks every certificate of a construction independently: cycle
/// disjointness, genus evidence, embedding pullbacks, complement shape,
/// the single-genus criterion and the determinant relations.
pub fn verify_construction(r: &ConstructionResult) -> VerificationReport {
    let mut checks: Vec<CheckResult> = Vec::new();
    let mut push = |name: &str, outcome: std::result::Result<(), String>| {
        checks.push(CheckResult {
            name: name.into(),
            pass: outcome.is_ok(),
            detail: outcome.err().unwrap_or_default(),
        });
    };

    push("shape", check_shape(r));
    let forms = r
        .lattices
        .iter()
        .map(|g| lattice_form(g))
        .collect::<std::result::Result<Vec<BinaryForm>, String>>();
    match &forms {
        Err(e) => push("lattice-grams", Err(e.clone())),
        Ok(forms) => {
            push("lattice-grams", check_grams(r, forms));
            push("cycles", check_cycles(r, forms));
            push("pairwise-gl2-inequivalence", check_pairwise(forms));
            push("genus", check_genus(r, forms));
            push("embedding-pullback", check_embeddings(r, forms));
            push("complement", check_complement(r, forms));
        }
    }

    let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
    VerificationReport {
        ok: first_failure.is_none(),
        first_failure,
        checks,
    }
}

fn check_shape(r: &ConstructionResult) -> std::result::Result<(), String> {
    if r.n_requested < 1 {
        return Err("empty request".into());
    }
    let counts = [
        r.lattices.len(),
        r.embeddings.len(),
        r.certificates.cycles.len(),
        r.certificates.q_gens.len(),
    ];
    if counts.iter().any(|&c| c != r.n_requested) {
        return Err(format!(
            "expected {} of each artifact, found {counts:?}",
            r.n_requested
        ));
    }
    let expect_d = 4u128 * r.n_index as u128 * r.n_index as u128 + 1;
    if expect_d != r.d as u128 {
        return Err(format!("d = {} but 4n^2+1 = {expect_d}", r.d));
    }
    match arith::semiprime_shape(r.d) {
        Some(SemiprimeShape::Prime(q)) if r.p == 1 && r.q == q => Ok(()),
        Some(SemiprimeShape::TwoPrimes(p, q)) if r.p == p && r.q == q => Ok(()),
        other => Err(format!(
            "factorization mismatch: stored ({}, {}), found {other:?}",
            r.p, r.q
        )),
    }
}

fn lattice_form(gram: &[Vec<i64>]) -> std::result::Result<BinaryForm, String> {
    if gram.len() != 2 || gram.iter().any(|r| r.len() != 2) {
        return Err("Gram is not 2x2".into());
    }
    let l = EvenLattice::new(matrix_from_wire(gram)).map_err(|e| e.to_string())?;
    BinaryForm::from_lattice(&l).map_err(|e| e.to_string())
}

fn check_grams(r: &ConstructionResult, forms: &[BinaryForm]) -> std::result::Result<(), String> {
    for (i, f) in forms.iter().enumerate() {
        let d = f.discriminant();
        if d != BigInt::from(r.d) {
            return Err(format!(
                "lattice {i} has discriminant {d}, expected {}",
                r.d
            ));
        }
        let (pos, neg) = f.lattice().signature().map_err(|e| e.to_string())?;
        if (pos, neg) != (1, 1) {
            return Err(format!("lattice {i} has signature ({pos}, {neg})"));
        }
    }
    Ok(())
}

fn check_cycles(r: &ConstructionResult, forms: &[BinaryForm]) -> std::result::Result<(), String> {
    if r.certificates.cycles.len() != forms.len() {
        return Err("cycle certificate count mismatch".into());
    }
    for (i, f) in forms.iter().enumerate() {
        let mut recomputed: Vec<[i64; 3]> = f
            .cycle()
            .iter()
            .map(form_to_triple)
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        recomputed.sort_unstable();
        if recomputed != r.certificates.cycles[i] {
            return Err(format!(
                "stored cycle {i} does not match the recomputed cycle"
            ));
        }
    }
    Ok(())
}

fn check_pairwise(forms: &[BinaryForm]) -> std::result::Result<(), String> {
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let sl2 = forms[i]
                .equivalent_sl2(&forms[j])
                .map_err(|e| e.to_string())?;
            if sl2 {
                return Err(format!("lattices {i} and {j} are SL2-equivalent"));
            }
            let gl2 = forms[i]
                .equivalent_gl2(&forms[j])
                .map_err(|e| e.to_string())?;
            if gl2 {
                return Err(format!("lattices {i} and {j} are GL2-equivalent"));
            }
        }
    }
    Ok(())
}

fn check_genus(r: &ConstructionResult, forms: &[BinaryForm]) -> std::result::Result<(), String> {
    if r.certificates.q_gens.len() != forms.len() {
        return Err("q_gen certificate count mismatch".into());
    }
    let mut cyclic_forms = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        let cf = cyclic_from_lattice(&f.lattice()).map_err(|e| e.to_string())?;
        let stored = &r.certificates.q_gens[i];
        let recomputed = rational_wire(&cf).map_err(|e| e.to_string())?;
        if recomputed != *stored {
            return Err(format!(
                "q_gen {i}: stored {}/{}, recomputed {}/{}",
                stored.num, stored.den, recomputed.num, recomputed.den
            ));
        }
        cyclic_forms.push(cf);
    }
    for i in 1..cyclic_forms.len() {
        if !isomorphic_forms(&cyclic_forms[0], &cyclic_forms[i]) {
            return Err(format!("discriminant forms 0 and {i} are not isomorphic"));
        }
    }
    Ok(())
}

fn check_embeddings(
    r: &ConstructionResult,
    forms: &[BinaryForm],
) -> std::result::Result<(), String> {
    let u3 = crate::lattice::hyperbolic_u3();
    for (i, rows) in r.embeddings.iter().enumerate() {
        if rows.len() != 2 || rows.iter().any(|row| row.len() != 6) {
            return Err(format!("embedding {i} is not 2x6"));
        }
        let m = matrix_from_wire(rows);
        let pullback = m.mul(u3.gram()).mul(&m.transpose());
        if pullback != forms[i].gram() {
            return Err(format!("embedding {i} pullback does not match its Gram"));
        }
        if !u3.is_primitive_embedding(&m) {
            return Err(format!("embedding {i} is not primitive"));
        }
    }
    Ok(())
}

fn check_complement(
    r: &ConstructionResult,
    forms: &[BinaryForm],
) -> std::result::Result<(), String> {
    let u3 = crate::lattice::hyperbolic_u3();
    let stored =
        EvenLattice::new(rect_matrix_from_wire(&r.complement)?).map_err(|e| e.to_string())?;

    let first_rows = r.embeddings.first().ok_or("no embeddings present")?;
    let first = u3
        .orthogonal_complement(&rect_matrix_from_wire(first_rows)?)
        .map_err(|e| e.to_string())?;
    if first.gram() != stored.gram() {
        return Err("stored complement differs from the recomputed one".into());
    }

    let det = stored.det();
    if det.abs() != BigInt::from(r.d) {
        return Err(format!(
            "complement |det| = {}, expected {}",
            det.abs(),
            r.d
        ));
    }
    if BigInt::from(r.certificates.complement_det) != det {
        return Err("certificate complement_det mismatch".into());
    }
    let sig = stored.signature().map_err(|e| e.to_string())?;
    if sig != (2, 2) || r.certificates.complement_signature != (2, 2) {
        return Err(format!("complement signature {sig:?}"));
    }
    if !nikulin_unique_genus(&stored).map_err(|e| e.to_string())? {
        return Err("complement fails the single-genus criterion".into());
    }
    if !r.certificates.nikulin_single_genus {
        return Err("certificate nikulin_single_genus is false".into());
    }

    // every embedding's complement carries the negated discriminant form
    for (i, rows) in r.embeddings.iter().enumerate() {
        let t = u3
            .orthogonal_complement(&rect_matrix_from_wire(rows)?)
            .map_err(|e| e.to_string())?;
        if t.signature().map_err(|e| e.to_string())? != (2, 2) {
            return Err(format!("complement of embedding {i} has wrong signature"));
        }
        if t.det().abs() != BigInt::from(r.d) {
            return Err(format!("complement of embedding {i} has wrong determinant"));
        }
        let qt = cyclic_from_lattice(&t).map_err(|e| e.to_string())?;
        let qs = cyclic_from_lattice(&forms[i].lattice()).map_err(|e| e.to_string())?;
        if !isomorphic_forms(&qt, &qs.negate()) {
            return Err(format!(
                "complement of embedding {i} does not carry the negated form"
            ));
        }
    }
    Ok(())
}

/// One row of the Siegel-Brauer trend table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SbRow {
    pub d: u64,
    pub h_plus: usize,
    pub epsilon_approx: String,
    pub ratio: f64,
}

/// Informational table (D, h+, epsilon, log(h log eps)/log D); no gate.
pub fn siegel_brauer_table(records: &[SearchRecord]) -> Result<Vec<SbRow>> {
    if records.is_empty() {
        return Err(Error::InvalidInput("no records to tabulate".into()));
    }
    Ok(records
        .iter()
        .map(|r| SbRow {
            d: r.d,
            h_plus: r.h_plus,
            epsilon_approx: r.unit.epsilon_approx.clone(),
            ratio: r.sb_ratio,
        })
        .collect())
}

/// CSV rendering of the table, ratios at six decimals.
pub fn sb_rows_to_csv(rows: &[SbRow]) -> String {
    let mut out = String::from("D,h_plus,epsilon,sb_ratio\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.6}\n",
            r.d, r.h_plus, r.epsilon_approx, r.ratio
        ));
    }
    out
}

/// CSV rendering of scan records.
pub fn records_to_csv(records: &[SearchRecord]) -> String {
    let mut out = String::from(
        "n,D,p,q,h_plus,genus_sizes,gl2_per_genus,unit_t,unit_u,norm_sign,epsilon,sb_ratio\n",
    );
    for r in records {
        let gs: Vec<String> = r.genus_sizes.iter().map(|x| x.to_string()).collect();
        let gl: Vec<String> = r.gl2_per_genus.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.6}\n",
            r.n,
            r.d,
            r.p,
            r.q,
            r.h_plus,
            gs.join("|"),
            gl.join("|"),
            r.unit.t,
            r.unit.u,
            r.unit.norm_sign,
            r.unit.epsilon_approx,
            r.sb_ratio
        ));
    }
    out
}
