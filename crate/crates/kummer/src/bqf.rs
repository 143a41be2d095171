//! Indefinite binary quadratic forms.
//!
//! Reduction cycles decide proper (SL2) equivalence, Dirichlet united-forms
//! composition gives the narrow class group H(D), genus characters split the
//! classes into genera, and the reduction cycle of the principal form yields
//! the fundamental unit and the automorph group of each form. Everything is
//! exact; square roots of D only ever appear through floor(sqrt(D)) and
//! squared comparisons.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::IntMatrix;

/// The form a x^2 + b xy + c y^2 with positive non-square discriminant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryForm {
    /// Validates that b^2 - 4ac is positive and not a perfect square.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        let d = &b * &b - BigInt::from(4) * &a * &c;
        if !d.is_positive() {
            return Err(Error::NotIndefinite(d));
        }
        if arith::is_square(&d) {
            return Err(Error::SquareDiscriminant(d));
        }
        Ok(BinaryForm { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    /// The principal form of discriminant D: (1, D mod 2, ((D mod 2) - D)/4).
    pub fn principal(d: &BigInt) -> Result<Self> {
        let b = d.mod_floor(&BigInt::from(2));
        let c = (&b * &b - d) / BigInt::from(4);
        Self::new(BigInt::one(), b, c)
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The opposite form (a, -b, c); its class is the inverse class.
    pub fn opposite(&self) -> Self {
        BinaryForm {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
        }
    }

    /// Gram matrix ((2a, b), (b, 2c)) of the associated even lattice.
    pub fn gram(&self) -> IntMatrix {
        IntMatrix::from_rows(vec![
            vec![BigInt::from(2) * &self.a, self.b.clone()],
            vec![self.b.clone(), BigInt::from(2) * &self.c],
        ])
    }

    pub fn lattice(&self) -> EvenLattice {
        EvenLattice::new(self.gram()).expect("form lattice is even and nondegenerate")
    }

    /// Reads (a, b, c) back from a rank-2 even Gram matrix ((2a, b), (b, 2c)).
    pub fn from_lattice(l: &EvenLattice) -> Result<Self> {
        if l.rank() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected rank 2, got {}",
                l.rank()
            )));
        }
        let g = l.gram();
        let two = BigInt::from(2);
        Self::new(&g[(0, 0)] / &two, g[(0, 1)].clone(), &g[(1, 1)] / &two)
    }

    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// f(M (x,y)^T) for a 2x2 integer matrix M with det +-1.
    pub fn transform(&self, m: &IntMatrix) -> Self {
        debug_assert!(m.rows() == 2 && m.cols() == 2);
        let (p, q, r, s) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
        let a = self.evaluate(p, r);
        let c = self.evaluate(q, s);
        let b = BigInt::from(2) * &self.a * p * q
            + &self.b * (p * s + q * r)
            + BigInt::from(2) * &self.c * r * s;
        BinaryForm { a, b, c }
    }

    /// Reduced: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if !self.b.is_positive() {
            return false;
        }
        if &self.b * &self.b >= d {
            return false;
        }
        let two_abs_a = BigInt::from(2) * self.a.abs();
        // sqrt(D) < 2|a| + b
        let upper = &two_abs_a + &self.b;
        if &upper * &upper <= d {
            return false;
        }
        // 2|a| - b < sqrt(D)
        let lower = &two_abs_a - &self.b;
        if lower.is_positive() && &lower * &lower >= d {
            return false;
        }
        true
    }

    /// One Gauss reduction step rho, with the SL2 matrix realizing it.
    ///
    /// rho(a, b, c) = (c, r, (r^2 - D)/(4c)) where r = -b mod 2|c| is put
    /// in (-|c|, |c|] when |c| > sqrt(D), and in (sqrt(D) - 2|c|, sqrt(D))
    /// otherwise.
    fn rho(&self) -> (Self, IntMatrix) {
        let d = self.discriminant();
        let s = arith::isqrt(&d);
        let abs_c = self.c.abs();
        let m = BigInt::from(2) * &abs_c;
        let r = if &abs_c * &abs_c > d {
            let r0 = (-&self.b).mod_floor(&m);
            if r0 > abs_c {
                r0 - &m
            } else {
                r0
            }
        } else {
            let k = (&s + &self.b).mod_floor(&m);
            &s - k
        };
        let new_a = self.c.clone();
        let new_c = (&r * &r - &d) / (BigInt::from(4) * &new_a);
        let step = (&r + &self.b) / (BigInt::from(2) * &self.c);
        let mat = IntMatrix::from_rows(vec![
            vec![BigInt::zero(), BigInt::from(-1)],
            vec![BigInt::one(), step],
        ]);
        (
            BinaryForm {
                a: new_a,
                b: r,
                c: new_c,
            },
            mat,
        )
    }

    /// SL2-reduces the form; the returned matrix R satisfies f . R = reduced.
    pub fn reduce_with_transform(&self) -> (Self, IntMatrix) {
        let mut f = self.clone();
        let mut acc = IntMatrix::identity(2);
        let mut steps = 0usize;
        while !f.is_reduced() {
            let (next, m) = f.rho();
            acc = acc.mul(&m);
            f = next;
            steps += 1;
            assert!(steps < 100_000, "reduction failed to terminate");
        }
        debug_assert_eq!(self.transform(&acc), f);
        (f, acc)
    }

    pub fn reduce(&self) -> Self {
        self.reduce_with_transform().0
    }

    /// The full cycle of reduced forms through this form's class.
    ///
    /// Two forms of the same discriminant are SL2-equivalent exactly when
    /// their cycles coincide as sets; every cycle has even length.
    pub fn cycle(&self) -> Vec<Self> {
        let start = self.reduce();
        let mut out = vec![start.clone()];
        let (mut cur, _) = start.rho();
        while cur != start {
            out.push(cur.clone());
            assert!(out.len() < 1_000_000, "cycle failed to close");
            cur = cur.rho().0;
        }
        out
    }

    /// Proper (SL2) equivalence via cycle membership.
    pub fn equivalent_sl2(&self, other: &Self) -> Result<bool> {
        let (d1, d2) = (self.discriminant(), other.discriminant());
        if d1 != d2 {
            return Err(Error::DiscriminantMismatch(d1, d2));
        }
        let target = other.reduce();
        Ok(self.cycle().contains(&target))
    }

    /// Lattice isomorphism: SL2 equivalence of f with g or with opposite(g).
    pub fn equivalent_gl2(&self, other: &Self) -> Result<bool> {
        Ok(self.equivalent_sl2(other)? || self.equivalent_sl2(&other.opposite())?)
    }

    /// Gauss composition (Dirichlet united forms), reduced output.
    ///
    /// The second form is first moved in its class so that its leading
    /// coefficient is coprime to this form's; the middle coefficients are
    /// then matched by a CRT step and the product form read off directly.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let (d1, d2) = (self.discriminant(), other.discriminant());
        if d1 != d2 {
            return Err(Error::DiscriminantMismatch(d1, d2));
        }
        for f in [self, other] {
            if !f.is_primitive() {
                return Err(Error::NotPrimitive(f.a.clone(), f.b.clone(), f.c.clone()));
            }
        }
        let f = self;
        let g = if f.a.gcd(&other.a).is_one() {
            other.clone()
        } else {
            other.with_leading_coprime_to(&f.a)?
        };
        debug_assert!(f.a.gcd(&g.a).is_one());

        // B = b1 mod 2a1, B = b2 mod 2a2; with gcd(a1, a2) = 1 and
        // b1 = b2 mod 2 this becomes x = a1^{-1} (b2 - b1)/2 mod |a2|
        let half_diff = (&g.b - &f.b) / BigInt::from(2);
        let a2_abs = g.a.abs();
        let x = if a2_abs.is_one() {
            BigInt::zero()
        } else {
            let (gcd, inv, _) = arith::ext_gcd(&f.a, &a2_abs);
            debug_assert!(gcd.is_one());
            (inv * half_diff).mod_floor(&a2_abs)
        };
        let big_b = &f.b + BigInt::from(2) * &f.a * x;
        let big_a = &f.a * &g.a;
        let num = &big_b * &big_b - &d1;
        let den = BigInt::from(4) * &big_a;
        let (big_c, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero(), "united-forms C must be integral");
        let composed = BinaryForm {
            a: big_a,
            b: big_b,
            c: big_c,
        };
        Ok(composed.reduce())
    }

    /// An SL2-equivalent form whose leading coefficient is coprime to m.
    ///
    /// For each prime dividing m a residue pair with nonzero form value is
    /// chosen and the pairs are glued by CRT; primitivity guarantees a
    /// usable pair always exists.
    fn with_leading_coprime_to(&self, m: &BigInt) -> Result<Self> {
        let target = m.abs();
        if target <= BigInt::one() {
            return Ok(self.clone());
        }
        let target_u64: u64 = (&target)
            .try_into()
            .map_err(|_| Error::OverflowScope(format!("leading coefficient {target}")))?;
        let mut p_constraints: Vec<(BigInt, BigInt)> = Vec::new();
        let mut r_constraints: Vec<(BigInt, BigInt)> = Vec::new();
        for (prime, _) in arith::factor_u64(target_u64) {
            let pb = BigInt::from(prime);
            let candidates = [
                (BigInt::one(), BigInt::zero()),
                (BigInt::zero(), BigInt::one()),
                (BigInt::one(), BigInt::one()),
            ];
            let (cp, cr) = candidates
                .iter()
                .find(|(x, y)| !self.evaluate(x, y).mod_floor(&pb).is_zero())
                .expect("a primitive form is nonzero mod every prime")
                .clone();
            p_constraints.push((cp, pb.clone()));
            r_constraints.push((cr, pb));
        }
        let mut p = arith::crt(&p_constraints);
        let mut r = arith::crt(&r_constraints);
        let g = p.gcd(&r);
        if g > BigInt::one() {
            p /= &g;
            r /= &g;
        }
        // complete (p, r) to an SL2 matrix with first column (p, r)
        let (one, u, v) = arith::ext_gcd(&p, &r);
        debug_assert!(one.is_one());
        let mat = IntMatrix::from_rows(vec![vec![p, -v], vec![r, u]]);
        let out = self.transform(&mat);
        debug_assert!(out.a.gcd(&target).is_one());
        Ok(out)
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The narrow class group H(D): one reduced representative per SL2 class
/// and the full composition table.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub discriminant: BigInt,
    /// Lexicographically smallest reduced form of each cycle, sorted.
    pub reps: Vec<BinaryForm>,
    /// `table[i][j]` = index of the class of `reps[i] * reps[j]`.
    pub table: Vec<Vec<usize>>,
    cycles: Vec<Vec<BinaryForm>>,
    index: BTreeMap<(BigInt, BigInt, BigInt), usize>,
}

impl ClassGroup {
    pub fn h_plus(&self) -> usize {
        self.reps.len()
    }

    /// The cycle of reduced forms belonging to class i.
    pub fn cycle_of(&self, i: usize) -> &[BinaryForm] {
        &self.cycles[i]
    }

    /// Index of the principal class.
    pub fn identity(&self) -> usize {
        let p = BinaryForm::principal(&self.discriminant)
            .expect("discriminant was validated")
            .reduce();
        self.index[&(p.a, p.b, p.c)]
    }

    /// Class index of an arbitrary form of the same discriminant.
    pub fn class_of(&self, f: &BinaryForm) -> Result<usize> {
        let d = f.discriminant();
        if d != self.discriminant {
            return Err(Error::DiscriminantMismatch(d, self.discriminant.clone()));
        }
        let r = f.reduce();
        self.index
            .get(&(r.a.clone(), r.b.clone(), r.c.clone()))
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("form {r} not in enumeration")))
    }

    /// Index of the inverse class (the class of the opposite form).
    pub fn inverse(&self, i: usize) -> usize {
        self.class_of(&self.reps[i].opposite())
            .expect("opposite stays enumerated")
    }

    /// True iff class i equals its own inverse.
    pub fn is_ambiguous(&self, i: usize) -> bool {
        self.inverse(i) == i
    }

    /// GL2 classes: each is {i} or {i, inverse(i)} of SL2 class indices.
    pub fn gl2_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.reps.len()];
        let mut out = Vec::new();
        for i in 0..self.reps.len() {
            if seen[i] {
                continue;
            }
            let j = self.inverse(i);
            seen[i] = true;
            if j == i {
                out.push(vec![i]);
            } else {
                seen[j] = true;
                out.push(vec![i, j]);
            }
        }
        out
    }
}

/// Enumerates the narrow class group of a fundamental discriminant D > 0.
///
/// All reduced forms are listed directly from the inequalities
/// 0 < b < sqrt(D), 4|a||c| = D - b^2, sqrt(D) - b < 2|a| < sqrt(D) + b,
/// then partitioned into rho cycles; one cycle = one class.
pub fn class_group(d: &BigInt) -> Result<ClassGroup> {
    validate_fundamental(d)?;
    let forms = enumerate_reduced_forms(d)?;

    let mut index: BTreeMap<(BigInt, BigInt, BigInt), usize> = BTreeMap::new();
    let mut cycles: Vec<Vec<BinaryForm>> = Vec::new();
    for f in &forms {
        let key = (f.a.clone(), f.b.clone(), f.c.clone());
        if index.contains_key(&key) {
            continue;
        }
        let cycle = f.cycle();
        let id = cycles.len();
        for g in &cycle {
            let gkey = (g.a.clone(), g.b.clone(), g.c.clone());
            let prev = index.insert(gkey, id);
            assert!(prev.is_none(), "cycles must not overlap");
        }
        cycles.push(cycle);
    }
    // every enumerated form must have been swept into a cycle, and every
    // cycle member must be an enumerated reduced form
    let total: usize = cycles.iter().map(|c| c.len()).sum();
    assert_eq!(
        total,
        forms.len(),
        "cycle partition must cover the enumeration"
    );

    // canonical order: sort cycles by their lexicographically smallest
    // member with positive leading coefficient (the sign of a alternates
    // around a cycle, so one always exists)
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    let min_key = |cycle: &[BinaryForm]| {
        cycle
            .iter()
            .filter(|f| f.a.is_positive())
            .map(|f| (f.a.clone(), f.b.clone(), f.c.clone()))
            .min()
            .expect("every cycle has a positive-a member")
    };
    order.sort_by_key(|&i| min_key(&cycles[i]));
    let cycles: Vec<Vec<BinaryForm>> = order.iter().map(|&i| cycles[i].clone()).collect();
    let reps: Vec<BinaryForm> = cycles
        .iter()
        .map(|c| {
            let (a, b, cc) = min_key(c);
            BinaryForm { a, b, c: cc }
        })
        .collect();
    let mut index = BTreeMap::new();
    for (i, cycle) in cycles.iter().enumerate() {
        for g in cycle {
            index.insert((g.a.clone(), g.b.clone(), g.c.clone()), i);
        }
    }

    let mut cg = ClassGroup {
        discriminant: d.clone(),
        reps,
        table: Vec::new(),
        cycles,
        index,
    };
    let h = cg.h_plus();
    let mut table = vec![vec![0usize; h]; h];
    for i in 0..h {
        for j in i..h {
            let prod = cg.reps[i].compose(&cg.reps[j])?;
            let k = cg.class_of(&prod)?;
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    cg.table = table;
    Ok(cg)
}

fn validate_fundamental(d: &BigInt) -> Result<()> {
    if !d.is_positive() {
        return Err(Error::NotIndefinite(d.clone()));
    }
    if arith::is_square(d) {
        return Err(Error::SquareDiscriminant(d.clone()));
    }
    let d_u64: u64 = d
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("discriminant {d}")))?;
    let m4 = d_u64 % 4;
    let fundamental = match m4 {
        1 => arith::is_squarefree_u64(d_u64),
        0 => {
            let m = d_u64 / 4;
            (m % 4 == 2 || m % 4 == 3) && arith::is_squarefree_u64(m)
        }
        _ => false,
    };
    if !fundamental {
        return Err(Error::NotFundamental(d.clone()));
    }
    Ok(())
}

fn enumerate_reduced_forms(d: &BigInt) -> Result<Vec<BinaryForm>> {
    let d_u64: u64 = d
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("discriminant {d}")))?;
    let s = arith::isqrt(d);
    let s_u64: u64 = (&s).try_into().expect("sqrt fits");
    let mut out = Vec::new();
    let parity = d_u64 % 2;
    let mut b = if parity == 0 { 2 } else { 1 };
    while b <= s_u64 {
        let m = (d_u64 - b * b) / 4; // = |a| * |c|, positive since b < sqrt(D)
        let mut da = 1u64;
        while da <= m / da {
            if m % da == 0 {
                for abs_a in [da, m / da] {
                    // sqrt(D) - b < 2|a| < sqrt(D) + b
                    let two_a = 2 * abs_a;
                    let upper = (two_a + b) as u128;
                    if upper * upper <= d_u64 as u128 {
                        continue;
                    }
                    if two_a > b {
                        let lower = (two_a - b) as u128;
                        if lower * lower >= d_u64 as u128 {
                            continue;
                        }
                    }
                    let abs_c = m / abs_a;
                    for sign in [1i64, -1] {
                        let a = BigInt::from(abs_a as i64 * sign);
                        let c = BigInt::from(abs_c as i64 * -sign);
                        out.push(BinaryForm {
                            a,
                            b: BigInt::from(b),
                            c,
                        });
                    }
                    if abs_a == m / abs_a {
                        break; // square divisor: avoid double listing
                    }
                }
            }
            da += 1;
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Splits the classes of a fundamental odd discriminant with at most two
/// prime factors into genera, by the assigned Legendre characters.
///
/// Returns lists of class indices; with two prime factors there are exactly
/// two genera of equal size, with one prime factor a single genus.
pub fn genus_split(cg: &ClassGroup) -> Result<Vec<Vec<usize>>> {
    let d_u64: u64 = (&cg.discriminant)
        .try_into()
        .map_err(|_| Error::OverflowScope(format!("discriminant {}", cg.discriminant)))?;
    if d_u64 % 2 == 0 {
        return Err(Error::UnsupportedDiscriminant(
            cg.discriminant.clone(),
            "even discriminants need mod-8 characters; the pipeline only meets odd D".into(),
        ));
    }
    let factors = arith::factor_u64(d_u64);
    if factors.len() > 2 {
        return Err(Error::UnsupportedDiscriminant(
            cg.discriminant.clone(),
            "more than two prime factors".into(),
        ));
    }
    let primes: Vec<u64> = factors.iter().map(|&(p, _)| p).collect();

    let mut by_chars: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    for (i, f) in cg.reps.iter().enumerate() {
        let v = coprime_represented_value(f, &cg.discriminant);
        let chars: Vec<i32> = primes.iter().map(|&p| arith::legendre(&v, p)).collect();
        debug_assert!(chars.iter().all(|&c| c != 0));
        by_chars.entry(chars).or_default().push(i);
    }
    let mut genera: Vec<Vec<usize>> = by_chars.into_values().collect();
    // principal genus first, then by smallest class index
    let e = cg.identity();
    genera.sort_by_key(|g| (!g.contains(&e), g.iter().min().copied()));
    Ok(genera)
}

/// A value f(x, y) coprime to 2D: small coordinates first, then a CRT
/// assembly over the primes of 2D (primitivity makes one of f(1,0),
/// f(0,1), f(1,1) nonzero mod every prime).
fn coprime_represented_value(f: &BinaryForm, d: &BigInt) -> BigInt {
    let modulus = BigInt::from(2) * d;
    for radius in 1i64..=8 {
        for x in -radius..=radius {
            for y in -radius..=radius {
                if x.abs().max(y.abs()) != radius && radius > 1 {
                    continue; // only the new shell
                }
                if x == 0 && y == 0 {
                    continue;
                }
                let v = f.evaluate(&BigInt::from(x), &BigInt::from(y));
                if v.gcd(&modulus).is_one() {
                    return v;
                }
            }
        }
    }
    let radical: u64 = (&modulus)
        .try_into()
        .expect("genus characters are computed at desk scale");
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (prime, _) in arith::factor_u64(radical) {
        let pb = BigInt::from(prime);
        let candidates = [
            (BigInt::one(), BigInt::zero()),
            (BigInt::zero(), BigInt::one()),
            (BigInt::one(), BigInt::one()),
        ];
        let (cx, cy) = candidates
            .iter()
            .find(|(x, y)| !f.evaluate(x, y).mod_floor(&pb).is_zero())
            .expect("a primitive form is nonzero mod every prime")
            .clone();
        xs.push((cx, pb.clone()));
        ys.push((cy, pb));
    }
    let v = f.evaluate(&arith::crt(&xs), &arith::crt(&ys));
    debug_assert!(v.gcd(&modulus).is_one());
    v
}

/// Fundamental unit data of the real quadratic order of discriminant D:
/// minimal (t, u) with t^2 - D u^2 = +-4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitData {
    pub d: BigInt,
    pub t: BigInt,
    pub u: BigInt,
    /// (t^2 - D u^2) / 4, so -1 or +1.
    pub norm_sign: i32,
    /// (t + u sqrt(D)) / 2 to 50 significant digits.
    pub epsilon_approx: String,
}

impl UnitData {
    /// The minimal solution of t^2 - D u^2 = +4 (the square of the unit
    /// when the fundamental unit has norm -1).
    pub fn pell_plus4(&self) -> (BigInt, BigInt) {
        if self.norm_sign == 1 {
            (self.t.clone(), self.u.clone())
        } else {
            let t2 = (&self.t * &self.t + &self.d * &self.u * &self.u) / BigInt::from(2);
            let u2 = &self.t * &self.u;
            (t2, u2)
        }
    }

    /// Exact comparison epsilon <= (p + q sqrt(D)) / 2.
    pub fn le_half_surd(&self, p: &BigInt, q: &BigInt) -> bool {
        // sign of (p - t) + (q - u) sqrt(D)
        arith::sign_quad(&(p - &self.t), &(q - &self.u), &self.d) >= 0
    }
}

/// Computes the fundamental unit by walking the principal reduction cycle.
///
/// One full cycle of the principal form accumulates the fundamental proper
/// automorph, whose trace gives the minimal solution of t^2 - D u^2 = 4;
/// this is the classical continued-fraction expansion of sqrt(D) expressed
/// on forms, with exact integer recurrences throughout. The norm -1 unit is
/// recovered from the +4 solution when it exists.
pub fn fundamental_unit(d: &BigInt) -> Result<UnitData> {
    if !d.is_positive() {
        return Err(Error::NotIndefinite(d.clone()));
    }
    if arith::is_square(d) {
        return Err(Error::SquareDiscriminant(d.clone()));
    }
    let m4 = d.mod_floor(&BigInt::from(4));
    if !m4.is_zero() && !m4.is_one() {
        return Err(Error::InvalidInput(format!(
            "{d} is not a discriminant (must be 0 or 1 mod 4)"
        )));
    }
    let principal = BinaryForm::principal(d)?;
    let (start, _) = principal.reduce_with_transform();
    let mut acc = IntMatrix::identity(2);
    let (mut cur, first) = start.rho();
    acc = acc.mul(&first);
    while cur != start {
        let (next, m) = cur.rho();
        acc = acc.mul(&m);
        cur = next;
    }
    debug_assert_eq!(start.transform(&acc), start);

    let trace = (&acc[(0, 0)] + &acc[(1, 1)]).abs();
    let (u_big, rem) = acc[(1, 0)].div_rem(&start.a);
    debug_assert!(rem.is_zero());
    let big_t = trace;
    let big_u = u_big.abs();
    debug_assert_eq!(
        &big_t * &big_t - d * &big_u * &big_u,
        BigInt::from(4),
        "cycle automorph must solve the +4 Pell equation"
    );

    // norm -1 unit exists iff T - 2 and (T + 2)/D are perfect squares
    let t_minus = &big_t - BigInt::from(2);
    let t_plus = &big_t + BigInt::from(2);
    let (t, u, norm_sign) = if arith::is_square(&t_minus) && (&t_plus % d).is_zero() {
        let quot = &t_plus / d;
        if arith::is_square(&quot) {
            (arith::isqrt(&t_minus), arith::isqrt(&quot), -1)
        } else {
            (big_t.clone(), big_u.clone(), 1)
        }
    } else {
        (big_t.clone(), big_u.clone(), 1)
    };
    debug_assert_eq!(&t * &t - d * &u * &u, BigInt::from(4 * norm_sign));

    let epsilon_approx = arith::quad_decimal(&t, &u, d, 50);
    Ok(UnitData {
        d: d.clone(),
        t,
        u,
        norm_sign,
        epsilon_approx,
    })
}

/// Generators of the isometry group of the rank-2 lattice of f:
/// -identity, the fundamental proper automorph from the +4 Pell solution,
/// and one improper isometry when the class of f is ambiguous.
pub fn automorph_generators(f: &BinaryForm) -> Result<Vec<IntMatrix>> {
    let d = f.discriminant();
    let unit = fundamental_unit(&d)?;
    let (big_t, big_u) = unit.pell_plus4();

    let minus_identity = IntMatrix::identity(2).scale(&BigInt::from(-1));

    // proper automorph ((T - bU)/2, -cU; aU, (T + bU)/2)
    let two = BigInt::from(2);
    let bu = &f.b * &big_u;
    let proper = IntMatrix::from_rows(vec![
        vec![(&big_t - &bu) / &two, -(&f.c * &big_u)],
        vec![&f.a * &big_u, (&big_t + &bu) / &two],
    ]);
    debug_assert_eq!(f.transform(&proper), *f);

    let mut out = vec![minus_identity, proper];

    if f.equivalent_sl2(&f.opposite())? {
        // walk from reduce(f) to reduce(opposite f) to build N with
        // f . N = opposite(f); then N * diag(1, -1) fixes f improperly
        let (f_red, r_f) = f.reduce_with_transform();
        let opp = f.opposite();
        let (o_red, r_o) = opp.reduce_with_transform();
        let mut walk = IntMatrix::identity(2);
        let mut cur = f_red.clone();
        while cur != o_red {
            let (next, m) = cur.rho();
            walk = walk.mul(&m);
            cur = next;
        }
        let n = r_f.mul(&walk).mul(&inverse_2x2(&r_o));
        debug_assert_eq!(f.transform(&n), opp);
        let reflect = IntMatrix::from_rows(vec![
            vec![BigInt::one(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(-1)],
        ]);
        let improper = n.mul(&reflect);
        debug_assert_eq!(f.transform(&improper), *f);
        debug_assert_eq!(improper.det(), BigInt::from(-1));
        out.push(improper);
    }
    Ok(out)
}

/// Inverse of a 2x2 integer matrix with det +-1.
fn inverse_2x2(m: &IntMatrix) -> IntMatrix {
    let det = m.det();
    assert!(det.abs().is_one());
    let (a, b, c, d) = (
        m[(0, 0)].clone(),
        m[(0, 1)].clone(),
        m[(1, 0)].clone(),
        m[(1, 1)].clone(),
    );
    let inv = IntMatrix::from_rows(vec![vec![d, -b], vec![-c, a]]);
    if det.is_one() {
        inv
    } else {
        inv.scale(&BigInt::from(-1))
    }
}
