//! Graded mod-2 cohomology classes as F2-sums of symbols, with normal forms,
//! cup products, residue decompositions, and an exact zero decision.
//!
//! A symbol `(a_1, ..., a_n)` is the cup product of the degree-1 classes of
//! the square classes `a_i`.  Normalization expands every slot multilinearly
//! into the atomic basis (-1, primes, single indeterminates), rewrites
//! repeated atoms with `(a, a) = (-1, a)`, sorts slots, and cancels equal
//! symbols over F2.  The resulting normal form is unique for the rewrite
//! system; it is *not* a complete invariant of the cohomology class, which is
//! what [`CohClass::is_zero`] decides.
//!
//! The zero decision peels indeterminates outermost-first: writing
//! `a = a_0 + (v) . a_1` with both parts `v`-free, `a` vanishes iff `a_0`
//! and `a_1` vanish over the smaller tower.  This rests on the standard
//! residue-sequence fact that the monomial subring injects into the
//! cohomology of the rational function field, which the engine adopts as a
//! documented assumption.  At the indeterminate-free base the decision is
//! classical: everything dies over `C`; over `R` a symbol survives iff all
//! slots are negative; over `Q` (possibly with adjoined square roots) degrees
//! 0 and 1 are normal-form comparisons, degree 2 goes through local Hilbert
//! symbols and the local degrees of the adjoined multiquadratic extension,
//! and degree >= 3 is detected by real embeddings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{squarefree_kernel, Factor, FactorSet};
use crate::field::{BaseField, FieldDesc, SquareClass};

/// Operations reject classes of degree above this bound.
pub const MAX_DEGREE: usize = 12;

const EXPANSION_CAP: usize = 1 << 20;

/// A normalized symbol: atomic slots in canonical order.
///
/// Every atom other than `-1` occurs at most once; `-1` may repeat.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    slots: Vec<SquareClass>,
}

impl Symbol {
    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    pub fn degree(&self) -> usize {
        self.slots.len()
    }

    fn mentions(&self, atom: &SquareClass) -> bool {
        self.slots.iter().any(|s| s == atom)
    }

    /// All slots have negative rational part (true for the empty symbol).
    fn all_slots_negative(&self) -> bool {
        self.slots.iter().all(|s| s.is_negative())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "1");
        }
        write!(f, "(")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

fn slot_key(field: &FieldDesc, s: &SquareClass) -> (u64, u8, Vec<usize>) {
    let indices: Vec<usize> = s
        .indeterminates()
        .map(|n| field.indet_index(n).expect("slot indeterminates validated"))
        .collect();
    (
        s.rational_part().unsigned_abs(),
        u8::from(s.rational_part() > 0),
        indices,
    )
}

/// Rewrites a multiset of atoms into the canonical slot vector:
/// every repeated atom `u` contributes one `u` and one extra `-1` per repeat.
fn canonical_symbol(field: &FieldDesc, atoms: &[&SquareClass]) -> Symbol {
    let minus_one = SquareClass::minus_one();
    let mut extra_minus_ones = 0usize;
    let mut mult: BTreeMap<&SquareClass, usize> = BTreeMap::new();
    for &a in atoms {
        if *a == minus_one {
            extra_minus_ones += 1;
        } else {
            *mult.entry(a).or_insert(0) += 1;
        }
    }
    let mut slots: Vec<SquareClass> = Vec::with_capacity(atoms.len());
    for (a, m) in &mult {
        slots.push((*a).clone());
        extra_minus_ones += m - 1;
    }
    for _ in 0..extra_minus_ones {
        slots.push(minus_one.clone());
    }
    slots.sort_by_key(|a| slot_key(field, a));
    Symbol { slots }
}

fn xor_term(acc: &mut BTreeSet<Symbol>, sym: Symbol) {
    if !acc.remove(&sym) {
        acc.insert(sym);
    }
}

fn normalize_terms<I>(field: &FieldDesc, degree: usize, raw: I) -> Result<BTreeSet<Symbol>>
where
    I: IntoIterator<Item = Vec<SquareClass>>,
{
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree,
            max: MAX_DEGREE,
        });
    }
    let mut acc = BTreeSet::new();
    for slots in raw {
        if slots.len() != degree {
            return Err(Error::MixedDegrees {
                expected: degree,
                found: slots.len(),
            });
        }
        let mut atom_lists: Vec<Vec<SquareClass>> = Vec::with_capacity(slots.len());
        let mut killed = false;
        let mut expansion = 1usize;
        for s in &slots {
            let reduced = field.re_reduce(s)?;
            let atoms = reduced.atoms();
            if atoms.is_empty() {
                killed = true; // trivial slot kills the symbol
                break;
            }
            expansion = expansion
                .checked_mul(atoms.len())
                .ok_or(Error::ExpansionTooLarge)?;
            if expansion > EXPANSION_CAP {
                return Err(Error::ExpansionTooLarge);
            }
            atom_lists.push(atoms);
        }
        if killed {
            continue;
        }
        // multilinear expansion over the atomic basis
        let n = atom_lists.len();
        let mut choice = vec![0usize; n];
        'expand: loop {
            let atoms: Vec<&SquareClass> = atom_lists
                .iter()
                .zip(&choice)
                .map(|(l, &i)| &l[i])
                .collect();
            xor_term(&mut acc, canonical_symbol(field, &atoms));
            let mut k = n;
            while k > 0 {
                k -= 1;
                choice[k] += 1;
                if choice[k] < atom_lists[k].len() {
                    continue 'expand;
                }
                choice[k] = 0;
            }
            break;
        }
    }
    Ok(acc)
}

/// A graded mod-2 cohomology class: an F2-set of normalized symbols over one
/// field.  Values are immutable; all operations return fresh classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohClass {
    field: FieldDesc,
    degree: usize,
    terms: BTreeSet<Symbol>,
}

/// Result of a Faddeev splitting `a = unramified + (var) . residue`.
///
/// Both components are free of `var` and live over the same descriptor as
/// the input.  `tower` records the indeterminate order actually used: the
/// split variable is moved outermost, which is the implicit reordering of a
/// purely transcendental tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub unramified: CohClass,
    pub residue: CohClass,
    pub tower: Vec<String>,
}

impl CohClass {
    /// The zero class of the given degree.
    pub fn zero(field: &FieldDesc, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                max: MAX_DEGREE,
            });
        }
        Ok(CohClass {
            field: field.clone(),
            degree,
            terms: BTreeSet::new(),
        })
    }

    /// The unit class `1` in degree 0.
    pub fn one(field: &FieldDesc) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(Symbol { slots: Vec::new() });
        CohClass {
            field: field.clone(),
            degree: 0,
            terms,
        }
    }

    /// Normalizes a list of raw symbols (each a slot vector) of one degree.
    pub fn from_raw_symbols(
        field: &FieldDesc,
        degree: usize,
        symbols: Vec<Vec<SquareClass>>,
    ) -> Result<Self> {
        let terms = normalize_terms(field, degree, symbols)?;
        Ok(CohClass {
            field: field.clone(),
            degree,
            terms,
        })
    }

    /// The class of a single symbol; the degree is the slot count.
    pub fn symbol(field: &FieldDesc, slots: Vec<SquareClass>) -> Result<Self> {
        let degree = slots.len();
        Self::from_raw_symbols(field, degree, vec![slots])
    }

    /// The class `(-1)^n = (-1, ..., -1)`.
    pub fn minus_one_power(field: &FieldDesc, n: usize) -> Result<Self> {
        let slot = field.square_class_of_integer(-1)?;
        Self::symbol(field, vec![slot; n])
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The normal form has no terms.  Sufficient for [`Self::is_zero`], not
    /// necessary: a class can vanish for local reasons the rewrite system
    /// does not see.
    pub fn is_empty_form(&self) -> bool {
        self.terms.is_empty()
    }

    /// F2 sum.  Adding a zero class of any degree is allowed; two nonempty
    /// classes must agree in degree.
    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.terms.is_empty() {
            return Ok(other.clone());
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::MixedDegrees {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut terms = self.terms.clone();
        for t in &other.terms {
            xor_term(&mut terms, t.clone());
        }
        Ok(CohClass {
            field: self.field.clone(),
            degree: self.degree,
            terms,
        })
    }

    /// Cup product: bilinear slot concatenation followed by normalization.
    pub fn cup(&self, other: &CohClass) -> Result<CohClass> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut slots = a.slots.clone();
                slots.extend(b.slots.iter().cloned());
                raw.push(slots);
            }
        }
        let terms = normalize_terms(&self.field, degree, raw)?;
        Ok(CohClass {
            field: self.field.clone(),
            degree,
            terms,
        })
    }

    /// Faddeev splitting at the `var`-adic valuation: `a = a_0 + (var) . a_1`
    /// with both parts `var`-free.  Splitting at a non-outermost
    /// indeterminate implicitly reorders the tower; the order used is
    /// reported in the result.
    pub fn decompose(&self, var: &str) -> Result<Decomposition> {
        if !self.field.contains_indeterminate(var) {
            return Err(Error::UnknownIndeterminate(var.to_string()));
        }
        let atom = {
            let mut s = BTreeSet::new();
            s.insert(var.to_string());
            SquareClass::from_parts(1, s)
        };
        let mut unramified = BTreeSet::new();
        let mut residue = BTreeSet::new();
        for t in &self.terms {
            if t.mentions(&atom) {
                let slots: Vec<SquareClass> =
                    t.slots.iter().filter(|s| **s != atom).cloned().collect();
                residue.insert(Symbol { slots });
            } else {
                unramified.insert(t.clone());
            }
        }
        let mut tower: Vec<String> = self
            .field
            .indeterminates()
            .iter()
            .filter(|n| *n != var)
            .cloned()
            .collect();
        tower.push(var.to_string());
        Ok(Decomposition {
            unramified: CohClass {
                field: self.field.clone(),
                degree: self.degree,
                terms: unramified,
            },
            residue: CohClass {
                field: self.field.clone(),
                degree: self.degree.saturating_sub(1),
                terms: residue,
            },
            tower,
        })
    }

    /// Second residue at the `var`-adic valuation.
    pub fn residue(&self, var: &str) -> Result<CohClass> {
        Ok(self.decompose(var)?.residue)
    }

    /// Exact zero decision over the class's field (restricted to the
    /// monomial subring; see the module documentation).
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        if self.degree == 0 {
            return false;
        }
        match self.field.indeterminates().last() {
            None => self.base_is_zero_inner(),
            Some(v) => {
                let v = v.clone();
                let d = self
                    .decompose(&v)
                    .expect("outermost indeterminate is in the field");
                let smaller = self.field.without_indeterminate(&v);
                d.unramified.with_field(&smaller).is_zero()
                    && d.residue.with_field(&smaller).is_zero()
            }
        }
    }

    /// Zero decision over an indeterminate-free field.
    pub fn base_is_zero(&self) -> Result<bool> {
        if !self.field.indeterminates().is_empty() {
            return Err(Error::IndeterminatesPresent);
        }
        Ok(if self.degree == 0 {
            self.terms.is_empty()
        } else {
            self.base_is_zero_inner()
        })
    }

    fn base_is_zero_inner(&self) -> bool {
        debug_assert!(self.field.indeterminates().is_empty());
        debug_assert!(self.degree >= 1);
        match self.field.base() {
            // cd(C) = 0: every positive-degree class dies
            BaseField::C => true,
            BaseField::R => self.negative_term_parity_even(),
            BaseField::Q => match self.degree {
                1 => self.terms.is_empty(),
                2 => self.degree_two_is_zero(),
                _ => !self.field.has_real_embedding() || self.negative_term_parity_even(),
            },
        }
    }

    /// Evaluation at the real embedding(s): a symbol survives iff all slots
    /// are negative, so the class vanishes iff the count of all-negative
    /// terms is even.  All slots are rational here, so every real embedding
    /// gives the same answer.
    fn negative_term_parity_even(&self) -> bool {
        self.terms.iter().filter(|t| t.all_slots_negative()).count() % 2 == 0
    }

    /// Degree-2 decision over `Q` with adjoined square roots: the class is a
    /// sum of quaternion symbols with rational entries, so it vanishes over
    /// the extension iff at every place of `Q` where its local invariant is
    /// nontrivial, the multiquadratic extension has even local degree —
    /// i.e. some adjoined generator is a local nonsquare there.
    fn degree_two_is_zero(&self) -> bool {
        let mut places: BTreeSet<Place> = BTreeSet::new();
        places.insert(Place::Real);
        places.insert(Place::Prime(2));
        for t in &self.terms {
            for s in &t.slots {
                for f in squarefree_kernel(s.rational_part())
                    .expect("slots are nonzero")
                    .into_iter()
                {
                    if let Factor::Prime(p) = f {
                        if p != 2 {
                            places.insert(Place::Prime(p));
                        }
                    }
                }
            }
        }
        for place in &places {
            let mut inv: i8 = 1;
            for t in &self.terms {
                debug_assert_eq!(t.slots.len(), 2);
                inv *= hilbert_symbol_unchecked(
                    t.slots[0].rational_part(),
                    t.slots[1].rational_part(),
                    place,
                );
            }
            if inv == -1 && !self.adjunction_has_local_nonsquare(place) {
                return false;
            }
        }
        true
    }

    /// Whether some adjoined square root is a nonsquare in the completion at
    /// `place`.  The local squares form a subgroup, so it is enough to test
    /// the generators of the adjoined span.
    fn adjunction_has_local_nonsquare(&self, place: &Place) -> bool {
        self.field
            .adjoined_row_sets()
            .iter()
            .any(|row| factor_set_local_nonsquare(row, place))
    }

    /// Reinterprets the class over a descriptor with the same reduction
    /// behaviour (used when an indeterminate absent from every term is
    /// dropped from the tower).
    fn with_field(&self, field: &FieldDesc) -> CohClass {
        CohClass {
            field: field.clone(),
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }

    /// Restriction of scalars along an inclusion of descriptors: the target
    /// must have the same base and adjunctions and contain every
    /// indeterminate the class mentions.
    pub fn restrict_to(&self, target: &FieldDesc) -> Result<CohClass> {
        if target.base() != self.field.base()
            || target.adjoined_row_sets() != self.field.adjoined_row_sets()
        {
            return Err(Error::NotAnExtension("base or adjunctions differ"));
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            for s in &t.slots {
                for n in s.indeterminates() {
                    if !target.contains_indeterminate(n) {
                        return Err(Error::NotDefinedOverSubfield(n.to_string()));
                    }
                }
            }
            raw.push(t.slots.clone());
        }
        CohClass::from_raw_symbols(target, self.degree, raw)
    }

    /// Scalar extension to a larger descriptor: same base, at least the same
    /// adjoined span, indeterminates a superset.  Slots are re-reduced, so
    /// classes can collapse (13 becomes trivial over `Q(sqrt 13)`).
    pub fn lift_to(&self, target: &FieldDesc) -> Result<CohClass> {
        if target.base() != self.field.base() {
            return Err(Error::NotAnExtension("bases differ"));
        }
        for row in self.field.adjoined_row_sets() {
            if !target.reduce_factor_set(row.clone()).is_empty() {
                return Err(Error::NotAnExtension("adjoined roots are not contained"));
            }
        }
        for n in self.field.indeterminates() {
            if !target.contains_indeterminate(n) {
                return Err(Error::NotAnExtension("indeterminates are not contained"));
            }
        }
        let raw: Vec<Vec<SquareClass>> = self.terms.iter().map(|t| t.slots.clone()).collect();
        CohClass::from_raw_symbols(target, self.degree, raw)
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A place of `Q`: the real place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (a | p) for an odd prime p not dividing a.
fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    debug_assert!(r != 0);
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Splits n = p^alpha * u with u prime to p; returns (alpha mod 2, u).
fn p_adic_split(mut n: i64, p: u64) -> (u32, i64) {
    let mut alpha = 0u32;
    let p = p as i64;
    while n % p == 0 {
        n /= p;
        alpha += 1;
    }
    (alpha % 2, n)
}

/// (u - 1)/2 mod 2 for odd u.
fn eps(u: i64) -> u32 {
    u32::from(u.rem_euclid(4) == 3)
}

/// (u^2 - 1)/8 mod 2 for odd u.
fn omega(u: i64) -> u32 {
    let r = u.rem_euclid(8);
    u32::from(r == 3 || r == 5)
}

fn hilbert_symbol_unchecked(a: i64, b: i64, place: &Place) -> i8 {
    match place {
        Place::Real => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = p_adic_split(a, 2);
            let (beta, v) = p_adic_split(b, 2);
            let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = p_adic_split(a, *p);
            let (beta, v) = p_adic_split(b, *p);
            let mut r: i8 = if alpha * beta * eps(*p as i64) % 2 == 1 {
                -1
            } else {
                1
            };
            if beta == 1 {
                r *= legendre(u, *p);
            }
            if alpha == 1 {
                r *= legendre(v, *p);
            }
            r
        }
    }
}

/// Local Hilbert symbol `(a, b)` at a place of `Q`, in {+1, -1}.
///
/// The product over all places (the real one, 2, and the odd primes dividing
/// `a` or `b`) is +1.
pub fn hilbert_symbol(a: i64, b: i64, place: &Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroHilbertArgument);
    }
    if let Place::Prime(p) = place {
        if !is_prime(*p) {
            return Err(Error::NotAPrime(*p));
        }
    }
    Ok(hilbert_symbol_unchecked(a, b, place))
}

/// Whether the product of `set`'s factors is a nonsquare in the completion
/// of `Q` at `place`.
fn factor_set_local_nonsquare(set: &FactorSet, place: &Place) -> bool {
    match place {
        Place::Real => set.contains(&Factor::Sign),
        Place::Prime(2) => {
            if set.contains(&Factor::Prime(2)) {
                return true;
            }
            let mut u: i64 = 1;
            for f in set {
                u = match f {
                    Factor::Sign => u * 7,
                    Factor::Prime(p) => u * (*p as i64),
                }
                .rem_euclid(8);
            }
            u != 1
        }
        Place::Prime(p) => {
            if set.contains(&Factor::Prime(*p)) {
                return true;
            }
            let mut leg: i8 = 1;
            for f in set {
                leg *= match f {
                    Factor::Sign => legendre(-1, *p),
                    Factor::Prime(q) => legendre(*q as i64, *p),
                };
            }
            leg == -1
        }
    }
}

/// A formal mod-3 class: an F3-weighted set of symbols with pairwise
/// distinct slots.  No relations between distinct symbols are implemented —
/// the engine only ever needs to distinguish zero from a generic symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mod3Class {
    field: FieldDesc,
    degree: usize,
    terms: BTreeMap<Vec<SquareClass>, u8>,
}

impl Mod3Class {
    pub fn zero(field: &FieldDesc, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                max: MAX_DEGREE,
            });
        }
        Ok(Mod3Class {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        })
    }

    /// Normalizes weighted symbols: slots are reduced and sorted, weights
    /// accumulate mod 3; a repeated slot within one term is rejected rather
    /// than rewritten.
    pub fn from_terms(
        field: &FieldDesc,
        degree: usize,
        terms: Vec<(Vec<SquareClass>, u8)>,
    ) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut acc: BTreeMap<Vec<SquareClass>, u8> = BTreeMap::new();
        for (slots, weight) in terms {
            if slots.len() != degree {
                return Err(Error::MixedDegrees {
                    expected: degree,
                    found: slots.len(),
                });
            }
            let mut slots = slots
                .iter()
                .map(|s| field.re_reduce(s))
                .collect::<Result<Vec<SquareClass>>>()?;
            slots.sort();
            for w in slots.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::RepeatedMod3Slot(w[0].to_string()));
                }
            }
            let entry = acc.entry(slots).or_insert(0);
            *entry = (*entry + weight % 3) % 3;
        }
        acc.retain(|_, w| *w != 0);
        Ok(Mod3Class {
            field: field.clone(),
            degree,
            terms: acc,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[SquareClass], u8)> {
        self.terms.iter().map(|(s, w)| (s.as_slice(), *w))
    }

    /// F3 sum (same empty-class degree flexibility as [`CohClass::add`]).
    pub fn add(&self, other: &Mod3Class) -> Result<Mod3Class> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.terms.is_empty() {
            return Ok(other.clone());
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::MixedDegrees {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut acc = self.terms.clone();
        for (slots, w) in &other.terms {
            let entry = acc.entry(slots.clone()).or_insert(0);
            *entry = (*entry + w) % 3;
        }
        acc.retain(|_, w| *w != 0);
        Ok(Mod3Class {
            field: self.field.clone(),
            degree: self.degree,
            terms: acc,
        })
    }

    /// All weights vanish.  Exact for this formal model.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lifts to a larger descriptor, re-reducing slots.
    pub fn lift_to(&self, target: &FieldDesc) -> Result<Mod3Class> {
        let terms: Vec<(Vec<SquareClass>, u8)> =
            self.terms.iter().map(|(s, w)| (s.clone(), *w)).collect();
        if target.base() != self.field.base() {
            return Err(Error::NotAnExtension("bases differ"));
        }
        for n in self.field.indeterminates() {
            if !target.contains_indeterminate(n) {
                return Err(Error::NotAnExtension("indeterminates are not contained"));
            }
        }
        Mod3Class::from_terms(target, self.degree, terms)
    }
}

impl fmt::Display for Mod3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (slots, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *w != 1 {
                write!(f, "{w}*")?;
            }
            write!(f, "(")?;
            for (j, s) in slots.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
