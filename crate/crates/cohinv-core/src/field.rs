//! Field descriptors and square classes.
//!
//! A [`FieldDesc`] names a field built from a base (`Q`, `R`, or `C`) by
//! adjoining square roots of squarefree integers and then a tower of
//! indeterminates, e.g. `Q(x,y;sqrt=13)` for `Q(sqrt 13)(x, y)`.  The order
//! of the indeterminates is part of the descriptor: the last one is the
//! outermost layer of the residue tower, and decompositions peel it first.
//!
//! A [`SquareClass`] is an element of `K*/K*^2` restricted to monomials: a
//! signed squarefree integer times a multiplicatively-written set of
//! indeterminates with odd exponent.  Reduction modulo the adjoined square
//! roots is built into [`FieldDesc::reduce_square_class`], so every stored
//! class is a canonical coset representative.  Square classes are the
//! degree-1 currency of the engine: every cohomology symbol slot is one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Base of a described field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseField {
    Q,
    R,
    C,
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Q => write!(f, "Q"),
            BaseField::R => write!(f, "R"),
            BaseField::C => write!(f, "C"),
        }
    }
}

/// Tokens the expression grammar reserves; indeterminates may not shadow them.
pub const RESERVED_TOKENS: &[&str] = &["Q", "R", "C", "res", "sqrt", "pf"];

/// One generator of the squarefree-integer group Q*/Q*^2, viewed as an
/// F2 vector space with basis {-1, 2, 3, 5, ...}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Factor {
    Sign,
    Prime(u64),
}

pub(crate) type FactorSet = BTreeSet<Factor>;

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Squarefree kernel of a nonzero integer as a factor set.
pub(crate) fn squarefree_kernel(n: i64) -> Result<FactorSet> {
    if n == 0 {
        return Err(Error::ZeroSquareClass);
    }
    let mut set = FactorSet::new();
    if n < 0 {
        set.insert(Factor::Sign);
    }
    for (p, e) in trial_factor(n.unsigned_abs()) {
        if e % 2 == 1 {
            set.insert(Factor::Prime(p));
        }
    }
    Ok(set)
}

pub(crate) fn is_squarefree(n: i64) -> bool {
    n != 0 && trial_factor(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

pub(crate) fn factor_set_to_integer(set: &FactorSet) -> Result<i64> {
    let mut value: i64 = 1;
    for f in set {
        match f {
            Factor::Sign => value = -value,
            Factor::Prime(p) => {
                value = value
                    .checked_mul(i64::try_from(*p).map_err(|_| Error::IntegerOverflow)?)
                    .ok_or(Error::IntegerOverflow)?;
            }
        }
    }
    Ok(value)
}

fn xor_into(dst: &mut FactorSet, src: &FactorSet) {
    for f in src {
        if !dst.remove(f) {
            dst.insert(*f);
        }
    }
}

fn valid_indet_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A described field: base, ordered indeterminates, adjoined square roots.
///
/// Descriptors are canonical: the adjoined set is stored as the reduced
/// row-echelon basis of the subgroup it generates in Q*/Q*^2, so
/// `Q(;sqrt=2,6)` and `Q(;sqrt=2,3)` are the same descriptor.  Over `R` a
/// positive adjunction is a no-op and is dropped; a negative one is rejected
/// because the result would no longer embed in the reals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldDesc {
    base: BaseField,
    indeterminates: Vec<String>,
    adjoined_rows: Vec<FactorSet>,
    adjoined_values: Vec<i64>,
}

impl FieldDesc {
    /// Builds a field descriptor, validating names and adjunctions.
    pub fn new<S: AsRef<str>>(
        base: BaseField,
        indeterminates: &[S],
        sqrt_adjoined: &[i64],
    ) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(indeterminates.len());
        for n in indeterminates {
            let n = n.as_ref();
            if !valid_indet_name(n) {
                return Err(Error::InvalidIndeterminate(n.to_string()));
            }
            if RESERVED_TOKENS.contains(&n) {
                return Err(Error::InvalidIndeterminate(n.to_string()));
            }
            if names.iter().any(|m| m == n) {
                return Err(Error::DuplicateIndeterminate(n.to_string()));
            }
            names.push(n.to_string());
        }

        let mut rows: Vec<FactorSet> = Vec::new();
        for &d in sqrt_adjoined {
            if d == 0 {
                return Err(Error::InvalidAdjunction {
                    value: d,
                    reason: "zero",
                });
            }
            if d == 1 {
                return Err(Error::InvalidAdjunction {
                    value: d,
                    reason: "already a square",
                });
            }
            if !is_squarefree(d) {
                return Err(Error::InvalidAdjunction {
                    value: d,
                    reason: "not squarefree",
                });
            }
            match base {
                BaseField::C => {
                    return Err(Error::AdjunctionOverBase {
                        value: d,
                        base: "C",
                    });
                }
                BaseField::R => {
                    if d < 0 {
                        return Err(Error::AdjunctionOverBase {
                            value: d,
                            base: "R",
                        });
                    }
                    // positive rationals are already squares in R
                }
                BaseField::Q => echelon_insert(&mut rows, squarefree_kernel(d)?),
            }
        }
        let adjoined_values = rows
            .iter()
            .map(factor_set_to_integer)
            .collect::<Result<Vec<i64>>>()?;

        Ok(FieldDesc {
            base,
            indeterminates: names,
            adjoined_rows: rows,
            adjoined_values,
        })
    }

    /// The rational base: `Q` without indeterminates or adjunctions.
    pub fn rationals() -> Self {
        FieldDesc {
            base: BaseField::Q,
            indeterminates: Vec::new(),
            adjoined_rows: Vec::new(),
            adjoined_values: Vec::new(),
        }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    /// Indeterminates in tower order; the last one is outermost.
    pub fn indeterminates(&self) -> &[String] {
        &self.indeterminates
    }

    /// Canonical basis of the adjoined square-root subgroup.
    pub fn sqrt_adjoined(&self) -> &[i64] {
        &self.adjoined_values
    }

    pub fn contains_indeterminate(&self, name: &str) -> bool {
        self.indeterminates.iter().any(|n| n == name)
    }

    pub(crate) fn indet_index(&self, name: &str) -> Option<usize> {
        self.indeterminates.iter().position(|n| n == name)
    }

    /// Whether a rational lies in the subgroup of Q*/Q*^2 generated by the
    /// adjoined roots — i.e. its square root is present *because of the
    /// adjunctions*, independently of what the base makes square.
    pub fn sqrt_span_contains(&self, d: i64) -> Result<bool> {
        let mut v = squarefree_kernel(d)?;
        for row in &self.adjoined_rows {
            let pivot = row.iter().next_back().expect("rows are nonempty");
            if v.contains(pivot) {
                xor_into(&mut v, row);
            }
        }
        Ok(v.is_empty())
    }

    /// True when the field admits an embedding into the reals
    /// (ignoring indeterminates, which never obstruct one).
    pub fn has_real_embedding(&self) -> bool {
        match self.base {
            BaseField::C => false,
            BaseField::R => true,
            BaseField::Q => self
                .adjoined_rows
                .iter()
                .all(|r| !r.contains(&Factor::Sign)),
        }
    }

    pub(crate) fn adjoined_row_sets(&self) -> &[FactorSet] {
        &self.adjoined_rows
    }

    pub(crate) fn reduce_factor_set(&self, mut v: FactorSet) -> FactorSet {
        match self.base {
            BaseField::C => v.clear(),
            BaseField::R => v.retain(|f| *f == Factor::Sign),
            BaseField::Q => {
                // rows are in reduced echelon form: one pass eliminates all pivots
                for row in &self.adjoined_rows {
                    let pivot = row.iter().next_back().expect("rows are nonempty");
                    if v.contains(pivot) {
                        xor_into(&mut v, row);
                    }
                }
            }
        }
        v
    }

    /// The same tower without one indeterminate (residue field of its
    /// valuation).  Used when peeling Faddeev layers.
    pub(crate) fn without_indeterminate(&self, name: &str) -> FieldDesc {
        let mut f = self.clone();
        f.indeterminates.retain(|n| n != name);
        f
    }

    /// Reduces a monomial to its canonical square class over this field.
    ///
    /// The sign of the rational part is preserved over `Q` and `R`;
    /// adjoined roots reduce away; exponents are taken mod 2.
    pub fn reduce_square_class(&self, m: &Monomial) -> Result<SquareClass> {
        let mut set = squarefree_kernel(m.numerator)?;
        xor_into(&mut set, &squarefree_kernel(m.denominator)?);
        set = self.reduce_factor_set(set);
        let mut indets = BTreeSet::new();
        for (name, e) in &m.exponents {
            if !self.contains_indeterminate(name) {
                return Err(Error::UnknownIndeterminate(name.clone()));
            }
            if e.rem_euclid(2) == 1 {
                indets.insert(name.clone());
            }
        }
        Ok(SquareClass {
            rational: factor_set_to_integer(&set)?,
            indets,
        })
    }

    /// Square class of a nonzero integer.
    pub fn square_class_of_integer(&self, n: i64) -> Result<SquareClass> {
        self.reduce_square_class(&Monomial::integer(n))
    }

    /// Square class of one indeterminate.
    pub fn square_class_of_indet(&self, name: &str) -> Result<SquareClass> {
        self.reduce_square_class(&Monomial::indet(name))
    }

    /// Product of two square classes, reduced over this field.
    pub fn square_class_product(&self, a: &SquareClass, b: &SquareClass) -> Result<SquareClass> {
        let mut set = squarefree_kernel(a.rational)?;
        xor_into(&mut set, &squarefree_kernel(b.rational)?);
        set = self.reduce_factor_set(set);
        let mut indets = a.indets.clone();
        for n in &b.indets {
            if !indets.remove(n) {
                indets.insert(n.clone());
            }
        }
        for n in &indets {
            if !self.contains_indeterminate(n) {
                return Err(Error::UnknownIndeterminate(n.clone()));
            }
        }
        Ok(SquareClass {
            rational: factor_set_to_integer(&set)?,
            indets,
        })
    }

    /// Re-reduces a square class (idempotent; validates indeterminate names).
    pub(crate) fn re_reduce(&self, s: &SquareClass) -> Result<SquareClass> {
        let mut m = Monomial::integer(s.rational);
        for n in &s.indets {
            m.exponents.insert(n.clone(), 1);
        }
        self.reduce_square_class(&m)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        let has_adjoined = !self.adjoined_values.is_empty();
        if self.indeterminates.is_empty() && !has_adjoined {
            return Ok(());
        }
        write!(f, "(")?;
        for (i, n) in self.indeterminates.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        if has_adjoined {
            write!(f, ";sqrt=")?;
            for (i, d) in self.adjoined_values.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
        }
        write!(f, ")")
    }
}

/// Inserts a vector into a reduced-row-echelon basis of Q*/Q*^2 vectors.
/// The pivot of a row is its largest factor; pivots occur in no other row,
/// which makes the basis canonical for the span.
fn echelon_insert(rows: &mut Vec<FactorSet>, mut v: FactorSet) {
    for row in rows.iter() {
        let pivot = row.iter().next_back().expect("rows are nonempty");
        if v.contains(pivot) {
            xor_into(&mut v, row);
        }
    }
    if v.is_empty() {
        return;
    }
    let pivot = *v.iter().next_back().expect("nonempty");
    for row in rows.iter_mut() {
        if row.contains(&pivot) {
            xor_into(row, &v);
        }
    }
    rows.push(v);
    rows.sort_by(|a, b| a.iter().next_back().cmp(&b.iter().next_back()));
}

/// A monomial input for square-class reduction: a rational coefficient times
/// integer powers of indeterminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub numerator: i64,
    pub denominator: i64,
    pub exponents: BTreeMap<String, i64>,
}

impl Monomial {
    pub fn integer(n: i64) -> Self {
        Monomial {
            numerator: n,
            denominator: 1,
            exponents: BTreeMap::new(),
        }
    }

    pub fn fraction(numerator: i64, denominator: i64) -> Self {
        Monomial {
            numerator,
            denominator,
            exponents: BTreeMap::new(),
        }
    }

    pub fn indet(name: &str) -> Self {
        Monomial::integer(1).pow(name, 1)
    }

    /// Multiplies in `name^e`.
    pub fn pow(mut self, name: &str, e: i64) -> Self {
        *self.exponents.entry(name.to_string()).or_insert(0) += e;
        self
    }
}

/// A canonical square class: signed squarefree integer (reduced modulo the
/// adjoined roots) times the set of indeterminates with odd exponent.
///
/// The trivial class is `1` with no indeterminates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass {
    rational: i64,
    indets: BTreeSet<String>,
}

impl SquareClass {
    /// The class of 1.
    pub fn trivial() -> Self {
        SquareClass {
            rational: 1,
            indets: BTreeSet::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rational == 1 && self.indets.is_empty()
    }

    pub fn rational_part(&self) -> i64 {
        self.rational
    }

    /// Indeterminates occurring with odd exponent, in name order.
    pub fn indeterminates(&self) -> impl Iterator<Item = &str> {
        self.indets.iter().map(|s| s.as_str())
    }

    pub fn has_indeterminates(&self) -> bool {
        !self.indets.is_empty()
    }

    /// Sign of the rational part.
    pub fn is_negative(&self) -> bool {
        self.rational < 0
    }

    pub(crate) fn minus_one() -> Self {
        SquareClass {
            rational: -1,
            indets: BTreeSet::new(),
        }
    }

    pub(crate) fn from_parts(rational: i64, indets: BTreeSet<String>) -> Self {
        SquareClass { rational, indets }
    }

    /// Splits the class into atomic classes (the basis elements -1, primes,
    /// single indeterminates) whose product it is.  The trivial class has no
    /// atoms.
    pub(crate) fn atoms(&self) -> Vec<SquareClass> {
        let mut out = Vec::new();
        if self.rational < 0 {
            out.push(SquareClass::minus_one());
        }
        for (p, _) in trial_factor(self.rational.unsigned_abs()) {
            out.push(SquareClass {
                rational: p as i64,
                indets: BTreeSet::new(),
            });
        }
        for n in &self.indets {
            let mut s = BTreeSet::new();
            s.insert(n.clone());
            out.push(SquareClass {
                rational: 1,
                indets: s,
            });
        }
        out
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indets.is_empty() {
            return write!(f, "{}", self.rational);
        }
        match self.rational {
            1 => {}
            -1 => write!(f, "-")?,
            r => write!(f, "{r}*")?,
        }
        let mut first = true;
        for n in &self.indets {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{n}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(indets: &[&str], sqrts: &[i64]) -> FieldDesc {
        FieldDesc::new(BaseField::Q, indets, sqrts).unwrap()
    }

    #[test]
    fn builds_the_standard_fields() {
        let f = q(&["x", "y", "z", "a", "b"], &[]);
        assert_eq!(f.indeterminates().len(), 5);
        assert_eq!(f.to_string(), "Q(x,y,z,a,b)");

        let plain = q(&[], &[]);
        assert_eq!(plain.to_string(), "Q");

        let q13 = q(&[], &[13]);
        assert_eq!(q13.sqrt_adjoined(), &[13]);
        assert_eq!(q13.to_string(), "Q(;sqrt=13)");
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(matches!(
            FieldDesc::new(BaseField::Q, &["x", "x"], &[]),
            Err(Error::DuplicateIndeterminate(_))
        ));
        assert!(matches!(
            FieldDesc::new(BaseField::Q, &["res"], &[]),
            Err(Error::InvalidIndeterminate(_))
        ));
        assert!(matches!(
            FieldDesc::new::<&str>(BaseField::Q, &[], &[12]),
            Err(Error::InvalidAdjunction { .. })
        ));
        assert!(matches!(
            FieldDesc::new::<&str>(BaseField::C, &[], &[5]),
            Err(Error::AdjunctionOverBase { .. })
        ));
        assert!(matches!(
            FieldDesc::new::<&str>(BaseField::R, &[], &[-1]),
            Err(Error::AdjunctionOverBase { .. })
        ));
        assert!(matches!(
            FieldDesc::new::<&str>(BaseField::Q, &[], &[1]),
            Err(Error::InvalidAdjunction { .. })
        ));
    }

    #[test]
    fn adjunction_basis_is_canonical() {
        assert_eq!(q(&[], &[2, 6]), q(&[], &[2, 3]));
        assert_eq!(q(&[], &[2, 3, 6]), q(&[], &[2, 3]));
        // a dependent adjunction adds nothing
        assert_eq!(q(&[], &[2, 3, 6]).sqrt_adjoined().len(), 2);
    }

    #[test]
    fn reduces_square_classes() {
        let f = q(&[], &[]);
        assert_eq!(f.square_class_of_integer(12).unwrap().rational_part(), 3);
        assert_eq!(f.square_class_of_integer(-8).unwrap().rational_part(), -2);
        assert!(f.square_class_of_integer(4).unwrap().is_trivial());

        let q13 = q(&[], &[13]);
        assert!(q13.square_class_of_integer(13).unwrap().is_trivial());
        assert!(q13.square_class_of_integer(52).unwrap().is_trivial()); // 4 * 13
        assert_eq!(q13.square_class_of_integer(26).unwrap().rational_part(), 2);

        // x^2 * y * (-8) over Q(x, y)  ->  -2 * y
        let fxy = q(&["x", "y"], &[]);
        let m = Monomial::integer(-8).pow("x", 2).pow("y", 1);
        let c = fxy.reduce_square_class(&m).unwrap();
        assert_eq!(c.rational_part(), -2);
        assert_eq!(c.indeterminates().collect::<Vec<_>>(), vec!["y"]);
        assert_eq!(c.to_string(), "-2*y");
    }

    #[test]
    fn rejects_zero_and_unknown_names() {
        let f = q(&["x"], &[]);
        assert!(matches!(
            f.square_class_of_integer(0),
            Err(Error::ZeroSquareClass)
        ));
        assert!(matches!(
            f.reduce_square_class(&Monomial::indet("w")),
            Err(Error::UnknownIndeterminate(_))
        ));
    }

    #[test]
    fn fractions_reduce_like_products() {
        let f = q(&[], &[]);
        let half = f.reduce_square_class(&Monomial::fraction(1, 2)).unwrap();
        assert_eq!(half.rational_part(), 2);
    }

    #[test]
    fn reduction_is_multiplicative_and_idempotent() {
        let f = q(&["x", "y"], &[2, -1]);
        let values = [-30i64, -6, -5, -3, -2, -1, 2, 3, 5, 7, 15, 30];
        for &u in &values {
            for &v in &values {
                let cu = f.square_class_of_integer(u).unwrap();
                let cv = f.square_class_of_integer(v).unwrap();
                let prod = f.square_class_product(&cu, &cv).unwrap();
                let direct = f.square_class_of_integer(u * v).unwrap();
                assert_eq!(prod, direct, "u={u} v={v}");
            }
            let c = f.square_class_of_integer(u).unwrap();
            assert_eq!(f.re_reduce(&c).unwrap(), c);
        }
    }

    #[test]
    fn triviality_matches_the_adjoined_span() {
        let f = q(&[], &[2, 3]);
        for &d in &[2i64, 3, 6, 24] {
            assert!(f.square_class_of_integer(d).unwrap().is_trivial(), "d={d}");
            assert!(f.sqrt_span_contains(d).unwrap());
        }
        for &d in &[-1i64, 5, 10, -6] {
            assert!(!f.square_class_of_integer(d).unwrap().is_trivial(), "d={d}");
            assert!(!f.sqrt_span_contains(d).unwrap());
        }
    }

    #[test]
    fn sign_handling_over_r_and_c() {
        let r = FieldDesc::new::<&str>(BaseField::R, &[], &[]).unwrap();
        assert_eq!(r.square_class_of_integer(18).unwrap().rational_part(), 1);
        assert_eq!(r.square_class_of_integer(-18).unwrap().rational_part(), -1);

        let c = FieldDesc::new::<&str>(BaseField::C, &[], &[]).unwrap();
        assert!(c.square_class_of_integer(-18).unwrap().is_trivial());

        // positive adjunctions over R are redundant and dropped
        let r2 = FieldDesc::new::<&str>(BaseField::R, &[], &[2]).unwrap();
        assert_eq!(r2, r);
    }

    #[test]
    fn atoms_multiply_back_to_the_class() {
        let f = q(&["x", "y"], &[]);
        let c = f
            .reduce_square_class(&Monomial::integer(-30).pow("x", 1).pow("y", 3))
            .unwrap();
        let atoms = c.atoms();
        assert_eq!(atoms.len(), 6); // -1, 2, 3, 5, x, y
        let mut acc = SquareClass::trivial();
        for a in &atoms {
            acc = f.square_class_product(&acc, a).unwrap();
        }
        assert_eq!(acc, c);
    }
}
