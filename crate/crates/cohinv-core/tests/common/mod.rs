//! Test-only brute-force oracle for the zero decision, independent of the
//! engine's normalization and base-field code paths.
//!
//! The oracle takes raw symbol data over `Q(v_1, ..., v_m)` (no adjoined
//! roots), exhaustively expands slots over the atomic basis, rewrites
//! repeated atoms to a fixed point, extracts the residue fingerprint — the
//! rational coefficient class of every monomial in the indeterminates — and
//! decides each fingerprint over `Q` by elementary means: a perfect-square
//! test in degree 1, brute-force conic solvability modulo prime powers in
//! degree 2, and sign evaluation in degree 3 and up.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use cohinv_core::field::{FieldDesc, Monomial, SquareClass};
use cohinv_core::milnor::CohClass;
use rand::rngs::StdRng;
use rand::Rng;

/// Raw slot: a rational part and indeterminate names with odd exponent.
#[derive(Debug, Clone)]
pub struct RawSlot {
    pub rational: i64,
    pub vars: Vec<String>,
}

pub type RawSymbol = Vec<RawSlot>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum OAtom {
    Neg,
    Prime(u64),
    Var(usize),
}

fn slot_atoms(slot: &RawSlot, vars: &[String]) -> Vec<OAtom> {
    let mut atoms = Vec::new();
    let mut n = slot.rational;
    assert!(n != 0);
    if n < 0 {
        atoms.push(OAtom::Neg);
        n = -n;
    }
    let mut p = 2u64;
    let mut m = n as u64;
    while m > 1 {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                atoms.push(OAtom::Prime(p));
            }
        }
        p += 1;
    }
    for v in &slot.vars {
        let idx = vars
            .iter()
            .position(|w| w == v)
            .expect("known indeterminate");
        atoms.push(OAtom::Var(idx));
    }
    atoms
}

/// Applies `(u, u) -> (-1, u)` until no non-sign atom repeats.
fn rewrite_to_fixpoint(mut sym: Vec<OAtom>) -> Vec<OAtom> {
    loop {
        sym.sort();
        let mut rewritten = false;
        for i in 0..sym.len().saturating_sub(1) {
            if sym[i] == sym[i + 1] && sym[i] != OAtom::Neg {
                sym[i] = OAtom::Neg;
                rewritten = true;
                break;
            }
        }
        if !rewritten {
            return sym;
        }
    }
}

/// Brute-force local solvability of `z^2 = a x^2 + b y^2`: +1 when a
/// nontrivial solution exists over the completion at `place` (0 = real
/// place), -1 otherwise.  Uses primitive solutions modulo p^3 (odd p) or
/// 2^7, which is within the Hensel lifting bound for squarefree a, b.
fn conic_hilbert(a: i64, b: i64, place: u64) -> i8 {
    if place == 0 {
        return if a > 0 || b > 0 { 1 } else { -1 };
    }
    type ConicTable = std::sync::Mutex<HashMap<(i64, i64, u64), i8>>;
    static TABLE: OnceLock<ConicTable> = OnceLock::new();
    let table = TABLE.get_or_init(|| std::sync::Mutex::new(HashMap::new()));
    if let Some(&v) = table.lock().unwrap().get(&(a, b, place)) {
        return v;
    }
    let p = place as i64;
    let modulus = if p == 2 { 128i64 } else { p * p * p };
    // square tables: which residues are squares, and squares of units
    let mut any_square = vec![false; modulus as usize];
    let mut unit_square = vec![false; modulus as usize];
    for z in 0..modulus {
        let s = (z * z).rem_euclid(modulus) as usize;
        any_square[s] = true;
        if z % p != 0 {
            unit_square[s] = true;
        }
    }
    let mut solvable = false;
    'search: for x in 0..modulus {
        for y in 0..modulus {
            let val = (a * x % modulus * x + b * y % modulus * y).rem_euclid(modulus) as usize;
            let primitive_xy = x % p != 0 || y % p != 0;
            if (primitive_xy && any_square[val]) || (!primitive_xy && unit_square[val]) {
                solvable = true;
                break 'search;
            }
        }
    }
    let v: i8 = if solvable { 1 } else { -1 };
    table.lock().unwrap().insert((a, b, place), v);
    v
}

/// Zero decision for a rational fingerprint class (a set of symbols whose
/// atoms are -1 or primes), by elementary means per degree.
fn rational_fingerprint_is_zero(terms: &BTreeSet<Vec<OAtom>>, degree: usize) -> bool {
    match degree {
        0 => terms.is_empty(),
        1 => {
            let mut product: i64 = 1;
            for t in terms {
                for a in t {
                    product *= match a {
                        OAtom::Neg => -1,
                        OAtom::Prime(p) => *p as i64,
                        OAtom::Var(_) => unreachable!("fingerprints are rational"),
                    };
                }
            }
            if product < 0 {
                return false;
            }
            let r = (product as f64).sqrt().round() as i64;
            (r - 1..=r + 1).any(|s| s * s == product)
        }
        2 => {
            let mut places: Vec<u64> = vec![0, 2];
            for t in terms {
                for a in t {
                    if let OAtom::Prime(p) = a {
                        if *p != 2 && !places.contains(p) {
                            places.push(*p);
                        }
                    }
                }
            }
            places.iter().all(|&place| {
                let mut inv: i8 = 1;
                for t in terms {
                    assert_eq!(t.len(), 2);
                    let val = |a: &OAtom| match a {
                        OAtom::Neg => -1i64,
                        OAtom::Prime(p) => *p as i64,
                        OAtom::Var(_) => unreachable!(),
                    };
                    inv *= conic_hilbert(val(&t[0]), val(&t[1]), place);
                }
                inv == 1
            })
        }
        _ => {
            // real-place sign evaluation
            terms
                .iter()
                .filter(|t| t.iter().all(|a| *a == OAtom::Neg))
                .count()
                % 2
                == 0
        }
    }
}

/// The independent zero decision: expand, rewrite, fingerprint, decide.
pub fn oracle_is_zero(raw: &[RawSymbol], vars: &[String]) -> bool {
    // multilinear expansion into atomic symbols, with F2 cancellation
    let mut expanded: BTreeSet<Vec<OAtom>> = BTreeSet::new();
    for sym in raw {
        let atom_lists: Vec<Vec<OAtom>> = sym.iter().map(|s| slot_atoms(s, vars)).collect();
        if atom_lists.iter().any(Vec::is_empty) {
            continue; // a trivial slot kills the symbol
        }
        let mut stack: Vec<Vec<OAtom>> = vec![Vec::new()];
        for list in &atom_lists {
            let mut next = Vec::with_capacity(stack.len() * list.len());
            for partial in &stack {
                for a in list {
                    let mut s = partial.clone();
                    s.push(*a);
                    next.push(s);
                }
            }
            stack = next;
        }
        for sym in stack {
            let sym = rewrite_to_fixpoint(sym);
            if !expanded.remove(&sym) {
                expanded.insert(sym);
            }
        }
    }
    // group by the monomial of indeterminate atoms
    let mut fingerprints: BTreeMap<Vec<usize>, BTreeSet<Vec<OAtom>>> = BTreeMap::new();
    for sym in &expanded {
        let mut monomial: Vec<usize> = Vec::new();
        let mut coeff: Vec<OAtom> = Vec::new();
        for a in sym {
            match a {
                OAtom::Var(i) => monomial.push(*i),
                other => coeff.push(*other),
            }
        }
        let bucket = fingerprints.entry(monomial).or_default();
        if !bucket.remove(&coeff) {
            bucket.insert(coeff);
        }
    }
    fingerprints.values().all(|terms| {
        let degree = terms.iter().map(Vec::len).next().unwrap_or(0);
        debug_assert!(terms.iter().all(|t| t.len() == degree));
        rational_fingerprint_is_zero(terms, degree)
    })
}

/// Builds the engine class for the same raw data.
pub fn engine_class(field: &FieldDesc, raw: &[RawSymbol], degree: usize) -> CohClass {
    let symbols: Vec<Vec<SquareClass>> = raw
        .iter()
        .map(|sym| {
            sym.iter()
                .map(|slot| {
                    let mut m = Monomial::integer(slot.rational);
                    for v in &slot.vars {
                        m = m.pow(v, 1);
                    }
                    field.reduce_square_class(&m).unwrap()
                })
                .collect()
        })
        .collect();
    CohClass::from_raw_symbols(field, degree, symbols).unwrap()
}

/// A random raw class over the given indeterminates with rational parts
/// drawn from `pool`, up to `max_terms` symbols.
pub fn random_raw_class_from(
    rng: &mut StdRng,
    vars: &[String],
    degree: usize,
    max_terms: usize,
    pool: &[i64],
) -> Vec<RawSymbol> {
    let n_terms = rng.gen_range(0..=max_terms);
    (0..n_terms)
        .map(|_| {
            (0..degree)
                .map(|_| {
                    let rational = pool[rng.gen_range(0..pool.len())];
                    let vars: Vec<String> =
                        vars.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
                    RawSlot { rational, vars }
                })
                .collect()
        })
        .collect()
}

/// A random raw class with rational parts in {1, -1, 2, -2, 3, -3, 5, -5}.
pub fn random_raw_class(
    rng: &mut StdRng,
    vars: &[String],
    degree: usize,
    max_terms: usize,
) -> Vec<RawSymbol> {
    random_raw_class_from(rng, vars, degree, max_terms, &[1, -1, 2, -2, 3, -3, 5, -5])
}
