//! Level-of-field tests through the vanishing of `(-1)^n` and the
//! finite-subgroup embedding criteria they drive.
//!
//! The cohomological test is authoritative: `-1` is a sum of `2^{n-1}`
//! squares of `K` iff `(-1)^n = 0` in degree-`n` cohomology, so no
//! sums-of-squares search is ever performed.  Membership of the auxiliary
//! cyclotomic elements (like the real part of a ninth root of unity) is
//! declared, not computed; square roots are additionally derivable from the
//! field's adjunctions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::milnor::CohClass;

/// Named algebraic elements whose membership in a field is declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedElement {
    Sqrt5,
    Sqrt13,
    /// zeta_9 + conj(zeta_9), a degree-3 real cyclotomic element.
    Zeta9Real,
    /// zeta_11 + conj(zeta_11), a degree-5 real cyclotomic element.
    Zeta11Real,
}

impl NamedElement {
    pub const ALL: [NamedElement; 4] = [
        NamedElement::Sqrt5,
        NamedElement::Sqrt13,
        NamedElement::Zeta9Real,
        NamedElement::Zeta11Real,
    ];

    /// The adjoined square root that makes the element derivable from a
    /// field descriptor, when there is one.
    fn derivable_from_sqrt(self) -> Option<i64> {
        match self {
            NamedElement::Sqrt5 => Some(5),
            NamedElement::Sqrt13 => Some(13),
            _ => None,
        }
    }
}

impl fmt::Display for NamedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedElement::Sqrt5 => write!(f, "sqrt5"),
            NamedElement::Sqrt13 => write!(f, "sqrt13"),
            NamedElement::Zeta9Real => write!(f, "zeta9_real"),
            NamedElement::Zeta11Real => write!(f, "zeta11_real"),
        }
    }
}

impl FromStr for NamedElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt5" => Ok(NamedElement::Sqrt5),
            "sqrt13" => Ok(NamedElement::Sqrt13),
            "zeta9_real" => Ok(NamedElement::Zeta9Real),
            "zeta11_real" => Ok(NamedElement::Zeta11Real),
            other => Err(Error::InvalidIndeterminate(String::from(other))),
        }
    }
}

/// A set of declared membership facts.  No closure is computed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MembershipFacts {
    contains: BTreeSet<NamedElement>,
}

impl MembershipFacts {
    pub fn none() -> Self {
        MembershipFacts::default()
    }

    pub fn with(mut self, e: NamedElement) -> Self {
        self.contains.insert(e);
        self
    }

    pub fn from_elements(elements: &[NamedElement]) -> Self {
        MembershipFacts {
            contains: elements.iter().copied().collect(),
        }
    }

    pub fn contains(&self, e: NamedElement) -> bool {
        self.contains.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = NamedElement> + '_ {
        self.contains.iter().copied()
    }
}

/// The finite groups of the embedding table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteGroup {
    /// G2(F2), the automorphism group of the integral octonions mod 2.
    G2F2,
    Psl2_8,
    Psl2_13,
    Pgl2_31,
    Sl2_32,
    Alt4,
    Alt5,
}

impl FiniteGroup {
    pub const ALL: [FiniteGroup; 7] = [
        FiniteGroup::G2F2,
        FiniteGroup::Psl2_8,
        FiniteGroup::Psl2_13,
        FiniteGroup::Pgl2_31,
        FiniteGroup::Sl2_32,
        FiniteGroup::Alt4,
        FiniteGroup::Alt5,
    ];
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteGroup::G2F2 => write!(f, "G2F2"),
            FiniteGroup::Psl2_8 => write!(f, "PSL2_8"),
            FiniteGroup::Psl2_13 => write!(f, "PSL2_13"),
            FiniteGroup::Pgl2_31 => write!(f, "PGL2_31"),
            FiniteGroup::Sl2_32 => write!(f, "SL2_32"),
            FiniteGroup::Alt4 => write!(f, "Alt4"),
            FiniteGroup::Alt5 => write!(f, "Alt5"),
        }
    }
}

impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G2F2" => Ok(FiniteGroup::G2F2),
            "PSL2_8" => Ok(FiniteGroup::Psl2_8),
            "PSL2_13" => Ok(FiniteGroup::Psl2_13),
            "PGL2_31" => Ok(FiniteGroup::Pgl2_31),
            "SL2_32" => Ok(FiniteGroup::Sl2_32),
            "Alt4" => Ok(FiniteGroup::Alt4),
            "Alt5" => Ok(FiniteGroup::Alt5),
            other => Err(Error::InvalidIndeterminate(String::from(other))),
        }
    }
}

/// Target algebraic groups of the embedding criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TargetGroup {
    G2,
    E8,
    Pgl2,
}

impl fmt::Display for TargetGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetGroup::G2 => write!(f, "G2"),
            TargetGroup::E8 => write!(f, "E8"),
            TargetGroup::Pgl2 => write!(f, "PGL2"),
        }
    }
}

/// One row of the embedding table: finite group, target, level exponent,
/// and the extra declared elements the criterion requires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCase {
    pub finite_group: FiniteGroup,
    pub target: TargetGroup,
    pub n: u32,
    pub extra: MembershipFacts,
}

impl EmbeddingCase {
    /// The table row for a finite group.
    pub fn for_group(g: FiniteGroup) -> EmbeddingCase {
        let (target, n, extra) = match g {
            FiniteGroup::G2F2 => (TargetGroup::G2, 3, MembershipFacts::none()),
            FiniteGroup::Psl2_8 => (
                TargetGroup::G2,
                3,
                MembershipFacts::none().with(NamedElement::Zeta9Real),
            ),
            FiniteGroup::Psl2_13 => (
                TargetGroup::G2,
                3,
                MembershipFacts::none().with(NamedElement::Sqrt13),
            ),
            FiniteGroup::Pgl2_31 => (TargetGroup::E8, 5, MembershipFacts::none()),
            FiniteGroup::Sl2_32 => (
                TargetGroup::E8,
                5,
                MembershipFacts::none().with(NamedElement::Zeta11Real),
            ),
            FiniteGroup::Alt4 => (TargetGroup::Pgl2, 2, MembershipFacts::none()),
            FiniteGroup::Alt5 => (
                TargetGroup::Pgl2,
                2,
                MembershipFacts::none().with(NamedElement::Sqrt5),
            ),
        };
        EmbeddingCase {
            finite_group: g,
            target,
            n,
            extra,
        }
    }

    /// All seven rows.
    pub fn table() -> Vec<EmbeddingCase> {
        FiniteGroup::ALL
            .iter()
            .map(|&g| EmbeddingCase::for_group(g))
            .collect()
    }
}

/// Whether the level of `K` is at most `bound = 2^{n-1}`, decided as the
/// vanishing of `(-1)^n` in degree-n cohomology.
pub fn level_le(field: &FieldDesc, bound: u64) -> Result<bool> {
    if !bound.is_power_of_two() || bound > (1 << 11) {
        return Err(Error::InvalidLevelBound(bound));
    }
    let n = bound.trailing_zeros() as usize + 1;
    Ok(CohClass::minus_one_power(field, n)?.is_zero())
}

/// Killing-Cartan types of the compact-form splitting criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanType {
    F4,
    G2,
    E8,
}

impl CartanType {
    /// The level exponent of the type's splitting criterion.
    pub fn level_exponent(self) -> u32 {
        match self {
            CartanType::F4 | CartanType::G2 => 3,
            CartanType::E8 => 5,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
            CartanType::E8 => write!(f, "E8"),
        }
    }
}

/// Verdict of the splitting criterion for the unique everywhere-compact
/// form of a type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pro2Verdict {
    pub split: bool,
    pub n: u32,
}

/// Whether the everywhere-compact group of type `phi` splits over `K`:
/// equivalent to `(-1)^n = 0` over `K` with `n` from the type's row.
pub fn pro2_equivalence(phi: CartanType, field: &FieldDesc) -> Result<Pro2Verdict> {
    let n = phi.level_exponent();
    let split = level_le(field, 1 << (n - 1))?;
    Ok(Pro2Verdict { split, n })
}

/// One requirement of an embedding criterion with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReasonLine {
    pub requirement: String,
    pub satisfied: bool,
}

/// Result of an embedding query: the answer and each condition's verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedVerdict {
    pub answer: bool,
    pub reasons: Vec<ReasonLine>,
}

/// Decides whether the finite group of `case` embeds into the split target
/// group over `K`: the level condition `(-1)^n = 0` plus the required
/// declared elements (square roots may also come from the adjunctions of
/// `K`; cyclotomic elements only from the declared facts).
pub fn can_embed(
    case: &EmbeddingCase,
    field: &FieldDesc,
    facts: &MembershipFacts,
) -> Result<EmbedVerdict> {
    let mut reasons = Vec::new();
    let bound = 1u64 << (case.n - 1);
    let level_ok = level_le(field, bound)?;
    reasons.push(ReasonLine {
        requirement: format!(
            "-1 is a sum of {bound} squares of the field ((-1)^{} vanishes)",
            case.n
        ),
        satisfied: level_ok,
    });
    let mut all_extra = true;
    for e in case.extra.iter() {
        let derivable = match e.derivable_from_sqrt() {
            Some(d) => field.sqrt_span_contains(d)?,
            None => false,
        };
        let satisfied = facts.contains(e) || derivable;
        all_extra &= satisfied;
        reasons.push(ReasonLine {
            requirement: format!("{e} lies in the field"),
            satisfied,
        });
    }
    Ok(EmbedVerdict {
        answer: level_ok && all_extra,
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;

    fn field(base: BaseField, indets: &[&str], sqrts: &[i64]) -> FieldDesc {
        FieldDesc::new(base, indets, sqrts).unwrap()
    }

    #[test]
    fn level_examples() {
        assert!(!level_le(&field(BaseField::R, &[], &[]), 16).unwrap());
        assert!(level_le(&field(BaseField::C, &[], &[]), 2).unwrap());
        assert!(!level_le(&field(BaseField::Q, &["x", "y"], &[]), 4).unwrap());
        assert!(level_le(&field(BaseField::Q, &[], &[-1]), 1).unwrap());
        // level of Q(sqrt -2) is exactly 2
        let qm2 = field(BaseField::Q, &[], &[-2]);
        assert!(!level_le(&qm2, 1).unwrap());
        assert!(level_le(&qm2, 2).unwrap());
        assert!(matches!(
            level_le(&field(BaseField::Q, &[], &[]), 3),
            Err(Error::InvalidLevelBound(3))
        ));
    }

    #[test]
    fn level_is_antitone_in_the_exponent() {
        let fields = [
            field(BaseField::Q, &[], &[]),
            field(BaseField::Q, &[], &[-2]),
            field(BaseField::Q, &[], &[-1]),
            field(BaseField::R, &[], &[]),
            field(BaseField::C, &[], &[]),
            field(BaseField::Q, &["x"], &[-2]),
        ];
        for f in &fields {
            for n in 1..=10u32 {
                let now = level_le(f, 1 << (n - 1)).unwrap();
                let next = level_le(f, 1 << n).unwrap();
                assert!(!now || next, "level_le not antitone over {f} at n={n}");
            }
        }
    }

    #[test]
    fn pro2_verdicts() {
        assert!(
            !pro2_equivalence(CartanType::E8, &field(BaseField::R, &[], &[]))
                .unwrap()
                .split
        );
        assert!(
            pro2_equivalence(CartanType::G2, &field(BaseField::C, &[], &[]))
                .unwrap()
                .split
        );
        assert!(
            !pro2_equivalence(CartanType::E8, &field(BaseField::Q, &["x"], &[]))
                .unwrap()
                .split
        );
        assert_eq!(
            pro2_equivalence(CartanType::F4, &field(BaseField::Q, &[], &[]))
                .unwrap()
                .n,
            3
        );
    }

    #[test]
    fn embedding_table_rows() {
        let table = EmbeddingCase::table();
        assert_eq!(table.len(), 7);
        let ns: Vec<u32> = table.iter().map(|c| c.n).collect();
        assert_eq!(ns, vec![3, 3, 3, 5, 5, 2, 2]);
    }

    #[test]
    fn embedding_examples() {
        let r = field(BaseField::R, &[], &[]);
        let c = field(BaseField::C, &[], &[]);

        let g2f2 = EmbeddingCase::for_group(FiniteGroup::G2F2);
        assert!(
            !can_embed(&g2f2, &r, &MembershipFacts::none())
                .unwrap()
                .answer
        );
        assert!(
            can_embed(&g2f2, &c, &MembershipFacts::none())
                .unwrap()
                .answer
        );

        // PSL(2,13) into G2 over Q(sqrt 13, sqrt -1): level 1 and sqrt 13
        // comes from the adjunctions
        let k = field(BaseField::Q, &[], &[13, -1]);
        let psl213 = EmbeddingCase::for_group(FiniteGroup::Psl2_13);
        let verdict = can_embed(&psl213, &k, &MembershipFacts::none()).unwrap();
        assert!(verdict.answer);
        assert!(verdict.reasons.iter().all(|r| r.satisfied));

        // Alt5 into PGL2 over C fails without the declared sqrt 5
        let alt5 = EmbeddingCase::for_group(FiniteGroup::Alt5);
        let verdict = can_embed(&alt5, &c, &MembershipFacts::none()).unwrap();
        assert!(!verdict.answer);
        assert!(verdict.reasons.iter().any(|r| !r.satisfied));
        let with_fact = MembershipFacts::none().with(NamedElement::Sqrt5);
        assert!(can_embed(&alt5, &c, &with_fact).unwrap().answer);
    }

    #[test]
    fn embedding_is_monotone_under_fact_and_sqrt_extensions() {
        let base = field(BaseField::Q, &[], &[-1]);
        let bigger = field(BaseField::Q, &[], &[-1, 13, 5]);
        let all_facts = MembershipFacts::from_elements(&NamedElement::ALL);
        for case in EmbeddingCase::table() {
            for facts in [MembershipFacts::none(), all_facts.clone()] {
                let small = can_embed(&case, &base, &facts).unwrap().answer;
                let large = can_embed(&case, &bigger, &facts).unwrap().answer;
                assert!(
                    !small || large,
                    "monotonicity failed for {}",
                    case.finite_group
                );
                let more_facts = can_embed(&case, &base, &all_facts).unwrap().answer;
                assert!(!small || more_facts);
            }
        }
    }

    #[test]
    fn unknown_fact_names_are_rejected_at_parse_time() {
        assert!("sqrt13".parse::<NamedElement>().is_ok());
        assert!("sqrt7".parse::<NamedElement>().is_err());
    }

    #[test]
    fn splitting_criterion_agrees_with_the_status_analysis() {
        use crate::groups::{t_map, AlbertDesc, E8Status};
        let fields = [
            field(BaseField::Q, &[], &[]),
            field(BaseField::R, &[], &[]),
            field(BaseField::C, &[], &[]),
            field(BaseField::Q, &[], &[-1]),
        ];
        for k in fields {
            let verdict = pro2_equivalence(CartanType::E8, &k).unwrap();
            let compact = AlbertDesc::compact_type(&k).unwrap();
            let status = t_map(&compact).unwrap().status().status;
            if verdict.split {
                assert_eq!(status, E8Status::Split, "over {k}");
            } else {
                assert_eq!(status, E8Status::Anisotropic, "over {k}");
            }
        }
    }
}
