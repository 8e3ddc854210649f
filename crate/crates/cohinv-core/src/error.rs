use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or combining values.
///
/// All operations on already-constructed values are total; errors arise from
/// malformed inputs (duplicate names, degree mismatches, zero square classes)
/// or from asking for data a representation does not carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An indeterminate name appears twice in a field descriptor.
    DuplicateIndeterminate(String),
    /// An indeterminate name is empty, malformed, or shadows a grammar token.
    InvalidIndeterminate(String),
    /// A square-root adjunction is 0, 1, or not squarefree.
    InvalidAdjunction { value: i64, reason: &'static str },
    /// Square roots cannot be adjoined over this base.
    AdjunctionOverBase { value: i64, base: &'static str },
    /// A square class was built from 0 (or a fraction with zero denominator).
    ZeroSquareClass,
    /// A name does not belong to the field's indeterminate list.
    UnknownIndeterminate(String),
    /// An integer intermediate exceeded the i64 range.
    IntegerOverflow,
    /// Two classes over different field descriptors were combined.
    FieldMismatch,
    /// A term's slot count disagrees with the class degree.
    MixedDegrees { expected: usize, found: usize },
    /// A class or form would exceed the supported degree bound.
    DegreeCap { degree: usize, max: usize },
    /// The multilinear expansion of the input is too large to normalize.
    ExpansionTooLarge,
    /// A class has an unexpected degree for the operation.
    DegreeMismatch { expected: usize, found: usize },
    /// The class is not defined over the requested smaller field.
    NotDefinedOverSubfield(String),
    /// The target of a scalar extension does not contain the source field.
    NotAnExtension(&'static str),
    /// base-field decision requested on a class with indeterminates.
    IndeterminatesPresent,
    /// Hilbert symbol of zero is undefined.
    ZeroHilbertArgument,
    /// The finite place of a Hilbert symbol must be a prime.
    NotAPrime(u64),
    /// A mod-3 term repeats a slot.
    RepeatedMod3Slot(String),
    /// f5 is nonzero but no divisibility witness was supplied.
    MissingDivisibilityWitness,
    /// The supplied witness does not satisfy f5 = f3 * (c, d).
    WitnessCheckFailed,
    /// A degree-5 invariant was supplied although the mod-2 Rost class is nonzero.
    USuppliedWithNonzeroRost,
    /// The mod-2 Rost class vanishes but no degree-5 invariant was supplied.
    UMissingWithZeroRost,
    /// u5/u6 need the Klein presentation (zeta, Q1, Q2) of the torsor.
    PresentationRequired,
    /// The operation needs a Klein presentation.
    NotKleinPresentation,
    /// The operation needs a direct presentation.
    NotDirectPresentation,
    /// A weight/cocharacter pairing is not an integer.
    NonIntegralPairing { twice_value: i64 },
    /// A matrix pair has determinants outside {+1, -1}, or unequal ones.
    InvalidMatrixPair(&'static str),
    /// Level bound must be a power of two (with exponent at most 11).
    InvalidLevelBound(u64),
    /// A scripted verification found a failing identity.
    ProofCheckFailed { step: &'static str, detail: String },
    /// A Pfister divisibility query with inconsistent degrees.
    DivisibilityDegrees {
        small: usize,
        big: usize,
        complement: usize,
    },
    /// Classification lookup applied over an ineligible field.
    IneligibleField(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateIndeterminate(n) => write!(f, "duplicate indeterminate `{n}`"),
            Error::InvalidIndeterminate(n) => write!(f, "invalid indeterminate name `{n}`"),
            Error::InvalidAdjunction { value, reason } => {
                write!(f, "cannot adjoin sqrt({value}): {reason}")
            }
            Error::AdjunctionOverBase { value, base } => {
                write!(f, "cannot adjoin sqrt({value}) over {base}")
            }
            Error::ZeroSquareClass => write!(f, "zero has no square class"),
            Error::UnknownIndeterminate(n) => write!(f, "unknown indeterminate `{n}`"),
            Error::IntegerOverflow => write!(f, "integer overflow while reducing a square class"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::MixedDegrees { expected, found } => {
                write!(f, "mixed degrees: expected {expected}, found a term of degree {found}")
            }
            Error::DegreeCap { degree, max } => {
                write!(f, "degree {degree} exceeds the supported bound {max}")
            }
            Error::ExpansionTooLarge => write!(f, "multilinear expansion too large"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "expected a class of degree {expected}, found degree {found}")
            }
            Error::NotDefinedOverSubfield(n) => {
                write!(f, "class involves `{n}` and is not defined over the requested subfield")
            }
            Error::NotAnExtension(what) => write!(f, "target field is not an extension: {what}"),
            Error::IndeterminatesPresent => {
                write!(f, "base-field decision requires an indeterminate-free field")
            }
            Error::ZeroHilbertArgument => write!(f, "Hilbert symbol arguments must be nonzero"),
            Error::NotAPrime(n) => write!(f, "{n} is not a prime place"),
            Error::RepeatedMod3Slot(s) => write!(f, "repeated slot `{s}` in a mod-3 term"),
            Error::MissingDivisibilityWitness => {
                write!(f, "f5 is nonzero: supply a witness (c, d) with f5 = f3 * (c, d)")
            }
            Error::WitnessCheckFailed => {
                write!(f, "divisibility witness failed: f5 differs from f3 * (c, d)")
            }
            Error::USuppliedWithNonzeroRost => {
                write!(f, "u is defined only when the mod-2 Rost class vanishes")
            }
            Error::UMissingWithZeroRost => {
                write!(f, "mod-2 Rost class vanishes: the degree-5 invariant must be supplied")
            }
            Error::PresentationRequired => {
                write!(f, "u5/u6 need a Klein presentation (zeta, Q1, Q2) of the torsor")
            }
            Error::NotKleinPresentation => write!(f, "operation needs a Klein presentation"),
            Error::NotDirectPresentation => write!(f, "operation needs a direct presentation"),
            Error::NonIntegralPairing { twice_value } => {
                write!(f, "pairing is not integral (twice the value is {twice_value})")
            }
            Error::InvalidMatrixPair(w) => write!(f, "invalid matrix pair: {w}"),
            Error::InvalidLevelBound(b) => {
                write!(f, "level bound {b} must be a power of two, at most 2^11")
            }
            Error::ProofCheckFailed { step, detail } => {
                write!(f, "verification step `{step}` failed: {detail}")
            }
            Error::DivisibilityDegrees { small, big, complement } => write!(
                f,
                "divisibility degrees are inconsistent: {small} + {complement} must equal {big} with both factors of degree >= 1"
            ),
            Error::IneligibleField(w) => write!(f, "field is not eligible: {w}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
