//! Pfister forms and the thin slice of Witt-ring theory the invariants need.
//!
//! Quadratic forms are represented only as (scaled) Pfister forms; that is
//! the shape of every form the invariant calculus manipulates.  The form
//! `<<a_1, ..., a_n>>` carries its symbol `e_n = (a_1, ..., a_n)`, and the
//! engine adopts the norm-form dichotomy as an axiom: a Pfister form is
//! hyperbolic iff `e_n` vanishes, and isotropic iff hyperbolic.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, SquareClass};
use crate::milnor::{CohClass, MAX_DEGREE};

/// The n-Pfister form `<<a_1, ..., a_n>>` over a field, together with its
/// symbol.  Slots are stored reduced; a trivial slot is allowed and makes
/// the form hyperbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfisterForm {
    field: FieldDesc,
    slots: Vec<SquareClass>,
    en: CohClass,
}

impl PfisterForm {
    /// Builds `<<slots>>`; requires `1 <= n <= 12`.
    pub fn new(field: &FieldDesc, slots: Vec<SquareClass>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        if slots.len() > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree: slots.len(),
                max: MAX_DEGREE,
            });
        }
        let slots = slots
            .iter()
            .map(|s| field.re_reduce(s))
            .collect::<Result<Vec<_>>>()?;
        let en = CohClass::symbol(field, slots.clone())?;
        Ok(PfisterForm {
            field: field.clone(),
            slots,
            en,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    /// The number of slots, n.
    pub fn fold(&self) -> usize {
        self.slots.len()
    }

    /// Dimension of the underlying quadratic form, 2^n.
    pub fn dim(&self) -> u64 {
        1 << self.slots.len()
    }

    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    /// The symbol `e_n(<<a_1, ..., a_n>>) = (a_1, ..., a_n)`, normalized.
    /// Sign conventions are invisible mod 2.
    pub fn en(&self) -> &CohClass {
        &self.en
    }

    /// Hyperbolicity, decided through the vanishing of the symbol.
    pub fn is_hyperbolic(&self) -> bool {
        self.en.is_zero()
    }

    /// For Pfister forms, isotropic and hyperbolic coincide.
    pub fn is_isotropic(&self) -> bool {
        self.is_hyperbolic()
    }

    /// Tensor product: slot concatenation.
    pub fn tensor(&self, other: &PfisterForm) -> Result<PfisterForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().cloned());
        PfisterForm::new(&self.field, slots)
    }
}

impl fmt::Display for PfisterForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pf<<")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ">>")
    }
}

/// A scaled Pfister form `<alpha> . gamma`, the shape of the 16-dimensional
/// forms attached to Rost-trivial Spin16 torsors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPfister {
    scale: SquareClass,
    form: PfisterForm,
}

impl ScaledPfister {
    pub fn new(scale: SquareClass, form: PfisterForm) -> Result<Self> {
        let scale = form.field().re_reduce(&scale)?;
        Ok(ScaledPfister { scale, form })
    }

    pub fn scale(&self) -> &SquareClass {
        &self.scale
    }

    pub fn form(&self) -> &PfisterForm {
        &self.form
    }

    pub fn field(&self) -> &FieldDesc {
        self.form.field()
    }

    pub fn dim(&self) -> u64 {
        self.form.dim()
    }

    /// `e_n` of the underlying form; scaling a form in I^n does not move
    /// this invariant (it changes the form by something in I^{n+1}).
    pub fn en_of_form(&self) -> &CohClass {
        self.form.en()
    }
}

impl fmt::Display for ScaledPfister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>*{}", self.scale, self.form)
    }
}

/// Verifies that `small` divides `big` with the *provided* complement:
/// checks `e_n(big) = e_m(small) . e_{n-m}(complement)`.  No search is
/// performed; the caller exhibits the complement.
pub fn divides(small: &PfisterForm, big: &PfisterForm, complement: &PfisterForm) -> Result<bool> {
    if small.field() != big.field() || complement.field() != big.field() {
        return Err(Error::FieldMismatch);
    }
    let (m, n, c) = (small.fold(), big.fold(), complement.fold());
    if m >= n || m + c != n {
        return Err(Error::DivisibilityDegrees {
            small: m,
            big: n,
            complement: c,
        });
    }
    let product = small.en().cup(complement.en())?;
    Ok(big.en().add(&product)?.is_zero())
}

/// The e_8 invariant of the Witt class `2^3 . u`, for a degree-5 class `u`:
/// multiplication by 2 in the Witt ring is `<<-1>>`-scaling, so three of
/// them cup with `(-1)^3`.
pub fn killing_difference_e8(f5: &CohClass) -> Result<CohClass> {
    if f5.degree() != 5 {
        return Err(Error::DegreeMismatch {
            expected: 5,
            found: f5.degree(),
        });
    }
    let minus_cubed = CohClass::minus_one_power(f5.field(), 3)?;
    minus_cubed.cup(f5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;

    fn q(indets: &[&str]) -> FieldDesc {
        FieldDesc::new(BaseField::Q, indets, &[]).unwrap()
    }

    fn pf(field: &FieldDesc, slots: &[&str]) -> PfisterForm {
        let slots: Vec<SquareClass> = slots
            .iter()
            .map(|s| {
                if let Ok(n) = s.parse::<i64>() {
                    field.square_class_of_integer(n).unwrap()
                } else {
                    field.square_class_of_indet(s).unwrap()
                }
            })
            .collect();
        PfisterForm::new(field, slots).unwrap()
    }

    #[test]
    fn en_is_the_slot_symbol() {
        let f = q(&["x1", "x2", "x3", "x4", "x5"]);
        let p = pf(&f, &["x1", "x2", "x3", "x4", "x5"]);
        let slots: Vec<SquareClass> = (1..=5)
            .map(|i| f.square_class_of_indet(&format!("x{i}")).unwrap())
            .collect();
        assert_eq!(p.en(), &CohClass::symbol(&f, slots).unwrap());
        assert_eq!(p.dim(), 32);

        let f0 = q(&["x"]);
        assert!(pf(&f0, &["1", "x"]).en().is_empty_form());
        assert!(!pf(&q(&[]), &["-1", "-1", "-1"]).en().is_zero());
    }

    #[test]
    fn hyperbolicity_examples() {
        let f = q(&["x1", "x2", "x3", "x4", "x5"]);
        assert!(!pf(&f, &["x1", "x2", "x3", "x4", "x5"]).is_hyperbolic());

        let fy = q(&["y"]);
        assert!(pf(&fy, &["4", "y"]).is_hyperbolic());
        assert!(pf(&fy, &["4", "y"]).is_isotropic());

        assert!(pf(&q(&[]), &["2", "3", "5"]).is_hyperbolic());
    }

    #[test]
    fn divisibility_is_verified_not_searched() {
        let f = q(&["x1", "x2", "x3", "x4", "x5"]);
        let q5 = pf(&f, &["x1", "x2", "x3", "x4", "x5"]);
        let q3 = pf(&f, &["x1", "x2", "x3"]);
        let q2 = pf(&f, &["x4", "x5"]);
        assert!(divides(&q3, &q5, &q2).unwrap());

        // equal degrees are rejected: the complement must have degree >= 1
        assert!(matches!(
            divides(&q3, &q3, &q2),
            Err(Error::DivisibilityDegrees { .. })
        ));

        let g = q(&["x", "y", "z"]);
        let small = pf(&g, &["x"]);
        let big = pf(&g, &["y", "z"]);
        let complement = pf(&g, &["z"]);
        assert!(!divides(&small, &big, &complement).unwrap());
    }

    #[test]
    fn en_is_multiplicative_under_tensor() {
        let f = q(&["x", "y", "z"]);
        let a = pf(&f, &["x", "y"]);
        let b = pf(&f, &["z", "-1"]);
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.en(), &a.en().cup(b.en()).unwrap());
        assert_eq!(t.dim(), a.dim() * b.dim());
    }

    #[test]
    fn hyperbolicity_is_stable_under_presentation_changes() {
        let f = q(&["x", "y", "z"]);
        let p = pf(&f, &["x", "y", "z"]);
        // slot permutation
        let perm = pf(&f, &["z", "x", "y"]);
        assert_eq!(p.is_hyperbolic(), perm.is_hyperbolic());
        assert_eq!(p.en(), perm.en());
        // square rescaling of a slot
        let x4 = f
            .reduce_square_class(&crate::field::Monomial::integer(4).pow("x", 1))
            .unwrap();
        let rescaled = PfisterForm::new(
            &f,
            alloc::vec![
                x4,
                f.square_class_of_indet("y").unwrap(),
                f.square_class_of_indet("z").unwrap()
            ],
        )
        .unwrap();
        assert_eq!(p, rescaled);
    }

    #[test]
    fn killing_rhs_examples() {
        let f = q(&["x1", "x2", "x3", "x4", "x5"]);
        let f5 = pf(&f, &["x1", "x2", "x3", "x4", "x5"]).en().clone();
        let k = killing_difference_e8(&f5).unwrap();
        let mut slots = alloc::vec![f.square_class_of_integer(-1).unwrap(); 3];
        for i in 1..=5 {
            slots.push(f.square_class_of_indet(&format!("x{i}")).unwrap());
        }
        assert_eq!(k, CohClass::symbol(&f, slots).unwrap());

        let zero = CohClass::zero(&f, 5).unwrap();
        assert!(killing_difference_e8(&zero).unwrap().is_zero());

        let f0 = q(&[]);
        let compact_f5 = CohClass::minus_one_power(&f0, 5).unwrap();
        let k = killing_difference_e8(&compact_f5).unwrap();
        assert_eq!(k, CohClass::minus_one_power(&f0, 8).unwrap());
        assert!(!k.is_zero());

        assert!(matches!(
            killing_difference_e8(&CohClass::zero(&f0, 4).unwrap()),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn scaled_forms_share_the_form_symbol() {
        let f = q(&["s", "x1", "x2", "x3", "x4"]);
        let gamma = pf(&f, &["x1", "x2", "x3", "x4"]);
        let alpha = f.square_class_of_indet("s").unwrap();
        let sp = ScaledPfister::new(alpha, gamma.clone()).unwrap();
        assert_eq!(sp.en_of_form(), gamma.en());
        assert_eq!(sp.dim(), 16);
        assert_eq!(sp.to_string(), "<s>*pf<<x1,x2,x3,x4>>");
    }
}
