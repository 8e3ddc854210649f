//! Parsers for the command-line grammars.
//!
//! Field descriptors: `Q`, `R`, `C`, `Q(x,y,z;sqrt=13,5)`, `Q(;sqrt=-1)`.
//! Square-class literals: a signed integer times `*`-separated
//! indeterminates, e.g. `-2*x*y`, `13`, `x`.
//! Class expressions: symbols `(x,y,z)` combined with `*` (cup product) and
//! `+` (F2 sum), residues `res[x](expr)`, the constants `0` and `1`, and
//! parenthesized grouping when the group starts with `(` or `res`.
//! Mod-3 expressions: weighted symbols `(x,y,z) + 2*(u,v,w)` or `0`.
//! Pfister literals: `pf<<a,b,c>>`, optionally scaled: `<alpha>*pf<<...>>`.

use core::fmt;

use cohinv_core::field::{BaseField, FieldDesc, Monomial, SquareClass};
use cohinv_core::milnor::{CohClass, Mod3Class};
use cohinv_core::pfister::PfisterForm;

/// A syntax or evaluation error with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: {}",
            self.offset, self.message
        )
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn peek_raw(&self, ahead: usize) -> Option<u8> {
        self.bytes.get(self.pos + ahead).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(kw.as_bytes()) {
            // a keyword must not continue as an identifier
            let next = self.bytes.get(self.pos + kw.len());
            if !matches!(next, Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
                self.pos += kw.len();
                return true;
            }
        }
        false
    }

    fn error(&mut self, message: String) -> ParseError {
        self.skip_ws();
        ParseError {
            offset: self.pos,
            message,
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input".into()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.error("expected an identifier".into())),
        }
        while matches!(self.bytes.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn integer(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer".into()));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<i64>().map_err(|_| ParseError {
            offset: start,
            message: "integer out of range".into(),
        })
    }
}

/// Parses a field descriptor such as `Q(x,y;sqrt=13,-1)`.
pub fn parse_field_desc(text: &str) -> PResult<FieldDesc> {
    let mut c = Cursor::new(text);
    let base = match c.peek() {
        Some(b'Q') => BaseField::Q,
        Some(b'R') => BaseField::R,
        Some(b'C') => BaseField::C,
        _ => return Err(c.error("expected a base field Q, R, or C".into())),
    };
    c.pos += 1;
    let mut indets: Vec<String> = Vec::new();
    let mut sqrts: Vec<i64> = Vec::new();
    if c.eat(b'(') {
        if c.peek().map(|b| b.is_ascii_alphabetic()) == Some(true) && !peek_sqrt(&mut c) {
            loop {
                indets.push(c.ident()?);
                if !c.eat(b',') {
                    break;
                }
                // allow a trailing `;sqrt=` after a comma-free list only
            }
        }
        if c.eat(b';') {
            if !c.eat_keyword("sqrt") {
                return Err(c.error("expected `sqrt=` after `;`".into()));
            }
            c.expect(b'=', "`=` after `sqrt`")?;
            loop {
                sqrts.push(c.integer()?);
                if !c.eat(b',') {
                    break;
                }
            }
        }
        c.expect(b')', "`)` to close the field descriptor")?;
    }
    c.expect_end()?;
    let offset = 0;
    FieldDesc::new(base, &indets, &sqrts).map_err(|e| ParseError {
        offset,
        message: e.to_string(),
    })
}

fn peek_sqrt(c: &mut Cursor) -> bool {
    c.skip_ws();
    c.bytes[c.pos..].starts_with(b"sqrt")
        && matches!(c.bytes.get(c.pos + 4), Some(b'=') | Some(b' '))
}

fn slot(c: &mut Cursor, field: &FieldDesc) -> PResult<SquareClass> {
    c.skip_ws();
    let start = c.pos;
    let negative = c.eat(b'-');
    let mut monomial = match c.peek() {
        Some(d) if d.is_ascii_digit() => {
            let n = c.integer()?;
            Monomial::integer(if negative { -n } else { n })
        }
        Some(d) if d.is_ascii_alphabetic() => {
            let name = c.ident()?;
            Monomial::integer(if negative { -1 } else { 1 }).pow(&name, 1)
        }
        _ => return Err(c.error("expected a square class".into())),
    };
    loop {
        // `*` continues the slot only when followed by an identifier;
        // otherwise it belongs to the surrounding cup product
        c.skip_ws();
        if c.bytes.get(c.pos) != Some(&b'*') {
            break;
        }
        let mut ahead = c.pos + 1;
        while matches!(c.bytes.get(ahead), Some(w) if w.is_ascii_whitespace()) {
            ahead += 1;
        }
        if !matches!(c.bytes.get(ahead), Some(ch) if ch.is_ascii_alphabetic()) {
            break;
        }
        c.pos += 1;
        let name = c.ident()?;
        monomial = monomial.pow(&name, 1);
    }
    field
        .reduce_square_class(&monomial)
        .map_err(|e| ParseError {
            offset: start,
            message: e.to_string(),
        })
}

/// Parses `a,b` as a pair of square classes.
pub fn parse_square_class_pair(
    text: &str,
    field: &FieldDesc,
) -> PResult<(SquareClass, SquareClass)> {
    let mut c = Cursor::new(text);
    let a = slot(&mut c, field)?;
    c.expect(b',', "`,` between the two square classes")?;
    let b = slot(&mut c, field)?;
    c.expect_end()?;
    Ok((a, b))
}

fn symbol(c: &mut Cursor, field: &FieldDesc) -> PResult<CohClass> {
    let open = c.pos;
    c.expect(b'(', "`(`")?;
    let mut slots = vec![slot(c, field)?];
    while c.eat(b',') {
        slots.push(slot(c, field)?);
    }
    c.expect(b')', "`)` or `,` in a symbol")?;
    CohClass::symbol(field, slots).map_err(|e| ParseError {
        offset: open,
        message: e.to_string(),
    })
}

fn factor(c: &mut Cursor, field: &FieldDesc) -> PResult<CohClass> {
    c.skip_ws();
    if c.eat_keyword("res") {
        c.expect(b'[', "`[` after `res`")?;
        let at = c.pos;
        let var = c.ident()?;
        c.expect(b']', "`]` after the residue variable")?;
        c.expect(b'(', "`(` before the residue argument")?;
        let inner = expr(c, field)?;
        c.expect(b')', "`)` after the residue argument")?;
        return inner.residue(&var).map_err(|e| ParseError {
            offset: at,
            message: e.to_string(),
        });
    }
    match c.peek() {
        Some(b'(') => {
            // lookahead: a nested `(` or `res[` starts a grouped expression
            let mut ahead = c.pos + 1;
            while matches!(c.bytes.get(ahead), Some(w) if w.is_ascii_whitespace()) {
                ahead += 1;
            }
            let rest = &c.bytes[ahead.min(c.bytes.len())..];
            let grouped = rest.first() == Some(&b'(')
                || (rest.starts_with(b"res")
                    && !matches!(rest.get(3), Some(ch) if ch.is_ascii_alphanumeric() || *ch == b'_'));
            if grouped {
                c.expect(b'(', "`(`")?;
                let inner = expr(c, field)?;
                c.expect(b')', "`)` to close the group")?;
                Ok(inner)
            } else {
                symbol(c, field)
            }
        }
        Some(b'0') if singleton_digit(c) => {
            c.pos += 1;
            CohClass::zero(field, 0).map_err(|e| c.error(e.to_string()))
        }
        Some(b'1') if singleton_digit(c) => {
            c.pos += 1;
            Ok(CohClass::one(field))
        }
        _ => Err(c.error("expected a symbol, `res[...]`, `0`, or `1`".into())),
    }
}

fn singleton_digit(c: &mut Cursor) -> bool {
    c.skip_ws();
    !matches!(c.bytes.get(c.pos + 1), Some(d) if d.is_ascii_alphanumeric())
}

fn term(c: &mut Cursor, field: &FieldDesc) -> PResult<CohClass> {
    let mut acc = factor(c, field)?;
    loop {
        c.skip_ws();
        if c.bytes.get(c.pos) != Some(&b'*') {
            return Ok(acc);
        }
        let at = c.pos;
        c.pos += 1;
        let rhs = factor(c, field)?;
        acc = acc.cup(&rhs).map_err(|e| ParseError {
            offset: at,
            message: e.to_string(),
        })?;
    }
}

fn expr(c: &mut Cursor, field: &FieldDesc) -> PResult<CohClass> {
    let mut acc = term(c, field)?;
    while c.peek() == Some(b'+') {
        let at = c.pos;
        c.pos += 1;
        let rhs = term(c, field)?;
        acc = acc.add(&rhs).map_err(|e| ParseError {
            offset: at,
            message: e.to_string(),
        })?;
    }
    Ok(acc)
}

/// Parses and evaluates a class expression over the field.
pub fn parse_expression(text: &str, field: &FieldDesc) -> PResult<CohClass> {
    let mut c = Cursor::new(text);
    let class = expr(&mut c, field)?;
    c.expect_end()?;
    Ok(class)
}

/// Parses a mod-3 expression: `0` or weighted symbols joined by `+`.
/// The result's degree is checked against `expected_degree`.
pub fn parse_mod3(text: &str, field: &FieldDesc, expected_degree: usize) -> PResult<Mod3Class> {
    let mut c = Cursor::new(text);
    if c.peek() == Some(b'0') && singleton_digit(&mut c) {
        c.pos += 1;
        c.expect_end()?;
        return Mod3Class::zero(field, expected_degree).map_err(|e| ParseError {
            offset: 0,
            message: e.to_string(),
        });
    }
    let mut terms: Vec<(Vec<SquareClass>, u8)> = Vec::new();
    loop {
        c.skip_ws();
        let weight = if matches!(c.bytes.get(c.pos), Some(d) if d.is_ascii_digit()) {
            let at = c.pos;
            let w = c.integer()?;
            c.expect(b'*', "`*` after a mod-3 weight")?;
            u8::try_from(w.rem_euclid(3)).map_err(|_| ParseError {
                offset: at,
                message: "weight out of range".into(),
            })?
        } else {
            1
        };
        let open = c.pos;
        c.expect(b'(', "`(` to open a mod-3 symbol")?;
        let mut slots = vec![slot(&mut c, field)?];
        while c.eat(b',') {
            slots.push(slot(&mut c, field)?);
        }
        c.expect(b')', "`)` or `,` in a mod-3 symbol")?;
        if slots.len() != expected_degree {
            return Err(ParseError {
                offset: open,
                message: format!(
                    "expected a degree-{expected_degree} symbol, found {} slots",
                    slots.len()
                ),
            });
        }
        terms.push((slots, weight));
        if !c.eat(b'+') {
            break;
        }
    }
    c.expect_end()?;
    Mod3Class::from_terms(field, expected_degree, terms).map_err(|e| ParseError {
        offset: 0,
        message: e.to_string(),
    })
}

/// Parses `pf<<a,b,c>>` or `<alpha>*pf<<a,b,c>>`; returns the optional
/// scale and the form.
pub fn parse_pfister(text: &str, field: &FieldDesc) -> PResult<(Option<SquareClass>, PfisterForm)> {
    let mut c = Cursor::new(text);
    let scale = if c.peek() == Some(b'<') && c.peek_raw(1) != Some(b'<') {
        c.pos += 1;
        let s = slot(&mut c, field)?;
        c.expect(b'>', "`>` to close the scale")?;
        c.expect(b'*', "`*` between the scale and the form")?;
        Some(s)
    } else {
        None
    };
    if !c.eat_keyword("pf") {
        return Err(c.error("expected `pf<<...>>`".into()));
    }
    c.expect(b'<', "`<<` after `pf`")?;
    c.expect(b'<', "`<<` after `pf`")?;
    let mut slots = vec![slot(&mut c, field)?];
    while c.eat(b',') {
        slots.push(slot(&mut c, field)?);
    }
    c.expect(b'>', "`>>` to close the form")?;
    c.expect(b'>', "`>>` to close the form")?;
    c.expect_end()?;
    let form = PfisterForm::new(field, slots).map_err(|e| ParseError {
        offset: 0,
        message: e.to_string(),
    })?;
    Ok((scale, form))
}

/// Reinterprets an empty class as the zero class of the expected degree;
/// nonempty classes must already have it.
pub fn coerce_degree(class: CohClass, expected: usize) -> PResult<CohClass> {
    if class.is_empty_form() && class.degree() != expected {
        CohClass::zero(class.field(), expected).map_err(|e| ParseError {
            offset: 0,
            message: e.to_string(),
        })
    } else if class.degree() != expected {
        Err(ParseError {
            offset: 0,
            message: format!(
                "expected a class of degree {expected}, found {}",
                class.degree()
            ),
        })
    } else {
        Ok(class)
    }
}

/// Splits `text` at top-level `*` (outside any brackets); used to infer an
/// Albert divisibility witness from a product-shaped f5 expression.
pub fn split_top_level_product(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            '*' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldDesc {
        parse_field_desc("Q(x,y,z,a,b)").unwrap()
    }

    #[test]
    fn parses_field_descriptors() {
        assert_eq!(parse_field_desc("Q").unwrap(), FieldDesc::rationals());
        assert_eq!(parse_field_desc("R").unwrap().to_string(), "R");
        assert_eq!(parse_field_desc("C").unwrap().to_string(), "C");
        assert_eq!(
            parse_field_desc("Q(x,y;sqrt=13,5)").unwrap().to_string(),
            "Q(x,y;sqrt=5,13)"
        );
        assert_eq!(
            parse_field_desc("Q(;sqrt=13)").unwrap().to_string(),
            "Q(;sqrt=13)"
        );
        assert_eq!(
            parse_field_desc("Q(x1,x2,x3,x4,x5)")
                .unwrap()
                .indeterminates()
                .len(),
            5
        );
        assert!(parse_field_desc("Q(x,x)").is_err());
        assert!(parse_field_desc("F(x)").is_err());
    }

    #[test]
    fn parses_square_classes() {
        let f = f();
        let (c, d) = parse_square_class_pair("-2*x*y,12", &f).unwrap();
        assert_eq!(c.to_string(), "-2*x*y");
        assert_eq!(d.rational_part(), 3);
        assert!(parse_square_class_pair("w,x", &f).is_err());
        assert!(parse_square_class_pair("0,x", &f).is_err());
        assert!(parse_square_class_pair("x", &f).is_err());
    }

    #[test]
    fn parses_expressions() {
        let f = f();
        let c = parse_expression("(x,y,z)*(a,b) + (-1,-1,-1,-1,-1)", &f).unwrap();
        assert_eq!(c.degree(), 5);
        assert_eq!(c.term_count(), 2);

        let sq = parse_expression("(x,x)", &f).unwrap();
        assert_eq!(sq, parse_expression("(-1,x)", &f).unwrap());

        assert_eq!(
            parse_expression("(x,y) + (x,y)", &f).unwrap().term_count(),
            0
        );

        let r = parse_expression("res[x]((x,y,z)*(a,b))", &f).unwrap();
        assert_eq!(r, parse_expression("(y,z)*(a,b)", &f).unwrap());

        assert!(parse_expression("1", &f).unwrap().degree() == 0);
        assert!(parse_expression("0", &f).unwrap().is_empty_form());
    }

    #[test]
    fn reports_error_offsets() {
        let f = f();
        let err = parse_expression("(x,)", &f).unwrap_err();
        assert_eq!(err.offset, 3);
        let err = parse_expression("(x,y) + ", &f).unwrap_err();
        assert_eq!(err.offset, 8);
        let err = parse_expression("(w,y)", &f).unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn parses_mod3() {
        let f = f();
        assert!(parse_mod3("0", &f, 3).unwrap().is_zero());
        let g = parse_mod3("(x,y,z)", &f, 3).unwrap();
        assert!(!g.is_zero());
        let cancel = parse_mod3("(x,y,z) + 2*(x,y,z)", &f, 3).unwrap();
        assert!(cancel.is_zero());
        assert!(parse_mod3("(x,y)", &f, 3).is_err());
    }

    #[test]
    fn parses_pfister_literals() {
        let f = f();
        let (scale, form) = parse_pfister("pf<<x,y,z>>", &f).unwrap();
        assert!(scale.is_none());
        assert_eq!(form.fold(), 3);
        let (scale, form) = parse_pfister("<-2*a>*pf<<x,y>>", &f).unwrap();
        assert_eq!(scale.unwrap().to_string(), "-2*a");
        assert_eq!(form.dim(), 4);
        assert!(parse_pfister("pf<<>>", &f).is_err());
    }

    #[test]
    fn round_trips_displays() {
        let f = f();
        for text in [
            "(x,y,z)*(a,b) + (-1,-1,-1,-1,-1)",
            "(x,x)",
            "(2,3)+(a,b)",
            "(-2*x*y,b)",
            "0",
            "1",
        ] {
            let class = parse_expression(text, &f).unwrap();
            let reparsed = parse_expression(&class.to_string(), &f).unwrap();
            assert_eq!(class, reparsed, "round trip failed for {text}");
        }
    }

    #[test]
    fn splits_top_level_products() {
        assert_eq!(
            split_top_level_product("(x,y,z)*(a,b)"),
            Some(("(x,y,z)", "(a,b)"))
        );
        assert_eq!(split_top_level_product("(x*y,z)"), None);
        assert_eq!(split_top_level_product("pf<<a,b>>"), None);
    }

    mod roundtrip {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn arb_slot()(rational in prop::sample::select(vec![1i64, -1, 2, -2, 3, -3, 5, -5]),
                          mask in 0u8..8) -> (i64, u8) {
                (rational, mask)
            }
        }

        proptest! {
            #[test]
            fn display_reparses_to_the_same_normal_form(
                raw in prop::collection::vec(prop::collection::vec(arb_slot(), 3), 0..4)
            ) {
                let f = parse_field_desc("Q(x,y,z)").unwrap();
                let names = ["x", "y", "z"];
                let symbols: Vec<Vec<SquareClass>> = raw
                    .iter()
                    .map(|term| {
                        term.iter()
                            .map(|(r, mask)| {
                                let mut m = Monomial::integer(*r);
                                for (i, n) in names.iter().enumerate() {
                                    if mask & (1 << i) != 0 {
                                        m = m.pow(n, 1);
                                    }
                                }
                                f.reduce_square_class(&m).unwrap()
                            })
                            .collect()
                    })
                    .collect();
                let class = CohClass::from_raw_symbols(&f, 3, symbols).unwrap();
                let reparsed = parse_expression(&class.to_string(), &f).unwrap();
                prop_assert_eq!(coerce_degree(reparsed, 3).unwrap(), class);
            }
        }
    }
}
