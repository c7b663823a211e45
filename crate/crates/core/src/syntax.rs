//! Text syntax for elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := INT | 'i' | 'hbar' | 'kappa' | 'E' | x0..x3 | P0..P3 | '(' expr ')'
//! ```
//!
//! `E` is `exp(-P0/(kappa*hbar))` and `E^(r)` takes any rational `r`.
//! Division is only by single-term scalars. Products are free: the parser
//! never reorders letters, it only folds adjacent exponentials.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;

use crate::algebra::{Element, Generator};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == 'ℏ' || c == 'κ' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            if i == start {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Ident(text)));
        } else {
            return Err(Error::Syntax { position: pos, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos(), message: message.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.mul_free(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    let inv = d.as_scalar().and_then(|s| s.inverse()).ok_or_else(|| Error::Syntax {
                        position: pos,
                        message: format!("can only divide by a nonzero single-term scalar, got `{d}`"),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Element> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Element> {
        let is_exp = matches!(self.peek(), Some(Tok::Ident(s)) if s == "E");
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let r = self.exponent()?;
        if is_exp {
            return Ok(Element::generator(Generator::Exp(r)));
        }
        if *r.denom() != 1 {
            return Err(Error::Syntax { position: pos, message: "only E takes a fractional exponent".into() });
        }
        let n = *r.numer();
        if n < 0 {
            let inv = base.as_scalar().and_then(|s| s.inverse()).ok_or_else(|| Error::Syntax {
                position: pos,
                message: "negative powers need a single-term scalar base".into(),
            })?;
            return Ok(repeat(&Element::scalar(inv), n.unsigned_abs()));
        }
        Ok(repeat(&base, n as u64))
    }

    fn exponent(&mut self) -> Result<Rational64> {
        let parens = self.peek() == Some(&Tok::LParen);
        if parens {
            self.at += 1;
        }
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.at += 1;
            }
            Some(Tok::Plus) if parens => self.at += 1,
            _ => {}
        }
        let num = self.small_int()?;
        let mut den = 1;
        if parens && self.peek() == Some(&Tok::Slash) {
            self.at += 1;
            den = self.small_int()?;
            if den == 0 {
                return self.syntax("zero denominator in exponent");
            }
        }
        if parens {
            self.expect(Tok::RParen, "`)` after exponent")?;
        }
        Ok(Rational64::new(sign * num, den))
    }

    fn small_int(&mut self) -> Result<i64> {
        match self.bump() {
            Some(Tok::Int(n)) => match n.to_i64() {
                Some(v) if v <= 1 << 20 => Ok(v),
                _ => {
                    self.at -= 1;
                    self.syntax("exponent too large")
                }
            },
            _ => {
                self.at -= 1;
                self.syntax("expected an integer")
            }
        }
    }

    fn atom(&mut self) -> Result<Element> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Element::scalar(Scalar::rational(BigRational::from_integer(n)))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => ident(&name, pos),
            Some(_) => {
                self.at -= 1;
                self.syntax("expected a number, symbol or `(`")
            }
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn repeat(base: &Element, n: u64) -> Element {
    (0..n).fold(Element::one(), |acc, _| acc.mul_free(base))
}

fn ident(name: &str, pos: usize) -> Result<Element> {
    match name {
        "i" => return Ok(Element::scalar(Scalar::i())),
        "hbar" | "ℏ" => return Ok(Element::scalar(Scalar::hbar())),
        "kappa" | "κ" => return Ok(Element::scalar(Scalar::kappa_inv_pow(-1))),
        "E" => return Ok(Element::generator(Generator::e())),
        _ => {}
    }
    let mut chars = name.chars();
    let family = chars.next();
    let index: String = chars.collect();
    if matches!(family, Some('x') | Some('P')) && !index.is_empty() && index.chars().all(|c| c.is_ascii_digit()) {
        let mu: u32 = index.parse().unwrap_or(u32::MAX);
        if mu > 3 {
            return Err(Error::Syntax { position: pos, message: format!("index {index} of `{name}` is out of range 0..3") });
        }
        let g = if family == Some('x') { Generator::X(mu as u8) } else { Generator::P(mu as u8) };
        return Ok(Element::generator(g));
    }
    Err(Error::UnknownSymbol { position: pos, symbol: name.to_string() })
}

/// Parses an element written in the syntax above.
pub fn parse(s: &str) -> Result<Element> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Syntax { position: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression that must reduce to a scalar.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let e = parse(s)?;
    e.as_scalar()
        .ok_or_else(|| Error::Syntax { position: 0, message: format!("`{s}` is not a scalar") })
}

/// Canonical display string; the inverse of [`parse`] on canonical elements.
pub fn print(e: &Element) -> String {
    e.to_string()
}

/// A one-letter element, parsed from `x0`, `P2`, `E`, `E^(1/2)`.
pub fn parse_generator(s: &str) -> Result<Generator> {
    let e = parse(s)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if m.len() == 1 && c.is_one() => Ok(m.letters()[0]),
        _ => Err(Error::Syntax { position: 0, message: format!("`{s}` is not a single generator") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::algebra::Monomial;

    #[test]
    fn parses_two_term_relation() {
        let e = parse("x0*x1 - (i/kappa)*x1").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&Monomial::new([Generator::X(1)])), Scalar::monomial(-1, 1, 1, 0, 1));
        assert_eq!(print(&e), "x0*x1 - i/kappa*x1");
    }

    #[test]
    fn exponent_convention() {
        assert_eq!(parse("E^(1/2)").unwrap(), Element::generator(Generator::exp(1, 2)));
        assert_eq!(parse("E^(-1/2) * E^(1/2)").unwrap(), Element::one());
        assert_eq!(parse("E^2").unwrap(), Element::generator(Generator::exp(2, 1)));
        assert_eq!(parse("E*E").unwrap(), Element::generator(Generator::exp(2, 1)));
    }

    #[test]
    fn out_of_range_index_is_a_syntax_error() {
        assert!(matches!(parse("x4"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse("P1 + y2"), Err(Error::UnknownSymbol { position: 5, .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse("x0 * (x1"), Err(Error::Syntax { position: 8, .. })));
        assert!(matches!(parse("x0 / x1"), Err(Error::Syntax { position: 5, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x0^(1/2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("2 $ 3"), Err(Error::Syntax { position: 2, .. })));
    }

    #[test]
    fn precedence_and_whitespace() {
        assert_eq!(parse("-x0^2").unwrap(), -parse("x0*x0").unwrap());
        assert_eq!(parse(" 2*x1+x1 ").unwrap(), parse("3*x1").unwrap());
        assert_eq!(parse("hbar^-1*hbar").unwrap(), Element::one());
        assert_eq!(parse("kappa^(-2)").unwrap(), Element::scalar(Scalar::kappa_inv_pow(2)));
        // no reordering: the free product keeps letter order
        assert_ne!(parse("x1*x0").unwrap(), parse("x0*x1").unwrap());
    }

    #[test]
    fn scalar_forms_round_trip() {
        for s in ["-i*hbar", "i/(2*kappa)", "1/(2*kappa*hbar)", "3*hbar^2*kappa", "1 - i*hbar", "0"] {
            assert_eq!(parse_scalar(s).unwrap().to_string(), s);
        }
    }

    fn letter() -> impl Strategy<Value = Generator> {
        prop_oneof![
            (0u8..4).prop_map(Generator::X),
            (0u8..4).prop_map(Generator::P),
            (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Generator::exp(n, d)),
        ]
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        proptest::collection::vec((-5i64..=5, 1i64..=4, 0u32..4, -2i32..=2, -1i32..=2), 1..=3).prop_map(|ts| {
            ts.into_iter()
                .fold(Scalar::zero(), |acc, (n, d, i, h, k)| acc + Scalar::monomial(n, d, i, h, k))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn print_then_parse_is_identity(terms in proptest::collection::vec((proptest::collection::vec(letter(), 0..5), scalar()), 0..4)) {
            let mut e = Element::zero();
            for (w, c) in terms {
                e.add_term(Monomial::new(w), c);
            }
            let text = print(&e);
            prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
        }
    }
}
