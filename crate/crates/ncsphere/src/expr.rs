//! Text syntax for algebra elements.
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor+                 (juxtaposition = product)
//! factor   := atom ('^' uint)?
//! atom     := 'a' | "a'" | 'b' | "b'" | 'q' | "q'" | 'i'
//!           | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! `q` is the deformation parameter, `q'` its inverse, and `x'` the adjoint
//! of `x`. Printing is deterministic: monomials are emitted in
//! `(length, p, q, r, s)` order, so `parse(print(f)) == f` exactly.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::ncalg::{Element, Monomial};
use crate::scalar::{GaussRat, Scalar};

/// Syntax error with a byte position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

const EXP_LIMIT: u64 = i32::MAX as u64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    A,
    AStar,
    B,
    BStar,
    Q,
    QInv,
    I,
    Int(BigInt),
    Plus,
    Minus,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            'a' | 'b' | 'q' => {
                let starred = bytes.get(i + 1) == Some(&b'\'');
                let tok = match (c, starred) {
                    ('a', false) => Tok::A,
                    ('a', true) => Tok::AStar,
                    ('b', false) => Tok::B,
                    ('b', true) => Tok::BStar,
                    ('q', false) => Tok::Q,
                    ('q', true) => Tok::QInv,
                    _ => unreachable!(),
                };
                toks.push((i, tok));
                i += if starred { 2 } else { 1 };
            }
            'i' => {
                toks.push((i, Tok::I));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n =
                    BigInt::parse_bytes(&bytes[start..i], 10).expect("digit run parses as integer");
                toks.push((start, Tok::Int(n)));
            }
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            c => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.bump();
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::A
                    | Tok::AStar
                    | Tok::B
                    | Tok::BStar
                    | Tok::Q
                    | Tok::QInv
                    | Tok::I
                    | Tok::Int(_)
                    | Tok::LParen
            )
        )
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        if !self.starts_atom() {
            return self.err("expected an atom");
        }
        let mut acc = self.factor()?;
        while self.starts_atom() {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                use num::ToPrimitive;
                match n.to_u64() {
                    Some(v) if v <= EXP_LIMIT => {
                        self.bump();
                        Ok(v as u32)
                    }
                    _ => self.err("exponent exceeds the 2^31 - 1 limit"),
                }
            }
            _ => self.err("expected an unsigned integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("expected an atom"),
        };
        match tok {
            Tok::A => {
                self.bump();
                Ok(Element::gen_a())
            }
            Tok::AStar => {
                self.bump();
                Ok(Element::gen_a_star())
            }
            Tok::B => {
                self.bump();
                Ok(Element::gen_b())
            }
            Tok::BStar => {
                self.bump();
                Ok(Element::gen_b_star())
            }
            Tok::Q => {
                self.bump();
                Ok(Element::scalar(Scalar::lambda()))
            }
            Tok::QInv => {
                self.bump();
                Ok(Element::scalar(Scalar::lambda_pow(-1)))
            }
            Tok::I => {
                self.bump();
                Ok(Element::scalar(Scalar::i()))
            }
            Tok::Int(n) => {
                self.bump();
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.peek() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            let d = d.clone();
                            self.bump();
                            Ok(Element::scalar(Scalar::from_gauss(GaussRat::new(
                                BigRational::new(n, d),
                                BigRational::zero(),
                            ))))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected a denominator"),
                    }
                } else {
                    Ok(Element::scalar(Scalar::from_gauss(GaussRat::new(
                        BigRational::from_integer(n),
                        BigRational::zero(),
                    ))))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            _ => self.err("expected an atom"),
        }
    }
}

/// Parse an expression into a fully normalized element.
pub fn parse_expr(input: &str) -> Result<Element, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn ratio_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn lambda_text(k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some("q".to_string()),
        -1 => Some("q'".to_string()),
        k if k > 1 => Some(format!("q^{k}")),
        k => Some(format!("q'^{}", -k)),
    }
}

/// Render one Laurent term `c * q^k`, splitting off a leading sign when the
/// coefficient is purely real or purely imaginary.
fn gauss_lambda_pieces(k: i64, c: &GaussRat) -> (bool, Vec<String>) {
    let mut pieces = Vec::new();
    let neg;
    if c.im().is_zero() {
        neg = c.re().is_negative();
        let mag = c.re().abs();
        if !mag.is_one() {
            pieces.push(ratio_text(&mag));
        }
        if let Some(l) = lambda_text(k) {
            pieces.push(l);
        }
        if pieces.is_empty() {
            pieces.push("1".to_string());
        }
    } else if c.re().is_zero() {
        neg = c.im().is_negative();
        let mag = c.im().abs();
        if !mag.is_one() {
            pieces.push(ratio_text(&mag));
        }
        pieces.push("i".to_string());
        if let Some(l) = lambda_text(k) {
            pieces.push(l);
        }
    } else {
        neg = false;
        let re_neg = c.re().is_negative();
        let mut inner = String::new();
        if re_neg {
            inner.push_str("- ");
        }
        inner.push_str(&ratio_text(&c.re().abs()));
        inner.push_str(if c.im().is_negative() { " - " } else { " + " });
        let im = c.im().abs();
        if !im.is_one() {
            inner.push_str(&ratio_text(&im));
            inner.push(' ');
        }
        inner.push('i');
        pieces.push(format!("({inner})"));
        if let Some(l) = lambda_text(k) {
            pieces.push(l);
        }
    }
    (neg, pieces)
}

fn scalar_sum_text(s: &Scalar) -> String {
    let mut out = String::new();
    for (idx, (k, c)) in s.iter().enumerate() {
        let (neg, pieces) = gauss_lambda_pieces(k, c);
        if idx == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&pieces.join(" "));
    }
    out
}

fn monomial_pieces(m: &Monomial) -> Vec<String> {
    let mut parts = Vec::new();
    for (gen, e) in [("a", m.p()), ("a'", m.q()), ("b", m.r()), ("b'", m.s())] {
        match e {
            0 => {}
            1 => parts.push(gen.to_string()),
            e => parts.push(format!("{gen}^{e}")),
        }
    }
    parts
}

/// Render `coeff * word` with the word already broken into factor strings;
/// returns `(is_negative, text_without_sign)`.
pub(crate) fn coeff_word_text(s: &Scalar, word: Vec<String>) -> (bool, String) {
    if let Some((k, c)) = s.as_single() {
        let (neg, mut pieces) = gauss_lambda_pieces(k, c);
        // drop a bare "1" coefficient in front of a nonempty word
        if pieces.as_slice() == ["1"] && !word.is_empty() {
            pieces.clear();
        }
        pieces.extend(word);
        if pieces.is_empty() {
            pieces.push("1".to_string());
        }
        (neg, pieces.join(" "))
    } else {
        let mut pieces = vec![format!("({})", scalar_sum_text(s))];
        pieces.extend(word);
        (false, pieces.join(" "))
    }
}

/// Deterministic rendering; inverse of [`parse_expr`] on values.
pub fn print_expr(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, s)) in e.terms().enumerate() {
        let (neg, text) = coeff_word_text(s, monomial_pieces(m));
        if idx == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_expr(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_via_parser() {
        // a b - q b a = 0
        assert!(parse_expr("a b - q b a").unwrap().is_zero());
        // a a' + b b' = 1
        assert!(parse_expr("a a' + b b'").unwrap().is_one());
    }

    #[test]
    fn roundtrip_simple() {
        for src in [
            "1/2 i a^2",
            "q' a b",
            "a a' - a^2 a'^2",
            "(1 + i) q^2 b'",
            "- 1",
            "(q + q') a",
            "- 3/4 a' b^3",
            "(- 1/2 + 3 i) q'^2",
        ] {
            let e = parse_expr(src).unwrap();
            let printed = print_expr(&e);
            let reparsed = parse_expr(&printed).unwrap();
            assert_eq!(e, reparsed, "print/parse mismatch: {src:?} -> {printed:?}");
        }
    }

    #[test]
    fn printing_examples() {
        let e = parse_expr("b a").unwrap();
        assert_eq!(print_expr(&e), "q' a b");
        assert_eq!(print_expr(&Element::zero()), "0");
        assert_eq!(print_expr(&Element::one()), "1");
        let e = parse_expr("a a'").unwrap();
        assert_eq!(print_expr(&e), "a a'");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("a $ b").unwrap_err();
        assert_eq!(err.pos, 2);
        let err = parse_expr("a +").unwrap_err();
        assert_eq!(err.pos, 3);
        let err = parse_expr("(a b").unwrap_err();
        assert_eq!(err.pos, 4);
        let err = parse_expr("a^99999999999").unwrap_err();
        assert!(err.msg.contains("limit"));
        let err = parse_expr("1/0").unwrap_err();
        assert!(err.msg.contains("denominator"));
    }
}
