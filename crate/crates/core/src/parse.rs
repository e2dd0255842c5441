//! Concrete syntax for formulas and sequents.
//!
//! ```text
//! formula := lolli
//! lolli   := par ("-o" lolli)?          right associative, loosest
//! par     := plus ("|" plus)*
//! plus    := with ("+" with)*
//! with    := tensor ("&" tensor)*
//! tensor  := unary ("*" unary)*
//! unary   := "~" unary | atom | "1" | "top" | "0" | "bot" | "(" formula ")"
//! atom    := [A-Za-z_][A-Za-z0-9_]*     except the keywords top, bot
//! sequent := [formula ("," formula)*] "|-" [formula ("," formula)*]
//! ```
//!
//! `bot`, `0` and `|` are accepted and rewritten on the fly (`~1`, `~top`,
//! `~A -o B`); the additive tokens `&`, `+`, `top`, `0` are rejected at their
//! source position when parsing for the multiplicative-only fragment.

use std::fmt;

use crate::bag::ResourceBag;
use crate::formula::{self, Formula};
use crate::sequent::{Fragment, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at {line}:{col}: expected {expected}, found {found}")]
    Unexpected {
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },
    #[error("parse error at {line}:{col}: {message}")]
    Lex { line: u32, col: u32, message: String },
    #[error("at {line}:{col}: {token:?} is not available in the {fragment} fragment")]
    OutsideFragment {
        line: u32,
        col: u32,
        token: &'static str,
        fragment: Fragment,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Top,
    Bot,
    Tilde,
    Star,
    Amp,
    Plus,
    Bar,
    Lolli,
    LParen,
    RParen,
    Comma,
    Turnstile,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::One => write!(f, "'1'"),
            Tok::Zero => write!(f, "'0'"),
            Tok::Top => write!(f, "'top'"),
            Tok::Bot => write!(f, "'bot'"),
            Tok::Tilde => write!(f, "'~'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Amp => write!(f, "'&'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Bar => write!(f, "'|'"),
            Tok::Lolli => write!(f, "'-o'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Turnstile => write!(f, "'|-'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
}

type Spanned = (Tok, u32, u32);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> u8 {
        let b = self.bytes[self.pos];
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        b
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.bump();
            }
            if self.pos >= self.bytes.len() {
                out.push((Tok::Eof, self.line, self.col));
                return Ok(out);
            }
            let (line, col) = (self.line, self.col);
            let b = self.bytes[self.pos];
            let tok = match b {
                b'~' => {
                    self.bump();
                    Tok::Tilde
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'&' => {
                    self.bump();
                    Tok::Amp
                }
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b'|' => {
                    self.bump();
                    if self.pos < self.bytes.len() && self.bytes[self.pos] == b'-' {
                        self.bump();
                        Tok::Turnstile
                    } else {
                        Tok::Bar
                    }
                }
                b'-' => {
                    self.bump();
                    if self.pos < self.bytes.len() && self.bytes[self.pos] == b'o' {
                        self.bump();
                        // reject "-oops": -o must not run into an identifier
                        if self.pos < self.bytes.len() && is_ident_char(self.bytes[self.pos]) {
                            return Err(ParseError::Lex {
                                line,
                                col,
                                message: format!(
                                    "expected '-o', found '-{}'",
                                    ident_at(self.src, self.pos - 1)
                                ),
                            });
                        }
                        Tok::Lolli
                    } else {
                        return Err(ParseError::Lex {
                            line,
                            col,
                            message: "expected 'o' after '-'".into(),
                        });
                    }
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.bytes.len() && is_ident_char(self.bytes[self.pos]) {
                        self.bump();
                    }
                    match &self.src[start..self.pos] {
                        "1" => Tok::One,
                        "0" => Tok::Zero,
                        other => {
                            return Err(ParseError::Lex {
                                line,
                                col,
                                message: format!(
                                    "unexpected {other:?}: the only literal constants are 1, 0, top, bot"
                                ),
                            })
                        }
                    }
                }
                b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                    let start = self.pos;
                    while self.pos < self.bytes.len() && is_ident_char(self.bytes[self.pos]) {
                        self.bump();
                    }
                    match &self.src[start..self.pos] {
                        "top" => Tok::Top,
                        "bot" => Tok::Bot,
                        name => Tok::Ident(name.to_string()),
                    }
                }
                other => {
                    return Err(ParseError::Lex {
                        line,
                        col,
                        message: format!("unexpected character {:?}", other as char),
                    })
                }
            };
            out.push((tok, line, col));
        }
    }
}

fn is_ident_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn ident_at(src: &str, start: usize) -> &str {
    let end = src[start..]
        .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
        .map(|i| start + i)
        .unwrap_or(src.len());
    &src[start..end]
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    fragment: Fragment,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (u32, u32) {
        let (_, line, col) = self.toks[self.pos];
        (line, col)
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError::Unexpected {
            line,
            col,
            expected: expected.to_string(),
            found: self.peek().to_string(),
        }
    }

    fn additive(&self, token: &'static str) -> Result<(), ParseError> {
        if self.fragment == Fragment::Mll {
            let (line, col) = self.here();
            return Err(ParseError::OutsideFragment {
                line,
                col,
                token,
                fragment: self.fragment,
            });
        }
        Ok(())
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.lolli()
    }

    fn lolli(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.par()?;
        if *self.peek() == Tok::Lolli {
            self.advance();
            let rhs = self.lolli()?;
            return Ok(formula::lolli(lhs, rhs));
        }
        Ok(lhs)
    }

    fn par(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.plus()?;
        while *self.peek() == Tok::Bar {
            self.advance();
            let rhs = self.plus()?;
            acc = formula::par(acc, rhs);
        }
        Ok(acc)
    }

    fn plus(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.with()?;
        while *self.peek() == Tok::Plus {
            self.additive("+")?;
            self.advance();
            let rhs = self.with()?;
            acc = formula::plus(acc, rhs);
        }
        Ok(acc)
    }

    fn with(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.tensor()?;
        while *self.peek() == Tok::Amp {
            self.additive("&")?;
            self.advance();
            let rhs = self.tensor()?;
            acc = formula::with(acc, rhs);
        }
        Ok(acc)
    }

    fn tensor(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.advance();
            let rhs = self.unary()?;
            acc = formula::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.advance();
                Ok(formula::neg(self.unary()?))
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(Formula::Atom(name))
            }
            Tok::One => {
                self.advance();
                Ok(Formula::One)
            }
            Tok::Top => {
                self.additive("top")?;
                self.advance();
                Ok(Formula::Top)
            }
            Tok::Zero => {
                self.additive("0")?;
                self.advance();
                Ok(formula::zero())
            }
            Tok::Bot => {
                self.advance();
                Ok(formula::bot())
            }
            Tok::LParen => {
                self.advance();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.advance();
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula: '~', an atom, '1', 'top', '0', 'bot' or '('")),
        }
    }

    /// Comma separated formulas, possibly none, up to `stop` or end of input.
    fn formula_list(&mut self, stop: &Tok) -> Result<ResourceBag, ParseError> {
        let mut bag = ResourceBag::new();
        if self.peek() == stop || *self.peek() == Tok::Eof {
            return Ok(bag);
        }
        loop {
            bag.insert(self.formula()?);
            match self.peek() {
                Tok::Comma => {
                    self.advance();
                }
                t if t == stop || *t == Tok::Eof => return Ok(bag),
                _ => return Err(self.unexpected(&format!("',' or {stop}"))),
            }
        }
    }
}

fn parser(text: &str, fragment: Fragment) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: Lexer::new(text).tokens()?,
        pos: 0,
        fragment,
    })
}

/// Parses a single formula, rejecting additive connectives when `fragment`
/// is the multiplicative-only one.
pub fn parse_formula(text: &str, fragment: Fragment) -> Result<Formula, ParseError> {
    let mut p = parser(text, fragment)?;
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("an operator ('*', '&', '+', '|', '-o') or end of input"));
    }
    Ok(f)
}

/// Parses `F1, F2 |- G1, G2`; either side may be empty.
pub fn parse_sequent(text: &str, fragment: Fragment) -> Result<Sequent, ParseError> {
    let mut p = parser(text, fragment)?;
    let left = p.formula_list(&Tok::Turnstile)?;
    if *p.peek() != Tok::Turnstile {
        return Err(p.unexpected("'|-'"));
    }
    p.advance();
    let right = p.formula_list(&Tok::Turnstile)?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(Sequent::new(left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{atom, bot, lolli, neg, par, plus, tensor, with, zero};

    fn ok(text: &str) -> Formula {
        parse_formula(text, Fragment::Mall).unwrap()
    }

    #[test]
    fn precedence_ladder() {
        assert_eq!(ok("A * B"), tensor(atom("A"), atom("B")));
        assert_eq!(ok("A * B & C"), with(tensor(atom("A"), atom("B")), atom("C")));
        assert_eq!(ok("A & B + C"), plus(with(atom("A"), atom("B")), atom("C")));
        assert_eq!(ok("A + B | C"), par(plus(atom("A"), atom("B")), atom("C")));
        assert_eq!(
            ok("A | B -o C"),
            lolli(par(atom("A"), atom("B")), atom("C"))
        );
        assert_eq!(
            ok("A -o B -o C"),
            lolli(atom("A"), lolli(atom("B"), atom("C")))
        );
        assert_eq!(ok("~A * B"), tensor(neg(atom("A")), atom("B")));
        assert_eq!(ok("~(A * B)"), neg(tensor(atom("A"), atom("B"))));
    }

    #[test]
    fn derived_connectives_are_rewritten() {
        assert_eq!(ok("bot"), bot());
        assert_eq!(ok("0"), zero());
        assert_eq!(ok("A | B"), lolli(neg(atom("A")), atom("B")));
        assert_eq!(ok("~top"), zero());
    }

    #[test]
    fn identifier_rules() {
        assert_eq!(ok("H2O"), atom("H2O"));
        assert_eq!(ok("_x1"), atom("_x1"));
        assert_eq!(ok("topology"), atom("topology"));
        assert_eq!(ok("bots"), atom("bots"));
        assert!(parse_formula("2fast", Fragment::Mall).is_err());
    }

    #[test]
    fn syntax_errors_carry_position_and_expectation() {
        let err = parse_formula("A * ", Fragment::Mall).unwrap_err();
        match err {
            ParseError::Unexpected { line, col, ref expected, .. } => {
                assert_eq!((line, col), (1, 5));
                assert!(expected.contains("a formula"), "{expected}");
            }
            other => panic!("wrong error {other:?}"),
        }
        let err = parse_formula("(A -o B", Fragment::Mall).unwrap_err();
        assert!(matches!(err, ParseError::Unexpected { .. }), "{err}");
        let err = parse_formula("A @ B", Fragment::Mall).unwrap_err();
        assert!(matches!(err, ParseError::Lex { col: 3, .. }), "{err}");
    }

    #[test]
    fn mll_rejects_additive_tokens_at_position() {
        for (text, tok) in [("A & B", "&"), ("A + B", "+"), ("top", "top"), ("0", "0")] {
            let err = parse_formula(text, Fragment::Mll).unwrap_err();
            match err {
                ParseError::OutsideFragment { token, .. } => assert_eq!(token, tok),
                other => panic!("expected fragment error for {text}, got {other:?}"),
            }
        }
        assert!(parse_formula("bot", Fragment::Mll).is_ok());
        assert!(parse_formula("A | B", Fragment::Mll).is_ok());
    }

    #[test]
    fn sequent_sides_may_be_empty() {
        let s = parse_sequent("A, B |- A", Fragment::Mall).unwrap();
        assert_eq!(s.left.size(), 2);
        assert_eq!(s.right.size(), 1);
        assert_eq!(s.to_string(), "A, B |- A");

        let s = parse_sequent("|- 1", Fragment::Mall).unwrap();
        assert!(s.left.is_empty());
        let s = parse_sequent("A |-", Fragment::Mall).unwrap();
        assert!(s.right.is_empty());
        let s = parse_sequent("|-", Fragment::Mall).unwrap();
        assert!(s.left.is_empty() && s.right.is_empty());
        assert!(parse_sequent("A, B", Fragment::Mall).is_err());
        assert!(parse_sequent("A |- B |- C", Fragment::Mall).is_err());
    }

    #[test]
    fn duplicate_formulas_accumulate() {
        let s = parse_sequent("A, A, B |- A * A", Fragment::Mall).unwrap();
        assert_eq!(s.left.count(&atom("A")), 2);
        assert_eq!(s.left.count(&atom("B")), 1);
    }
}
