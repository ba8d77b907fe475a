//! Hand-written lexer and recursive-descent parsers for the ASCII surface
//! syntax of both logics.
//!
//! ```text
//! QL:  equiv := impl ( "==" impl )?
//!      impl  := join ( ("->0" | "->3") impl )?
//!      join  := meet ( "|" meet )*
//!      meet  := unary ( "&" unary )*
//!      unary := "~" unary | atom | "(" equiv ")"
//!
//! BQ:  iff   := imp ( "<->" imp )?
//!      imp   := or ( "->" imp )?
//!      or    := and ( "|" and )*
//!      and   := unary ( "&" unary )*
//!      unary := ("!" | "[]" | "<>") unary | atom | "true" | "false" | "(" iff ")"
//! ```

use std::fmt;

use thiserror::Error;

use super::{is_reserved, BqFormula, BqKind, QlFormula, QlKind, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A character (or character sequence) that starts no token.
    Lexical(String),
    /// Missing `)` for the `(` at the span, or a stray `)`.
    Unbalanced,
    /// An operator with a missing operand.
    DanglingOperator(String),
    /// `a == b == c` and `p <-> q <-> r`.
    ChainedEquivalence,
    UnexpectedToken(String),
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(s) => write!(f, "lexical error: unexpected `{s}`"),
            ParseErrorKind::Unbalanced => f.write_str("unbalanced parentheses"),
            ParseErrorKind::DanglingOperator(op) => write!(f, "dangling operator `{op}`"),
            ParseErrorKind::ChainedEquivalence => {
                f.write_str("equivalences do not associate; add parentheses")
            }
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::Empty => f.write_str("empty formula"),
        }
    }
}

fn err<T>(kind: ParseErrorKind, span: Span) -> Result<T, ParseError> {
    Err(ParseError { kind, span })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Logic {
    Ql,
    Bq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Tilde,
    Bang,
    Box,
    Diamond,
    And,
    Or,
    Impl0,
    Impl3,
    Imp,
    Iff,
    Equiv,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> &str {
        match self {
            Tok::Ident(s) => s,
            Tok::True => "true",
            Tok::False => "false",
            Tok::Tilde => "~",
            Tok::Bang => "!",
            Tok::Box => "[]",
            Tok::Diamond => "<>",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Impl0 => "->0",
            Tok::Impl3 => "->3",
            Tok::Imp => "->",
            Tok::Iff => "<->",
            Tok::Equiv => "==",
            Tok::LParen => "(",
            Tok::RParen => ")",
        }
    }

    fn is_operator(&self) -> bool {
        !matches!(
            self,
            Tok::Ident(_) | Tok::True | Tok::False | Tok::LParen | Tok::RParen
        )
    }
}

fn lex(text: &str, logic: Logic) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if c.is_ascii_lowercase() {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..len];
            let tok = match (word, logic) {
                ("true", Logic::Bq) => Tok::True,
                ("false", Logic::Bq) => Tok::False,
                (w, Logic::Ql) if is_reserved(w) => {
                    return err(
                        ParseErrorKind::Lexical(w.to_string()),
                        Span::new(start, start + len),
                    )
                }
                (w, _) => Tok::Ident(w.to_string()),
            };
            (tok, len)
        } else {
            let sym = match logic {
                Logic::Ql => [
                    ("->0", Tok::Impl0),
                    ("->3", Tok::Impl3),
                    ("==", Tok::Equiv),
                    ("~", Tok::Tilde),
                ]
                .into_iter()
                .find(|(s, _)| rest.starts_with(s)),
                Logic::Bq => [
                    ("<->", Tok::Iff),
                    ("->", Tok::Imp),
                    ("[]", Tok::Box),
                    ("<>", Tok::Diamond),
                    ("!", Tok::Bang),
                ]
                .into_iter()
                .find(|(s, _)| rest.starts_with(s)),
            }
            .or_else(|| {
                [
                    ("&", Tok::And),
                    ("|", Tok::Or),
                    ("(", Tok::LParen),
                    (")", Tok::RParen),
                ]
                .into_iter()
                .find(|(s, _)| rest.starts_with(s))
            });
            match sym {
                Some((s, tok)) => (tok, s.len()),
                None => {
                    return err(
                        ParseErrorKind::Lexical(c.to_string()),
                        Span::new(start, start + c.len_utf8()),
                    )
                }
            }
        };
        out.push((tok, Span::new(start, start + len)));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    text_len: usize,
}

impl Parser {
    fn new(text: &str, logic: Logic) -> Result<Self, ParseError> {
        let toks = lex(text, logic)?;
        if toks.is_empty() {
            return err(ParseErrorKind::Empty, Span::new(0, text.len()));
        }
        Ok(Parser {
            toks,
            pos: 0,
            text_len: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> Option<Span> {
        if self.peek() == Some(tok) {
            Some(self.bump().1)
        } else {
            None
        }
    }

    /// Error for a missing operand at the current position.
    fn missing_operand<T>(&self) -> Result<T, ParseError> {
        let prev = self.pos.checked_sub(1).map(|i| &self.toks[i]);
        match (self.toks.get(self.pos), prev) {
            (Some((t, span)), _) if t.is_operator() && !is_prefix(t) => {
                err(ParseErrorKind::DanglingOperator(t.text().into()), *span)
            }
            (_, Some((p, span))) if p.is_operator() => {
                err(ParseErrorKind::DanglingOperator(p.text().into()), *span)
            }
            (Some((t, span)), _) => err(ParseErrorKind::UnexpectedToken(t.text().into()), *span),
            (None, _) => err(
                ParseErrorKind::Empty,
                Span::new(self.text_len, self.text_len),
            ),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((Tok::RParen, span)) => err(ParseErrorKind::Unbalanced, *span),
            Some((Tok::Equiv | Tok::Iff, span)) => err(ParseErrorKind::ChainedEquivalence, *span),
            Some((t, span)) => err(ParseErrorKind::UnexpectedToken(t.text().into()), *span),
        }
    }

    fn close_paren(&mut self, open: Span) -> Result<Span, ParseError> {
        match self.eat(&Tok::RParen) {
            Some(span) => Ok(span),
            None => match self.toks.get(self.pos) {
                None => err(ParseErrorKind::Unbalanced, open),
                Some((Tok::Equiv | Tok::Iff, span)) => {
                    err(ParseErrorKind::ChainedEquivalence, *span)
                }
                Some((t, span)) => err(ParseErrorKind::UnexpectedToken(t.text().into()), *span),
            },
        }
    }
}

fn is_prefix(t: &Tok) -> bool {
    matches!(t, Tok::Tilde | Tok::Bang | Tok::Box | Tok::Diamond)
}

fn join_span(a: Span, b: Span) -> Span {
    Span::new(a.start.min(b.start), a.end.max(b.end))
}

// ---------------------------------------------------------------------------
// QL

/// Parses a QL formula. Derived connectives stay as first-class nodes.
pub fn parse_ql(text: &str) -> Result<QlFormula, ParseError> {
    let mut p = Parser::new(text, Logic::Ql)?;
    let f = ql_equiv(&mut p)?;
    p.finish()?;
    Ok(f)
}

fn ql_bin(
    kind: fn(Box<QlFormula>, Box<QlFormula>) -> QlKind,
    a: QlFormula,
    b: QlFormula,
) -> QlFormula {
    let span = join_span(a.span, b.span);
    QlFormula {
        kind: kind(Box::new(a), Box::new(b)),
        span,
    }
}

fn ql_equiv(p: &mut Parser) -> Result<QlFormula, ParseError> {
    let lhs = ql_impl(p)?;
    if p.eat(&Tok::Equiv).is_some() {
        let rhs = ql_impl(p)?;
        return Ok(ql_bin(QlKind::Equiv, lhs, rhs));
    }
    Ok(lhs)
}

fn ql_impl(p: &mut Parser) -> Result<QlFormula, ParseError> {
    let lhs = ql_join(p)?;
    let kind = match p.peek() {
        Some(Tok::Impl0) => QlKind::Impl0,
        Some(Tok::Impl3) => QlKind::Impl3,
        _ => return Ok(lhs),
    };
    p.bump();
    let rhs = ql_impl(p)?;
    Ok(ql_bin(kind, lhs, rhs))
}

fn ql_join(p: &mut Parser) -> Result<QlFormula, ParseError> {
    let mut lhs = ql_meet(p)?;
    while p.eat(&Tok::Or).is_some() {
        let rhs = ql_meet(p)?;
        lhs = ql_bin(QlKind::Join, lhs, rhs);
    }
    Ok(lhs)
}

fn ql_meet(p: &mut Parser) -> Result<QlFormula, ParseError> {
    let mut lhs = ql_unary(p)?;
    while p.eat(&Tok::And).is_some() {
        let rhs = ql_unary(p)?;
        lhs = ql_bin(QlKind::Meet, lhs, rhs);
    }
    Ok(lhs)
}

fn ql_unary(p: &mut Parser) -> Result<QlFormula, ParseError> {
    match p.peek() {
        Some(Tok::Tilde) => {
            let (_, op) = p.bump();
            let inner = ql_unary(p)?;
            let span = join_span(op, inner.span);
            Ok(QlFormula {
                kind: QlKind::Neg(Box::new(inner)),
                span,
            })
        }
        Some(Tok::Ident(_)) => {
            let (tok, span) = p.bump();
            let Tok::Ident(name) = tok else {
                unreachable!()
            };
            Ok(QlFormula {
                kind: QlKind::Atom(name),
                span,
            })
        }
        Some(Tok::LParen) => {
            let (_, open) = p.bump();
            let inner = ql_equiv(p)?;
            let close = p.close_paren(open)?;
            Ok(inner.with_span(join_span(open, close)))
        }
        _ => p.missing_operand(),
    }
}

// ---------------------------------------------------------------------------
// BQ

pub fn parse_bq(text: &str) -> Result<BqFormula, ParseError> {
    let mut p = Parser::new(text, Logic::Bq)?;
    let f = bq_iff(&mut p)?;
    p.finish()?;
    Ok(f)
}

fn bq_bin(
    kind: fn(Box<BqFormula>, Box<BqFormula>) -> BqKind,
    a: BqFormula,
    b: BqFormula,
) -> BqFormula {
    let span = join_span(a.span, b.span);
    BqFormula {
        kind: kind(Box::new(a), Box::new(b)),
        span,
    }
}

fn bq_iff(p: &mut Parser) -> Result<BqFormula, ParseError> {
    let lhs = bq_imp(p)?;
    if p.eat(&Tok::Iff).is_some() {
        let rhs = bq_imp(p)?;
        return Ok(bq_bin(BqKind::Iff, lhs, rhs));
    }
    Ok(lhs)
}

fn bq_imp(p: &mut Parser) -> Result<BqFormula, ParseError> {
    let lhs = bq_or(p)?;
    if p.eat(&Tok::Imp).is_some() {
        let rhs = bq_imp(p)?;
        return Ok(bq_bin(BqKind::Imp, lhs, rhs));
    }
    Ok(lhs)
}

fn bq_or(p: &mut Parser) -> Result<BqFormula, ParseError> {
    let mut lhs = bq_and(p)?;
    while p.eat(&Tok::Or).is_some() {
        let rhs = bq_and(p)?;
        lhs = bq_bin(BqKind::Or, lhs, rhs);
    }
    Ok(lhs)
}

fn bq_and(p: &mut Parser) -> Result<BqFormula, ParseError> {
    let mut lhs = bq_unary(p)?;
    while p.eat(&Tok::And).is_some() {
        let rhs = bq_unary(p)?;
        lhs = bq_bin(BqKind::And, lhs, rhs);
    }
    Ok(lhs)
}

fn bq_unary(p: &mut Parser) -> Result<BqFormula, ParseError> {
    let wrap: fn(Box<BqFormula>) -> BqKind = match p.peek() {
        Some(Tok::Bang) => BqKind::Neg,
        Some(Tok::Box) => BqKind::Box,
        Some(Tok::Diamond) => BqKind::Diamond,
        Some(Tok::Ident(_) | Tok::True | Tok::False) => {
            let (tok, span) = p.bump();
            let kind = match tok {
                Tok::True => BqKind::Top,
                Tok::False => BqKind::Bot,
                Tok::Ident(name) => BqKind::Atom(name),
                _ => unreachable!(),
            };
            return Ok(BqFormula { kind, span });
        }
        Some(Tok::LParen) => {
            let (_, open) = p.bump();
            let inner = bq_iff(p)?;
            let close = p.close_paren(open)?;
            return Ok(inner.with_span(join_span(open, close)));
        }
        _ => return p.missing_operand(),
    };
    let (_, op) = p.bump();
    let inner = bq_unary(p)?;
    let span = join_span(op, inner.span);
    Ok(BqFormula {
        kind: wrap(Box::new(inner)),
        span,
    })
}
