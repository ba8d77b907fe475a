//! Formula languages of the two logics: QL (orthomodular quantum logic, with
//! connectives `~ & | ->0 ->3 ==`) and BQ (the normal modal logic K+B+Q, with
//! connectives `! [] <> & | -> <->` and constants `true`, `false`).
//!
//! Both ASTs carry a [`Span`] on every node. Equality ignores spans, so a
//! parsed formula compares equal to the same formula built by hand.

mod parse;
mod rewrite;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse_bq, parse_ql, ParseError, ParseErrorKind};
pub use rewrite::{
    bq_axiom, expand_ql, kernelize_ql, normalize_bq, ql_axiom, translate, translate_diamond_form,
    BqAxiom, QL_AXIOM_COUNT,
};

/// Byte offsets into the parsed text. Synthesized nodes carry `0..0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// True iff `name` matches `[a-z][a-zA-Z0-9_]*` and is not a reserved word.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !is_reserved(name)
}

pub(crate) fn is_reserved(name: &str) -> bool {
    name == "true" || name == "false"
}

fn checked_atom_name(name: impl Into<String>) -> String {
    let name = name.into();
    assert!(is_atom_name(&name), "invalid atom name `{name}`");
    name
}

// ---------------------------------------------------------------------------
// QL

#[derive(Clone, Debug)]
pub struct QlFormula {
    pub kind: QlKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QlKind {
    Atom(String),
    /// Quantum negation `~`.
    Neg(Box<QlFormula>),
    /// Quantum conjunction `&`.
    Meet(Box<QlFormula>, Box<QlFormula>),
    /// Quantum disjunction `|`.
    Join(Box<QlFormula>, Box<QlFormula>),
    /// `->0`, expanded by [`expand_ql`].
    Impl0(Box<QlFormula>, Box<QlFormula>),
    /// `->3`, expanded by [`expand_ql`].
    Impl3(Box<QlFormula>, Box<QlFormula>),
    /// `==`, expanded by [`expand_ql`].
    Equiv(Box<QlFormula>, Box<QlFormula>),
}

impl PartialEq for QlFormula {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for QlFormula {}

impl std::hash::Hash for QlFormula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state)
    }
}

impl From<QlKind> for QlFormula {
    fn from(kind: QlKind) -> Self {
        QlFormula {
            kind,
            span: Span::default(),
        }
    }
}

impl QlFormula {
    /// Panics if `name` is not a valid atom name.
    pub fn atom(name: impl Into<String>) -> Self {
        QlKind::Atom(checked_atom_name(name)).into()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: QlFormula) -> Self {
        QlKind::Neg(Box::new(a)).into()
    }

    pub fn meet(a: QlFormula, b: QlFormula) -> Self {
        QlKind::Meet(Box::new(a), Box::new(b)).into()
    }

    pub fn join(a: QlFormula, b: QlFormula) -> Self {
        QlKind::Join(Box::new(a), Box::new(b)).into()
    }

    pub fn impl0(a: QlFormula, b: QlFormula) -> Self {
        QlKind::Impl0(Box::new(a), Box::new(b)).into()
    }

    pub fn impl3(a: QlFormula, b: QlFormula) -> Self {
        QlKind::Impl3(Box::new(a), Box::new(b)).into()
    }

    pub fn equiv(a: QlFormula, b: QlFormula) -> Self {
        QlKind::Equiv(Box::new(a), Box::new(b)).into()
    }

    pub fn with_span(mut self, span: Span) -> Self {
        self.span = span;
        self
    }

    pub fn children(&self) -> Vec<&QlFormula> {
        match &self.kind {
            QlKind::Atom(_) => vec![],
            QlKind::Neg(a) => vec![a],
            QlKind::Meet(a, b)
            | QlKind::Join(a, b)
            | QlKind::Impl0(a, b)
            | QlKind::Impl3(a, b)
            | QlKind::Equiv(a, b) => vec![a, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.node_count())
            .sum::<usize>()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match &self.kind {
            QlKind::Atom(name) => {
                out.insert(name.clone());
            }
            _ => self.children().iter().for_each(|c| c.collect_atoms(out)),
        }
    }

    /// Only `Atom`, `Neg`, `Meet`, `Join` nodes.
    pub fn is_core(&self) -> bool {
        match &self.kind {
            QlKind::Impl0(..) | QlKind::Impl3(..) | QlKind::Equiv(..) => false,
            _ => self.children().iter().all(|c| c.is_core()),
        }
    }

    /// Only `Atom`, `Neg`, `Meet` nodes.
    pub fn is_kernel(&self) -> bool {
        match &self.kind {
            QlKind::Atom(_) | QlKind::Neg(_) | QlKind::Meet(..) => {
                self.children().iter().all(|c| c.is_kernel())
            }
            _ => false,
        }
    }

    fn binary_op(&self) -> Option<&'static str> {
        Some(match self.kind {
            QlKind::Meet(..) => "&",
            QlKind::Join(..) => "|",
            QlKind::Impl0(..) => "->0",
            QlKind::Impl3(..) => "->3",
            QlKind::Equiv(..) => "==",
            _ => return None,
        })
    }
}

impl fmt::Display for QlFormula {
    /// Canonical ASCII form: unary operators parenthesize non-atomic operands,
    /// binary operators parenthesize binary operands.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            QlKind::Atom(name) => f.write_str(name),
            QlKind::Neg(a) => match a.kind {
                QlKind::Atom(_) => write!(f, "~{a}"),
                _ => write!(f, "~({a})"),
            },
            QlKind::Meet(a, b)
            | QlKind::Join(a, b)
            | QlKind::Impl0(a, b)
            | QlKind::Impl3(a, b)
            | QlKind::Equiv(a, b) => {
                let op = self.binary_op().expect("binary node");
                write_operand(f, a, a.binary_op().is_some())?;
                write!(f, " {op} ")?;
                write_operand(f, b, b.binary_op().is_some())
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, x: &dyn fmt::Display, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

// ---------------------------------------------------------------------------
// BQ

#[derive(Clone, Debug)]
pub struct BqFormula {
    pub kind: BqKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BqKind {
    Atom(String),
    Top,
    Bot,
    Neg(Box<BqFormula>),
    Box(Box<BqFormula>),
    /// Definitionally `!([](!x))`; see [`normalize_bq`].
    Diamond(Box<BqFormula>),
    And(Box<BqFormula>, Box<BqFormula>),
    Or(Box<BqFormula>, Box<BqFormula>),
    Imp(Box<BqFormula>, Box<BqFormula>),
    Iff(Box<BqFormula>, Box<BqFormula>),
}

impl PartialEq for BqFormula {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for BqFormula {}

impl std::hash::Hash for BqFormula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state)
    }
}

impl From<BqKind> for BqFormula {
    fn from(kind: BqKind) -> Self {
        BqFormula {
            kind,
            span: Span::default(),
        }
    }
}

impl BqFormula {
    /// Panics if `name` is not a valid atom name.
    pub fn atom(name: impl Into<String>) -> Self {
        BqKind::Atom(checked_atom_name(name)).into()
    }

    pub fn top() -> Self {
        BqKind::Top.into()
    }

    pub fn bot() -> Self {
        BqKind::Bot.into()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: BqFormula) -> Self {
        BqKind::Neg(Box::new(a)).into()
    }

    pub fn boxed(a: BqFormula) -> Self {
        BqKind::Box(Box::new(a)).into()
    }

    pub fn diamond(a: BqFormula) -> Self {
        BqKind::Diamond(Box::new(a)).into()
    }

    pub fn and(a: BqFormula, b: BqFormula) -> Self {
        BqKind::And(Box::new(a), Box::new(b)).into()
    }

    pub fn or(a: BqFormula, b: BqFormula) -> Self {
        BqKind::Or(Box::new(a), Box::new(b)).into()
    }

    pub fn imp(a: BqFormula, b: BqFormula) -> Self {
        BqKind::Imp(Box::new(a), Box::new(b)).into()
    }

    pub fn iff(a: BqFormula, b: BqFormula) -> Self {
        BqKind::Iff(Box::new(a), Box::new(b)).into()
    }

    pub fn with_span(mut self, span: Span) -> Self {
        self.span = span;
        self
    }

    pub fn children(&self) -> Vec<&BqFormula> {
        match &self.kind {
            BqKind::Atom(_) | BqKind::Top | BqKind::Bot => vec![],
            BqKind::Neg(a) | BqKind::Box(a) | BqKind::Diamond(a) => vec![a],
            BqKind::And(a, b) | BqKind::Or(a, b) | BqKind::Imp(a, b) | BqKind::Iff(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.node_count())
            .sum::<usize>()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match &self.kind {
            BqKind::Atom(name) => {
                out.insert(name.clone());
            }
            _ => self.children().iter().for_each(|c| c.collect_atoms(out)),
        }
    }

    /// No `Diamond` or `Iff` nodes.
    pub fn is_normal(&self) -> bool {
        match &self.kind {
            BqKind::Diamond(_) | BqKind::Iff(..) => false,
            _ => self.children().iter().all(|c| c.is_normal()),
        }
    }

    fn binary_op(&self) -> Option<&'static str> {
        Some(match self.kind {
            BqKind::And(..) => "&",
            BqKind::Or(..) => "|",
            BqKind::Imp(..) => "->",
            BqKind::Iff(..) => "<->",
            _ => return None,
        })
    }
}

impl fmt::Display for BqFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BqKind::Atom(name) => f.write_str(name),
            BqKind::Top => f.write_str("true"),
            BqKind::Bot => f.write_str("false"),
            BqKind::Neg(a) | BqKind::Box(a) | BqKind::Diamond(a) => {
                let op = match self.kind {
                    BqKind::Neg(_) => "!",
                    BqKind::Box(_) => "[]",
                    _ => "<>",
                };
                let atomic = matches!(a.kind, BqKind::Atom(_) | BqKind::Top | BqKind::Bot);
                f.write_str(op)?;
                write_operand(f, a, !atomic)
            }
            BqKind::And(a, b) | BqKind::Or(a, b) | BqKind::Imp(a, b) | BqKind::Iff(a, b) => {
                let op = self.binary_op().expect("binary node");
                write_operand(f, a, a.binary_op().is_some())?;
                write!(f, " {op} ")?;
                write_operand(f, b, b.binary_op().is_some())
            }
        }
    }
}
