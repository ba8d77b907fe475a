//! Definitional rewrites and the QL → BQ translation.
//!
//! Quantum negation `~x` translates to `!([]x)` (classical negation of
//! observability), or equivalently to `<>(!x)`. Quantum conjunction is
//! classical conjunction. Quantum disjunction is first eliminated through
//! the De Morgan law `x | y = ~(~x & ~y)`, after which the translation is a
//! single linear pass.

use super::{BqFormula, BqKind, QlFormula, QlKind};
use crate::error::{Error, Result};

type Q = QlFormula;
type B = BqFormula;

/// Replaces `->0`, `->3` and `==` by their definitions, bottom-up:
///
/// * `a ->0 b  :=  ~a | b`
/// * `a ->3 b  :=  ((~a & b) | (~a & ~b)) | (a & (~a | b))`
/// * `a == b   :=  (a & b) | (~a & ~b)`
///
/// The result is core. The three-way join in `->3` associates left.
pub fn expand_ql(f: &QlFormula) -> QlFormula {
    let kind = match &f.kind {
        QlKind::Atom(_) => return f.clone(),
        QlKind::Neg(x) => QlKind::Neg(Box::new(expand_ql(x))),
        QlKind::Meet(x, y) => QlKind::Meet(Box::new(expand_ql(x)), Box::new(expand_ql(y))),
        QlKind::Join(x, y) => QlKind::Join(Box::new(expand_ql(x)), Box::new(expand_ql(y))),
        QlKind::Impl0(x, y) => {
            return Q::join(Q::neg(expand_ql(x)), expand_ql(y)).with_span(f.span)
        }
        QlKind::Impl3(x, y) => {
            let (a, b) = (expand_ql(x), expand_ql(y));
            let na = Q::neg(a.clone());
            return Q::join(
                Q::join(
                    Q::meet(na.clone(), b.clone()),
                    Q::meet(na.clone(), Q::neg(b.clone())),
                ),
                Q::meet(a, Q::join(na, b)),
            )
            .with_span(f.span);
        }
        QlKind::Equiv(x, y) => {
            let (a, b) = (expand_ql(x), expand_ql(y));
            return Q::join(Q::meet(a.clone(), b.clone()), Q::meet(Q::neg(a), Q::neg(b)))
                .with_span(f.span);
        }
    };
    QlFormula { kind, span: f.span }
}

/// Rewrites every `x | y` to `~(~x & ~y)`, bottom-up. Derived connectives in
/// a non-core input are expanded first, so the result is always kernel.
pub fn kernelize_ql(f: &QlFormula) -> QlFormula {
    if f.is_core() {
        kernelize_core(f)
    } else {
        kernelize_core(&expand_ql(f))
    }
}

fn kernelize_core(f: &QlFormula) -> QlFormula {
    let kind = match &f.kind {
        QlKind::Atom(_) => return f.clone(),
        QlKind::Neg(x) => QlKind::Neg(Box::new(kernelize_core(x))),
        QlKind::Meet(x, y) => {
            QlKind::Meet(Box::new(kernelize_core(x)), Box::new(kernelize_core(y)))
        }
        QlKind::Join(x, y) => {
            return Q::neg(Q::meet(
                Q::neg(kernelize_core(x)),
                Q::neg(kernelize_core(y)),
            ))
            .with_span(f.span)
        }
        QlKind::Impl0(..) | QlKind::Impl3(..) | QlKind::Equiv(..) => {
            unreachable!("kernelize_core called on a non-core formula")
        }
    };
    QlFormula { kind, span: f.span }
}

/// Translates QL into BQ with `~x ↦ !([]x)` and `&` ↦ `&`.
///
/// Expansion and kernelization are applied first. For a kernel input of
/// `n` nodes the output has at most `2n` nodes.
pub fn translate(f: &QlFormula) -> BqFormula {
    map_kernel(&kernelize_ql(f), &|x| B::neg(B::boxed(x)))
}

/// Translates QL into BQ with `~x ↦ <>(!x)`.
pub fn translate_diamond_form(f: &QlFormula) -> BqFormula {
    map_kernel(&kernelize_ql(f), &|x| B::diamond(B::neg(x)))
}

fn map_kernel(f: &QlFormula, negation: &dyn Fn(BqFormula) -> BqFormula) -> BqFormula {
    match &f.kind {
        QlKind::Atom(name) => B::from(BqKind::Atom(name.clone())),
        QlKind::Neg(x) => negation(map_kernel(x, negation)),
        QlKind::Meet(x, y) => B::and(map_kernel(x, negation), map_kernel(y, negation)),
        _ => unreachable!("map_kernel expects a kernel formula"),
    }
    .with_span(f.span)
}

/// Eliminates `<>` via `<>x := !([](!x))` and `<->` via
/// `(a <-> b) := (a -> b) & (b -> a)`.
pub fn normalize_bq(f: &BqFormula) -> BqFormula {
    let kind = match &f.kind {
        BqKind::Atom(_) | BqKind::Top | BqKind::Bot => return f.clone(),
        BqKind::Neg(x) => BqKind::Neg(Box::new(normalize_bq(x))),
        BqKind::Box(x) => BqKind::Box(Box::new(normalize_bq(x))),
        BqKind::Diamond(x) => return B::neg(B::boxed(B::neg(normalize_bq(x)))).with_span(f.span),
        BqKind::And(x, y) => BqKind::And(Box::new(normalize_bq(x)), Box::new(normalize_bq(y))),
        BqKind::Or(x, y) => BqKind::Or(Box::new(normalize_bq(x)), Box::new(normalize_bq(y))),
        BqKind::Imp(x, y) => BqKind::Imp(Box::new(normalize_bq(x)), Box::new(normalize_bq(y))),
        BqKind::Iff(x, y) => {
            let (a, b) = (normalize_bq(x), normalize_bq(y));
            return B::and(B::imp(a.clone(), b.clone()), B::imp(b, a)).with_span(f.span);
        }
    };
    BqFormula { kind, span: f.span }
}

pub const QL_AXIOM_COUNT: usize = 12;

/// The `i`-th QL axiom scheme (1-based) instantiated at `a`, `b`, `c`.
/// Unused slots are ignored.
pub fn ql_axiom(i: usize, a: &QlFormula, b: &QlFormula, c: &QlFormula) -> Result<QlFormula> {
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    let f = match i {
        1 => Q::impl0(
            Q::equiv(a.clone(), b.clone()),
            Q::impl0(Q::equiv(b, c.clone()), Q::equiv(a, c)),
        ),
        2 => Q::impl0(
            Q::equiv(a.clone(), b.clone()),
            Q::equiv(Q::neg(a), Q::neg(b)),
        ),
        3 => Q::impl0(
            Q::equiv(a.clone(), b.clone()),
            Q::equiv(Q::meet(a, c.clone()), Q::meet(b, c)),
        ),
        4 => Q::equiv(Q::meet(a.clone(), b.clone()), Q::meet(b, a)),
        5 => Q::equiv(
            Q::meet(a.clone(), Q::meet(b.clone(), c.clone())),
            Q::meet(Q::meet(a, b), c),
        ),
        6 => Q::equiv(Q::meet(a.clone(), Q::join(a.clone(), b)), a),
        7 => {
            let na_a = Q::meet(Q::neg(a.clone()), a);
            Q::equiv(na_a.clone(), Q::meet(na_a, b))
        }
        8 => Q::equiv(a.clone(), Q::neg(Q::neg(a))),
        9 => Q::equiv(
            Q::neg(Q::join(a.clone(), b.clone())),
            Q::meet(Q::neg(a), Q::neg(b)),
        ),
        10 => Q::equiv(Q::equiv(a.clone(), b.clone()), Q::equiv(b, a)),
        11 => Q::impl0(Q::equiv(a.clone(), b.clone()), Q::impl0(a, b)),
        12 => Q::impl3(
            Q::impl0(a.clone(), b.clone()),
            Q::impl3(a.clone(), Q::impl3(a, b)),
        ),
        _ => {
            return Err(Error::OutOfRange {
                what: "QL axiom index",
                value: i as i64,
                min: 1,
                max: QL_AXIOM_COUNT as i64,
            })
        }
    };
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BqAxiom {
    /// `[](a -> b) -> ([]a -> []b)`
    K,
    /// `[]<>a <-> a`
    BQ,
}

impl std::str::FromStr for BqAxiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(BqAxiom::K),
            "BQ" | "bq" => Ok(BqAxiom::BQ),
            _ => Err(Error::malformed(format!(
                "unknown BQ axiom `{s}` (expected K or BQ)"
            ))),
        }
    }
}

pub fn bq_axiom(name: BqAxiom, a: &BqFormula, b: &BqFormula) -> BqFormula {
    let (a, b) = (a.clone(), b.clone());
    match name {
        BqAxiom::K => B::imp(
            B::boxed(B::imp(a.clone(), b.clone())),
            B::imp(B::boxed(a), B::boxed(b)),
        ),
        BqAxiom::BQ => B::iff(B::boxed(B::diamond(a.clone())), a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_bq, parse_ql};

    fn a(n: &str) -> Q {
        Q::atom(n)
    }

    #[test]
    fn expand_impl0() {
        assert_eq!(
            expand_ql(&parse_ql("a ->0 b").unwrap()),
            Q::join(Q::neg(a("a")), a("b"))
        );
    }

    #[test]
    fn expand_equiv() {
        assert_eq!(
            expand_ql(&parse_ql("a == b").unwrap()),
            Q::join(
                Q::meet(a("a"), a("b")),
                Q::meet(Q::neg(a("a")), Q::neg(a("b")))
            )
        );
    }

    #[test]
    fn expand_impl3_associates_left() {
        let got = expand_ql(&parse_ql("a ->3 b").unwrap());
        let want = parse_ql("((~a & b) | (~a & ~b)) | (a & (~a | b))").unwrap();
        assert_eq!(got, want);
        assert!(got.is_core());
    }

    #[test]
    fn expand_is_identity_on_core() {
        let f = parse_ql("~(a & b) | c").unwrap();
        assert_eq!(expand_ql(&f), f);
        assert_eq!(expand_ql(&a("a")), a("a"));
    }

    #[test]
    fn expand_nested_derived() {
        let f = parse_ql("(a ->0 b) == c").unwrap();
        let inner = Q::join(Q::neg(a("a")), a("b"));
        let want = Q::join(
            Q::meet(inner.clone(), a("c")),
            Q::meet(Q::neg(inner), Q::neg(a("c"))),
        );
        assert_eq!(expand_ql(&f), want);
    }

    #[test]
    fn kernelize_examples() {
        assert_eq!(
            kernelize_ql(&parse_ql("a | b").unwrap()),
            Q::neg(Q::meet(Q::neg(a("a")), Q::neg(a("b"))))
        );
        assert_eq!(
            kernelize_ql(&parse_ql("a & b").unwrap()),
            Q::meet(a("a"), a("b"))
        );
        let inner = Q::neg(Q::meet(Q::neg(a("a")), Q::neg(a("b"))));
        assert_eq!(
            kernelize_ql(&parse_ql("(a | b) | c").unwrap()),
            Q::neg(Q::meet(Q::neg(inner), Q::neg(a("c"))))
        );
    }

    #[test]
    fn translate_examples() {
        let t = |s: &str| translate(&parse_ql(s).unwrap()).to_string();
        assert_eq!(t("~a"), "!([]a)");
        assert_eq!(t("a & b"), "a & b");
        assert_eq!(t("a | b"), "!([](!([]a) & !([]b)))");
        assert_eq!(t("~(a & ~b)"), "!([](a & !([]b)))");
    }

    #[test]
    fn translate_diamond_examples() {
        let t = |s: &str| translate_diamond_form(&parse_ql(s).unwrap()).to_string();
        assert_eq!(t("~a"), "<>(!a)");
        assert_eq!(t("~~a"), "<>(!(<>(!a)))");
        assert_eq!(t("a & ~b"), "a & <>(!b)");
    }

    #[test]
    fn normalize_examples() {
        let n = |s: &str| normalize_bq(&parse_bq(s).unwrap());
        assert_eq!(n("<>p"), parse_bq("!([](!p))").unwrap());
        assert_eq!(n("[]p"), parse_bq("[]p").unwrap());
        assert_eq!(n("p <-> q"), parse_bq("(p -> q) & (q -> p)").unwrap());
        assert!(n("<>(p <-> <>q)").is_normal());
    }

    #[test]
    fn axioms_verbatim() {
        let (x, y, z) = (a("a"), a("b"), a("c"));
        assert_eq!(
            ql_axiom(8, &x, &y, &z).unwrap(),
            Q::equiv(x.clone(), Q::neg(Q::neg(x.clone())))
        );
        assert_eq!(
            ql_axiom(4, &x, &y, &z).unwrap(),
            Q::equiv(Q::meet(x.clone(), y.clone()), Q::meet(y.clone(), x.clone()))
        );
        let texts = [
            "(a == b) ->0 ((b == c) ->0 (a == c))",
            "(a == b) ->0 (~a == ~b)",
            "(a == b) ->0 ((a & c) == (b & c))",
            "(a & b) == (b & a)",
            "(a & (b & c)) == ((a & b) & c)",
            "(a & (a | b)) == a",
            "(~a & a) == ((~a & a) & b)",
            "a == ~~a",
            "~(a | b) == (~a & ~b)",
            "(a == b) == (b == a)",
            "(a == b) ->0 (a ->0 b)",
            "(a ->0 b) ->3 (a ->3 (a ->3 b))",
        ];
        for (i, t) in texts.iter().enumerate() {
            assert_eq!(
                ql_axiom(i + 1, &x, &y, &z).unwrap(),
                parse_ql(t).unwrap(),
                "axiom {}",
                i + 1
            );
        }
        assert!(matches!(
            ql_axiom(0, &x, &y, &z),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            ql_axiom(13, &x, &y, &z),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn bq_axioms() {
        let (p, q) = (B::atom("a"), B::atom("b"));
        assert_eq!(
            bq_axiom(BqAxiom::K, &p, &q),
            B::imp(
                B::boxed(B::imp(p.clone(), q.clone())),
                B::imp(B::boxed(p.clone()), B::boxed(q.clone()))
            )
        );
        assert_eq!(
            bq_axiom(BqAxiom::BQ, &p, &q),
            parse_bq("[]<>a <-> a").unwrap()
        );
        assert_eq!("K".parse::<BqAxiom>().unwrap(), BqAxiom::K);
        assert!("D".parse::<BqAxiom>().is_err());
    }
}
