//! Finite orthomodular lattices.
//!
//! A lattice is given by its order relation and orthocomplement; meet and
//! join tables are derived from the order and checked, never supplied.

use std::collections::BTreeMap;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formula::{expand_ql, QlFormula, QlKind};
use crate::guard;
use crate::report::{CertificateReport, Validity};

/// Representation limit: one `u64` row per element.
pub const MAX_ELEMENTS: usize = 64;

/// Limit on `|L|^atoms` for [`ql_valid`].
pub const MAX_VALUATIONS: u128 = 10_000_000;

/// JSON lattice file. Reflexive pairs of `leq` are implied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub ocompl: IndexMap<String, String>,
    pub bottom: String,
    pub top: String,
}

impl LatticeFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice file serializes")
    }
}

/// Atom name → element index.
pub type QlValuation = BTreeMap<String, usize>;

/// Index-addressed order structure that passed the well-formedness checks
/// but not necessarily the lattice laws.
struct Structure {
    names: Vec<String>,
    /// `up[x]` has bit `y` set iff `x ≼ y`.
    up: Vec<u64>,
    ocompl: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Structure {
    fn from_file(file: &LatticeFile) -> Result<Self> {
        let n = file.elements.len();
        if n == 0 {
            return Err(Error::malformed("lattice has no elements"));
        }
        guard::check_hard("lattice elements", n as u128, MAX_ELEMENTS as u128)?;
        let mut index = BTreeMap::new();
        for (i, name) in file.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::malformed(format!("duplicate element `{name}`")));
            }
        }
        let lookup = |name: &str, ctx: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::malformed(format!("{ctx} names unknown element `{name}`")))
        };
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (x, y) in &file.leq {
            let (x, y) = (lookup(x, "leq")?, lookup(y, "leq")?);
            up[x] |= 1 << y;
        }
        let mut ocompl = vec![usize::MAX; n];
        for (k, v) in &file.ocompl {
            ocompl[lookup(k, "ocompl key")?] = lookup(v, "ocompl value")?;
        }
        if let Some(i) = ocompl.iter().position(|&c| c == usize::MAX) {
            return Err(Error::malformed(format!(
                "ocompl is not total: no entry for `{}`",
                file.elements[i]
            )));
        }
        Ok(Structure {
            names: file.elements.clone(),
            up,
            ocompl,
            bottom: lookup(&file.bottom, "bottom")?,
            top: lookup(&file.top, "top")?,
        })
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    /// Greatest lower bound, if it exists.
    fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n())
            .filter(|&z| self.leq(z, x) && self.leq(z, y))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&z| self.leq(z, g)))
    }

    fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n())
            .filter(|&z| self.leq(x, z) && self.leq(y, z))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&g| upper.iter().all(|&z| self.leq(g, z)))
    }

    fn table(
        &self,
        op: impl Fn(usize, usize) -> Option<usize>,
    ) -> std::result::Result<Vec<usize>, (usize, usize)> {
        let n = self.n();
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                t.push(op(x, y).ok_or((x, y))?);
            }
        }
        Ok(t)
    }
}

/// Checks every orthomodular-lattice law on `file`.
///
/// Malformed input (unknown names, non-total `ocompl`, duplicates, too many
/// elements) is an `Err`; law violations are failing report entries with a
/// concrete counterexample.
pub fn check_oml(file: &LatticeFile) -> Result<CertificateReport> {
    let s = Structure::from_file(file)?;
    Ok(check_structure(&s).0)
}

/// Flattened `n × n` meet and join tables.
type Tables = (Vec<usize>, Vec<usize>);

fn check_structure(s: &Structure) -> (CertificateReport, Option<Tables>) {
    let n = s.n();
    let nm = |i: usize| s.names[i].as_str();
    let mut r = CertificateReport::new("check_oml");
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));

    r.law(
        "antisymmetry",
        pairs()
            .find(|&(x, y)| x != y && s.leq(x, y) && s.leq(y, x))
            .map(|(x, y)| json!({"x": nm(x), "y": nm(y)})),
    );
    r.law(
        "transitivity",
        pairs()
            .flat_map(|(x, y)| (0..n).map(move |z| (x, y, z)))
            .find(|&(x, y, z)| s.leq(x, y) && s.leq(y, z) && !s.leq(x, z))
            .map(|(x, y, z)| json!({"x": nm(x), "y": nm(y), "z": nm(z)})),
    );
    r.law(
        "bounds",
        (0..n)
            .find(|&x| !s.leq(s.bottom, x) || !s.leq(x, s.top))
            .map(|x| json!({"x": nm(x)})),
    );
    let meet = s.table(|x, y| s.glb(x, y));
    let join = s.table(|x, y| s.lub(x, y));
    r.law(
        "meets_exist",
        meet.as_ref()
            .err()
            .map(|&(x, y)| json!({"x": nm(x), "y": nm(y)})),
    );
    r.law(
        "joins_exist",
        join.as_ref()
            .err()
            .map(|&(x, y)| json!({"x": nm(x), "y": nm(y)})),
    );

    let c = &s.ocompl;
    r.law(
        "involution",
        (0..n)
            .find(|&x| c[c[x]] != x)
            .map(|x| json!({"x": nm(x), "ocompl_ocompl": nm(c[c[x]])})),
    );
    r.law(
        "antitonicity",
        pairs()
            .find(|&(x, y)| s.leq(x, y) && !s.leq(c[y], c[x]))
            .map(|(x, y)| json!({"x": nm(x), "y": nm(y)})),
    );

    const NEEDS_LATTICE: &str = "requires meet and join tables";
    let (Ok(meet), Ok(join)) = (meet, join) else {
        for law in [
            "disjointness",
            "exhaustiveness",
            "de_morgan",
            "orthomodularity",
        ] {
            r.law(law, Some(json!({ "skipped": NEEDS_LATTICE })));
        }
        return (r, None);
    };
    let m = |x: usize, y: usize| meet[x * n + y];
    let j = |x: usize, y: usize| join[x * n + y];
    r.law(
        "disjointness",
        (0..n)
            .find(|&x| m(x, c[x]) != s.bottom)
            .map(|x| json!({"x": nm(x), "meet": nm(m(x, c[x]))})),
    );
    r.law(
        "exhaustiveness",
        (0..n)
            .find(|&x| j(x, c[x]) != s.top)
            .map(|x| json!({"x": nm(x), "join": nm(j(x, c[x]))})),
    );
    r.law(
        "de_morgan",
        pairs()
            .find(|&(x, y)| j(x, y) != c[m(c[x], c[y])])
            .map(|(x, y)| json!({"x": nm(x), "y": nm(y), "join": nm(j(x, y)), "ocompl_meet": nm(c[m(c[x], c[y])])})),
    );
    r.law(
        "orthomodularity",
        pairs()
            .find(|&(x, y)| s.leq(x, y) && j(x, m(y, c[x])) != y)
            .map(|(x, y)| json!({"x": nm(x), "y": nm(y), "rhs": nm(j(x, m(y, c[x])))})),
    );
    (r, Some((meet, join)))
}

/// A validated finite orthomodular lattice. Immutable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOml {
    names: Vec<String>,
    up: Vec<u64>,
    ocompl: Vec<usize>,
    bottom: usize,
    top: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl FiniteOml {
    /// Builds the lattice, failing unless every law of [`check_oml`] holds.
    pub fn new(file: &LatticeFile) -> Result<Self> {
        let s = Structure::from_file(file)?;
        let (report, tables) = check_structure(&s);
        match tables {
            Some((meet, join)) if report.passed() => Ok(FiniteOml {
                names: s.names,
                up: s.up,
                ocompl: s.ocompl,
                bottom: s.bottom,
                top: s.top,
                meet,
                join,
            }),
            _ => Err(Error::NotAnOml(
                report
                    .failures()
                    .map(|e| e.name.clone())
                    .collect::<Vec<_>>()
                    .join(", "),
            )),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(&LatticeFile::from_json(text)?)
    }

    pub fn to_file(&self) -> LatticeFile {
        let n = self.len();
        let leq = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.leq(x, y))
            .map(|(x, y)| (self.names[x].clone(), self.names[y].clone()))
            .collect();
        LatticeFile {
            elements: self.names.clone(),
            leq,
            ocompl: (0..n)
                .map(|x| (self.names[x].clone(), self.names[self.ocompl[x]].clone()))
                .collect(),
            bottom: self.names[self.bottom].clone(),
            top: self.names[self.top].clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn ocompl(&self, x: usize) -> usize {
        self.ocompl[x]
    }

    pub fn is_distributive(&self) -> bool {
        find_distributivity_failures(self).is_empty()
    }
}

/// Powerset lattice of a `k`-set (`0 ≤ k ≤ 4`) with set complement.
///
/// Element `i` is the subset with bitmask `i`; it is named by its letters
/// (`a`, `b`, ...), with `0` for the empty set and `1` for the full set.
pub fn gen_boolean(k: usize) -> Result<FiniteOml> {
    if k > 4 {
        return Err(Error::OutOfRange {
            what: "boolean generator size",
            value: k as i64,
            min: 0,
            max: 4,
        });
    }
    let size = 1usize << k;
    let full = size - 1;
    let name = |i: usize| -> String {
        if i == full {
            "1".into()
        } else if i == 0 {
            "0".into()
        } else {
            (0..k)
                .filter(|b| i >> b & 1 == 1)
                .map(|b| (b'a' + b as u8) as char)
                .collect()
        }
    };
    let elements: Vec<String> = (0..size).map(name).collect();
    let leq = (0..size)
        .flat_map(|x| (0..size).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && x & !y == 0)
        .map(|(x, y)| (name(x), name(y)))
        .collect();
    let ocompl = (0..size).map(|x| (name(x), name(full & !x))).collect();
    FiniteOml::new(&LatticeFile {
        elements,
        leq,
        ocompl,
        bottom: name(0),
        top: name(full),
    })
}

/// `MO_k` (`1 ≤ k ≤ 8`): `0`, `1` and `k` incomparable complement pairs
/// `a, a'`, `b, b'`, ... Index layout: `0`, then `x, x'` per letter, then `1`.
pub fn gen_mo(k: usize) -> Result<FiniteOml> {
    if !(1..=8).contains(&k) {
        return Err(Error::OutOfRange {
            what: "MO generator size",
            value: k as i64,
            min: 1,
            max: 8,
        });
    }
    let mut elements = vec!["0".to_string()];
    for i in 0..k {
        let letter = (b'a' + i as u8) as char;
        elements.push(letter.to_string());
        elements.push(format!("{letter}'"));
    }
    elements.push("1".into());
    let atoms = &elements[1..elements.len() - 1];
    let mut leq: Vec<(String, String)> = atoms
        .iter()
        .flat_map(|x| [("0".to_string(), x.clone()), (x.clone(), "1".to_string())])
        .collect();
    leq.push(("0".into(), "1".into()));
    let mut ocompl: IndexMap<String, String> = IndexMap::new();
    ocompl.insert("0".into(), "1".into());
    for pair in atoms.chunks(2) {
        ocompl.insert(pair[0].clone(), pair[1].clone());
        ocompl.insert(pair[1].clone(), pair[0].clone());
    }
    ocompl.insert("1".into(), "0".into());
    FiniteOml::new(&LatticeFile {
        elements,
        leq,
        ocompl,
        bottom: "0".into(),
        top: "1".into(),
    })
}

/// Formula compiled against a fixed atom order.
enum Compiled {
    Atom(usize),
    Neg(Box<Compiled>),
    Meet(Box<Compiled>, Box<Compiled>),
    Join(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(core: &QlFormula, atoms: &[String]) -> Self {
        let c = |x: &QlFormula| Box::new(Compiled::new(x, atoms));
        match &core.kind {
            QlKind::Atom(name) => Compiled::Atom(
                atoms
                    .binary_search(name)
                    .expect("atom list covers the formula"),
            ),
            QlKind::Neg(x) => Compiled::Neg(c(x)),
            QlKind::Meet(x, y) => Compiled::Meet(c(x), c(y)),
            QlKind::Join(x, y) => Compiled::Join(c(x), c(y)),
            _ => unreachable!("compiled formulas are expanded"),
        }
    }

    fn eval(&self, l: &FiniteOml, values: &[usize]) -> usize {
        match self {
            Compiled::Atom(i) => values[*i],
            Compiled::Neg(x) => l.ocompl(x.eval(l, values)),
            Compiled::Meet(x, y) => l.meet(x.eval(l, values), y.eval(l, values)),
            Compiled::Join(x, y) => l.join(x.eval(l, values), y.eval(l, values)),
        }
    }
}

/// Value of `f` in `l` under `v`: `~` is the orthocomplement, `&` meet,
/// `|` join; derived connectives are expanded first.
pub fn eval_ql(l: &FiniteOml, v: &QlValuation, f: &QlFormula) -> Result<usize> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let mut values = Vec::with_capacity(atoms.len());
    for a in &atoms {
        let x = *v.get(a).ok_or_else(|| Error::UnboundAtom(a.clone()))?;
        if x >= l.len() {
            return Err(Error::malformed(format!(
                "valuation maps `{a}` to element {x}, lattice has {}",
                l.len()
            )));
        }
        values.push(x);
    }
    Ok(Compiled::new(&expand_ql(f), &atoms).eval(l, &values))
}

/// Designated-value validity: `f` evaluates to top under every valuation of
/// its atoms. The falsifier is the first in index-lexicographic order (atoms
/// sorted by name, first atom most significant), independent of thread count.
pub fn ql_valid(l: &FiniteOml, f: &QlFormula) -> Result<Validity<QlValuation>> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let size = l.len() as u128;
    let total = guard::pow_sat(size, atoms.len());
    guard::check("QL valuations", total, MAX_VALUATIONS)?;
    let program = Compiled::new(&expand_ql(f), &atoms);
    let decode = |mut idx: u128| -> Vec<usize> {
        let mut values = vec![0; atoms.len()];
        for slot in values.iter_mut().rev() {
            *slot = (idx % size) as usize;
            idx /= size;
        }
        values
    };
    let first = (0..total as u64)
        .into_par_iter()
        .find_first(|&i| program.eval(l, &decode(i as u128)) != l.top());
    Ok(match first {
        None => Validity::Valid,
        Some(i) => Validity::Invalid(atoms.iter().cloned().zip(decode(i as u128)).collect()),
    })
}

/// All `(x, y, z)` with `x ⋏ (y ⋎ z) ≠ (x ⋏ y) ⋎ (x ⋏ z)`, lexicographic.
pub fn find_distributivity_failures(l: &FiniteOml) -> Vec<(usize, usize, usize)> {
    let n = l.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// First element pair `(a, b)` where `a = 1` and `a ->3 b = 1` but `b ≠ 1`.
pub fn impl3_modus_ponens_counterexample(l: &FiniteOml) -> Option<(usize, usize)> {
    let f = crate::formula::QlFormula::impl3(QlFormula::atom("a"), QlFormula::atom("b"));
    let n = l.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| {
            let v: QlValuation = [("a".to_string(), a), ("b".to_string(), b)].into();
            let imp = eval_ql(l, &v, &f).expect("atoms bound");
            a == l.top() && imp == l.top() && b != l.top()
        })
}

/// Meet/join table laws: commutativity, associativity, idempotence, absorption.
pub fn check_table_laws(l: &FiniteOml) -> CertificateReport {
    let n = l.len();
    let nm = |i: usize| Value::from(l.name(i));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let triples =
        || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));
    let mut r = CertificateReport::new("table_laws");
    r.law(
        "commutativity",
        pairs
            .iter()
            .find(|&&(x, y)| l.meet(x, y) != l.meet(y, x) || l.join(x, y) != l.join(y, x))
            .map(|&(x, y)| json!([nm(x), nm(y)])),
    );
    r.law(
        "associativity",
        triples()
            .find(|&(x, y, z)| {
                l.meet(x, l.meet(y, z)) != l.meet(l.meet(x, y), z)
                    || l.join(x, l.join(y, z)) != l.join(l.join(x, y), z)
            })
            .map(|(x, y, z)| json!([nm(x), nm(y), nm(z)])),
    );
    r.law(
        "idempotence",
        (0..n)
            .find(|&x| l.meet(x, x) != x || l.join(x, x) != x)
            .map(|x| json!([nm(x)])),
    );
    r.law(
        "absorption",
        pairs
            .iter()
            .find(|&&(x, y)| l.meet(x, l.join(x, y)) != x || l.join(x, l.meet(x, y)) != x)
            .map(|&(x, y)| json!([nm(x), nm(y)])),
    );
    r
}

/// Reads a QL valuation file (`{"x": "a", ...}`, element names).
pub fn valuation_from_names(
    l: &FiniteOml,
    names: &BTreeMap<String, String>,
) -> Result<QlValuation> {
    names
        .iter()
        .map(|(atom, el)| {
            l.index_of(el)
                .map(|i| (atom.clone(), i))
                .ok_or_else(|| Error::malformed(format!("valuation names unknown element `{el}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_ql;

    fn boolean4_file() -> LatticeFile {
        LatticeFile::from_json(
            r#"{"elements":["0","a","a'","1"],
                "leq":[["0","a"],["0","a'"],["0","1"],["a","1"],["a'","1"]],
                "ocompl":{"0":"1","a":"a'","a'":"a","1":"0"},
                "bottom":"0","top":"1"}"#,
        )
        .unwrap()
    }

    #[test]
    fn boolean_four_passes() {
        let r = check_oml(&boolean4_file()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn self_complement_fails_disjointness() {
        let mut f = boolean4_file();
        f.ocompl.insert("a".into(), "a".into());
        let r = check_oml(&f).unwrap();
        assert!(!r.passed());
        let e = r.entry("disjointness").unwrap();
        assert_eq!(e.witness, json!({"x": "a", "meet": "a"}));
    }

    #[test]
    fn malformed_inputs_are_errors() {
        let mut f = boolean4_file();
        f.ocompl.shift_remove("a'");
        assert!(matches!(check_oml(&f), Err(Error::Malformed(_))));
        let mut f = boolean4_file();
        f.leq.push(("a".into(), "zz".into()));
        assert!(matches!(check_oml(&f), Err(Error::Malformed(_))));
        let mut f = boolean4_file();
        f.top = "top".into();
        assert!(matches!(check_oml(&f), Err(Error::Malformed(_))));
        let mut f = boolean4_file();
        f.elements.push("a".into());
        assert!(matches!(check_oml(&f), Err(Error::Malformed(_))));
        assert!(LatticeFile::from_json(
            r#"{"elements":[],"leq":[],"ocompl":{},"bottom":"0","top":"1","extra":1}"#
        )
        .is_err());
        let empty = LatticeFile::from_json(
            r#"{"elements":[],"leq":[],"ocompl":{},"bottom":"0","top":"1"}"#,
        )
        .unwrap();
        assert!(matches!(check_oml(&empty), Err(Error::Malformed(_))));
    }

    #[test]
    fn missing_transitive_pair_is_reported() {
        let mut f = boolean4_file();
        f.leq.retain(|(x, y)| !(x == "0" && y == "1"));
        let r = check_oml(&f).unwrap();
        assert!(r.entry("transitivity").unwrap().verdict == crate::report::Verdict::Fail);
    }

    #[test]
    fn generators_in_range() {
        for k in 0..=4 {
            let l = gen_boolean(k).unwrap();
            assert_eq!(l.len(), 1 << k);
            assert!(l.is_distributive());
        }
        assert!(gen_boolean(5).is_err());
        for k in 1..=8 {
            assert_eq!(gen_mo(k).unwrap().len(), 2 * k + 2);
        }
        assert!(gen_mo(0).is_err() && gen_mo(9).is_err());
        let b0 = gen_boolean(0).unwrap();
        assert_eq!(b0.bottom(), b0.top());
        assert_eq!(gen_boolean(1).unwrap().names(), ["0", "1"]);
        assert_eq!(gen_boolean(2).unwrap().names(), ["0", "a", "b", "1"]);
        assert_eq!(gen_mo(2).unwrap().names(), ["0", "a", "a'", "b", "b'", "1"]);
    }

    #[test]
    fn generated_file_roundtrips() {
        let l = gen_mo(3).unwrap();
        let text = l.to_file().to_json();
        assert_eq!(FiniteOml::from_json(&text).unwrap(), l);
        assert!(text
            .starts_with(r#"{"elements":["0","a","a'","b","b'","c","c'","1"],"leq":[["0","a"]"#));
    }

    #[test]
    fn eval_examples() {
        let mo2 = gen_mo(2).unwrap();
        let a = mo2.index_of("a").unwrap();
        let b = mo2.index_of("b").unwrap();
        let v: QlValuation = [("x".into(), a), ("y".into(), b)].into();
        assert_eq!(
            eval_ql(&mo2, &v, &parse_ql("~x").unwrap()).unwrap(),
            mo2.index_of("a'").unwrap()
        );
        assert_eq!(
            eval_ql(&mo2, &v, &parse_ql("x & y").unwrap()).unwrap(),
            mo2.bottom()
        );
        assert_eq!(
            eval_ql(&mo2, &v, &parse_ql("x | y").unwrap()).unwrap(),
            mo2.top()
        );
        assert!(matches!(
            eval_ql(&mo2, &v, &parse_ql("z").unwrap()),
            Err(Error::UnboundAtom(ref s)) if s == "z"
        ));
    }

    #[test]
    fn distributivity_witness_in_mo2() {
        let mo2 = gen_mo(2).unwrap();
        let f = parse_ql("(x & (y | z)) == ((x & y) | (x & z))").unwrap();
        let Validity::Invalid(w) = ql_valid(&mo2, &f).unwrap() else {
            panic!("should be invalid")
        };
        // Every falsifier is a real one.
        assert_ne!(eval_ql(&mo2, &w, &f).unwrap(), mo2.top());
        let ids = |n: &str| mo2.index_of(n).unwrap();
        assert!(find_distributivity_failures(&mo2).contains(&(ids("a"), ids("b"), ids("b'"))));
        assert!(find_distributivity_failures(&gen_mo(1).unwrap()).is_empty());
    }

    #[test]
    fn impl0_reflexive_valid() {
        for l in [gen_mo(3).unwrap(), gen_boolean(3).unwrap()] {
            assert!(ql_valid(&l, &parse_ql("x ->0 x").unwrap())
                .unwrap()
                .is_valid());
        }
    }

    #[test]
    fn valuation_guard() {
        let l = gen_mo(8).unwrap(); // 18 elements, 18^6 > 10^7
        let f = parse_ql("a & b & c & d & e & f").unwrap();
        assert!(matches!(ql_valid(&l, &f), Err(Error::Guard { .. })));
    }
}
