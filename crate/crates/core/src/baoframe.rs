//! Kripke frames and the Boolean algebra with operators they induce.
//!
//! For a frame `(S, R)` and a state set `X`:
//!
//! * `⟨R⟩X = { s | some successor of s is in X }` ([`pos_op`])
//! * `[R]X = { s | every successor of s is in X }` ([`nec_op`])
//! * `∼X = ⟨R⟩(S \ X)` ([`sim_op`]), the image of quantum negation.
//!
//! States are `0..n` with `n ≤ 64`; state sets are single machine words.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formula::{normalize_bq, BqFormula, BqKind};
use crate::guard;
use crate::report::{CertificateReport, Validity};

pub const MAX_STATES: usize = 64;

/// Subset-enumerating checks ([`check_box_witness`]).
pub const BOX_WITNESS_MAX_STATES: usize = 12;
/// Subset-enumerating checks ([`check_pos_additivity`], B/Q semantic inclusions).
pub const SUBSET_MAX_STATES: usize = 10;
/// Exhaustive limit on subset pairs for [`check_pos_additivity`].
pub const ADDITIVITY_EXHAUSTIVE_PAIRS: u128 = 1_000_000;
/// Number of sampled subset pairs beyond the exhaustive limit.
pub const ADDITIVITY_SAMPLES: usize = 100_000;
/// Limit on `(2^n)^atoms · n` for frame validity.
pub const MAX_FRAME_VALUATIONS: u128 = 10_000_000;

/// A subset of the states `0..64`, as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        StateSet(low_mask(n))
    }

    pub fn singleton(s: usize) -> Self {
        StateSet(1 << s)
    }

    pub fn contains(self, s: usize) -> bool {
        s < 64 && self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn union(self, o: StateSet) -> Self {
        StateSet(self.0 | o.0)
    }

    pub fn intersection(self, o: StateSet) -> Self {
        StateSet(self.0 & o.0)
    }

    /// Complement relative to `0..n`.
    pub fn complement(self, n: usize) -> Self {
        StateSet(!self.0 & low_mask(n))
    }

    pub fn is_subset(self, o: StateSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest state in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// True iff every member is `< n`.
    pub fn bounded_by(self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&s| self.0 >> s & 1 == 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_json(self) -> Value {
        json!(self.to_vec())
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = StateSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// JSON frame file: `{"states": 3, "edges": [[0,1],[1,0],[2,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub states: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A finite frame: states `0..n` and an arbitrary accessibility relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    n: usize,
    /// `succ[s]` = successors of `s`.
    succ: Vec<u64>,
}

impl KripkeFrame {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        guard::check_hard("frame states", n as u128, MAX_STATES as u128)?;
        let mut succ = vec![0u64; n];
        for &(s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::malformed(format!(
                    "edge ({s}, {t}) out of range for {n} states"
                )));
            }
            succ[s] |= 1 << t;
        }
        Ok(KripkeFrame { n, succ })
    }

    /// Frame whose pair `(i, j)` is present iff bit `i·n + j` of `mask` is set.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= 64, "relation mask needs n·n ≤ 64");
        let succ = (0..n).map(|i| (mask >> (i * n)) & low_mask(n)).collect();
        KripkeFrame { n, succ }
    }

    /// The relation bit mask (`n ≤ 8`).
    pub fn mask(&self) -> u64 {
        assert!(self.n * self.n <= 64);
        self.succ
            .iter()
            .enumerate()
            .fold(0, |m, (i, &row)| m | row << (i * self.n))
    }

    pub fn identity(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|s| (s, s)).collect();
        Self::new(n, &edges).expect("identity frame is well formed")
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, &[]).expect("empty frame is well formed")
    }

    pub fn full(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        Self::new(n, &edges).expect("full frame is well formed")
    }

    pub fn from_file(file: &FrameFile) -> Result<Self> {
        Self::new(file.states, &file.edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> FrameFile {
        FrameFile {
            states: self.n,
            edges: self.edges(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_file()).expect("frame file serializes")
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n)
    }

    pub fn successors(&self, s: usize) -> StateSet {
        StateSet(self.succ[s])
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.succ[s] >> t & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|s| self.successors(s).iter().map(move |t| (s, t)))
            .collect()
    }

    fn check_bounded(&self, set: StateSet) -> Result<()> {
        if set.bounded_by(self.n) {
            Ok(())
        } else {
            Err(Error::malformed(format!(
                "state set {set} not bounded by {} states",
                self.n
            )))
        }
    }
}

impl fmt::Debug for KripkeFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KripkeFrame({}, {:?})", self.n, self.edges())
    }
}

/// `⟨R⟩X`: states with some successor in `X`.
pub fn pos_op(f: &KripkeFrame, x: StateSet) -> StateSet {
    let mut out = 0u64;
    for (s, &row) in f.succ.iter().enumerate() {
        if row & x.0 != 0 {
            out |= 1 << s;
        }
    }
    StateSet(out)
}

/// `[R]X`: states all of whose successors are in `X`.
pub fn nec_op(f: &KripkeFrame, x: StateSet) -> StateSet {
    let mut out = 0u64;
    for (s, &row) in f.succ.iter().enumerate() {
        if row & !x.0 == 0 {
            out |= 1 << s;
        }
    }
    StateSet(out)
}

/// `∼X = ⟨R⟩(complement X)`.
pub fn sim_op(f: &KripkeFrame, x: StateSet) -> StateSet {
    pos_op(f, x.complement(f.n))
}

fn all_subsets(n: usize) -> impl Iterator<Item = StateSet> + Clone {
    (0..=low_mask(n)).map(StateSet)
}

/// `s R t` iff for all `X`, `s ∈ [R]X` implies `t ∈ X`; checked for every
/// state pair by enumerating all subsets.
pub fn check_box_witness(f: &KripkeFrame) -> Result<CertificateReport> {
    guard::check(
        "box witness states",
        f.n as u128,
        BOX_WITNESS_MAX_STATES as u128,
    )?;
    let boxes: Vec<(StateSet, StateSet)> = all_subsets(f.n).map(|x| (x, nec_op(f, x))).collect();
    let mut r = CertificateReport::new("box_witness");
    let cex = (0..f.n)
        .flat_map(|s| (0..f.n).map(move |t| (s, t)))
        .find(|&(s, t)| {
            let rhs = boxes
                .iter()
                .all(|&(x, bx)| !bx.contains(s) || x.contains(t));
            f.has_edge(s, t) != rhs
        })
        .map(|(s, t)| json!({"s": s, "t": t, "edge": f.has_edge(s, t)}));
    r.law("box_witness", cex);
    Ok(r)
}

/// `⟨R⟩(X ∪ Y) = ⟨R⟩X ∪ ⟨R⟩Y`: exhaustive over subset pairs while
/// `4^n ≤ 10^6`, otherwise [`ADDITIVITY_SAMPLES`] pairs from a seeded generator.
pub fn check_pos_additivity(f: &KripkeFrame, seed: Option<u64>) -> Result<CertificateReport> {
    guard::check("additivity states", f.n as u128, SUBSET_MAX_STATES as u128)?;
    let holds =
        |x: StateSet, y: StateSet| pos_op(f, x.union(y)) == pos_op(f, x).union(pos_op(f, y));
    let witness = |(x, y): (StateSet, StateSet)| json!({"x": x.to_json(), "y": y.to_json()});
    let pairs = 1u128 << (2 * f.n);
    let mut r = CertificateReport::new("pos_additivity");
    if pairs <= ADDITIVITY_EXHAUSTIVE_PAIRS {
        r.info(
            "pos_additivity_mode",
            Value::Null,
            json!({"exhaustive": true, "pairs": pairs as u64}),
        );
        let cex = all_subsets(f.n)
            .flat_map(|x| all_subsets(f.n).map(move |y| (x, y)))
            .find(|&(x, y)| !holds(x, y));
        r.law("pos_additivity", cex.map(witness));
    } else {
        let seed = seed.ok_or(Error::MissingSeed("additivity sampling"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = low_mask(f.n);
        let cex = (0..ADDITIVITY_SAMPLES)
            .map(|_| {
                (
                    StateSet(rng.gen::<u64>() & full),
                    StateSet(rng.gen::<u64>() & full),
                )
            })
            .find(|&(x, y)| !holds(x, y));
        r.info(
            "pos_additivity_mode",
            Value::Null,
            json!({"exhaustive": false, "samples": ADDITIVITY_SAMPLES, "seed": seed}),
        );
        r.law("pos_additivity", cex.map(witness));
    }
    Ok(r)
}

/// `∀s∀t (sRt → tRs)`.
pub fn check_symmetry(f: &KripkeFrame) -> bool {
    f.edges().into_iter().all(|(s, t)| f.has_edge(t, s))
}

/// `∀s∃t sRt`.
pub fn check_seriality(f: &KripkeFrame) -> bool {
    f.succ.iter().all(|&row| row != 0)
}

/// `∀s∃t (sRt ∧ ∀u (tRu → u = s))`: every state has a successor whose only
/// possible successor is that state.
pub fn check_q_fol(f: &KripkeFrame) -> bool {
    (0..f.n).all(|s| {
        f.successors(s)
            .iter()
            .any(|t| f.successors(t).is_subset(StateSet::singleton(s)))
    })
}

/// First `X` (ascending) with `⟨R⟩[R]X ⊄ X`.
pub fn b_semantic_counterexample(f: &KripkeFrame) -> Result<Option<StateSet>> {
    guard::check("B-semantic states", f.n as u128, SUBSET_MAX_STATES as u128)?;
    Ok(all_subsets(f.n).find(|&x| !pos_op(f, nec_op(f, x)).is_subset(x)))
}

/// First `X` (ascending) with `X ⊄ ⟨R⟩[R]X`.
pub fn q_semantic_counterexample(f: &KripkeFrame) -> Result<Option<StateSet>> {
    guard::check("Q-semantic states", f.n as u128, SUBSET_MAX_STATES as u128)?;
    Ok(all_subsets(f.n).find(|&x| !x.is_subset(pos_op(f, nec_op(f, x)))))
}

/// `⟨R⟩[R]X ⊆ X` for all `X`.
pub fn check_b_semantic(f: &KripkeFrame) -> Result<bool> {
    Ok(b_semantic_counterexample(f)?.is_none())
}

/// `X ⊆ ⟨R⟩[R]X` for all `X` (the Q-property).
pub fn check_q_semantic(f: &KripkeFrame) -> Result<bool> {
    Ok(q_semantic_counterexample(f)?.is_none())
}

/// Atom name → state set.
pub type FrameValuation = BTreeMap<String, StateSet>;

/// JSON valuation file: `{"p": [0, 2], "q": [1]}`.
pub type ValuationFile = BTreeMap<String, Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub frame: KripkeFrame,
    pub valuation: FrameValuation,
}

impl KripkeModel {
    pub fn new(frame: KripkeFrame, valuation: FrameValuation) -> Result<Self> {
        for set in valuation.values() {
            frame.check_bounded(*set)?;
        }
        Ok(KripkeModel { frame, valuation })
    }

    pub fn from_valuation_file(frame: KripkeFrame, file: &ValuationFile) -> Result<Self> {
        let mut valuation = FrameValuation::new();
        for (atom, states) in file {
            if let Some(&s) = states.iter().find(|&&s| s >= frame.n) {
                return Err(Error::malformed(format!(
                    "valuation of `{atom}` names state {s}, frame has {}",
                    frame.n
                )));
            }
            valuation.insert(atom.clone(), states.iter().copied().collect());
        }
        Self::new(frame, valuation)
    }

    fn check_atoms(&self, f: &BqFormula) -> Result<()> {
        match f
            .atoms()
            .into_iter()
            .find(|a| !self.valuation.contains_key(a))
        {
            Some(a) => Err(Error::UnboundAtom(a)),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "frame": self.frame.to_json(),
            "valuation": valuation_json(&self.valuation),
        })
    }
}

pub fn valuation_json(v: &FrameValuation) -> Value {
    Value::Object(v.iter().map(|(k, s)| (k.clone(), s.to_json())).collect())
}

/// Truth of `f` at state `s`, by per-state recursion on the normalized
/// formula (`[]x` holds iff `x` holds at every successor).
pub fn eval_bq(m: &KripkeModel, s: usize, f: &BqFormula) -> Result<bool> {
    m.check_atoms(f)?;
    if s >= m.frame.n {
        return Err(Error::malformed(format!("state {s} out of range")));
    }
    Ok(holds(m, s, &normalize_bq(f)))
}

fn holds(m: &KripkeModel, s: usize, f: &BqFormula) -> bool {
    match &f.kind {
        BqKind::Atom(a) => m.valuation[a].contains(s),
        BqKind::Top => true,
        BqKind::Bot => false,
        BqKind::Neg(x) => !holds(m, s, x),
        BqKind::Box(x) => m.frame.successors(s).iter().all(|t| holds(m, t, x)),
        BqKind::And(x, y) => holds(m, s, x) && holds(m, s, y),
        BqKind::Or(x, y) => holds(m, s, x) || holds(m, s, y),
        BqKind::Imp(x, y) => !holds(m, s, x) || holds(m, s, y),
        BqKind::Diamond(_) | BqKind::Iff(..) => unreachable!("normalized"),
    }
}

/// `{ s | eval_bq(m, s, f) }`, computed with set operations.
pub fn extension(m: &KripkeModel, f: &BqFormula) -> Result<StateSet> {
    m.check_atoms(f)?;
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let values: Vec<StateSet> = atoms.iter().map(|a| m.valuation[a]).collect();
    Ok(CompiledBq::new(&normalize_bq(f), &atoms).eval(&m.frame, &values))
}

/// Normalized BQ formula compiled against a sorted atom list.
pub(crate) enum CompiledBq {
    Atom(usize),
    Top,
    Bot,
    Neg(Box<CompiledBq>),
    Box(Box<CompiledBq>),
    And(Box<CompiledBq>, Box<CompiledBq>),
    Or(Box<CompiledBq>, Box<CompiledBq>),
    Imp(Box<CompiledBq>, Box<CompiledBq>),
}

impl CompiledBq {
    pub(crate) fn new(normal: &BqFormula, atoms: &[String]) -> Self {
        let c = |x: &BqFormula| Box::new(CompiledBq::new(x, atoms));
        match &normal.kind {
            BqKind::Atom(a) => CompiledBq::Atom(atoms.binary_search(a).expect("atom listed")),
            BqKind::Top => CompiledBq::Top,
            BqKind::Bot => CompiledBq::Bot,
            BqKind::Neg(x) => CompiledBq::Neg(c(x)),
            BqKind::Box(x) => CompiledBq::Box(c(x)),
            BqKind::And(x, y) => CompiledBq::And(c(x), c(y)),
            BqKind::Or(x, y) => CompiledBq::Or(c(x), c(y)),
            BqKind::Imp(x, y) => CompiledBq::Imp(c(x), c(y)),
            BqKind::Diamond(_) | BqKind::Iff(..) => unreachable!("normalized"),
        }
    }

    pub(crate) fn eval(&self, f: &KripkeFrame, values: &[StateSet]) -> StateSet {
        match self {
            CompiledBq::Atom(i) => values[*i],
            CompiledBq::Top => f.full_set(),
            CompiledBq::Bot => StateSet::EMPTY,
            CompiledBq::Neg(x) => x.eval(f, values).complement(f.n),
            CompiledBq::Box(x) => nec_op(f, x.eval(f, values)),
            CompiledBq::And(x, y) => x.eval(f, values).intersection(y.eval(f, values)),
            CompiledBq::Or(x, y) => x.eval(f, values).union(y.eval(f, values)),
            CompiledBq::Imp(x, y) => x.eval(f, values).complement(f.n).union(y.eval(f, values)),
        }
    }
}

/// A valuation and a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameWitness {
    pub valuation: FrameValuation,
    pub state: usize,
}

impl FrameWitness {
    pub fn to_json(&self) -> Value {
        json!({"valuation": valuation_json(&self.valuation), "state": self.state})
    }
}

/// First `(valuation, state)` at which `f` is true, in lexicographic order:
/// valuations ordered by the atoms' set masks (atoms sorted by name, first
/// atom most significant), then states ascending.
pub fn first_satisfying(frame: &KripkeFrame, f: &BqFormula) -> Result<Option<FrameWitness>> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let n = frame.n;
    let total = guard::pow_sat(1u128 << n.min(127), atoms.len());
    guard::check(
        "frame valuations",
        total.saturating_mul(n.max(1) as u128),
        MAX_FRAME_VALUATIONS,
    )?;
    let program = CompiledBq::new(&normalize_bq(f), &atoms);
    let k = atoms.len();
    let decode = |idx: u64| -> Vec<StateSet> {
        (0..k)
            .map(|j| StateSet((idx >> (n * (k - 1 - j))) & low_mask(n)))
            .collect()
    };
    let eval = |idx: u64| program.eval(frame, &decode(idx));
    let total = total as u64;
    let hit = if total <= 4096 {
        (0..total).find(|&i| !eval(i).is_empty())
    } else {
        (0..total)
            .into_par_iter()
            .find_first(|&i| !eval(i).is_empty())
    };
    Ok(hit.map(|i| {
        let values = decode(i);
        FrameWitness {
            state: eval(i).first().expect("nonempty extension"),
            valuation: atoms.into_iter().zip(values).collect(),
        }
    }))
}

/// `f` holds at every state under every valuation of its atoms. The
/// falsifier is the first in (valuation, state) order.
pub fn bq_valid_on_frame(frame: &KripkeFrame, f: &BqFormula) -> Result<Validity<FrameWitness>> {
    Ok(match first_satisfying(frame, &BqFormula::neg(f.clone()))? {
        None => Validity::Valid,
        Some(w) => Validity::Invalid(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_bq;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    fn frame(n: usize, e: &[(usize, usize)]) -> KripkeFrame {
        KripkeFrame::new(n, e).unwrap()
    }

    #[test]
    fn state_set_basics() {
        let s = set(&[0, 2]);
        assert_eq!(s.complement(3), set(&[1]));
        assert_eq!(s.to_string(), "{0,2}");
        assert!(set(&[2]).is_subset(s));
        assert_eq!(StateSet::full(64).len(), 64);
        assert_eq!(s.first(), Some(0));
        assert!(!set(&[5]).bounded_by(3));
    }

    #[test]
    fn frame_construction() {
        assert!(KripkeFrame::new(2, &[(0, 2)]).is_err());
        assert!(KripkeFrame::new(65, &[]).is_err());
        let f = frame(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(KripkeFrame::from_mask(3, f.mask()), f);
        assert_eq!(
            KripkeFrame::from_json(r#"{"states": 3, "edges": [[0,1],[1,0],[2,2]]}"#).unwrap(),
            f
        );
        assert!(KripkeFrame::from_json(r#"{"states": 1, "edges": [], "x": 0}"#).is_err());
        // pair (i, j) is bit i·n + j
        assert_eq!(frame(2, &[(0, 1)]).mask(), 0b10);
        assert_eq!(frame(2, &[(1, 0)]).mask(), 0b100);
    }

    #[test]
    fn pos_op_examples() {
        assert_eq!(pos_op(&KripkeFrame::identity(3), set(&[1])), set(&[1]));
        assert_eq!(pos_op(&frame(2, &[(0, 1)]), set(&[1])), set(&[0]));
        assert_eq!(
            pos_op(&KripkeFrame::empty(3), set(&[0, 1, 2])),
            StateSet::EMPTY
        );
    }

    #[test]
    fn nec_op_examples() {
        assert_eq!(
            nec_op(&KripkeFrame::empty(3), StateSet::EMPTY),
            set(&[0, 1, 2])
        );
        assert_eq!(
            nec_op(&KripkeFrame::identity(3), set(&[0, 2])),
            set(&[0, 2])
        );
        assert_eq!(
            nec_op(&frame(3, &[(0, 1), (0, 2)]), set(&[1])),
            set(&[1, 2])
        );
    }

    #[test]
    fn sim_op_examples() {
        let id = KripkeFrame::identity(3);
        for bits in 0..8 {
            assert_eq!(sim_op(&id, StateSet(bits)), StateSet(bits).complement(3));
        }
        assert_eq!(sim_op(&KripkeFrame::full(2), set(&[0, 1])), StateSet::EMPTY);
        assert_eq!(sim_op(&frame(2, &[(0, 1)]), set(&[1])), StateSet::EMPTY);
    }

    #[test]
    fn first_order_properties() {
        let id = KripkeFrame::identity(3);
        assert!(check_symmetry(&id) && check_seriality(&id) && check_q_fol(&id));
        let f = frame(2, &[(0, 1)]);
        assert!(!check_symmetry(&f) && !check_seriality(&f));
        let full = KripkeFrame::full(2);
        assert!(check_symmetry(&full) && check_seriality(&full) && !check_q_fol(&full));
    }

    #[test]
    fn semantic_inclusions() {
        let id = KripkeFrame::identity(3);
        assert!(check_b_semantic(&id).unwrap() && check_q_semantic(&id).unwrap());
        let f = frame(2, &[(0, 1)]);
        assert_eq!(q_semantic_counterexample(&f).unwrap(), Some(set(&[1])));
        let full = KripkeFrame::full(2);
        assert!(check_b_semantic(&full).unwrap());
        assert!(!check_q_semantic(&full).unwrap());
        assert!(matches!(
            check_b_semantic(&KripkeFrame::empty(11)),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn facts_on_small_frames() {
        for f in [
            KripkeFrame::identity(2),
            KripkeFrame::full(3),
            KripkeFrame::empty(4),
        ] {
            assert!(check_box_witness(&f).unwrap().passed());
            assert!(check_pos_additivity(&f, None).unwrap().passed());
        }
        assert!(matches!(
            check_pos_additivity(&KripkeFrame::identity(10), None),
            Err(Error::MissingSeed(_))
        ));
        let r = check_pos_additivity(&KripkeFrame::identity(10), Some(7)).unwrap();
        assert!(r.passed());
        assert_eq!(r.entry("pos_additivity_mode").unwrap().witness["seed"], 7);
    }

    #[test]
    fn extension_examples() {
        let m =
            KripkeModel::new(KripkeFrame::identity(2), [("p".into(), set(&[0]))].into()).unwrap();
        assert_eq!(extension(&m, &parse_bq("[]p").unwrap()).unwrap(), set(&[0]));
        assert_eq!(
            extension(&m, &parse_bq("true").unwrap()).unwrap(),
            set(&[0, 1])
        );
        let cyc = KripkeModel::new(
            frame(2, &[(0, 1), (1, 0)]),
            [("p".into(), set(&[0]))].into(),
        )
        .unwrap();
        assert_eq!(
            extension(&cyc, &parse_bq("[]<>p").unwrap()).unwrap(),
            set(&[0])
        );
        assert!(eval_bq(&cyc, 0, &parse_bq("[]<>p").unwrap()).unwrap());
        assert!(matches!(
            extension(&cyc, &parse_bq("q").unwrap()),
            Err(Error::UnboundAtom(_))
        ));
        assert!(
            KripkeModel::new(KripkeFrame::identity(2), [("p".into(), set(&[3]))].into()).is_err()
        );
    }

    #[test]
    fn frame_validity_examples() {
        let cyc = frame(2, &[(0, 1), (1, 0)]);
        let b = parse_bq("p -> []<>p").unwrap();
        assert!(bq_valid_on_frame(&cyc, &b).unwrap().is_valid());
        let one_way = frame(2, &[(0, 1)]);
        let Validity::Invalid(w) = bq_valid_on_frame(&one_way, &b).unwrap() else {
            panic!()
        };
        // p = {0}: 0 sees 1, 1 sees nothing so <>p fails at 1, []<>p fails at 0.
        assert_eq!(w.valuation["p"], set(&[0]));
        assert_eq!(w.state, 0);
        assert!(
            bq_valid_on_frame(&KripkeFrame::identity(3), &parse_bq("[]<>p <-> p").unwrap())
                .unwrap()
                .is_valid()
        );
    }

    #[test]
    fn frame_validity_guard() {
        let f = KripkeFrame::identity(10);
        let phi = parse_bq("p & q & r").unwrap();
        assert!(matches!(
            bq_valid_on_frame(&f, &phi),
            Err(Error::Guard { .. })
        ));
    }
}
