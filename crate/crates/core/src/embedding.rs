//! Embeddings of a finite orthomodular lattice into the powerset algebra of a
//! Kripke frame.
//!
//! An embedding `ρ` sends lattice elements to state sets injectively, with
//! `ρ(x') = ∼ρ(x)` and `ρ(x ⋏ y) = ρ(x) ∩ ρ(y)`. The certifier checks these
//! defining equations together with every consequence derived from them
//! (order embedding, the properties of `∼` on images, join preservation).
//! The searcher is an independent backtracking procedure.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::baoframe::{
    b_semantic_counterexample, check_seriality, q_semantic_counterexample, sim_op, FrameFile,
    KripkeFrame, StateSet,
};
use crate::error::{Error, Result};
use crate::guard;
use crate::oml::{check_oml, gen_boolean, FiniteOml, LatticeFile};
use crate::report::CertificateReport;

/// Search guards.
pub const SEARCH_MAX_ELEMENTS: usize = 12;
pub const SEARCH_MAX_STATES: usize = 6;
pub const FRAME_SEARCH_MAX_STATES: usize = 5;
pub const CLOSURE_MAX_STATES: usize = 10;
/// Frames up to this size get the all-subsets De Morgan check.
pub const ALL_SUBSETS_DE_MORGAN_STATES: usize = 8;

/// Restriction on the frames visited by enumerating procedures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameFilter {
    #[default]
    #[serde(rename = "none")]
    None,
    /// Both the B inclusion `⟨R⟩[R]X ⊆ X` and the Q inclusion `X ⊆ ⟨R⟩[R]X`.
    #[serde(rename = "b+q")]
    BQ,
    #[serde(rename = "serial")]
    Serial,
}

impl FrameFilter {
    pub fn accepts(self, f: &KripkeFrame) -> bool {
        match self {
            FrameFilter::None => true,
            FrameFilter::Serial => check_seriality(f),
            FrameFilter::BQ => {
                matches!(b_semantic_counterexample(f), Ok(None))
                    && matches!(q_semantic_counterexample(f), Ok(None))
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FrameFilter::None => "none",
            FrameFilter::BQ => "b+q",
            FrameFilter::Serial => "serial",
        }
    }
}

impl std::str::FromStr for FrameFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(FrameFilter::None),
            "b+q" | "bq" => Ok(FrameFilter::BQ),
            "serial" => Ok(FrameFilter::Serial),
            _ => Err(Error::malformed(format!(
                "unknown frame filter `{s}` (expected none, b+q, serial)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: FiniteOml,
    frame: KripkeFrame,
    map: Vec<StateSet>,
}

impl Embedding {
    /// Checks shape only (one bounded set per element); the laws are the
    /// certifier's business.
    pub fn new(source: FiniteOml, frame: KripkeFrame, map: Vec<StateSet>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::malformed(format!(
                "map has {} entries for {} lattice elements",
                map.len(),
                source.len()
            )));
        }
        if let Some((i, s)) = map
            .iter()
            .enumerate()
            .find(|(_, s)| !s.bounded_by(frame.states()))
        {
            return Err(Error::malformed(format!(
                "image {s} of `{}` exceeds {} states",
                source.name(i),
                frame.states()
            )));
        }
        Ok(Embedding { source, frame, map })
    }

    /// `gen_boolean(k)` into the identity frame on `k` states, element `i`
    /// (the subset with mask `i`) to the state set with mask `i`.
    pub fn natural_boolean(k: usize) -> Result<Self> {
        let source = gen_boolean(k)?;
        let map = (0..source.len() as u64).map(StateSet::from_bits).collect();
        Self::new(source, KripkeFrame::identity(k), map)
    }

    pub fn source(&self) -> &FiniteOml {
        &self.source
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn map(&self) -> &[StateSet] {
        &self.map
    }

    pub fn image(&self, x: usize) -> StateSet {
        self.map[x]
    }

    /// Same embedding with one image replaced.
    pub fn with_image(&self, x: usize, set: StateSet) -> Result<Self> {
        let mut map = self.map.clone();
        map[x] = set;
        Self::new(self.source.clone(), self.frame.clone(), map)
    }

    pub fn to_file(&self) -> EmbeddingFile {
        EmbeddingFile {
            lattice: Source::Inline(self.source.to_file()),
            frame: Source::Inline(self.frame.to_file()),
            map: (0..self.source.len())
                .map(|i| (self.source.name(i).to_string(), self.map[i].to_vec()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("embedding serializes")
    }

    /// Loads an embedding file; path-valued `lattice`/`frame` entries are
    /// resolved against `base_dir`.
    pub fn from_file(file: &EmbeddingFile, base_dir: Option<&Path>) -> Result<Self> {
        let lattice: LatticeFile = file.lattice.load(base_dir)?;
        let frame_file: FrameFile = file.frame.load(base_dir)?;
        let source = FiniteOml::new(&lattice)?;
        let frame = KripkeFrame::from_file(&frame_file)?;
        let mut map = vec![None; source.len()];
        for (name, states) in &file.map {
            let i = source
                .index_of(name)
                .ok_or_else(|| Error::malformed(format!("map names unknown element `{name}`")))?;
            if let Some(&s) = states.iter().find(|&&s| s >= frame.states()) {
                return Err(Error::malformed(format!(
                    "image of `{name}` names state {s}, frame has {}",
                    frame.states()
                )));
            }
            map[i] = Some(states.iter().copied().collect());
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::malformed(format!("map has no image for `{}`", source.name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, frame, map)
    }

    pub fn from_json(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?, base_dir)
    }
}

/// Inline JSON object or a path to a file holding it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

impl<T: Clone + serde::de::DeserializeOwned> Source<T> {
    fn load(&self, base_dir: Option<&Path>) -> Result<T> {
        match self {
            Source::Inline(t) => Ok(t.clone()),
            Source::Path(p) => {
                let path: PathBuf = match base_dir {
                    Some(dir) if Path::new(p).is_relative() => dir.join(p),
                    _ => PathBuf::from(p),
                };
                let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                Ok(serde_json::from_str(&text)?)
            }
        }
    }
}

/// JSON embedding file: `{"lattice": ..., "frame": ..., "map": {"0": [], ...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub lattice: Source<LatticeFile>,
    pub frame: Source<FrameFile>,
    pub map: IndexMap<String, Vec<usize>>,
}

/// Checks the defining equations of an embedding and everything derived
/// from them, each over all elements or element pairs of the source lattice.
pub fn certify_embedding(e: &Embedding) -> CertificateReport {
    let l = &e.source;
    let f = &e.frame;
    let n = l.len();
    let rho = |x: usize| e.map[x];
    let sim = |x: StateSet| sim_op(f, x);
    let nm = |x: usize| Value::from(l.name(x));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let find_pair = |p: &dyn Fn(usize, usize) -> bool| {
        pairs
            .iter()
            .find(|&&(x, y)| !p(x, y))
            .map(|&(x, y)| json!({"x": nm(x), "y": nm(y)}))
    };
    let find_elem =
        |p: &dyn Fn(usize) -> bool| (0..n).find(|&x| !p(x)).map(|x| json!({"x": nm(x)}));
    let (zero, one) = (rho(l.bottom()), rho(l.top()));

    let mut r = CertificateReport::new("certify_embedding");
    r.law("injectivity", find_pair(&|x, y| x == y || rho(x) != rho(y)));
    r.law(
        "sim_homomorphism",
        find_elem(&|x| rho(l.ocompl(x)) == sim(rho(x))),
    );
    r.law(
        "meet_homomorphism",
        find_pair(&|x, y| rho(l.meet(x, y)) == rho(x).intersection(rho(y))),
    );
    r.law(
        "order_embedding",
        find_pair(&|x, y| l.leq(x, y) == rho(x).is_subset(rho(y))),
    );
    r.law("sim_involution", find_elem(&|x| sim(sim(rho(x))) == rho(x)));

    let de_morgan = |a: StateSet, b: StateSet| sim(a.intersection(b)) == sim(a).union(sim(b));
    if f.states() <= ALL_SUBSETS_DE_MORGAN_STATES {
        match sim_de_morgan_counterexample(f) {
            None => r.push(
                "sim_de_morgan_meet",
                crate::report::Verdict::Pass,
                Value::Null,
                json!({"scope": "all_subsets"}),
            ),
            Some((a, b)) => r.law(
                "sim_de_morgan_meet",
                Some(json!({"scope": "all_subsets", "x": a.to_json(), "y": b.to_json()})),
            ),
        }
    } else {
        r.law(
            "sim_de_morgan_meet",
            find_pair(&|x, y| de_morgan(rho(x), rho(y))).map(|mut w| {
                w["scope"] = json!("images");
                w
            }),
        );
    }
    r.law(
        "sim_de_morgan_join",
        find_pair(&|x, y| sim(rho(x).union(rho(y))) == sim(rho(x)).intersection(sim(rho(y)))),
    );
    r.law(
        "image_disjointness",
        find_elem(&|x| rho(x).intersection(sim(rho(x))) == zero),
    );
    r.law(
        "image_exhaustiveness",
        find_elem(&|x| rho(x).union(sim(rho(x))) == one),
    );
    let below = |x: usize, y: usize| l.leq(x, y) || rho(x).is_subset(rho(y));
    r.law(
        "image_antitonicity",
        find_pair(&|x, y| !below(x, y) || sim(rho(y)).is_subset(sim(rho(x)))),
    );
    r.law(
        "image_orthomodularity",
        find_pair(&|x, y| !below(x, y) || rho(y) == rho(x).union(rho(y).intersection(sim(rho(x))))),
    );
    r.law(
        "sim_of_bottom",
        (sim(zero) != one).then(|| json!({"sim": sim(zero).to_json(), "top": one.to_json()})),
    );
    r.law(
        "sim_of_top",
        (sim(one) != zero).then(|| json!({"sim": sim(one).to_json(), "bottom": zero.to_json()})),
    );
    r.law(
        "join_homomorphism",
        find_pair(&|x, y| rho(l.join(x, y)) == rho(x).union(rho(y))),
    );
    r.law(
        "bounds",
        find_elem(&|x| zero.is_subset(rho(x)) && rho(x).is_subset(one)),
    );
    r
}

/// First `(X, Y)` over all subset pairs with `∼(X ∩ Y) ≠ ∼X ∪ ∼Y`.
pub fn sim_de_morgan_counterexample(f: &KripkeFrame) -> Option<(StateSet, StateSet)> {
    let full = f.full_set().bits();
    (0..=full)
        .flat_map(|a| (0..=full).map(move |b| (StateSet::from_bits(a), StateSet::from_bits(b))))
        .find(|&(a, b)| sim_op(f, a.intersection(b)) != sim_op(f, a).union(sim_op(f, b)))
}

/// First `X` with `∼∼X ≠ X`.
pub fn sim_involution_counterexample(f: &KripkeFrame) -> Option<StateSet> {
    (0..=f.full_set().bits())
        .map(StateSet::from_bits)
        .find(|&x| sim_op(f, sim_op(f, x)) != x)
}

struct Search<'a> {
    l: &'a FiniteOml,
    sim: Vec<StateSet>,
}

impl Search<'_> {
    /// Assigns `x ↦ set` and propagates the forced images. Returns the
    /// trail of newly assigned elements, or `None` on conflict (after undo).
    fn assign(&self, rho: &mut [Option<StateSet>], x: usize, set: StateSet) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        let mut queue = vec![(x, set)];
        while let Some((e, s)) = queue.pop() {
            match rho[e] {
                Some(t) if t == s => continue,
                Some(_) => return self.undo(rho, trail),
                None => {}
            }
            if rho.contains(&Some(s)) {
                return self.undo(rho, trail);
            }
            rho[e] = Some(s);
            trail.push(e);
            queue.push((self.l.ocompl(e), self.sim[s.bits() as usize]));
            for (other, t) in rho.iter().enumerate() {
                if let Some(t) = t {
                    queue.push((self.l.meet(e, other), s.intersection(*t)));
                }
            }
        }
        Some(trail)
    }

    fn undo(&self, rho: &mut [Option<StateSet>], trail: Vec<usize>) -> Option<Vec<usize>> {
        for e in trail {
            rho[e] = None;
        }
        None
    }

    fn solve(&self, rho: &mut Vec<Option<StateSet>>) -> bool {
        let Some(x) = rho.iter().position(Option::is_none) else {
            return true;
        };
        for bits in 0..self.sim.len() as u64 {
            if let Some(trail) = self.assign(rho, x, StateSet::from_bits(bits)) {
                if self.solve(rho) {
                    return true;
                }
                self.undo(rho, trail);
            }
        }
        false
    }

    fn first_from(&self, x0: u64) -> Option<Vec<StateSet>> {
        let mut rho = vec![None; self.l.len()];
        self.assign(&mut rho, 0, StateSet::from_bits(x0))?;
        self.solve(&mut rho)
            .then(|| rho.into_iter().map(|s| s.expect("complete")).collect())
    }
}

fn search(l: &FiniteOml, f: &KripkeFrame, parallel: bool) -> Option<Vec<StateSet>> {
    let s = Search {
        l,
        sim: (0..=f.full_set().bits())
            .map(|b| sim_op(f, StateSet::from_bits(b)))
            .collect(),
    };
    let candidates = 0..s.sim.len() as u64;
    if parallel {
        candidates
            .into_par_iter()
            .find_map_first(|x0| s.first_from(x0))
    } else {
        candidates.into_iter().find_map(|x0| s.first_from(x0))
    }
}

/// Backtracking search for an embedding of `l` into `f`.
///
/// Elements are assigned in index order, candidate sets in ascending mask
/// order; complements and meets of assigned elements are propagated at once.
/// The result is the lexicographically first embedding.
pub fn search_embedding(l: &FiniteOml, f: &KripkeFrame) -> Result<Option<Embedding>> {
    guard::check(
        "search lattice elements",
        l.len() as u128,
        SEARCH_MAX_ELEMENTS as u128,
    )?;
    guard::check(
        "search frame states",
        f.states() as u128,
        SEARCH_MAX_STATES as u128,
    )?;
    search(l, f, true)
        .map(|map| Embedding::new(l.clone(), f.clone(), map))
        .transpose()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FrameSearchOptions {
    pub filter: FrameFilter,
    /// Skip frames whose out-degree sequence is not ascending. Every frame is
    /// isomorphic to one that is kept, so existence is unaffected, but the
    /// reported frame may differ from the unpruned run.
    pub degree_pruning: bool,
}

fn degrees_ascending(f: &KripkeFrame) -> bool {
    (1..f.states()).all(|s| f.successors(s - 1).len() <= f.successors(s).len())
}

/// Tries every frame with `1..=max_states` states (state count ascending,
/// relation mask ascending) and returns the first that admits an embedding.
pub fn search_frames_for(
    l: &FiniteOml,
    max_states: usize,
    opts: FrameSearchOptions,
) -> Result<Option<(KripkeFrame, Embedding)>> {
    guard::check(
        "frame search states",
        max_states as u128,
        FRAME_SEARCH_MAX_STATES as u128,
    )?;
    guard::check(
        "search lattice elements",
        l.len() as u128,
        SEARCH_MAX_ELEMENTS as u128,
    )?;
    guard::check_hard("frame search states", max_states as u128, 8)?;
    for n in 1..=max_states {
        if (1usize << n) < l.len() && !(l.bottom() == l.top()) {
            // Too few subsets for an injective map.
            continue;
        }
        let hit = (0..1u64 << (n * n)).into_par_iter().find_map_first(|mask| {
            let f = KripkeFrame::from_mask(n, mask);
            if (opts.degree_pruning && !degrees_ascending(&f)) || !opts.filter.accepts(&f) {
                return None;
            }
            search(l, &f, false).map(|map| (f, map))
        });
        if let Some((f, map)) = hit {
            let e = Embedding::new(l.clone(), f.clone(), map)?;
            return Ok(Some((f, e)));
        }
    }
    Ok(None)
}

/// Least family of state sets containing `seeds` and closed under `∩` and
/// `∼`, with a report on whether it forms an orthomodular lattice under `⊆`
/// with `∼` as orthocomplement.
pub fn closure_family(
    f: &KripkeFrame,
    seeds: &[StateSet],
) -> Result<(Vec<StateSet>, CertificateReport)> {
    guard::check(
        "closure states",
        f.states() as u128,
        CLOSURE_MAX_STATES as u128,
    )?;
    if seeds.is_empty() {
        return Err(Error::malformed("closure needs at least one seed"));
    }
    if let Some(s) = seeds.iter().find(|s| !s.bounded_by(f.states())) {
        return Err(Error::malformed(format!(
            "seed {s} exceeds {} states",
            f.states()
        )));
    }
    let mut family: BTreeSet<StateSet> = BTreeSet::new();
    let mut work: Vec<StateSet> = seeds.to_vec();
    while let Some(x) = work.pop() {
        if !family.insert(x) {
            continue;
        }
        work.push(sim_op(f, x));
        work.extend(family.iter().map(|&y| x.intersection(y)));
    }
    let family: Vec<StateSet> = family.into_iter().collect();

    let mut r = CertificateReport::new("closure_family");
    r.info(
        "closure",
        f.to_json(),
        json!({"size": family.len(), "sets": family.iter().map(|s| s.to_json()).collect::<Vec<_>>()}),
    );
    let union = family.iter().fold(StateSet::EMPTY, |a, &b| a.union(b));
    let meet_all = family.iter().fold(f.full_set(), |a, &b| a.intersection(b));
    r.law(
        "bounded",
        (!family.contains(&union)).then(|| json!({"missing_top": union.to_json()})),
    );
    if family.contains(&union) {
        guard::check_hard("closure family size", family.len() as u128, 64)?;
        let name = |s: &StateSet| s.to_string();
        let file = LatticeFile {
            elements: family.iter().map(name).collect(),
            leq: family
                .iter()
                .flat_map(|x| family.iter().map(move |y| (x, y)))
                .filter(|(x, y)| x != y && x.is_subset(**y))
                .map(|(x, y)| (name(x), name(y)))
                .collect(),
            ocompl: family
                .iter()
                .map(|x| (name(x), name(&sim_op(f, *x))))
                .collect(),
            bottom: name(&meet_all),
            top: name(&union),
        };
        r.extend(check_oml(&file)?);
    } else {
        // Without a top there is no lattice; the order-free laws of ∼ still apply.
        r.law(
            "involution",
            family
                .iter()
                .find(|&&x| sim_op(f, sim_op(f, x)) != x)
                .map(|x| json!({"x": x.to_string()})),
        );
        r.law(
            "antitonicity",
            family
                .iter()
                .flat_map(|x| family.iter().map(move |y| (x, y)))
                .find(|(x, y)| x.is_subset(**y) && !sim_op(f, **y).is_subset(sim_op(f, **x)))
                .map(|(x, y)| json!({"x": x.to_string(), "y": y.to_string()})),
        );
    }
    Ok((family, r))
}
