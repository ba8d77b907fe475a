//! Exhaustive small-frame suites: frame correspondences, the observation
//! paradox, distribution of `[]`, and translation coherence.
//!
//! Every suite is deterministic given its [`SuiteConfig`]: frames are
//! visited by state count, then relation mask (pair `(i, j)` is bit
//! `i·n + j`); sampled sizes draw masks from a ChaCha8 stream seeded with
//! `sample_seed` (stream number = state count). Parallel work is merged in
//! enumeration order, so reports do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::baoframe::{
    bq_valid_on_frame, check_b_semantic, check_box_witness, check_pos_additivity, check_q_fol,
    check_q_semantic, check_seriality, check_symmetry, eval_bq, first_satisfying, FrameWitness,
    KripkeFrame, KripkeModel,
};
use crate::embedding::{sim_de_morgan_counterexample, sim_involution_counterexample, FrameFilter};
use crate::error::{Error, Result};
use crate::formula::{
    bq_axiom, parse_bq, ql_axiom, translate, BqAxiom, BqFormula, QlFormula, QL_AXIOM_COUNT,
};
use crate::guard;
use crate::oml::{gen_boolean, gen_mo, ql_valid, FiniteOml};
use crate::report::{CertificateReport, Validity, Verdict};

/// Largest state count for which all `2^(n²)` relations are enumerated.
pub const ENUMERATE_MAX_STATES: usize = 5;
/// Exhaustive bound for suites over all frames (or serial frames).
pub const EXHAUSTIVE_ALL_FRAMES: usize = 3;
/// Exhaustive bound for suites restricted to B+Q frames.
pub const EXHAUSTIVE_FILTERED: usize = 5;
/// Exhaustive bound for [`facts_suite`], whose per-frame work is small.
pub const EXHAUSTIVE_FACTS: usize = 4;
/// Masks drawn per sampled state count.
pub const SAMPLES_PER_SIZE: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_states: usize,
    pub atom_budget: usize,
    pub sample_seed: Option<u64>,
    pub frame_filter: FrameFilter,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_states: 3,
            atom_budget: 3,
            sample_seed: None,
            frame_filter: FrameFilter::None,
        }
    }
}

impl SuiteConfig {
    pub fn with_max_states(mut self, n: usize) -> Self {
        self.max_states = n;
        self
    }

    pub fn with_filter(mut self, filter: FrameFilter) -> Self {
        self.frame_filter = filter;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.sample_seed = Some(seed);
        self
    }

    /// Exhaustive bound implied by the filter.
    pub fn exhaustive_limit(&self) -> usize {
        match self.frame_filter {
            FrameFilter::BQ => EXHAUSTIVE_FILTERED,
            FrameFilter::None | FrameFilter::Serial => EXHAUSTIVE_ALL_FRAMES,
        }
    }

    /// True iff some state count would be sampled.
    pub fn needs_seed(&self) -> bool {
        self.max_states > self.exhaustive_limit()
    }

    fn validate(&self, atoms: usize) -> Result<()> {
        guard::check(
            "suite states",
            self.max_states as u128,
            ENUMERATE_MAX_STATES as u128,
        )?;
        guard::check_hard("suite states", self.max_states as u128, 8)?;
        if atoms > self.atom_budget {
            return Err(Error::Guard {
                name: "atom budget",
                value: atoms as u128,
                limit: self.atom_budget as u128,
            });
        }
        Ok(())
    }

    fn to_json(self) -> Value {
        json!({
            "max_states": self.max_states,
            "atom_budget": self.atom_budget,
            "sample_seed": self.sample_seed,
            "frame_filter": self.frame_filter.as_str(),
        })
    }
}

/// All `2^(n²)` frames on `n` states, in ascending relation-mask order.
pub fn enumerate_frames(n: usize) -> Result<impl Iterator<Item = KripkeFrame>> {
    guard::check("enumerated states", n as u128, ENUMERATE_MAX_STATES as u128)?;
    guard::check_hard("enumerated states", n as u128, 7)?;
    Ok((0..1u64 << (n * n)).map(move |m| KripkeFrame::from_mask(n, m)))
}

/// Frames of one state count visited by a suite.
struct Batch {
    n: usize,
    frames: Vec<KripkeFrame>,
    mode: Value,
}

fn sample_masks(n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let bits = n * n;
    (0..SAMPLES_PER_SIZE)
        .map(|_| {
            let m: u64 = rng.gen();
            if bits >= 64 {
                m
            } else {
                m & ((1u64 << bits) - 1)
            }
        })
        .collect()
}

fn batch(
    n: usize,
    filter: FrameFilter,
    exhaustive_limit: usize,
    seed: Option<u64>,
) -> Result<Batch> {
    if n <= exhaustive_limit {
        let frames: Vec<KripkeFrame> = (0..1u64 << (n * n))
            .into_par_iter()
            .map(|m| KripkeFrame::from_mask(n, m))
            .filter(|f| filter.accepts(f))
            .collect();
        let mode =
            json!({"mode": "exhaustive", "relations": 1u64 << (n * n), "frames": frames.len()});
        Ok(Batch { n, frames, mode })
    } else {
        let seed = seed.ok_or(Error::MissingSeed("sampling beyond the exhaustive bound"))?;
        let frames: Vec<KripkeFrame> = sample_masks(n, seed)
            .into_iter()
            .map(|m| KripkeFrame::from_mask(n, m))
            .filter(|f| filter.accepts(f))
            .collect();
        let mode = json!({"mode": "sampled", "seed": seed, "drawn": SAMPLES_PER_SIZE, "frames": frames.len()});
        Ok(Batch { n, frames, mode })
    }
}

fn batches(cfg: &SuiteConfig, exhaustive_limit: usize) -> Result<Vec<Batch>> {
    (1..=cfg.max_states)
        .map(|n| batch(n, cfg.frame_filter, exhaustive_limit, cfg.sample_seed))
        .collect()
}

fn bq(text: &str) -> BqFormula {
    parse_bq(text).expect("built-in formula parses")
}

fn valid(f: &KripkeFrame, phi: &BqFormula) -> Result<bool> {
    Ok(bq_valid_on_frame(f, phi)?.is_valid())
}

fn size_frame(n: usize, count: usize) -> Value {
    json!({"states": n, "frames": count})
}

/// Pushes one pass line per state count, or one fail line per failing frame.
fn push_per_frame(r: &mut CertificateReport, name: &str, b: &Batch, failures: Vec<(Value, Value)>) {
    if failures.is_empty() {
        r.push(
            name,
            Verdict::Pass,
            size_frame(b.n, b.frames.len()),
            Value::Null,
        );
    }
    for (frame, witness) in failures {
        r.push(name, Verdict::Fail, frame, witness);
    }
}

#[derive(Clone, Copy)]
struct FrameClasses {
    symmetric: bool,
    b_semantic: bool,
    b_valid: bool,
    q_fol: bool,
    q_semantic: bool,
    q_valid: bool,
    serial: bool,
    d_valid: bool,
    bq_valid: bool,
    dual_valid: bool,
}

impl FrameClasses {
    fn to_json(self) -> Value {
        json!({
            "symmetric": self.symmetric, "b_semantic": self.b_semantic, "b_valid": self.b_valid,
            "q_fol": self.q_fol, "q_semantic": self.q_semantic, "q_valid": self.q_valid,
            "serial": self.serial, "d_valid": self.d_valid,
            "bq_valid": self.bq_valid, "dual_valid": self.dual_valid,
        })
    }
}

/// Frame correspondences, per frame:
///
/// * `p -> []<>p` valid ⟺ symmetric ⟺ `⟨R⟩[R]X ⊆ X` for all `X`;
/// * `[]<>p -> p` valid ⟺ Q first-order condition ⟺ `X ⊆ ⟨R⟩[R]X` for all `X`;
/// * Q first-order condition ⇒ serial, and serial ⟺ `!([]false)` valid;
/// * `[]<>p <-> p` valid ⟺ `<>[]p <-> p` valid.
pub fn correspondence_suite(cfg: &SuiteConfig) -> Result<CertificateReport> {
    cfg.validate(1)?;
    let (b_ax, q_ax, d_ax) = (bq("p -> []<>p"), bq("[]<>p -> p"), bq("!([]false)"));
    let (bq_ax, dual_ax) = (bq("[]<>p <-> p"), bq("<>[]p <-> p"));
    let mut r = CertificateReport::new("correspondence");
    r.info("config", Value::Null, cfg.to_json());
    for b in batches(cfg, cfg.exhaustive_limit())? {
        let classes: Vec<FrameClasses> = b
            .frames
            .par_iter()
            .map(|f| {
                Ok(FrameClasses {
                    symmetric: check_symmetry(f),
                    b_semantic: check_b_semantic(f)?,
                    b_valid: valid(f, &b_ax)?,
                    q_fol: check_q_fol(f),
                    q_semantic: check_q_semantic(f)?,
                    q_valid: valid(f, &q_ax)?,
                    serial: check_seriality(f),
                    d_valid: valid(f, &d_ax)?,
                    bq_valid: valid(f, &bq_ax)?,
                    dual_valid: valid(f, &dual_ax)?,
                })
            })
            .collect::<Result<_>>()?;
        let failing = |p: &dyn Fn(&FrameClasses) -> bool| -> Vec<(Value, Value)> {
            b.frames
                .iter()
                .zip(&classes)
                .filter(|(_, c)| !p(c))
                .map(|(f, c)| (f.to_json(), c.to_json()))
                .collect()
        };
        push_per_frame(
            &mut r,
            "b_correspondence",
            &b,
            failing(&|c| c.b_valid == c.symmetric && c.symmetric == c.b_semantic),
        );
        push_per_frame(
            &mut r,
            "q_correspondence",
            &b,
            failing(&|c| c.q_valid == c.q_fol && c.q_fol == c.q_semantic),
        );
        push_per_frame(
            &mut r,
            "q_implies_serial",
            &b,
            failing(&|c| !c.q_fol || c.serial),
        );
        push_per_frame(
            &mut r,
            "d_correspondence",
            &b,
            failing(&|c| c.serial == c.d_valid),
        );
        push_per_frame(
            &mut r,
            "dual_chain",
            &b,
            failing(&|c| c.bq_valid == c.dual_valid),
        );
        let count = |p: fn(&FrameClasses) -> bool| classes.iter().filter(|c| p(c)).count();
        let mut counts = b.mode.clone();
        counts["symmetric"] = json!(count(|c| c.symmetric));
        counts["q"] = json!(count(|c| c.q_fol));
        counts["serial"] = json!(count(|c| c.serial));
        counts["b_and_q"] = json!(count(|c| c.symmetric && c.q_fol));
        r.info("class_counts", json!({"states": b.n}), counts);
    }
    Ok(r)
}

/// Box witnessing (`s R t` ⟺ every box at `s` is witnessed at `t`),
/// additivity of `⟨R⟩` over `∪`, the De Morgan law of `∼` over all subset
/// pairs, and `∼∼X = X` for all `X` on B+Q frames. Exhaustive up to
/// [`EXHAUSTIVE_FACTS`] states.
pub fn facts_suite(cfg: &SuiteConfig) -> Result<CertificateReport> {
    cfg.validate(0)?;
    let limit = match cfg.frame_filter {
        FrameFilter::BQ => EXHAUSTIVE_FILTERED,
        _ => EXHAUSTIVE_FACTS,
    };
    let mut r = CertificateReport::new("facts");
    r.info("config", Value::Null, cfg.to_json());
    for b in batches(cfg, limit)? {
        let rows: Vec<[Option<Value>; 4]> = b
            .frames
            .par_iter()
            .map(|f| {
                let witness = check_box_witness(f)?;
                let additivity = check_pos_additivity(f, cfg.sample_seed)?;
                let first_fail =
                    |rep: CertificateReport| rep.failures().next().map(|e| e.witness.clone());
                let bq_frame = FrameFilter::BQ.accepts(f);
                Ok([
                    first_fail(witness),
                    first_fail(additivity),
                    sim_de_morgan_counterexample(f)
                        .map(|(x, y)| json!({"x": x.to_json(), "y": y.to_json()})),
                    if bq_frame {
                        sim_involution_counterexample(f).map(|x| json!({"x": x.to_json()}))
                    } else {
                        None
                    },
                ])
            })
            .collect::<Result<_>>()?;
        for (k, name) in [
            "box_witness",
            "pos_additivity",
            "sim_de_morgan_all_subsets",
            "sim_involution_on_bq",
        ]
        .into_iter()
        .enumerate()
        {
            let failures = b
                .frames
                .iter()
                .zip(&rows)
                .filter_map(|(f, row)| row[k].clone().map(|w| (f.to_json(), w)))
                .collect();
            push_per_frame(&mut r, name, &b, failures);
        }
        let bq_count = b
            .frames
            .iter()
            .filter(|f| FrameFilter::BQ.accepts(f))
            .count();
        let mut info = b.mode.clone();
        info["b_and_q"] = json!(bq_count);
        r.info("frames", json!({"states": b.n}), info);
    }
    Ok(r)
}

/// The four formulas evaluated at a paradox witness.
pub const PARADOX_FORMULAS: [&str; 4] = [
    "[]p & [](q | r)",
    "!([](p & q)) & !([](p & r))",
    "([]p & [](q | r)) -> ([](p & q) | [](p & r))",
    "([]p & [](q | r)) <-> ([](p & q) | [](p & r))",
];
/// Values the four formulas must take at a witness.
const PARADOX_EXPECTED: [bool; 4] = [true, true, false, false];
const PARADOX_TARGET: &str = "([]p & [](q | r)) & !([](p & q) | [](p & r))";
const PARADOX_CONVERSE: &str = "([](p & q) | [](p & r)) -> ([]p & [](q | r))";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadoxWitness {
    pub model: KripkeModel,
    pub state: usize,
    /// `(formula, value)` by per-state recursion, for [`PARADOX_FORMULAS`]
    /// followed by `[]p` and `[](q | r)`.
    pub evaluations: Vec<(String, bool)>,
    /// The evaluations agree with the search (set-based) verdict.
    pub reverified: bool,
}

impl ParadoxWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model.to_json(),
            "state": self.state,
            "evaluations": self.evaluations.iter().map(|(f, v)| json!({"formula": f, "value": v})).collect::<Vec<_>>(),
            "reverified": self.reverified,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParadoxOutcome {
    Found(ParadoxWitness),
    /// Frames examined per state count, with how they were enumerated.
    NotFound(Vec<Value>),
}

fn reverify(frame: &KripkeFrame, w: &FrameWitness) -> Result<ParadoxWitness> {
    let model = KripkeModel::new(frame.clone(), w.valuation.clone())?;
    let mut evaluations = Vec::new();
    for text in PARADOX_FORMULAS.iter().chain(&["[]p", "[](q | r)"]) {
        evaluations.push((text.to_string(), eval_bq(&model, w.state, &bq(text))?));
    }
    let reverified = evaluations[..4]
        .iter()
        .zip(PARADOX_EXPECTED)
        .all(|((_, got), want)| *got == want)
        && evaluations[4].1
        && evaluations[5].1;
    Ok(ParadoxWitness {
        model,
        state: w.state,
        evaluations,
        reverified,
    })
}

/// Searches the configured frames for a model and state where
/// `[]p & [](q | r)` holds but `[](p & q) | [](p & r)` does not. The first
/// witness in enumeration order is re-evaluated by per-state recursion.
pub fn paradox_search(cfg: &SuiteConfig) -> Result<ParadoxOutcome> {
    cfg.validate(3)?;
    let target = bq(PARADOX_TARGET);
    let limit = cfg.exhaustive_limit();
    let mut examined = Vec::new();
    for n in 1..=cfg.max_states {
        let probe = |f: KripkeFrame| -> Option<Result<(KripkeFrame, FrameWitness)>> {
            if !cfg.frame_filter.accepts(&f) {
                return None;
            }
            first_satisfying(&f, &target)
                .transpose()
                .map(|w| w.map(|w| (f, w)))
        };
        let (hit, mode) = if n <= limit {
            let hit = (0..1u64 << (n * n))
                .into_par_iter()
                .find_map_first(|m| probe(KripkeFrame::from_mask(n, m)));
            (hit, None)
        } else {
            let b = batch(n, cfg.frame_filter, limit, cfg.sample_seed)?;
            let hit = b.frames.into_par_iter().find_map_first(probe);
            (hit, Some(b.mode))
        };
        if let Some(hit) = hit {
            let (frame, w) = hit?;
            return Ok(ParadoxOutcome::Found(reverify(&frame, &w)?));
        }
        let mode = match mode {
            Some(m) => m,
            None => {
                let accepted = (0..1u64 << (n * n))
                    .into_par_iter()
                    .filter(|&m| cfg.frame_filter.accepts(&KripkeFrame::from_mask(n, m)))
                    .count();
                json!({"mode": "exhaustive", "relations": 1u64 << (n * n), "frames": accepted})
            }
        };
        let mut entry = mode;
        entry["states"] = json!(n);
        examined.push(entry);
    }
    Ok(ParadoxOutcome::NotFound(examined))
}

/// [`paradox_search`] plus validity of the converse implication
/// `([](p & q) | [](p & r)) -> ([]p & [](q | r))` on all frames with up to
/// `min(max_states, 3)` states.
pub fn paradox_report(cfg: &SuiteConfig) -> Result<(ParadoxOutcome, CertificateReport)> {
    let outcome = paradox_search(cfg)?;
    let mut r = CertificateReport::new("paradox");
    r.info("config", Value::Null, cfg.to_json());
    match &outcome {
        ParadoxOutcome::Found(w) => {
            let verdict = if w.reverified {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            r.push("witness", verdict, w.model.frame.to_json(), w.to_json());
        }
        ParadoxOutcome::NotFound(examined) => {
            r.push(
                "witness",
                Verdict::Pass,
                Value::Null,
                json!({"not_found": examined}),
            );
        }
    }
    converse_entries(&mut r, cfg.max_states.min(EXHAUSTIVE_ALL_FRAMES))?;
    Ok((outcome, r))
}

fn converse_entries(r: &mut CertificateReport, max_states: usize) -> Result<()> {
    let converse = bq(PARADOX_CONVERSE);
    for n in 1..=max_states {
        let frames: Vec<KripkeFrame> = enumerate_frames(n)?.collect();
        let failures = first_failures(&frames, &converse)?;
        let b = Batch {
            n,
            mode: Value::Null,
            frames,
        };
        push_per_frame(r, "converse_valid", &b, failures);
    }
    Ok(())
}

/// `(frame, witness)` for every frame on which `phi` is invalid.
fn first_failures(frames: &[KripkeFrame], phi: &BqFormula) -> Result<Vec<(Value, Value)>> {
    let results: Vec<Validity<FrameWitness>> = frames
        .par_iter()
        .map(|f| bq_valid_on_frame(f, phi))
        .collect::<Result<_>>()?;
    Ok(frames
        .iter()
        .zip(results)
        .filter_map(|(f, v)| v.witness().map(|w| (f.to_json(), w.to_json())))
        .collect())
}

/// `[]` over `&` (both directions) and `|` (one direction) on every
/// configured frame, the first counterexample to `[](p | q) -> ([]p | []q)`,
/// and validity of that converse on identity frames.
pub fn distribution_suite(cfg: &SuiteConfig) -> Result<CertificateReport> {
    cfg.validate(2)?;
    let and_dist = bq("[](p & q) <-> ([]p & []q)");
    let or_one_way = bq("([]p | []q) -> [](p | q)");
    let or_converse = bq("[](p | q) -> ([]p | []q)");
    let mut r = CertificateReport::new("distribution");
    r.info("config", Value::Null, cfg.to_json());
    let mut counterexample = None;
    for b in batches(cfg, cfg.exhaustive_limit())? {
        push_per_frame(
            &mut r,
            "box_and_both_directions",
            &b,
            first_failures(&b.frames, &and_dist)?,
        );
        push_per_frame(
            &mut r,
            "box_or_one_way",
            &b,
            first_failures(&b.frames, &or_one_way)?,
        );
        if counterexample.is_none() {
            counterexample = b
                .frames
                .par_iter()
                .map(|f| {
                    Ok(bq_valid_on_frame(f, &or_converse)?
                        .witness()
                        .map(|w| (f.clone(), w.clone())))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
        }
    }
    match &counterexample {
        Some((f, w)) => r.info("box_or_converse_counterexample", f.to_json(), w.to_json()),
        None => r.info(
            "box_or_converse_counterexample",
            Value::Null,
            json!("not found"),
        ),
    }
    let identity: Vec<KripkeFrame> = (1..=cfg.max_states).map(KripkeFrame::identity).collect();
    let failures = first_failures(&identity, &or_converse)?;
    let b = Batch {
        n: cfg.max_states,
        mode: Value::Null,
        frames: identity,
    };
    push_per_frame(&mut r, "identity_frames_box_or_converse", &b, failures);
    Ok(r)
}

/// The OML fixtures used by [`translation_report`].
pub fn oml_fixtures() -> Vec<(&'static str, FiniteOml)> {
    vec![
        ("boolean:1", gen_boolean(1).expect("in range")),
        ("boolean:2", gen_boolean(2).expect("in range")),
        ("mo:2", gen_mo(2).expect("in range")),
        ("mo:3", gen_mo(3).expect("in range")),
    ]
}

fn class_validity(frames: &[KripkeFrame], phi: &BqFormula) -> Result<Value> {
    let failures = first_failures(frames, phi)?;
    Ok(json!({
        "frames": frames.len(),
        "valid_on": frames.len() - failures.len(),
        "first_failure": failures.first().map(|(f, w)| json!({"frame": f, "witness": w})),
    }))
}

/// Non-asserting data: for each QL axiom scheme (instantiated at atoms
/// `a`, `b`, `c`), its validity on the OML fixtures and the frame validity of
/// its translation over all B+Q frames with up to `max_states` states and on
/// identity frames. Also records the K and BQ schemes and `<>[]p <-> p`.
pub fn translation_report(cfg: &SuiteConfig) -> Result<CertificateReport> {
    cfg.validate(3)?;
    let mut r = CertificateReport::new("translation_report");
    r.info("config", Value::Null, cfg.to_json());
    let bq_frames: Vec<KripkeFrame> = (1..=cfg.max_states)
        .map(|n| batch(n, FrameFilter::BQ, EXHAUSTIVE_FILTERED, cfg.sample_seed).map(|b| b.frames))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let identity: Vec<KripkeFrame> = (1..=cfg.max_states).map(KripkeFrame::identity).collect();
    let class = json!({"class": "b+q", "max_states": cfg.max_states});
    let fixtures = oml_fixtures();
    let (a, b, c) = (
        QlFormula::atom("a"),
        QlFormula::atom("b"),
        QlFormula::atom("c"),
    );
    for i in 1..=QL_AXIOM_COUNT {
        let axiom = ql_axiom(i, &a, &b, &c)?;
        let translated = translate(&axiom);
        let mut oml = serde_json::Map::new();
        for (name, l) in &fixtures {
            oml.insert(
                name.to_string(),
                match ql_valid(l, &axiom)? {
                    Validity::Valid => json!(true),
                    Validity::Invalid(v) => json!({"falsifier": v}),
                },
            );
        }
        r.info(
            format!("ql_axiom_{i}"),
            class.clone(),
            json!({
                "axiom": axiom.to_string(),
                "translation_nodes": translated.node_count(),
                "ql_valid": oml,
                "bq_frames": class_validity(&bq_frames, &translated)?,
                "identity_frames": class_validity(&identity, &translated)?,
            }),
        );
    }
    let (p, q) = (BqFormula::atom("p"), BqFormula::atom("q"));
    for (name, phi) in [
        ("k_axiom", bq_axiom(BqAxiom::K, &p, &q)),
        ("bq_axiom", bq_axiom(BqAxiom::BQ, &p, &q)),
        ("dual_bq_axiom", bq("<>[]p <-> p")),
    ] {
        r.info(
            name,
            class.clone(),
            json!({"formula": phi.to_string(), "bq_frames": class_validity(&bq_frames, &phi)?}),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_counts() {
        assert_eq!(enumerate_frames(0).unwrap().count(), 1);
        assert_eq!(enumerate_frames(1).unwrap().count(), 2);
        assert_eq!(enumerate_frames(2).unwrap().count(), 16);
        assert_eq!(enumerate_frames(3).unwrap().count(), 512);
        assert!(matches!(enumerate_frames(6), Err(Error::Guard { .. })));
        let masks: Vec<u64> = enumerate_frames(2).unwrap().map(|f| f.mask()).collect();
        assert_eq!(masks, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn sampling_needs_a_seed() {
        let cfg = SuiteConfig::default().with_max_states(4);
        assert!(cfg.needs_seed());
        assert!(matches!(
            correspondence_suite(&cfg),
            Err(Error::MissingSeed(_))
        ));
        assert!(!cfg.with_filter(FrameFilter::BQ).needs_seed());
    }

    #[test]
    fn atom_budget_is_enforced() {
        let cfg = SuiteConfig {
            atom_budget: 2,
            ..SuiteConfig::default()
        };
        assert!(matches!(
            paradox_search(&cfg),
            Err(Error::Guard {
                name: "atom budget",
                ..
            })
        ));
    }

    #[test]
    fn two_cycle_is_in_both_classes() {
        let f = KripkeFrame::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(check_symmetry(&f));
        assert!(check_q_fol(&f));
        // 0 sees 1, which sees only 0, and symmetrically.
        let chain = KripkeFrame::new(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert!(check_symmetry(&chain) && !check_q_fol(&chain));
    }

    #[test]
    fn paradox_found_without_filter() {
        let cfg = SuiteConfig::default().with_max_states(2);
        let ParadoxOutcome::Found(w) = paradox_search(&cfg).unwrap() else {
            panic!("expected a witness")
        };
        assert!(w.reverified);
        assert_eq!(w.model.frame.states(), 2);
    }
}
