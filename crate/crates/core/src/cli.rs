//! Command-line front end.
//!
//! Exit codes: 0 success or pass, 1 failed check or nothing found, 2 usage
//! or input error. Setting `QMODAL_GUARD_OVERRIDE=1` lifts the soft size
//! guards, at your own runtime's risk.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::baoframe::{
    bq_valid_on_frame, check_b_semantic, check_box_witness, check_pos_additivity, check_q_fol,
    check_q_semantic, check_seriality, check_symmetry, eval_bq, extension, KripkeFrame,
    KripkeModel, StateSet, ValuationFile,
};
use crate::checker::{self, ParadoxOutcome, SuiteConfig};
use crate::embedding::{
    certify_embedding, closure_family, search_embedding, search_frames_for, Embedding, FrameFilter,
    FrameSearchOptions,
};
use crate::error::{Error, Result};
use crate::formula::{
    expand_ql, kernelize_ql, parse_bq, parse_ql, translate, translate_diamond_form,
};
use crate::guard;
use crate::oml::{
    check_oml, eval_ql, gen_boolean, gen_mo, ql_valid, valuation_from_names, FiniteOml, LatticeFile,
};
use crate::report::{CertificateReport, Validity};

#[derive(Parser, Debug)]
#[command(
    name = "qmodal",
    version,
    about = "Quantum logic into the modal logic BQ: translation, finite OMLs, Kripke frames, embeddings",
    after_help = "Set QMODAL_GUARD_OVERRIDE=1 to lift size guards, at your own runtime's risk."
)]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for searches and suites.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FormulaInput {
    /// Formula text.
    formula: Option<String>,
    /// Read the formula from a file (`-` = stdin).
    #[arg(long = "in", value_name = "FILE", conflicts_with = "formula")]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = 3)]
    max_states: usize,
    #[arg(long, default_value_t = 3)]
    atom_budget: usize,
    /// none, b+q or serial.
    #[arg(long)]
    filter: Option<FrameFilter>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Logic {
    Ql,
    Bq,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Translate a QL formula into BQ.
    Translate {
        #[command(flatten)]
        input: FormulaInput,
        /// Use the `<>!` form for negation instead of `![]`.
        #[arg(long)]
        diamond: bool,
    },
    /// Rewrite a QL formula into `~ & |` (or `~ &` with `--kernel`).
    Expand {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long)]
        kernel: bool,
    },
    /// Check the orthomodular lattice laws on a lattice file.
    CheckOml {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print a generated lattice (`boolean:k` or `mo:k`) as a lattice file.
    GenOml { spec: String },
    /// Report frame-class properties of a frame file.
    CheckFrame {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated: symmetry, q-fol, seriality, b-semantic, q-semantic, box-witness, pos-additivity.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "symmetry,q-fol,seriality"
        )]
        props: Vec<String>,
    },
    /// Evaluate a formula in a lattice (QL) or a Kripke model (BQ).
    Eval {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, value_enum)]
        logic: Logic,
        /// Lattice file, or `boolean:k` / `mo:k` (QL).
        #[arg(long)]
        lattice: Option<String>,
        /// Frame file (BQ).
        #[arg(long)]
        frame: Option<PathBuf>,
        /// Valuation file: atom to element name (QL) or to a state list (BQ).
        #[arg(long)]
        valuation: PathBuf,
        /// Report truth at this state only (BQ).
        #[arg(long)]
        state: Option<usize>,
    },
    /// Decide validity in a lattice (QL) or on a frame (BQ).
    Valid {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, value_enum)]
        logic: Logic,
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Certify an embedding file.
    Embed {
        #[arg(long)]
        file: PathBuf,
    },
    /// Search for an embedding of a lattice into a frame, or into any small frame.
    EmbedSearch {
        /// Lattice file, or `boolean:k` / `mo:k`.
        #[arg(long)]
        lattice: String,
        /// Search this frame only.
        #[arg(long, conflicts_with_all = ["max_states", "filter", "degree_pruning"])]
        frame: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value = "none")]
        filter: FrameFilter,
        #[arg(long)]
        degree_pruning: bool,
    },
    /// Close seed sets under `&` and `~` on a frame and check the OML laws.
    Closure {
        #[arg(long)]
        frame: PathBuf,
        /// A seed set as comma-separated states; repeatable. `--set ""` is the empty set.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Frame correspondence suite.
    Correspond(SuiteArgs),
    /// Search for the observation paradox witness.
    Paradox(SuiteArgs),
    /// Distribution of `[]` over `&` and `|`.
    Distribution(SuiteArgs),
    /// Validity data for translated QL axioms (non-asserting).
    TranslationReport(SuiteArgs),
    /// Operator facts over all small frames.
    Facts(SuiteArgs),
}

/// Output collected inside the worker pool.
struct Io {
    out: Vec<u8>,
    json: bool,
}

impl Io {
    fn line(&mut self, text: impl AsRef<str>) {
        self.out.extend_from_slice(text.as_ref().as_bytes());
        self.out.push(b'\n');
    }

    fn report(&mut self, r: &CertificateReport) -> i32 {
        if self.json {
            r.write_json_lines(&mut self.out)
                .expect("writing to a Vec cannot fail");
        } else {
            r.write_text(&mut self.out)
                .expect("writing to a Vec cannot fail");
        }
        i32::from(!r.passed())
    }
}

/// Runs one invocation and returns the exit code.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if std::env::var(guard::OVERRIDE_ENV).is_ok_and(|v| v == "1") {
        guard::set_override(true);
    }
    let cli = match Cli::try_parse_from(argv.iter().map(|a| a.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.map_or(0, usize::from))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut io = Io {
        out: Vec::new(),
        json: cli.json,
    };
    let result = pool.install(|| dispatch(&cli, &mut io));
    let _ = out.write_all(&io.out);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_path(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_formula(input: &FormulaInput) -> Result<String> {
    match (&input.formula, &input.input) {
        (Some(f), _) => Ok(f.clone()),
        (None, Some(p)) if p == "-" => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| Error::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            Ok(s.trim().to_string())
        }
        (None, Some(p)) => Ok(read_path(Path::new(p))?.trim().to_string()),
        (None, None) => Err(Error::malformed("no formula given (inline or --in FILE)")),
    }
}

fn parse_generator(spec: &str) -> Option<Result<FiniteOml>> {
    let (kind, k) = spec.split_once(':')?;
    let k: usize = match k.parse() {
        Ok(k) => k,
        Err(_) => {
            return Some(Err(Error::malformed(format!(
                "bad generator size in `{spec}`"
            ))))
        }
    };
    match kind {
        "boolean" => Some(gen_boolean(k)),
        "mo" => Some(gen_mo(k)),
        _ => Some(Err(Error::malformed(format!(
            "unknown generator `{kind}` (boolean or mo)"
        )))),
    }
}

fn load_lattice(spec: &str) -> Result<FiniteOml> {
    match parse_generator(spec) {
        Some(l) => l,
        None => FiniteOml::from_json(&read_path(Path::new(spec))?),
    }
}

fn load_frame(path: &Path) -> Result<KripkeFrame> {
    KripkeFrame::from_json(&read_path(path)?)
}

fn require<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| Error::malformed(format!("{flag} is required here")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn suite_config(
    args: &SuiteArgs,
    seed: Option<u64>,
    default_filter: FrameFilter,
) -> Result<SuiteConfig> {
    let cfg = SuiteConfig {
        max_states: args.max_states,
        atom_budget: args.atom_budget,
        sample_seed: seed,
        frame_filter: args.filter.unwrap_or(default_filter),
    };
    require_seed(cfg.max_states > cfg.exhaustive_limit(), seed)?;
    Ok(cfg)
}

fn require_seed(sampling: bool, seed: Option<u64>) -> Result<()> {
    if sampling && seed.is_none() {
        return Err(Error::MissingSeed("sampling beyond the exhaustive bound"));
    }
    Ok(())
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<i32> {
    match &cli.command {
        Command::Translate { input, diamond } => {
            let f = parse_ql(&read_formula(input)?)?;
            let t = if *diamond {
                translate_diamond_form(&f)
            } else {
                translate(&f)
            };
            if io.json {
                io.line(json!({"input": f.to_string(), "translation": t.to_string()}).to_string());
            } else {
                io.line(t.to_string());
            }
            Ok(0)
        }
        Command::Expand { input, kernel } => {
            let f = parse_ql(&read_formula(input)?)?;
            let g = if *kernel {
                kernelize_ql(&f)
            } else {
                expand_ql(&f)
            };
            if io.json {
                io.line(json!({"input": f.to_string(), "output": g.to_string()}).to_string());
            } else {
                io.line(g.to_string());
            }
            Ok(0)
        }
        Command::CheckOml { file } => {
            let lf = LatticeFile::from_json(&read_path(file)?)?;
            Ok(io.report(&check_oml(&lf)?))
        }
        Command::GenOml { spec } => {
            let l = parse_generator(spec).ok_or_else(|| {
                Error::malformed(format!("expected boolean:k or mo:k, got `{spec}`"))
            })??;
            let text = l.to_file().to_json();
            if io.json {
                let v: Value = serde_json::from_str(&text)?;
                io.line(v.to_string());
            } else {
                io.line(text);
            }
            Ok(0)
        }
        Command::CheckFrame { file, props } => check_frame(io, &load_frame(file)?, props, cli.seed),
        Command::Eval {
            input,
            logic,
            lattice,
            frame,
            valuation,
            state,
        } => {
            let text = read_formula(input)?;
            let vtext = read_path(valuation)?;
            match logic {
                Logic::Ql => {
                    let l = load_lattice(require(lattice, "--lattice")?)?;
                    let f = parse_ql(&text)?;
                    let names: BTreeMap<String, String> = serde_json::from_str(&vtext)?;
                    let v = valuation_from_names(&l, &names)?;
                    let value = l.name(eval_ql(&l, &v, &f)?).to_string();
                    if io.json {
                        io.line(json!({"formula": f.to_string(), "value": value}).to_string());
                    } else {
                        io.line(value);
                    }
                }
                Logic::Bq => {
                    let fr = load_frame(require(frame, "--frame")?)?;
                    let f = parse_bq(&text)?;
                    let vf: ValuationFile = serde_json::from_str(&vtext)?;
                    let m = KripkeModel::from_valuation_file(fr, &vf)?;
                    match state {
                        Some(s) => {
                            if *s >= m.frame.states() {
                                return Err(Error::OutOfRange {
                                    what: "state",
                                    value: *s as i64,
                                    min: 0,
                                    max: m.frame.states() as i64 - 1,
                                });
                            }
                            let b = eval_bq(&m, *s, &f)?;
                            if io.json {
                                io.line(
                                    json!({"formula": f.to_string(), "state": s, "value": b})
                                        .to_string(),
                                );
                            } else {
                                io.line(b.to_string());
                            }
                        }
                        None => {
                            let ext = extension(&m, &f)?;
                            if io.json {
                                io.line(
                                    json!({"formula": f.to_string(), "extension": ext.to_json()})
                                        .to_string(),
                                );
                            } else {
                                io.line(ext.to_string());
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Valid {
            input,
            logic,
            lattice,
            frame,
        } => {
            let text = read_formula(input)?;
            let (formula, witness) = match logic {
                Logic::Ql => {
                    let l = load_lattice(require(lattice, "--lattice")?)?;
                    let f = parse_ql(&text)?;
                    let w = match ql_valid(&l, &f)? {
                        Validity::Valid => None,
                        Validity::Invalid(v) => Some(json!(v
                            .iter()
                            .map(|(a, &x)| (a.clone(), l.name(x).to_string()))
                            .collect::<BTreeMap<_, _>>())),
                    };
                    (f.to_string(), w)
                }
                Logic::Bq => {
                    let fr = load_frame(require(frame, "--frame")?)?;
                    let f = parse_bq(&text)?;
                    let w = bq_valid_on_frame(&fr, &f)?.witness().map(|w| w.to_json());
                    (f.to_string(), w)
                }
            };
            if io.json {
                io.line(
                    json!({"formula": formula, "valid": witness.is_none(), "falsifier": witness})
                        .to_string(),
                );
            } else {
                match &witness {
                    None => io.line("valid"),
                    Some(w) => io.line(format!("invalid; falsifier: {w}")),
                }
            }
            Ok(i32::from(witness.is_some()))
        }
        Command::Embed { file } => {
            let e = Embedding::from_json(&read_path(file)?, file.parent())?;
            Ok(io.report(&certify_embedding(&e)))
        }
        Command::EmbedSearch {
            lattice,
            frame,
            max_states,
            filter,
            degree_pruning,
        } => {
            let l = load_lattice(lattice)?;
            let found = match frame {
                Some(p) => search_embedding(&l, &load_frame(p)?)?,
                None => {
                    let opts = FrameSearchOptions {
                        filter: *filter,
                        degree_pruning: *degree_pruning,
                    };
                    search_frames_for(&l, *max_states, opts)?.map(|(_, e)| e)
                }
            };
            match found {
                Some(e) => {
                    if io.json {
                        let v: Value = serde_json::from_str(&e.to_json())?;
                        io.line(v.to_string());
                    } else {
                        io.line(e.to_json());
                    }
                    Ok(0)
                }
                None => {
                    if io.json {
                        io.line(json!({"found": false}).to_string());
                    } else {
                        io.line("NotFound");
                    }
                    Ok(1)
                }
            }
        }
        Command::Closure { frame, sets } => {
            let f = load_frame(frame)?;
            let seeds = sets
                .iter()
                .map(|s| parse_state_set(s))
                .collect::<Result<Vec<_>>>()?;
            let (family, report) = closure_family(&f, &seeds)?;
            if !io.json {
                io.line(format!(
                    "family: {}",
                    family
                        .iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            Ok(io.report(&report))
        }
        Command::Correspond(a) => {
            let cfg = suite_config(a, cli.seed, FrameFilter::None)?;
            Ok(io.report(&checker::correspondence_suite(&cfg)?))
        }
        Command::Distribution(a) => {
            let cfg = suite_config(a, cli.seed, FrameFilter::None)?;
            Ok(io.report(&checker::distribution_suite(&cfg)?))
        }
        Command::TranslationReport(a) => {
            let cfg = suite_config(a, cli.seed, FrameFilter::BQ)?;
            io.report(&checker::translation_report(&cfg)?);
            Ok(0)
        }
        Command::Facts(a) => {
            let cfg = SuiteConfig {
                max_states: a.max_states,
                atom_budget: a.atom_budget,
                sample_seed: cli.seed,
                frame_filter: a.filter.unwrap_or_default(),
            };
            let limit = match cfg.frame_filter {
                FrameFilter::BQ => checker::EXHAUSTIVE_FILTERED,
                _ => checker::EXHAUSTIVE_FACTS,
            };
            require_seed(cfg.max_states > limit, cli.seed)?;
            Ok(io.report(&checker::facts_suite(&cfg)?))
        }
        Command::Paradox(a) => {
            let cfg = suite_config(a, cli.seed, FrameFilter::BQ)?;
            let (outcome, report) = checker::paradox_report(&cfg)?;
            if io.json {
                io.report(&report);
            } else {
                match &outcome {
                    ParadoxOutcome::Found(w) => {
                        io.line(format!("witness model: {}", w.model.to_json()));
                        io.line(format!("state: {}", w.state));
                        for (f, v) in &w.evaluations {
                            io.line(format!("  {f}: {v}"));
                        }
                        io.line(format!("re-verified: {}", yes_no(w.reverified)));
                    }
                    ParadoxOutcome::NotFound(examined) => {
                        io.line("NotFound");
                        for e in examined {
                            io.line(format!("  {e}"));
                        }
                    }
                }
                io.report(&report);
            }
            let found = matches!(outcome, ParadoxOutcome::Found(_));
            Ok(if !report.passed() || !found { 1 } else { 0 })
        }
    }
}

fn parse_state_set(text: &str) -> Result<StateSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::malformed(format!("bad state `{s}` in set `{text}`")))
                .and_then(|i| {
                    guard::check_hard("state index", i as u128, 63)?;
                    Ok(i)
                })
        })
        .collect()
}

fn check_frame(io: &mut Io, f: &KripkeFrame, props: &[String], seed: Option<u64>) -> Result<i32> {
    let mut answers: Vec<(String, bool)> = Vec::new();
    for p in props {
        let v = match p.trim() {
            "symmetry" => check_symmetry(f),
            "q-fol" => check_q_fol(f),
            "seriality" => check_seriality(f),
            "b-semantic" => check_b_semantic(f)?,
            "q-semantic" => check_q_semantic(f)?,
            "box-witness" => check_box_witness(f)?.passed(),
            "pos-additivity" => check_pos_additivity(f, seed)?.passed(),
            other => return Err(Error::malformed(format!("unknown property `{other}`"))),
        };
        answers.push((p.trim().to_string(), v));
    }
    if io.json {
        let obj: serde_json::Map<String, Value> =
            answers.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        io.line(json!({"frame": f.to_json(), "properties": obj}).to_string());
    } else {
        io.line(
            answers
                .iter()
                .map(|(k, v)| format!("{k}: {}", yes_no(*v)))
                .collect::<Vec<_>>()
                .join("; "),
        );
    }
    // Frame-class properties are answers, not checks; only the operator laws can fail.
    let facts_fail = answers
        .iter()
        .any(|(k, v)| (k == "box-witness" || k == "pos-additivity") && !v);
    Ok(i32::from(facts_fail))
}
