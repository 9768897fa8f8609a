use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posetrep_core::conditions::{check_d2bar, check_lmd, completely_representable, lattice_profile};
use posetrep_core::families::{self, Family};
use posetrep_core::filters::{enumerate_filters, extend_to_filter, is_filter, FilterPolicy};
use posetrep_core::representation::{
    canonical_representation, decide_representable, point_filters, verify_representation, DecisionMethod,
};
use posetrep_core::search::{self, find_counterexample, Predicate};
use posetrep_core::spectrum::spectrum;
use posetrep_core::{Arity, BuildMode, Budget, Poset, Signature};
use serde_json::{json, Value};

use crate::format::{self, parse_poset, parse_representation, poset_to_value, signature_to_value, InputError};
use crate::report;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "posetrep", version, about = "Filters and field-of-sets representations of finite posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    /// Step limit for each backtracking search.
    #[arg(long, global = true, env = "POSETREP_BUDGET", default_value_t = Budget::DEFAULT_STEPS)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Poset JSON file.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["stdin", "family"])]
    pub input: Option<PathBuf>,
    /// Read poset JSON from standard input.
    #[arg(long, conflicts_with = "family")]
    pub stdin: bool,
    /// Built-in family: pn, express, d2poset, prime_ideal, boolean, chain,
    /// antichain, m3, n5, random.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for `random`.
    #[arg(long)]
    pub prob: Option<f64>,
    /// Seed for `random`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct Sig {
    /// Meet bound: an integer >= 2 or ALL (aliases omega, ω, C).
    #[arg(long, default_value = "ALL")]
    pub alpha: Arity,
    /// Join bound, same syntax as --alpha.
    #[arg(long, default_value = "ALL")]
    pub beta: Arity,
}

impl Sig {
    fn get(&self) -> Signature {
        Signature::new(self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Policy {
    All,
    Canonical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Property {
    Lmd,
    D2bar,
    Lattice,
    Distributive,
    Complete,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide representability at a signature.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sig: Sig,
        /// Decide by listing every filter instead of per-pair search.
        #[arg(long)]
        enumerate: bool,
    },
    /// Build the canonical representation by filters.
    Represent {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sig: Sig,
    },
    /// Verify a representation file and audit its point filters.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        representation: PathBuf,
    },
    /// Representability at every signature.
    Spectrum {
        #[command(flatten)]
        input: Input,
    },
    /// List filters, or test one set with --test.
    Filters {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sig: Sig,
        #[arg(long, value_enum, default_value = "all")]
        policy: Policy,
        /// Test the set given by --member instead of listing.
        #[arg(long)]
        test: bool,
        /// Element of the set to test; repeat for more.
        #[arg(long = "member", value_name = "LABEL")]
        members: Vec<String>,
    },
    /// Extend a set to a filter avoiding one element.
    Extend {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sig: Sig,
        /// Element the filter must contain; repeat for more.
        #[arg(long = "include", value_name = "LABEL")]
        include: Vec<String>,
        #[arg(long, value_name = "LABEL")]
        forbid: Option<String>,
    },
    /// LMD, D̄2, lattice profile and complete representability.
    Conditions {
        #[command(flatten)]
        input: Input,
        /// Exit code reflects this property alone.
        #[arg(long, value_enum)]
        only: Option<Property>,
    },
    /// Emit a poset as JSON.
    Generate {
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate small posets or look for counterexamples.
    Search {
        /// List every poset on this many elements, up to isomorphism.
        #[arg(long, value_name = "N", conflicts_with_all = ["holds", "fails", "preset"])]
        enumerate: Option<usize>,
        /// Predicate the finding must satisfy, e.g. `d2bar`.
        #[arg(long, requires = "fails", conflicts_with = "preset")]
        holds: Option<String>,
        /// Predicate the finding must violate, e.g. `representable(3,3)`.
        #[arg(long, requires = "holds")]
        fails: Option<String>,
        /// Named probe; see `--preset list`.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Largest size enumerated exhaustively.
        #[arg(long, default_value_t = search::DEFAULT_CAP)]
        cap: usize,
        /// Stop after evaluating this many posets.
        #[arg(long, env = "POSETREP_MAX_POSETS", default_value_t = u64::MAX)]
        max_posets: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] posetrep_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                posetrep_core::Error::BudgetExceeded { .. } | posetrep_core::Error::SearchBudgetExceeded { .. },
            ) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

/// Exit code and report text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

struct Loaded {
    poset: Poset,
    notes: Vec<String>,
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<Loaded, CliError> {
    let text = if let Some(path) = &input.input {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    } else if input.stdin {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else if let Some(name) = &input.family {
        let family = Family::from_parts(name, input.n, input.prob, input.seed)?;
        return Ok(Loaded {
            poset: families::generate(family)?,
            notes: Vec::new(),
        });
    } else {
        return Err(CliError::Usage("give one of --input, --stdin or --family".into()));
    };
    let parsed = parse_poset(&text)?;
    let mut notes = Vec::new();
    if parsed.mode == BuildMode::Order && parsed.closure_added > 0 {
        notes.push(format!(
            "order input was not transitive; closure added {} pair(s)",
            parsed.closure_added
        ));
    }
    Ok(Loaded {
        poset: parsed.poset,
        notes,
    })
}

fn labelled(p: &Poset, labels: &[String]) -> Result<posetrep_core::ElementSet, CliError> {
    Ok(p.set_of(labels)?)
}

fn element(p: &Poset, label: &str) -> Result<usize, CliError> {
    p.index_of(label)
        .ok_or_else(|| CliError::Core(posetrep_core::Error::UnknownLabel(label.to_string())))
}

fn verdict(b: bool) -> i32 {
    if b {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let budget = Budget::new(cli.budget);
    let (code, mut body, notes) = match &cli.command {
        Command::Check { input, sig, enumerate } => {
            let l = load(input, stdin)?;
            let method = if *enumerate {
                DecisionMethod::Enumerate
            } else {
                DecisionMethod::PerPair
            };
            let r = decide_representable(&l.poset, sig.get(), method, budget)?;
            let mut v = report::separation(&l.poset, &r);
            v["method"] = json!(if *enumerate { "enumerate" } else { "per_pair" });
            (verdict(r.verdict), v, l.notes)
        }
        Command::Represent { input, sig } => {
            let l = load(input, stdin)?;
            let p = &l.poset;
            match canonical_representation(p, sig.get(), budget)? {
                Some(h) => (
                    EXIT_HOLDS,
                    json!({ "representable": true, "representation": format::representation_to_value(p, &h) }),
                    l.notes,
                ),
                None => {
                    let r = decide_representable(p, sig.get(), DecisionMethod::PerPair, budget)?;
                    (EXIT_FAILS, report::separation(p, &r), l.notes)
                }
            }
        }
        Command::Verify { input, representation } => {
            let l = load(input, stdin)?;
            let p = &l.poset;
            let text = std::fs::read_to_string(representation)
                .map_err(|e| CliError::Usage(format!("{}: {e}", representation.display())))?;
            let h = parse_representation(&text, p)?;
            let violations = verify_representation(p, &h)?;
            let mut v = json!({
                "signature": signature_to_value(h.signature),
                "violations": violations.iter().map(|x| report::rep_violation(p, x)).collect::<Vec<_>>(),
            });
            let ok = if violations.is_empty() {
                let audit: Vec<Value> = point_filters(p, &h)?
                    .iter()
                    .map(|(pt, f)| {
                        let check = is_filter(p, f.members, h.signature);
                        json!({
                            "point": pt,
                            "filter": report::filter(p, f),
                            "is_filter": check.is_ok(),
                        })
                    })
                    .collect();
                let all = audit.iter().all(|a| a["is_filter"] == json!(true));
                v["point_filters"] = json!(audit);
                all
            } else {
                false
            };
            v["valid"] = json!(ok);
            (verdict(ok), v, l.notes)
        }
        Command::Spectrum { input } => {
            let l = load(input, stdin)?;
            (EXIT_HOLDS, report::spectrum(&spectrum(&l.poset, budget)?), l.notes)
        }
        Command::Filters {
            input,
            sig,
            policy,
            test,
            members,
        } => {
            let l = load(input, stdin)?;
            let p = &l.poset;
            let sg = sig.get().canonical(p.len());
            if *test {
                let s = labelled(p, members)?;
                let r = is_filter(p, s, sg);
                let v = json!({
                    "signature": signature_to_value(sg),
                    "set": report::set(p, s),
                    "is_filter": r.is_ok(),
                    "violation": r.err().map_or(Value::Null, |e| report::filter_violation(p, &e)),
                });
                (verdict(r.is_ok()), v, l.notes)
            } else {
                let pol = match policy {
                    Policy::All => FilterPolicy::All,
                    Policy::Canonical => FilterPolicy::Canonical,
                };
                let fs = enumerate_filters(p, sg, pol, budget)?;
                let v = json!({
                    "signature": signature_to_value(sg),
                    "policy": format!("{policy:?}").to_lowercase(),
                    "count": fs.len(),
                    "filters": fs.iter().map(|f| report::filter(p, f)).collect::<Vec<_>>(),
                });
                (EXIT_HOLDS, v, l.notes)
            }
        }
        Command::Extend {
            input,
            sig,
            include,
            forbid,
        } => {
            let l = load(input, stdin)?;
            let p = &l.poset;
            let seed = labelled(p, include)?;
            let forbidden = forbid.as_deref().map(|f| element(p, f)).transpose()?;
            let found = extend_to_filter(p, seed, forbidden, sig.get(), budget)?;
            let v = json!({
                "signature": signature_to_value(sig.get().canonical(p.len())),
                "seed": report::set(p, seed),
                "forbidden": forbid,
                "found": found.is_some(),
                "filter": found.as_ref().map_or(Value::Null, |f| report::filter(p, f)),
            });
            (verdict(found.is_some()), v, l.notes)
        }
        Command::Conditions { input, only } => {
            let l = load(input, stdin)?;
            let p = &l.poset;
            let lmd = check_lmd(p);
            let d2 = check_d2bar(p);
            let prof = lattice_profile(p);
            let complete = completely_representable(p, budget)?;
            let v = json!({
                "lmd": report::condition(p, &lmd),
                "d2bar": report::condition(p, &d2),
                "lattice": report::lattice(p, &prof),
                "completely_representable": complete.verdict,
                "complete_failing_pairs": report::separation(p, &complete.separation)["failing_pairs"],
                "lattice_cross_check": complete.lattice_check.map(|c| json!({
                    "join_side": c.join_side, "meet_side": c.meet_side, "agrees": c.agrees,
                })),
            });
            let code = match only {
                None => EXIT_HOLDS,
                Some(Property::Lmd) => verdict(lmd.holds),
                Some(Property::D2bar) => verdict(d2.holds),
                Some(Property::Lattice) => verdict(prof.is_lattice),
                Some(Property::Distributive) => verdict(prof.lattice.is_some_and(|f| f.is_distributive)),
                Some(Property::Complete) => verdict(complete.verdict),
            };
            (code, v, l.notes)
        }
        Command::Generate { input } => {
            let l = load(input, stdin)?;
            (EXIT_HOLDS, poset_to_value(&l.poset), l.notes)
        }
        Command::Search {
            enumerate,
            holds,
            fails,
            preset,
            max_n,
            cap,
            max_posets,
        } => search_verb(*enumerate, holds, fails, preset, *max_n, *cap, *max_posets)?,
    };
    if !notes.is_empty() {
        body["notes"] = json!(notes);
    }
    let output = if cli.text {
        report::text(&body)
    } else {
        let mut s = serde_json::to_string_pretty(&body).expect("serializable");
        s.push('\n');
        s
    };
    Ok(Outcome { code, output })
}

fn search_verb(
    enumerate: Option<usize>,
    holds: &Option<String>,
    fails: &Option<String>,
    preset: &Option<String>,
    max_n: usize,
    cap: usize,
    max_posets: u64,
) -> Result<(i32, Value, Vec<String>), CliError> {
    if let Some(n) = enumerate {
        let all = search::enumerate_small_posets(n, cap)?;
        let v = json!({
            "n": n,
            "count": all.len(),
            "posets": all.iter().map(poset_to_value).collect::<Vec<_>>(),
        });
        return Ok((EXIT_HOLDS, v, Vec::new()));
    }
    let (h, f, max_n) = match (preset.as_deref(), holds, fails) {
        (Some("list"), _, _) => {
            return Ok((EXIT_HOLDS, json!({ "presets": search::PRESETS }), Vec::new()));
        }
        (Some(name), _, _) => {
            search::preset(name).ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`")))?
        }
        (None, Some(h), Some(f)) => (Predicate::parse(h)?, Predicate::parse(f)?, max_n),
        _ => return Err(CliError::Usage("give --enumerate, --preset, or --holds with --fails".into())),
    };
    let found = find_counterexample(&h, &f, max_n, cap, max_posets)?;
    let mut v = json!({
        "holds": h.to_string(),
        "fails": f.to_string(),
        "max_n": max_n,
        "found": found.is_some(),
    });
    match found {
        Some(finding) => {
            let p = &finding.poset;
            v["n"] = json!(p.len());
            v["evaluated"] = json!(finding.evaluated);
            v["poset"] = poset_to_value(p);
            v["evidence"] = json!({
                "holds": finding.holds_evidence.iter().map(|e| report::evidence(p, e)).collect::<Vec<_>>(),
                "fails": finding.fails_evidence.iter().map(|e| report::evidence(p, e)).collect::<Vec<_>>(),
            });
            Ok((EXIT_HOLDS, v, Vec::new()))
        }
        None => {
            v["message"] = json!(format!("no counterexample up to n = {max_n}"));
            Ok((EXIT_FAILS, v, Vec::new()))
        }
    }
}
