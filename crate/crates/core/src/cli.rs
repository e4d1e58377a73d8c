//! Command-line front end. Each command prints one JSON line on success and
//! a JSON `{"error": ...}` line on standard error otherwise.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
//! error, 3 budget or cap exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::correspondence::{
    build_polymatroid, check_condition_a, check_condition_b, check_condition_c, extract_code,
    RepresentedProblem,
};
use crate::enumerate::{Budget, BUDGET_ENV};
use crate::error::Error;
use crate::indexcode::{
    brute_force_counterexample, brute_force_verify, search_min_length, verify_differential_ecic,
    IndexCode, IndexCodingProblem, Verdict,
};
use crate::io::{
    format_matrix, format_polymatroid, parse_matrix, parse_polymatroid, parse_problem, Polymatroid,
};
use crate::linalg::IndexSet;
use crate::polymatroid::{
    basis_vectors, check_axioms, contract, contract_representation, ingleton_check,
    ingleton_check_exhaustive, AxiomVerdict, IngletonVerdict, TABLE_CAP,
};
use crate::sim::{run_exhaustive, run_random_trials, WeightPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "polyindex",
    version,
    about = "Differential error-correcting index codes and discrete polymatroids"
)]
pub struct Cli {
    /// Human-readable output instead of line-delimited JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a code with the per-pattern span test.
    Verify { problem: PathBuf, code: PathBuf },
    /// Verify a code by exhaustive enumeration.
    BruteVerify { problem: PathBuf, code: PathBuf },
    /// Write the code's representable polymatroid.
    BuildDpm {
        problem: PathBuf,
        code: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check conditions (A), (B), (C) on a representation.
    CheckAbc { problem: PathBuf, dpm: PathBuf },
    /// Read a code matrix off a representation satisfying (A) and (B).
    ExtractCode {
        problem: PathBuf,
        dpm: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Contract a set of elements (1-based, comma separated).
    Contract {
        dpm: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "")]
        set: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the rank axioms.
    Axioms { dpm: PathBuf },
    /// Screen for Ingleton violations.
    Ingleton {
        dpm: PathBuf,
        /// Every quadruple of disjoint nonempty subsets, not only singletons.
        #[arg(long)]
        full: bool,
    },
    /// List the basis vectors.
    Basis { dpm: PathBuf },
    /// Find the shortest valid code by exhaustive search.
    Search {
        problem: PathBuf,
        #[arg(long)]
        c_max: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate broadcasts with per-receiver errors.
    Simulate {
        problem: PathBuf,
        code: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = WeightPolicy::Max)]
        policy: WeightPolicy,
        /// Sweep every message and every admissible error instead.
        #[arg(long)]
        exhaustive: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => EXIT_BUDGET,
            Error::ConditionViolated { .. } => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

type Outcome = std::result::Result<(Value, i32), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: crate::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse(msg) => input(format!("{}: {msg}", path.display())),
        e => e.into(),
    })
}

fn load_problem(path: &Path) -> std::result::Result<IndexCodingProblem, Failure> {
    with_path(path, parse_problem(&read(path)?))
}

fn load_code(problem: &Path, code: &Path) -> std::result::Result<IndexCode, Failure> {
    let p = load_problem(problem)?;
    let l = with_path(code, parse_matrix(&read(code)?))?;
    with_path(code, IndexCode::new(p, l))
}

fn load_dpm(path: &Path) -> std::result::Result<Polymatroid, Failure> {
    with_path(path, parse_polymatroid(&read(path)?))
}

fn load_instance(problem: &Path, dpm: &Path) -> std::result::Result<RepresentedProblem, Failure> {
    let p = load_problem(problem)?;
    match load_dpm(dpm)? {
        Polymatroid::Repr(r) => with_path(dpm, RepresentedProblem::new(p, r)),
        Polymatroid::Table(_) => Err(input(format!(
            "{}: a representation is required",
            dpm.display()
        ))),
    }
}

fn budget() -> std::result::Result<Budget, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Budget)
            .map_err(|_| input(format!("{BUDGET_ENV}: `{s}` is not a non-negative integer"))),
        Err(_) => Ok(Budget::DEFAULT),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Valid => json!({ "verdict": "valid" }),
        Verdict::Invalid(w) => json!({
            "verdict": "invalid",
            "witness": { "receiver": w.receiver + 1, "pattern": w.pattern.one_based() },
        }),
    }
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn parse_set(items: &[String], ground: usize) -> std::result::Result<IndexSet, Failure> {
    let mut out = Vec::new();
    for item in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let v: usize = item
            .parse()
            .map_err(|_| input(format!("--set: `{item}` is not an element")))?;
        if !(1..=ground).contains(&v) {
            return Err(input(format!("--set: {v} is not in 1..={ground}")));
        }
        out.push(v - 1);
    }
    Ok(IndexSet::from_unsorted(out, ground)?)
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Verify { problem, code } => {
            let code = load_code(&problem, &code)?;
            let v = verify_differential_ecic(&code);
            Ok((verdict_json(&v), exit_for(v.is_valid())))
        }
        Command::BruteVerify { problem, code } => {
            let code = load_code(&problem, &code)?;
            let budget = budget()?;
            let v = brute_force_verify(&code, budget)?;
            let mut out = verdict_json(&v);
            if let Some(cx) = brute_force_counterexample(&code, budget)? {
                out["counterexample"] = json!({ "receiver": cx.receiver + 1, "message": cx.message, "error": cx.error });
            }
            Ok((out, exit_for(v.is_valid())))
        }
        Command::BuildDpm {
            problem,
            code,
            output,
        } => {
            let code = load_code(&problem, &code)?;
            let inst = build_polymatroid(&code);
            let text = format_polymatroid(&Polymatroid::Repr(inst.repr().clone()));
            let summary = json!({ "ground": inst.repr().ground_size(), "dim": inst.repr().dim() });
            match output {
                Some(path) => {
                    write(&path, &text)?;
                    Ok((summary, EXIT_OK))
                }
                None => Ok((
                    serde_json::from_str(&text).expect("own output parses"),
                    EXIT_OK,
                )),
            }
        }
        Command::CheckAbc { problem, dpm } => {
            let inst = load_instance(&problem, &dpm)?;
            let (a, b) = (check_condition_a(&inst), check_condition_b(&inst));
            let c = check_condition_c(&inst);
            let ok = a && b && c.is_valid();
            let c_json = match &c {
                Verdict::Valid => json!({ "ok": true }),
                Verdict::Invalid(w) => json!({
                    "ok": false,
                    "witness": { "receiver": w.receiver + 1, "pattern": w.pattern.one_based() },
                }),
            };
            Ok((json!({ "A": a, "B": b, "C": c_json }), exit_for(ok)))
        }
        Command::ExtractCode {
            problem,
            dpm,
            output,
        } => {
            let inst = load_instance(&problem, &dpm)?;
            let code = extract_code(&inst)?;
            let text = format_matrix(code.matrix());
            let valid = verify_differential_ecic(&code).is_valid();
            let summary = json!({ "c": code.len(), "valid": valid });
            match output {
                Some(path) => {
                    write(&path, &text)?;
                    Ok((summary, EXIT_OK))
                }
                None => Ok((
                    json!({ "c": code.len(), "valid": valid, "matrix": text }),
                    EXIT_OK,
                )),
            }
        }
        Command::Contract { dpm, set, output } => {
            let p = load_dpm(&dpm)?;
            let t = parse_set(&set, p.ground_size())?;
            let contracted = match &p {
                Polymatroid::Table(table) => Polymatroid::Table(contract(table, &t)?),
                Polymatroid::Repr(r) => {
                    // highest first so the remaining labels stay put
                    let mut r = r.clone();
                    for &e in t.iter().rev() {
                        r = contract_representation(&r, e)?;
                    }
                    Polymatroid::Repr(r)
                }
            };
            let text = format_polymatroid(&contracted);
            match output {
                Some(path) => {
                    write(&path, &text)?;
                    Ok((json!({ "ground": contracted.ground_size() }), EXIT_OK))
                }
                None => Ok((
                    serde_json::from_str(&text).expect("own output parses"),
                    EXIT_OK,
                )),
            }
        }
        Command::Axioms { dpm } => {
            let table = load_dpm(&dpm)?.to_table(TABLE_CAP)?;
            Ok(match check_axioms(&table) {
                AxiomVerdict::Ok => (json!({ "verdict": "ok" }), EXIT_OK),
                AxiomVerdict::Violation { axiom, sets } => {
                    let sets: Vec<Vec<usize>> = sets.iter().map(IndexSet::one_based).collect();
                    (
                        json!({ "verdict": "violation", "axiom": axiom, "sets": sets }),
                        EXIT_NEGATIVE,
                    )
                }
            })
        }
        Command::Ingleton { dpm, full } => {
            let table = load_dpm(&dpm)?.to_table(TABLE_CAP)?;
            let v = if full {
                ingleton_check_exhaustive(&table, budget()?)?
            } else {
                ingleton_check(&table)?
            };
            Ok(match v {
                IngletonVerdict::Pass => (json!({ "verdict": "pass" }), EXIT_OK),
                IngletonVerdict::Violation(v) => {
                    let sets: Vec<Vec<usize>> = v.sets.iter().map(IndexSet::one_based).collect();
                    (
                        json!({ "verdict": "violation", "sets": sets, "lhs": v.lhs, "rhs": v.rhs }),
                        EXIT_NEGATIVE,
                    )
                }
            })
        }
        Command::Basis { dpm } => {
            let table = load_dpm(&dpm)?.to_table(TABLE_CAP)?;
            let basis: Vec<Vec<u32>> = basis_vectors(&table)?.into_iter().map(|b| b.0).collect();
            Ok((
                json!({ "rank": table.total_rank(), "basis": basis }),
                EXIT_OK,
            ))
        }
        Command::Search {
            problem,
            c_max,
            output,
        } => {
            let p = load_problem(&problem)?;
            match search_min_length(&p, c_max, budget()?)? {
                Some(found) => {
                    let text = format_matrix(found.code.matrix());
                    let mut out = json!({ "c_star": found.length });
                    match output {
                        Some(path) => write(&path, &text)?,
                        None => out["matrix"] = json!(text),
                    }
                    Ok((out, EXIT_OK))
                }
                None => Ok((json!({ "c_star": null, "c_max": c_max }), EXIT_NEGATIVE)),
            }
        }
        Command::Simulate {
            problem,
            code,
            trials,
            seed,
            policy,
            exhaustive,
        } => {
            let code = load_code(&problem, &code)?;
            let budget = budget()?;
            let report = if exhaustive {
                run_exhaustive(&code, budget)?
            } else {
                run_random_trials(&code, trials, seed, policy, budget)?
            };
            let failed = report.per_receiver.iter().any(|s| s.failures > 0);
            let mut out = serde_json::to_value(&report).expect("serializable");
            if let (Some(f), Some(record)) = (out.get_mut("first_failure"), &report.first_failure) {
                f["receiver"] = json!(record.receiver + 1);
            }
            Ok((out, exit_for(!failed)))
        }
    }
}

fn render(value: &Value, pretty: bool) -> String {
    if !pretty {
        return value.to_string();
    }
    match value {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter()
                .map(|(k, v)| match v {
                    Value::String(s) if s.contains('\n') => format!("{k}:\n{}", s.trim_end()),
                    Value::String(s) => format!("{k:width$}  {s}"),
                    v => format!("{k:width$}  {v}"),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        v => v.to_string(),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", render(&value, cli.pretty));
            code
        }
        Err(f) => {
            let _ = writeln!(err, "{}", json!({ "error": f.message, "exit": f.code }));
            f.code
        }
    }
}
