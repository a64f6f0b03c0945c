//! Command-line frontend for the [`trivalent`] three-valued-logic library.
//!
//! Subcommands: `eval` (evaluate a formula under a connective scheme),
//! `check` (decide an inference under a consequence standard),
//! `interpolate` (synthesize and verify a split interpolant or certify that
//! none exists), `classify` (sweep the bounded formula corpus and decide
//! which scheme/standard cells satisfy split interpolation), `table` (render
//! the classification tables), `schemes` (list the sixteen connective
//! schemes), and `clone` (enumerate the definable truth functions).
//!
//! `--json` switches every subcommand to a structured record on stdout; the
//! record layouts are documented in the repository README. Exit codes: `0` —
//! the computation completed, whatever the verdict; `1` — usage, parse, or
//! unsupported-request error; `2` — internal failure.

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use trivalent::classification::{
    classify_all, classify_cell, Cell, CorpusSpec, Status, TableFormat, TableKind, Verdict,
};
use trivalent::clones::{arity_cap, clone_closure};
use trivalent::interpolation::{
    split_interpolant, BlockReport, BlockSide, Certificate, Outcome, Stats,
};
use trivalent::semantics::{eval, valid, Validity};
use trivalent::{Atom, Formula, Inference, Scheme, Standard, TruthValue, Valuation};

/// Three-valued logics over Boolean normal monotonic connective tables:
/// evaluation, mixed-standard consequence, split interpolation, and the
/// scheme/standard classification tables.
#[derive(Parser)]
#[command(name = "trivalent", version, about, propagate_version = true)]
struct Cli {
    /// Emit a machine-readable JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for classification sweeps (default: all available).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula under a scheme at a valuation.
    Eval {
        /// Connective scheme CONJ/DISJ with each side SK, WK, LMK, or RMK.
        #[arg(long)]
        scheme: Scheme,
        /// Comma-separated assignment, e.g. "p=1,q=1/2,r=0".
        #[arg(long)]
        valuation: Valuation,
        /// Formula over atoms, ~, &, |, e.g. "(p & q) | ~r".
        formula: Formula,
    },
    /// Decide an inference under a scheme and a consequence standard.
    Check {
        /// Connective scheme CONJ/DISJ with each side SK, WK, LMK, or RMK.
        #[arg(long)]
        scheme: Scheme,
        /// Consequence standard: ss, tt, st, ts, or sstt.
        #[arg(long)]
        standard: Standard,
        /// Inference, e.g. "p | (q & ~q) => p".
        inference: Inference,
    },
    /// Synthesize and verify a split interpolant, or certify none exists.
    Interpolate {
        /// Connective scheme CONJ/DISJ with each side SK, WK, LMK, or RMK.
        #[arg(long)]
        scheme: Scheme,
        /// Premise-side standard: ss or st.
        #[arg(long)]
        std1: Standard,
        /// Conclusion-side standard: tt or st.
        #[arg(long)]
        std2: Standard,
        /// Premise formula.
        phi: Formula,
        /// Conclusion formula.
        psi: Formula,
    },
    /// Decide scheme/standard cells by sweeping the bounded formula corpus.
    Classify {
        /// Restrict to one scheme.
        #[arg(long)]
        scheme: Option<Scheme>,
        /// Restrict to one premise-side standard.
        #[arg(long)]
        std1: Option<Standard>,
        /// Restrict to one conclusion-side standard.
        #[arg(long)]
        std2: Option<Standard>,
    },
    /// Render a classification table.
    Table {
        /// Table kind: independent, schemes, or full.
        #[arg(long)]
        kind: TableKind,
        /// Output format: text, markdown, or csv.
        #[arg(long, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// List the sixteen schemes with the four cells that distinguish them.
    Schemes,
    /// Enumerate the truth functions definable from a scheme's connectives.
    Clone {
        /// Connective scheme CONJ/DISJ with each side SK, WK, LMK, or RMK.
        #[arg(long)]
        scheme: Scheme,
        /// Number of argument atoms (bounded by the arity cap).
        #[arg(long)]
        arity: usize,
        /// Also dump every element as "witness : [table]".
        #[arg(long)]
        dump: bool,
    },
}

/// A dispatch failure, split by exit code.
enum CliError {
    /// Bad or unsupported input: exit code 1.
    Usage(String),
    /// A library invariant failed: exit code 2.
    Internal(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
            let _ = err.print();
            return code;
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| run(&cli))) {
        Ok(Ok(output)) => {
            let mut stdout = io::stdout().lock();
            match stdout
                .write_all(output.as_bytes())
                .and_then(|()| stdout.flush())
            {
                Ok(()) => ExitCode::SUCCESS,
                // A closed pipe (e.g. `| head`) is not our error.
                Err(err) if err.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(err) => {
                    eprintln!("error: writing output: {err}");
                    ExitCode::from(2)
                }
            }
        }
        Ok(Err(CliError::Usage(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Ok(Err(CliError::Internal(message))) => {
            eprintln!("internal error: {message}");
            ExitCode::from(2)
        }
        Err(_) => {
            // The panic hook has already written the message to stderr.
            eprintln!("internal error: unexpected panic");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let jobs = cli.jobs.unwrap_or_else(default_jobs).max(1);
    match &cli.command {
        Command::Eval {
            scheme,
            valuation,
            formula,
        } => run_eval(cli.json, *scheme, valuation, formula),
        Command::Check {
            scheme,
            standard,
            inference,
        } => run_check(cli.json, *scheme, *standard, inference),
        Command::Interpolate {
            scheme,
            std1,
            std2,
            phi,
            psi,
        } => run_interpolate(cli.json, *scheme, *std1, *std2, phi, psi),
        Command::Classify { scheme, std1, std2 } => {
            run_classify(cli.json, jobs, *scheme, *std1, *std2)
        }
        Command::Table { kind, format } => run_table(cli.json, jobs, *kind, *format),
        Command::Schemes => run_schemes(cli.json),
        Command::Clone {
            scheme,
            arity,
            dump,
        } => run_clone(cli.json, *scheme, *arity, *dump),
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, std::num::NonZeroUsize::get)
}

fn emit<T: Serialize>(record: &T) -> Result<String, CliError> {
    let text = serde_json::to_string_pretty(record)
        .map_err(|err| CliError::Internal(format!("serializing the output record: {err}")))?;
    Ok(format!("{text}\n"))
}

#[derive(Serialize)]
struct EvalRecord {
    scheme: Scheme,
    valuation: Valuation,
    formula: Formula,
    value: TruthValue,
}

fn run_eval(
    json: bool,
    scheme: Scheme,
    valuation: &Valuation,
    formula: &Formula,
) -> Result<String, CliError> {
    let value =
        eval(scheme, valuation, formula).map_err(|err| CliError::Usage(err.to_string()))?;
    if json {
        emit(&EvalRecord {
            scheme,
            valuation: valuation.clone(),
            formula: formula.clone(),
            value,
        })
    } else {
        Ok(format!("{value}\n"))
    }
}

#[derive(Serialize)]
struct CheckRecord {
    scheme: Scheme,
    standard: Standard,
    inference: String,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Valuation>,
}

fn run_check(
    json: bool,
    scheme: Scheme,
    standard: Standard,
    inference: &Inference,
) -> Result<String, CliError> {
    let verdict = valid(scheme, standard, inference);
    if json {
        let (valid, counterexample) = match verdict {
            Validity::Valid => (true, None),
            Validity::Invalid { counterexample } => (false, Some(counterexample)),
        };
        emit(&CheckRecord {
            scheme,
            standard,
            inference: inference.to_string(),
            valid,
            counterexample,
        })
    } else {
        Ok(match verdict {
            Validity::Valid => "valid\n".to_string(),
            Validity::Invalid { counterexample } => {
                format!("invalid\ncounterexample: {counterexample}\n")
            }
        })
    }
}

/// Reason attached to a `no_interpolant` outcome, in record form.
#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertificateRecord {
    Blocked {
        side: BlockSide,
        witness: Valuation,
        clone_elements_checked: Option<usize>,
    },
    CloneExhausted {
        shared_arity: usize,
        elements_checked: usize,
    },
}

impl From<&Certificate> for CertificateRecord {
    fn from(certificate: &Certificate) -> Self {
        match certificate {
            Certificate::Blocked {
                side,
                witness,
                clone_elements_checked,
            } => CertificateRecord::Blocked {
                side: *side,
                witness: witness.clone(),
                clone_elements_checked: *clone_elements_checked,
            },
            Certificate::CloneExhausted {
                shared_arity,
                elements_checked,
            } => CertificateRecord::CloneExhausted {
                shared_arity: *shared_arity,
                elements_checked: *elements_checked,
            },
        }
    }
}

#[derive(Serialize)]
struct InterpolateRecord {
    outcome: &'static str,
    strategy: Option<String>,
    chi: Option<String>,
    ss_leg: Option<bool>,
    tt_leg: Option<bool>,
    block: Option<BlockReport>,
    stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Valuation>,
}

fn certificate_text(certificate: &Certificate) -> String {
    match certificate {
        Certificate::Blocked {
            side,
            witness,
            clone_elements_checked,
        } => {
            let check = match clone_elements_checked {
                Some(n) => format!("{n} definable functions cross-checked"),
                None => "clone cross-check skipped: shared arity exceeds the cap".to_string(),
            };
            format!("{side} block at {witness} ({check})")
        }
        Certificate::CloneExhausted {
            shared_arity,
            elements_checked,
        } => format!(
            "no definable candidate over {shared_arity} shared atom(s) \
             ({elements_checked} functions checked)"
        ),
    }
}

fn leg_text(leg: Option<bool>) -> &'static str {
    match leg {
        Some(true) => "valid",
        Some(false) => "invalid",
        None => "unchecked",
    }
}

fn run_interpolate(
    json: bool,
    scheme: Scheme,
    std1: Standard,
    std2: Standard,
    phi: &Formula,
    psi: &Formula,
) -> Result<String, CliError> {
    let report = split_interpolant(scheme, std1, std2, phi, psi)
        .map_err(|err| CliError::Usage(err.to_string()))?;
    if json {
        let mut record = InterpolateRecord {
            outcome: "",
            strategy: None,
            chi: None,
            ss_leg: report.first_leg,
            tt_leg: report.second_leg,
            block: report.block.clone(),
            stats: report.stats,
            certificate: None,
            counterexample: None,
        };
        match &report.outcome {
            Outcome::Interpolant { chi, strategy } => {
                record.outcome = "interpolant";
                record.chi = Some(chi.to_string());
                record.strategy = Some(strategy.to_string());
            }
            Outcome::NoInterpolant { certificate } => {
                record.outcome = "no_interpolant";
                record.certificate = Some(certificate.into());
            }
            Outcome::NotClassicallyValid { counterexample } => {
                record.outcome = "not_classically_valid";
                record.counterexample = Some(counterexample.clone());
            }
            Outcome::NoSharedAtoms => record.outcome = "no_shared_atoms",
        }
        emit(&record)
    } else {
        let mut out = String::new();
        match &report.outcome {
            Outcome::Interpolant { chi, strategy } => {
                let _ = writeln!(out, "interpolant: {chi}");
                let _ = writeln!(out, "strategy: {strategy}");
                let _ = writeln!(out, "leg 1 ({std1}): {}", leg_text(report.first_leg));
                let _ = writeln!(out, "leg 2 ({std2}): {}", leg_text(report.second_leg));
            }
            Outcome::NoInterpolant { certificate } => {
                let _ = writeln!(out, "no interpolant");
                let _ = writeln!(out, "certificate: {}", certificate_text(certificate));
            }
            Outcome::NotClassicallyValid { counterexample } => {
                let _ = writeln!(out, "not classically valid");
                let _ = writeln!(out, "counterexample: {counterexample}");
            }
            Outcome::NoSharedAtoms => out.push_str("no shared atoms\n"),
        }
        Ok(out)
    }
}

fn verdict_line(verdict: &Verdict) -> String {
    match &verdict.status {
        Status::Holds(evidence) => format!(
            "{}: holds ({} pairs on {}; {} synthesized, {} blocked-confirmed)",
            verdict.cell,
            evidence.pairs_checked,
            evidence.corpus,
            evidence.synthesized_verified,
            evidence.blocked_confirmed,
        ),
        Status::Fails(evidence) => format!(
            "{}: fails ({} => {}; {})",
            verdict.cell, evidence.phi, evidence.psi, evidence.certificate,
        ),
    }
}

fn run_classify(
    json: bool,
    jobs: usize,
    scheme: Option<Scheme>,
    std1: Option<Standard>,
    std2: Option<Standard>,
) -> Result<String, CliError> {
    let corpus = CorpusSpec::standard();
    let verdicts = match (scheme, std1, std2) {
        (Some(scheme), Some(std1), Some(std2)) => {
            let cell = Cell { scheme, std1, std2 };
            vec![classify_cell(cell, &corpus).map_err(|err| CliError::Internal(err.to_string()))?]
        }
        _ => {
            let mut all = classify_all(&corpus, jobs)
                .map_err(|err| CliError::Internal(err.to_string()))?;
            all.retain(|v| {
                scheme.is_none_or(|s| v.cell.scheme == s)
                    && std1.is_none_or(|s| v.cell.std1 == s)
                    && std2.is_none_or(|s| v.cell.std2 == s)
            });
            all
        }
    };
    if json {
        emit(&verdicts)
    } else {
        let mut out = String::new();
        for verdict in &verdicts {
            let _ = writeln!(out, "{}", verdict_line(verdict));
        }
        Ok(out)
    }
}

#[derive(Serialize)]
struct TableRecord {
    kind: TableKind,
    format: TableFormat,
    content: String,
}

fn run_table(
    json: bool,
    jobs: usize,
    kind: TableKind,
    format: TableFormat,
) -> Result<String, CliError> {
    let verdicts = classify_all(&CorpusSpec::standard(), jobs)
        .map_err(|err| CliError::Internal(err.to_string()))?;
    let content = trivalent::classification::render_verdicts(&verdicts, kind, format);
    if json {
        emit(&TableRecord {
            kind,
            format,
            content,
        })
    } else {
        Ok(content)
    }
}

#[derive(Serialize)]
struct UnsettledCellRecord {
    connective: char,
    left: TruthValue,
    right: TruthValue,
    value: TruthValue,
}

#[derive(Serialize)]
struct SchemeRecord {
    scheme: Scheme,
    unsettled: Vec<UnsettledCellRecord>,
}

/// The four argument pairs whose table entries distinguish the schemes:
/// conjunction on a false/undetermined mix, disjunction on a true/undetermined
/// mix.
fn unsettled_cells(scheme: Scheme) -> Vec<UnsettledCellRecord> {
    use TruthValue::{F, N, T};
    let conj = |left, right| UnsettledCellRecord {
        connective: '&',
        left,
        right,
        value: scheme.conj(left, right),
    };
    let disj = |left, right| UnsettledCellRecord {
        connective: '|',
        left,
        right,
        value: scheme.disj(left, right),
    };
    vec![conj(F, N), conj(N, F), disj(T, N), disj(N, T)]
}

fn run_schemes(json: bool) -> Result<String, CliError> {
    let records: Vec<SchemeRecord> = Scheme::all()
        .iter()
        .map(|&scheme| SchemeRecord {
            scheme,
            unsettled: unsettled_cells(scheme),
        })
        .collect();
    if json {
        emit(&records)
    } else {
        let mut out = String::new();
        for record in &records {
            let cells: Vec<String> = record
                .unsettled
                .iter()
                .map(|c| format!("{}{}{}={}", c.left, c.connective, c.right, c.value))
                .collect();
            let _ = writeln!(out, "{}: {}", record.scheme, cells.join(", "));
        }
        Ok(out)
    }
}

#[derive(Serialize)]
struct ElementRecord {
    witness: Formula,
    outputs: Vec<TruthValue>,
}

#[derive(Serialize)]
struct CloneRecord {
    scheme: Scheme,
    arity: usize,
    atoms: Vec<Atom>,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<ElementRecord>>,
}

fn argument_atoms(arity: usize) -> Result<Vec<Atom>, CliError> {
    if arity > 26 {
        return Err(CliError::Usage(format!(
            "arity {arity} is larger than the 26 available argument names"
        )));
    }
    Ok((0..arity)
        .map(|k| {
            Atom::new(&((b'a' + k as u8) as char).to_string())
                .expect("single lowercase letters are valid atom names")
        })
        .collect())
}

fn run_clone(json: bool, scheme: Scheme, arity: usize, dump: bool) -> Result<String, CliError> {
    let cap = arity_cap();
    if arity > cap {
        return Err(CliError::Usage(format!(
            "arity {arity} exceeds the cap of {cap}; raise TRIVALENT_ARITY_CAP to override"
        )));
    }
    let atoms = argument_atoms(arity)?;
    let closure = clone_closure(scheme, &atoms);
    if json {
        let elements = dump.then(|| {
            closure
                .elements()
                .iter()
                .map(|f| ElementRecord {
                    witness: f.witness().clone(),
                    outputs: f.outputs().to_vec(),
                })
                .collect()
        });
        emit(&CloneRecord {
            scheme,
            arity,
            atoms: atoms.clone(),
            count: closure.len(),
            elements,
        })
    } else {
        let mut out = format!(
            "{} definable functions of arity {} under {}\n",
            closure.len(),
            arity,
            scheme
        );
        for element in dump.then(|| closure.elements()).into_iter().flatten() {
            let _ = writeln!(out, "{element}");
        }
        Ok(out)
    }
}
