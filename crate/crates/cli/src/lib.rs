//! `qct`: command-line front end for qcl-core.
//!
//! Exit codes: 0 success (or countermodel found), 1 search exhausted,
//! 2 syntax or usage error, 3 capacity exceeded, 4 model error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use qcl_core::register::HARD_N_MAX;
use qcl_core::semantics::{eval_within, search_countermodel_within};
use qcl_core::{
    build_tree, compile, qtree::input_state_within, Capacity, Error, ModelSampler, QRegister,
    QubModel, Sentence, EPS_PROB,
};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_EXHAUSTED: u8 = 1;
pub const EXIT_SYNTAX: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_MODEL: u8 = 4;

/// Amplitude dumps are refused above this many qubits.
pub const AMPLITUDE_DUMP_MAX: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "qct", version, about = "Quantum computational logic: parse, compile, evaluate, refute")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest quregister any command may build
    #[arg(long, global = true, env = "QCT_N_MAX", value_parser = parse_n_max)]
    pub n_max: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the desugared syntax tree and atomic complexity
    Parse { sentence: String },
    /// Print the levels of the syntactical tree
    Tree { sentence: String },
    /// Print the quantum tree (layer operators U1, U2, ...)
    Compile { sentence: String },
    /// Evaluate a sentence in a model
    Eval {
        sentence: String,
        /// Model JSON: {"atoms": {"p": [[re0, im0], [re1, im1]]}}
        #[arg(long)]
        model: Option<PathBuf>,
        /// Show the probability value of every level's quregister
        #[arg(long)]
        trace: bool,
        /// With --trace, also dump amplitudes (at most 12 qubits)
        #[arg(long, requires = "trace")]
        amplitudes: bool,
    },
    /// Search for a model where the sentence is not true, or where it does
    /// not entail --then
    Refute {
        sentence: String,
        #[arg(long)]
        then: Option<String>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0, value_parser = parse_delta)]
        delta: f64,
    },
}

fn parse_n_max(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=HARD_N_MAX).contains(&n) {
        Ok(n)
    } else {
        Err(format!("must be between 1 and {HARD_N_MAX}"))
    }
}

fn parse_delta(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..0.25).contains(&d) {
        Ok(d)
    } else {
        Err("must lie in [0, 0.25)".into())
    }
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::ReservedName(_) | Error::InvalidAst(_) => EXIT_SYNTAX,
        Error::InvalidConfig(_) => EXIT_SYNTAX,
        Error::CapacityExceeded { .. } | Error::ArityMismatch { .. } => EXIT_CAPACITY,
        Error::UnboundAtom(_) | Error::InvalidModel(_) | Error::InvalidState(_) => EXIT_MODEL,
        Error::SamplerStuck { .. } | Error::InvalidCircuit(_) => EXIT_EXHAUSTED,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code_for(&e), e.to_string())
    }
}

type CmdResult = Result<(u8, String), Failure>;

/// Probability formatting for text mode: 12 significant digits.
pub fn fmt_prob(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn parse_sentence(text: &str) -> Result<Sentence, Failure> {
    qcl_core::parse(text).map_err(Failure::from)
}

fn load_model(path: &Path) -> Result<QubModel, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_MODEL, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_MODEL, format!("invalid model file {}: {e}", path.display())))
}

fn amplitudes_json(q: &QRegister) -> Vec<[f64; 2]> {
    q.amplitudes().iter().map(|c| [c.re, c.im]).collect()
}

fn cmd_parse(text: &str, json: bool) -> CmdResult {
    let s = parse_sentence(text)?;
    let out = if json {
        to_json(&json!({
            "sentence": s.to_string(),
            "ast": s,
            "atcompl": s.atomic_complexity(),
        }))
    } else {
        format!("{}\nAtcompl: {}", s.structural(), s.atomic_complexity())
    };
    Ok((EXIT_OK, out))
}

fn cmd_tree(text: &str, json: bool) -> CmdResult {
    let t = build_tree(&parse_sentence(text)?);
    let out = if json {
        let levels: Vec<Vec<String>> = t
            .levels()
            .iter()
            .map(|l| l.iter().map(ToString::to_string).collect())
            .collect();
        to_json(&json!({ "levels": levels, "height": t.height() }))
    } else {
        format!("{t}Height: {}", t.height())
    };
    Ok((EXIT_OK, out))
}

fn cmd_compile(text: &str, json: bool, cap: Capacity) -> CmdResult {
    let s = parse_sentence(text)?;
    cap.check(s.atomic_complexity())?;
    let qt = compile(&build_tree(&s));
    let out = if json {
        to_json(&qt)
    } else {
        qt.to_string().trim_end().to_string()
    };
    Ok((EXIT_OK, out))
}

fn cmd_eval(
    text: &str,
    model: Option<&Path>,
    trace: bool,
    amplitudes: bool,
    json: bool,
    cap: Capacity,
) -> CmdResult {
    let s = parse_sentence(text)?;
    let m = match model {
        Some(path) => load_model(path)?,
        None => QubModel::new(),
    };
    let n = s.atomic_complexity();
    cap.check(n)?;
    if amplitudes && n > AMPLITUDE_DUMP_MAX {
        return Err(Failure::new(
            EXIT_CAPACITY,
            format!("--amplitudes is limited to {AMPLITUDE_DUMP_MAX} qubits, sentence needs {n}"),
        ));
    }
    let direct = eval_within(&s, &m, cap)?;
    let t = build_tree(&s);
    let qt = compile(&t);
    let steps = qt.run_with_trace(&input_state_within(&t, &m, cap)?)?;
    let circuit = steps.last().expect("trace is never empty");
    let deviation = circuit.max_abs_diff(&direct);
    let prob = direct.prob();
    let is_true = (prob - 1.0).abs() <= EPS_PROB;
    let height = t.height();

    if json {
        let mut report = json!({
            "sentence": s.to_string(),
            "atcompl": n,
            "prob": prob,
            "true": is_true,
            "circuit_deviation": deviation,
        });
        if trace {
            let levels: Vec<_> = steps
                .iter()
                .enumerate()
                .map(|(k, q)| {
                    let mut entry = json!({ "level": height - k, "prob": q.prob() });
                    if amplitudes {
                        entry["amplitudes"] = json!(amplitudes_json(q));
                    }
                    entry
                })
                .collect();
            report["trace"] = json!(levels);
        }
        return Ok((EXIT_OK, to_json(&report)));
    }

    let mut out = String::new();
    writeln!(out, "sentence: {s}").unwrap();
    writeln!(out, "Prob: {}", fmt_prob(prob)).unwrap();
    writeln!(out, "true: {}", if is_true { "yes" } else { "no" }).unwrap();
    write!(out, "circuit vs recursive eval: max deviation {deviation:e}").unwrap();
    if trace {
        for (k, q) in steps.iter().enumerate() {
            let level = height - k;
            let role = match (level == height, level == 1) {
                (true, true) => " (input = output)",
                (true, false) => " (input)",
                (false, true) => " (output)",
                _ => "",
            };
            write!(out, "\npsi_{level}: Prob {}{role}", fmt_prob(q.prob())).unwrap();
            if amplitudes {
                for (j, c) in q.amplitudes().iter().enumerate() {
                    write!(out, "\n  |{j:0width$b}>  {} {:+}i", c.re, c.im, width = q.n()).unwrap();
                }
            }
        }
    }
    Ok((EXIT_OK, out))
}

fn cmd_refute(
    text: &str,
    then: Option<&str>,
    trials: u64,
    seed: u64,
    delta: f64,
    json: bool,
    cap: Capacity,
) -> CmdResult {
    let a = parse_sentence(text)?;
    let b = then.map(parse_sentence).transpose()?;
    let sampler = ModelSampler::new(seed, delta)?;
    let found = search_countermodel_within(&a, b.as_ref(), trials, &sampler, cap)?;
    let Some(c) = found else {
        let out = if json {
            to_json(&json!({ "found": false, "trials": trials }))
        } else {
            format!("no countermodel in {trials} trials")
        };
        return Ok((EXIT_EXHAUSTED, out));
    };
    let out = if json {
        to_json(&json!({
            "found": true,
            "trial": c.trial,
            "prob_antecedent": c.prob_antecedent,
            "prob_consequent": c.prob_consequent,
            "model": c.model,
        }))
    } else {
        let mut out = format!("countermodel found at trial {}\n", c.trial);
        match (&b, c.prob_consequent) {
            (Some(b), Some(pb)) => {
                writeln!(out, "Prob({a}) = {}", fmt_prob(c.prob_antecedent)).unwrap();
                writeln!(out, "Prob({b}) = {}", fmt_prob(pb)).unwrap();
            }
            _ => writeln!(out, "Prob({a}) = {} < 1", fmt_prob(c.prob_antecedent)).unwrap(),
        }
        write!(out, "model: {}", to_json(&c.model)).unwrap();
        out
    };
    Ok((EXIT_OK, out))
}

/// Runs one command, writing its report to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cap = match cli.n_max.map(Capacity::new).transpose() {
        Ok(cap) => cap.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_SYNTAX;
        }
    };
    let json = cli.json;
    let result = match &cli.command {
        Command::Parse { sentence } => cmd_parse(sentence, json),
        Command::Tree { sentence } => cmd_tree(sentence, json),
        Command::Compile { sentence } => cmd_compile(sentence, json, cap),
        Command::Eval {
            sentence,
            model,
            trace,
            amplitudes,
        } => cmd_eval(sentence, model.as_deref(), *trace, *amplitudes, json, cap),
        Command::Refute {
            sentence,
            then,
            trials,
            seed,
            delta,
        } => cmd_refute(sentence, then.as_deref(), *trials, *seed, *delta, json, cap),
    };
    match result {
        Ok((code, text)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("qct").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn fmt_prob_significant_digits() {
        assert_eq!(fmt_prob(0.25), "0.25");
        assert_eq!(fmt_prob(0.5000000000000001), "0.5");
        assert_eq!(fmt_prob(1.0), "1");
        assert_eq!(fmt_prob(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn parse_command() {
        let (code, out, _) = run_args(&["parse", "p and not p"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "Conj3(p, Neg p, f)\nAtcompl: 3\n");
        let (_, out, _) = run_args(&["parse", "p or q"]);
        assert!(out.starts_with("Neg(Conj3(Neg p, Neg q, f))\n"));
    }

    #[test]
    fn parse_error_exit_code() {
        let (code, out, err) = run_args(&["parse", "p and"]);
        assert_eq!(code, EXIT_SYNTAX);
        assert!(out.is_empty());
        assert!(err.contains("syntax error at offset 5"), "{err}");
    }

    #[test]
    fn compile_respects_n_max() {
        let (code, _, err) = run_args(&["--n-max", "2", "compile", "p and q"]);
        assert_eq!(code, EXIT_CAPACITY);
        assert!(err.contains("capacity"), "{err}");
    }

    #[test]
    fn eval_without_model() {
        let (code, out, _) = run_args(&["eval", "not f"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("Prob: 1\n"), "{out}");
        assert!(out.contains("true: yes"));
        let (code, _, err) = run_args(&["eval", "p"]);
        assert_eq!(code, EXIT_MODEL);
        assert!(err.contains("`p`"));
    }

    #[test]
    fn amplitude_guard() {
        let big = "p and p and p and p and p and p and p";
        let (code, _, err) = run_args(&["eval", "--trace", "--amplitudes", big]);
        assert_eq!(code, EXIT_CAPACITY, "{err}");
    }
}
