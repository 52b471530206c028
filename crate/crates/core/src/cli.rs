//! The `reduct` command line. Exit codes: 0 accepted, 1 rejected, 2 usage
//! or parse error.
//!
//! A proof string `U` is stored as text: its bits `U(0) U(1) ...` as `0`/`1`
//! characters (whitespace ignored), so the last character is the top bit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::circuits::{ProofSystem, SystemDescriptor, TruthTableSystem};
use crate::encoding::{encode_with_atoms, generate_eval};
use crate::frege::{
    check_derivation, check_fplus_with, parse_fplus, render_fplus, BaseSystem, CheckOptions,
    TruthTableBase,
};
use crate::prop::{atom_cap, is_tautology_with_cap, read_prop, PropFormula};
use crate::sexp::skip_ws;
use crate::sigma::{eval_formula, parse_formula, Environment, Formula, StringValue};
use crate::simulation::{bench_polynomiality, simulate, Mode, ReductBase, StandardBase};
use crate::translation::{translate_with, LengthProfile, TranslateOptions};

#[derive(Parser, Debug)]
#[command(
    name = "reduct",
    version,
    about = "Bounded-formula translations and proof compilation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Translate a bounded formula at fixed lengths.
    Translate {
        formula: PathBuf,
        /// e.g. `X=3,Y=2;x=1`
        #[arg(long)]
        profile: String,
        /// Keep constants instead of folding them away.
        #[arg(long)]
        no_fold: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a proof file (plain or f+).
    Check {
        proof: PathBuf,
        /// Formulas allowed as premises, one after another.
        #[arg(long)]
        premises: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BaseName::Standard)]
        base: BaseName,
        /// Allow substitution into any line.
        #[arg(long)]
        lenient: bool,
    },
    /// Compile a proof in a verifier-circuit system into an f+ proof.
    Simulate {
        /// `truth-table` or a JSON system description file.
        #[arg(long, default_value = "truth-table")]
        system: String,
        /// The proof string `U_0` as `0`/`1` characters.
        proof: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeName::Premise)]
        mode: ModeName,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the SIMRUN report (default stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Brute-force tautology check of a translation, plus a semantic
    /// comparison for small profiles.
    Oracle {
        formula: PathBuf,
        #[arg(long)]
        profile: String,
    },
    /// Print `Eval`, or the encoding of a propositional formula.
    Evalgen {
        /// Formula file to encode over its own atoms.
        #[arg(long)]
        encode: Option<PathBuf>,
    },
    /// Simulate a family of proofs of growing size and fit the log-log slope.
    Bench {
        #[arg(long, default_value = "truth-table")]
        system: String,
        /// `excluded-middle:K1..K2` for the truth-table system, or
        /// `lengths:N1..N2` for a single-variable formula system.
        #[arg(long, default_value = "excluded-middle:1..5")]
        family: String,
        #[arg(long, value_enum, default_value_t = ModeName::Premise)]
        mode: ModeName,
    },
    /// Write a truth-table proof string for a tautology.
    Prove {
        formula: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BaseName {
    TruthTable,
    Reduct,
    Standard,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeName {
    Premise,
    OracleImport,
    ReductImport,
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Mode {
        match m {
            ModeName::Premise => Mode::Premise,
            ModeName::OracleImport => Mode::OracleImport,
            ModeName::ReductImport => Mode::ReductImport,
        }
    }
}

/// Exit status plus captured output.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Fail(i32, String);

fn usage(msg: impl ToString) -> Fail {
    Fail(2, msg.to_string())
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_or_stdout(path: &Option<PathBuf>, text: &str, out: &mut String) -> Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn read_formula(path: &Path) -> Result<Formula, Fail> {
    parse_formula(&read(path)?).map_err(usage)
}

fn read_props(text: &str) -> Result<Vec<PropFormula>, Fail> {
    let mut out = Vec::new();
    let mut pos = 0;
    loop {
        skip_ws(text.as_bytes(), &mut pos);
        if pos >= text.len() {
            return Ok(out);
        }
        out.push(read_prop(text, &mut pos).map_err(usage)?);
    }
}

pub fn parse_bits(text: &str) -> Result<StringValue, String> {
    let bits = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(format!("unexpected character `{c}` in bit string")),
        })
        .collect::<Result<Vec<bool>, String>>()?;
    Ok(StringValue::from_bits(&bits))
}

pub fn render_bits(s: &StringValue) -> String {
    let mut t: String = s
        .bits()
        .iter()
        .map(|b| if *b { '1' } else { '0' })
        .collect();
    t.push('\n');
    t
}

fn system(spec: &str) -> Result<Box<dyn ProofSystem>, Fail> {
    let desc = if spec == "truth-table" {
        SystemDescriptor::TruthTable
    } else {
        let path = Path::new(spec);
        if !path.exists() {
            return Err(usage(format!("unknown system `{spec}`")));
        }
        SystemDescriptor::from_json(&read(path)?).map_err(usage)?
    };
    desc.instantiate().map_err(usage)
}

fn range(s: &str) -> Result<(u64, u64), Fail> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("bad range `{s}`")))?;
    let a = a.trim().parse().map_err(usage)?;
    let b = b.trim().parse().map_err(usage)?;
    if a > b {
        return Err(usage(format!("empty range `{s}`")));
    }
    Ok((a, b))
}

/// `(q1 ∨ ¬q1) ∧ ... ∧ (qk ∨ ¬qk)`.
pub fn excluded_middle_family(k: usize) -> PropFormula {
    (1..=k)
        .map(|i| PropFormula::or(PropFormula::q(i), PropFormula::not(PropFormula::q(i))))
        .reduce(PropFormula::and)
        .unwrap_or_else(PropFormula::top)
}

/// Every assignment of strings of exactly the profiled lengths satisfies
/// `phi`. `None` if the profile is too large to enumerate.
pub fn semantic_truth(phi: &Formula, prof: &LengthProfile) -> Option<bool> {
    let vars: Vec<(&String, u64)> = prof.lengths.iter().map(|(k, v)| (k, *v)).collect();
    if vars.len() > 2 || vars.iter().any(|(_, n)| *n > 8) {
        return None;
    }
    let base = prof
        .numvals
        .iter()
        .fold(Environment::new(), |e, (k, v)| e.with_number(k, *v));
    fn go(phi: &Formula, vars: &[(&String, u64)], env: Environment) -> bool {
        match vars.split_first() {
            None => eval_formula(phi, &env).unwrap_or(false),
            Some(((name, n), rest)) => StringValue::all_of_length(*n)
                .all(|s| go(phi, rest, env.clone().with_string(name, s))),
        }
    }
    Some(go(phi, &vars, base))
}

fn execute(cmd: Command, out: &mut String, err: &mut String) -> Result<i32, Fail> {
    match cmd {
        Command::Translate {
            formula,
            profile,
            no_fold,
            output,
        } => {
            let phi = read_formula(&formula)?;
            let prof: LengthProfile = profile.parse().map_err(usage)?;
            let opts = if no_fold {
                TranslateOptions::unfolded()
            } else {
                TranslateOptions::default()
            };
            let t = translate_with(&phi, &prof, &opts).map_err(usage)?;
            write_or_stdout(&output, &format!("{t}\n"), out)?;
            Ok(0)
        }
        Command::Check {
            proof,
            premises,
            base,
            lenient,
        } => {
            let text = read(&proof)?;
            let p = parse_fplus(&text).map_err(usage)?;
            let allowed = match premises {
                Some(path) => read_props(&read(&path)?)?,
                None => Vec::new(),
            };
            let opts = CheckOptions {
                strict_substitution: !lenient,
                parallel: true,
            };
            let base: &dyn BaseSystem = match base {
                BaseName::TruthTable => &TruthTableBase,
                BaseName::Reduct => &ReductBase,
                BaseName::Standard => &StandardBase,
            };
            let verdict = if p.imports.is_empty() {
                check_derivation(&p.derivation, &allowed, &[], opts).map_err(|e| e.to_string())
            } else {
                check_fplus_with(&p, base, &allowed, opts).map_err(|e| e.to_string())
            };
            match verdict {
                Ok(()) => {
                    let c = p.conclusion().expect("accepted proofs are non-empty");
                    writeln!(out, "accepted {c}").unwrap();
                    Ok(0)
                }
                Err(e) => {
                    writeln!(out, "{e}").unwrap();
                    Ok(1)
                }
            }
        }
        Command::Simulate {
            system: spec,
            proof,
            mode,
            output,
            report,
        } => {
            let sys = system(&spec)?;
            let u = parse_bits(&read(&proof)?).map_err(usage)?;
            let run = match simulate(sys.as_ref(), &u, mode.into()) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "{e}").unwrap();
                    return Ok(1);
                }
            };
            write_or_stdout(&output, &render_fplus(&run.output.to_fplus()), out)?;
            let rep = run.report();
            write_or_stdout(&report, &rep, out)?;
            Ok(if run.check().is_ok() { 0 } else { 1 })
        }
        Command::Oracle { formula, profile } => {
            let phi = read_formula(&formula)?;
            let prof: LengthProfile = profile.parse().map_err(usage)?;
            let t = translate_with(&phi, &prof, &TranslateOptions::default()).map_err(usage)?;
            let taut = is_tautology_with_cap(&t, atom_cap()).map_err(usage)?;
            let sem = semantic_truth(&phi, &prof);
            let rec = serde_json::json!({
                "tautology": taut,
                "atoms": t.atoms().len(),
                "semantic": sem,
                "agree": sem.map(|s| s == taut),
            });
            writeln!(out, "{rec}").unwrap();
            Ok(if taut && sem != Some(false) { 0 } else { 1 })
        }
        Command::Evalgen { encode } => {
            match encode {
                None => writeln!(out, "{}", generate_eval()).unwrap(),
                Some(path) => {
                    let f = read_props(&read(&path)?)?
                        .into_iter()
                        .next()
                        .ok_or_else(|| usage("no formula"))?;
                    let atoms: Vec<_> = f.atoms().into_iter().collect();
                    let y = encode_with_atoms(&f, &atoms).map_err(usage)?;
                    let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
                    writeln!(out, "# atoms {}", names.join(" ")).unwrap();
                    out.push_str(&render_bits(&y));
                }
            }
            Ok(0)
        }
        Command::Bench {
            system: spec,
            family,
            mode,
        } => {
            let sys = system(&spec)?;
            let (kind, r) = family
                .split_once(':')
                .ok_or_else(|| usage(format!("bad family `{family}`")))?;
            let (lo, hi) = range(r)?;
            let inputs: Vec<StringValue> = match (kind, sys.descriptor()) {
                ("excluded-middle", SystemDescriptor::TruthTable) => (lo..=hi)
                    .map(|k| {
                        TruthTableSystem::prove(&excluded_middle_family(k as usize)).map_err(usage)
                    })
                    .collect::<Result<_, _>>()?,
                ("lengths", SystemDescriptor::Formula { .. }) => (lo..=hi)
                    .map(|n| match n {
                        0 => StringValue::empty(),
                        n => StringValue::with_sentinel(&vec![false; n as usize - 1]),
                    })
                    .collect(),
                _ => return Err(usage(format!("family `{kind}` does not fit `{spec}`"))),
            };
            let rep = match bench_polynomiality(sys.as_ref(), &inputs, mode.into()) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "{e}").unwrap();
                    return Ok(1);
                }
            };
            writeln!(out, "len_u,proof_size,millis").unwrap();
            for r in &rep.rows {
                writeln!(out, "{},{},{:.3}", r.len_u, r.proof_size, r.millis).unwrap();
            }
            if let Some(f) = &rep.fit {
                writeln!(
                    out,
                    "# slope {:.4} intercept {:.4} r2 {:.4}",
                    f.slope, f.intercept, f.r2
                )
                .unwrap();
            }
            if let Some(w) = &rep.warning {
                writeln!(err, "warning: {w}").unwrap();
            }
            Ok(0)
        }
        Command::Prove { formula, output } => {
            let f = read_props(&read(&formula)?)?
                .into_iter()
                .next()
                .ok_or_else(|| usage("no formula"))?;
            match TruthTableSystem::prove(&f) {
                Ok(u) => {
                    write_or_stdout(&output, &render_bits(&u), out)?;
                    Ok(0)
                }
                Err(e) => {
                    writeln!(err, "{e}").unwrap();
                    Ok(1)
                }
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                stdout: if code == 0 {
                    e.to_string()
                } else {
                    String::new()
                },
                stderr: if code == 0 {
                    String::new()
                } else {
                    e.to_string()
                },
            };
        }
    };
    let mut o = Outcome::default();
    match execute(cli.command, &mut o.stdout, &mut o.stderr) {
        Ok(code) => o.code = code,
        Err(Fail(code, msg)) => {
            o.code = code;
            writeln!(o.stderr, "error: {msg}").unwrap();
        }
    }
    o
}
