//! Compiles a proof `U_0` in a verifier-circuit proof system `g` into a
//! checkable proof of the same formula.
//!
//! Stages:
//! 1. `A = g(U_0)` and the circuit trace `W_0`.
//! 2. The translation of `Sound_g` at the lengths of `(U_0, A, W_0)`, as a
//!    premise or an import.
//! 3. Substitute the bits of `U_0`, `A`, `W_0` for the `U`, `Y`, `W` atoms.
//! 4. Fold constants: the closed `φ_g` part becomes `⊤`, leaving the
//!    translation of `Eval(X, A, Z) ⊃ Z(0)`.
//! 5. Substitute `p^X_j ↦ table[j]` and `p^Z_i ↦ B_i` (node `i` of `A`),
//!    giving `Eval' ⊃ A`.
//! 6. Prove `Eval'` and conclude `A`.
//!
//! In oracle-import mode stage 2 imports the already substituted formula
//! through the truth-table base, so stage 3 is empty.

mod base;
mod bench;

use serde::Serialize;

pub use base::{ReductBase, StandardBase};
pub use bench::{bench_polynomiality, fit_loglog, BenchError, BenchReport, BenchRow, Fit};

use crate::circuits::{
    build_sound_g, instance, ProofSystem, SoundError, SoundProfile, SystemDescriptor, SystemError,
};
use crate::encoding::{
    eval_substitution, generate_eval, instantiated_eval, FormulaEncoding, Layout,
};
use crate::frege::{
    check_derivation, check_fplus_with, fplus_size, parse_fplus, proof_size, BaseSystem,
    CheckOptions, FPlusProof, FPlusRejection, GenError, Imported, Proof, ProofBuilder, Rejection,
    TruthTableBase,
};
use crate::prop::{atom_cap, PropAtom, PropFormula, Substitution};
use crate::sigma::{Formula, StringValue, Term};
use crate::translation::{translate, LengthProfile, TranslateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `Sound_g[n⃗]` is a declared premise.
    Premise,
    /// The substituted `Sound_g[n⃗]` is imported with a truth-table proof.
    OracleImport,
    /// `Sound_g[n⃗]` is imported with a proof naming `g` and the lengths.
    ReductImport,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "premise" => Ok(Mode::Premise),
            "oracle-import" | "oracle" => Ok(Mode::OracleImport),
            "reduct-import" | "reduct" => Ok(Mode::ReductImport),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("stage 1: {0}")]
    System(#[from] SystemError),
    #[error("stage 2: {0}")]
    Sound(#[from] SoundError),
    #[error("stage {stage}: {err}")]
    Translate { stage: u8, err: TranslateError },
    #[error(
        "stage 2: translation has {atoms} atoms after substitution, above the oracle cap of {cap}"
    )]
    OracleCap { atoms: usize, cap: usize },
    #[error("stage 2: truth-table base refused the instance")]
    OracleRefused,
    #[error("stage 4: folded formula is not the translation of Eval ⊃ Z(0)")]
    Stage4Mismatch,
    #[error("stage 5: {0}")]
    Encode(String),
    #[error("stage 6: {0}")]
    EvalPrime(#[from] GenError),
    #[error("final check: {0}")]
    Check(String),
}

/// Size ledger entry for one stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: u8,
    pub lines_added: usize,
    pub symbols_added: u64,
    pub cumulative_size: u64,
}

#[derive(Debug, Clone)]
pub enum SimOutput {
    Premises(Proof),
    FPlus(FPlusProof),
}

impl SimOutput {
    pub fn conclusion(&self) -> Option<&PropFormula> {
        match self {
            SimOutput::Premises(p) => p.conclusion(),
            SimOutput::FPlus(p) => p.conclusion(),
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            SimOutput::Premises(p) => proof_size(p),
            SimOutput::FPlus(p) => fplus_size(p),
        }
    }

    pub fn lines(&self) -> usize {
        match self {
            SimOutput::Premises(p) => p.len(),
            SimOutput::FPlus(p) => p.derivation.len(),
        }
    }

    /// Both outputs render in the f+ format; premise mode has no imports.
    pub fn to_fplus(&self) -> FPlusProof {
        match self {
            SimOutput::Premises(p) => FPlusProof {
                imports: Vec::new(),
                derivation: p.clone(),
            },
            SimOutput::FPlus(p) => p.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationRun {
    pub descriptor: SystemDescriptor,
    pub u0: StringValue,
    pub a: PropFormula,
    pub atoms: Vec<PropAtom>,
    pub w0: StringValue,
    pub profile: SoundProfile,
    pub mode: Mode,
    /// The translated `Sound_g[n⃗]` in premise mode, else empty.
    pub premises: Vec<PropFormula>,
    pub output: SimOutput,
    pub ledger: Vec<StageRecord>,
}

fn strict() -> CheckOptions {
    CheckOptions {
        strict_substitution: true,
        parallel: true,
    }
}

impl SimulationRun {
    pub fn size(&self) -> u64 {
        self.output.size()
    }

    /// Re-checks the output with strict substitution.
    pub fn check(&self) -> Result<(), String> {
        check_output(&self.output, &self.premises)
    }

    /// `SIMRUN` JSON lines: one record per stage, then the verdict.
    pub fn report(&self) -> String {
        let verdict = match self.check() {
            Ok(()) if self.output.conclusion() == Some(&self.a) => "accepted".to_string(),
            Ok(()) => "wrong-conclusion".to_string(),
            Err(e) => format!("rejected: {e}"),
        };
        report_lines(
            &self.ledger,
            &verdict,
            &self.a,
            self.size(),
            self.output.lines(),
        )
    }
}

fn check_output(out: &SimOutput, premises: &[PropFormula]) -> Result<(), String> {
    match out {
        SimOutput::Premises(p) => {
            check_derivation(p, premises, &[], strict()).map_err(|e: Rejection| e.to_string())
        }
        SimOutput::FPlus(p) => check_fplus_with(p, &StandardBase, &[], strict())
            .map_err(|e: FPlusRejection| e.to_string()),
    }
}

fn report_lines(
    ledger: &[StageRecord],
    verdict: &str,
    conclusion: &PropFormula,
    size: u64,
    lines: usize,
) -> String {
    let mut out = String::new();
    for r in ledger {
        out.push_str(&serde_json::to_string(r).expect("plain data"));
        out.push('\n');
    }
    let last = serde_json::json!({
        "verdict": verdict,
        "conclusion": conclusion.to_string(),
        "size": size,
        "lines": lines,
    });
    out.push_str(&last.to_string());
    out.push('\n');
    out
}

struct Ledger {
    records: Vec<StageRecord>,
    lines: usize,
    size: u64,
    imports: u64,
}

impl Ledger {
    fn record(&mut self, stage: u8, b: &ProofBuilder) {
        let size = proof_size(b.proof()) + self.imports;
        self.records.push(StageRecord {
            stage,
            lines_added: b.len() - self.lines,
            symbols_added: size - self.size,
            cumulative_size: size,
        });
        self.lines = b.len();
        self.size = size;
    }
}

/// Maps the `U`, `Y`, `W` atoms of `f` to the bits of the given strings.
fn bit_substitution(f: &PropFormula, strings: &[(&str, &StringValue)]) -> Substitution {
    let mut sigma = Substitution::new();
    for a in f.atoms() {
        if let PropAtom::StringBit(var, i) = &a {
            if let Some((_, s)) = strings.iter().find(|(v, _)| **v == **var) {
                sigma.insert(a.clone(), PropFormula::constant(s.bit(*i)));
            }
        }
    }
    sigma
}

/// Runs the pipeline on `u0`.
pub fn simulate(
    sys: &dyn ProofSystem,
    u0: &StringValue,
    mode: Mode,
) -> Result<SimulationRun, SimError> {
    // stage 1
    let inst = instance(sys, u0)?;
    let computed = sys.compute(u0);
    let a = computed.formula();
    let nodes = Layout::from_len(inst.y.length())
        .expect("encoded output")
        .nodes;
    let table = inst.atoms.clone();

    let mut b = ProofBuilder::new();
    let mut imports = Vec::new();
    let mut premises = Vec::new();
    let mut led = Ledger {
        records: vec![StageRecord {
            stage: 1,
            lines_added: 0,
            symbols_added: 0,
            cumulative_size: 0,
        }],
        lines: 0,
        size: 0,
        imports: 0,
    };

    // stage 2
    let s_full = translate(
        &build_sound_g(sys, &inst.profile)?,
        &inst.profile.to_length_profile(),
    )
    .map_err(|err| SimError::Translate { stage: 2, err })?;
    let sigma1 = bit_substitution(&s_full, &[("U", u0), ("Y", &inst.y), ("W", &inst.w)]);
    b.note("stage 2: Sound_g at the lengths of U_0, A, W_0");
    let s_inst = match mode {
        Mode::Premise | Mode::ReductImport => {
            if mode == Mode::Premise {
                b.premise(&s_full);
                premises.push(s_full.clone());
            } else {
                let proof = ReductBase::proof(&sys.descriptor(), &inst.profile);
                led.imports += s_full.symbol_size() + proof.len() as u64;
                imports.push(Imported {
                    formula: s_full.clone(),
                    base_proof: proof,
                });
                b.import(0, &s_full);
            }
            led.record(2, &b);
            // stage 3
            b.note("stage 3: substitute U_0, A, W_0 for U, Y, W");
            let s = b.substitute(&s_full, sigma1);
            led.record(3, &b);
            s
        }
        Mode::OracleImport => {
            let s = crate::prop::substitute(&s_full, &sigma1);
            let atoms = s.atoms().len();
            if atoms > atom_cap() {
                return Err(SimError::OracleCap {
                    atoms,
                    cap: atom_cap(),
                });
            }
            let proof = TruthTableBase::prove(&s).ok_or(SimError::OracleRefused)?;
            led.imports += s.symbol_size() + proof.len() as u64;
            imports.push(Imported {
                formula: s.clone(),
                base_proof: proof,
            });
            b.import(0, &s);
            led.record(2, &b);
            led.record(3, &b);
            s
        }
    };

    // stage 4
    b.note("stage 4: fold the closed part");
    let folded = b.fold_equiv(&s_inst);
    if folded != s_inst {
        b.mp(&s_inst, &PropFormula::imp(s_inst.clone(), folded.clone()));
    }
    let target = Formula::imp(generate_eval(), Formula::member("Z", Term::Zero));
    let want = instantiated_eval(&target, &inst.y, nodes, table.len())
        .map_err(|err| SimError::Translate { stage: 4, err })?;
    if folded != want {
        return Err(SimError::Stage4Mismatch);
    }
    led.record(4, &b);

    // stage 5
    b.note("stage 5: substitute the atoms of A for X and its subformulas for Z");
    let enc =
        FormulaEncoding::of_formula(&a, &table).map_err(|e| SimError::Encode(e.to_string()))?;
    let node_formulas = enc.node_formulas(&table);
    let sigma2 = eval_substitution(&table, &node_formulas);
    let ev_imp_a = b.substitute(&folded, sigma2);
    let eval_prime = match ev_imp_a.kind() {
        crate::prop::Kind::Imp(e, c) if *c == a => e.clone(),
        _ => return Err(SimError::Encode("stage 5 result is not Eval' ⊃ A".into())),
    };
    led.record(5, &b);

    // stage 6
    b.note("stage 6: Eval' and modus ponens");
    b.trivial(&eval_prime)?;
    b.mp_fresh(&eval_prime, &ev_imp_a);
    led.record(6, &b);

    let derivation = b.finish();
    let output = match mode {
        Mode::Premise => SimOutput::Premises(derivation),
        _ => SimOutput::FPlus(FPlusProof {
            imports,
            derivation,
        }),
    };
    let run = SimulationRun {
        descriptor: sys.descriptor(),
        u0: u0.clone(),
        a,
        atoms: table,
        w0: inst.w,
        profile: inst.profile,
        mode,
        premises,
        output,
        ledger: led.records,
    };
    Ok(run)
}

/// Per-`n⃗` outcome of [`verify_membership_witness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub lengths: Vec<u64>,
    pub size: Option<u64>,
    pub problem: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessVerdict {
    pub accepted: bool,
    pub warning: Option<String>,
    pub entries: Vec<WitnessEntry>,
}

/// Checks that each proof is accepted under `base` and concludes exactly
/// the translation of `phi` at its lengths.
pub fn verify_membership_witness(
    phi: &Formula,
    vars: &[String],
    proofs: &[(Vec<u64>, Vec<u8>)],
    base: &dyn BaseSystem,
) -> WitnessVerdict {
    let entries: Vec<WitnessEntry> = proofs
        .iter()
        .map(|(lens, bytes)| {
            let entry = |size, problem| WitnessEntry {
                lengths: lens.clone(),
                size,
                problem,
            };
            if lens.len() != vars.len() {
                return entry(None, Some("wrong number of lengths".into()));
            }
            let prof = vars
                .iter()
                .zip(lens)
                .fold(LengthProfile::new(), |p, (v, n)| p.with_len(v, *n));
            let want = match translate(phi, &prof) {
                Ok(t) => t,
                Err(e) => return entry(None, Some(e.to_string())),
            };
            let p = match std::str::from_utf8(bytes)
                .map_err(|e| e.to_string())
                .and_then(|t| parse_fplus(t).map_err(|e| e.to_string()))
            {
                Ok(p) => p,
                Err(e) => return entry(None, Some(format!("unparsable: {e}"))),
            };
            let size = Some(fplus_size(&p));
            if let Err(e) = check_fplus_with(&p, base, &[], strict()) {
                return entry(size, Some(format!("rejected: {e}")));
            }
            if p.conclusion() != Some(&want) {
                return entry(size, Some("concludes a different formula".into()));
            }
            entry(size, None)
        })
        .collect();
    WitnessVerdict {
        accepted: entries.iter().all(|e| e.problem.is_none()),
        warning: proofs
            .is_empty()
            .then(|| "no proofs supplied; accepted vacuously".to_string()),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{FormulaSystem, TruthTableSystem};
    use crate::frege::render_fplus;
    use crate::prop::parse_prop;
    use crate::sigma::parse_formula;

    fn accepted(run: &SimulationRun) {
        run.check().unwrap();
        assert_eq!(run.output.conclusion(), Some(&run.a));
        let sizes: Vec<u64> = run.ledger.iter().map(|r| r.cumulative_size).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn excluded_middle_all_modes() {
        let a = parse_prop("(| q1 (~ q1))").unwrap();
        let u = TruthTableSystem::prove(&a).unwrap();
        for mode in [Mode::Premise, Mode::OracleImport, Mode::ReductImport] {
            let run = simulate(&TruthTableSystem, &u, mode).unwrap();
            assert_eq!(run.a, a);
            accepted(&run);
            let rep = run.report();
            assert_eq!(rep.lines().count(), 7);
            assert!(rep.lines().last().unwrap().contains("\"accepted\""));
        }
    }

    #[test]
    fn premise_mode_only_uses_sound_g() {
        let a = parse_prop("(> q1 q1)").unwrap();
        let u = TruthTableSystem::prove(&a).unwrap();
        let run = simulate(&TruthTableSystem, &u, Mode::Premise).unwrap();
        match &run.output {
            SimOutput::Premises(p) => assert_eq!(p.premises, run.premises),
            _ => panic!(),
        }
        assert_eq!(run.premises.len(), 1);
        assert!(check_derivation(
            match &run.output {
                SimOutput::Premises(p) => p,
                _ => unreachable!(),
            },
            &[],
            &[],
            strict()
        )
        .is_err());
    }

    #[test]
    fn malformed_input_proves_top() {
        let u = StringValue::with_sentinel(&[true, false, true]);
        for mode in [Mode::Premise, Mode::OracleImport] {
            let run = simulate(&TruthTableSystem, &u, mode).unwrap();
            assert_eq!(run.a, PropFormula::top());
            accepted(&run);
        }
    }

    #[test]
    fn formula_system_family() {
        let phi = parse_formula("(all x (len X) (imp (in X x) (in X x)))").unwrap();
        let sys = FormulaSystem::new(phi.clone(), vec!["X".into()]).unwrap();
        let mut proofs = Vec::new();
        for n in 0..=3 {
            let run = simulate(&sys, &sys.proof_for(&[n]), Mode::ReductImport).unwrap();
            accepted(&run);
            assert_eq!(Some(run.a.clone()), sys.translation(&[n]));
            proofs.push((vec![n], render_fplus(&run.output.to_fplus()).into_bytes()));
        }
        let v = verify_membership_witness(&phi, sys.vars(), &proofs, &StandardBase);
        assert!(v.accepted, "{v:?}");
        let mut swapped = proofs.clone();
        swapped[3].0 = vec![2];
        let v = verify_membership_witness(&phi, sys.vars(), &swapped, &StandardBase);
        assert!(!v.accepted);
        assert!(v.entries[3].problem.is_some());
        let v = verify_membership_witness(&phi, sys.vars(), &[], &StandardBase);
        assert!(v.accepted && v.warning.is_some());
    }
}
