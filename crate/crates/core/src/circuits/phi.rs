use serde::{Deserialize, Serialize};

use super::circuit::{run_circuit, Circuit, Gate};
use super::system::{ProofSystem, SystemError};
use crate::encoding::{generate_eval, Layout};
use crate::sigma::{Formula, StringValue, Term};

fn bit(x: &str, i: usize) -> Formula {
    Formula::member(x, Term::num(i as u64))
}

/// `W` is the run of `g`'s circuit at these lengths on `U`, the circuit
/// accepts, and its output bits are `Y`. Quantifier-free.
pub fn gen_phi_g(sys: &dyn ProofSystem, len_u: u64, len_y: u64) -> Result<Formula, SystemError> {
    Ok(phi_of_circuit(&sys.circuit(len_u, len_y)?, len_u, len_y))
}

/// `φ_g` for an already built circuit.
pub fn phi_of_circuit(c: &Circuit, len_u: u64, len_y: u64) -> Formula {
    let mut items = vec![
        Formula::eq(Term::len("U"), Term::num(len_u)),
        Formula::eq(Term::len("Y"), Term::num(len_y)),
        Formula::eq(Term::len("W"), Term::num(c.len() as u64 + 1)),
    ];
    for (g, gate) in c.gates().iter().enumerate() {
        let rhs = match *gate {
            Gate::Input(k) => bit("U", k),
            Gate::Const(true) => Formula::truth(),
            Gate::Const(false) => Formula::not(Formula::truth()),
            Gate::Not(a) => Formula::not(bit("W", a)),
            Gate::And(a, b) => Formula::and(bit("W", a), bit("W", b)),
            Gate::Or(a, b) => Formula::or(bit("W", a), bit("W", b)),
        };
        items.push(match *gate {
            Gate::Const(true) => bit("W", g),
            Gate::Const(false) => Formula::not(bit("W", g)),
            _ => Formula::iff(bit("W", g), rhs),
        });
    }
    items.push(bit("W", c.accept()));
    for (t, &y) in c.ybits().iter().enumerate() {
        items.push(Formula::iff(bit("Y", t), bit("W", y)));
    }
    Formula::conj(items)
}

/// String lengths for one instance of `Sound_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundProfile {
    pub len_u: u64,
    pub len_y: u64,
    pub len_w: u64,
    pub len_x: u64,
    pub len_z: u64,
}

impl SoundProfile {
    pub fn to_length_profile(&self) -> crate::translation::LengthProfile {
        crate::translation::LengthProfile::new()
            .with_len("U", self.len_u)
            .with_len("W", self.len_w)
            .with_len("X", self.len_x)
            .with_len("Y", self.len_y)
            .with_len("Z", self.len_z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SoundError {
    #[error("|Y| = {0} is not the length of an encoding")]
    YLength(u64),
    #[error("|Z| = {len_z} but the encoding has {nodes} nodes")]
    ZLength { len_z: u64, nodes: usize },
    #[error("|X| = {len_x} is not between 1 and nodes + 1 = {max}")]
    XLength { len_x: u64, max: u64 },
    #[error("|W| = {len_w} but the circuit has {gates} gates")]
    WLength { len_w: u64, gates: usize },
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Gate count of `g`'s circuit at these lengths, and the matching `|W|`.
pub fn witness_len(sys: &dyn ProofSystem, len_u: u64, len_y: u64) -> Result<u64, SystemError> {
    Ok(sys.circuit(len_u, len_y)?.len() as u64 + 1)
}

/// `(Eval(X,Y,Z) ∧ φ_g(U,Y,W)) ⊃ Z(0)` after checking the lengths fit
/// together.
pub fn build_sound_g(sys: &dyn ProofSystem, prof: &SoundProfile) -> Result<Formula, SoundError> {
    let lay = Layout::from_len(prof.len_y)
        .filter(|l| l.nodes > 0)
        .ok_or(SoundError::YLength(prof.len_y))?;
    if prof.len_z != lay.nodes as u64 + 1 {
        return Err(SoundError::ZLength {
            len_z: prof.len_z,
            nodes: lay.nodes,
        });
    }
    let max = lay.nodes as u64 + 1;
    if prof.len_x == 0 || prof.len_x > max {
        return Err(SoundError::XLength {
            len_x: prof.len_x,
            max,
        });
    }
    let c = sys.circuit(prof.len_u, prof.len_y)?;
    let gates = c.len();
    if prof.len_w != gates as u64 + 1 {
        return Err(SoundError::WLength {
            len_w: prof.len_w,
            gates,
        });
    }
    Ok(sound_g_from_parts(
        generate_eval(),
        phi_of_circuit(&c, prof.len_u, prof.len_y),
    ))
}

pub fn sound_g_from_parts(eval: Formula, phi: Formula) -> Formula {
    Formula::imp(Formula::and(eval, phi), Formula::member("Z", Term::Zero))
}

/// `Y = g(U)`, `W` = the circuit run on `U`, and the profile of `Sound_g`
/// with `|X| = ℓ + 1` and `|Z| = N + 1`.
pub struct Instance {
    pub y: StringValue,
    pub w: StringValue,
    pub atoms: Vec<crate::prop::PropAtom>,
    pub profile: SoundProfile,
}

pub fn instance(sys: &dyn ProofSystem, u: &StringValue) -> Result<Instance, SystemError> {
    let out = sys.compute(u);
    let c = sys.circuit(u.length(), out.y.length())?;
    let trace = run_circuit(&c, u.payload()).expect("one input per payload bit");
    let nodes = Layout::from_len(out.y.length())
        .expect("encoded output")
        .nodes;
    Ok(Instance {
        profile: SoundProfile {
            len_u: u.length(),
            len_y: out.y.length(),
            len_w: c.len() as u64 + 1,
            len_x: out.atoms.len() as u64 + 1,
            len_z: nodes as u64 + 1,
        },
        y: out.y,
        w: trace.to_string_value(),
        atoms: out.atoms,
    })
}
