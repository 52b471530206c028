use std::fmt;

use crate::prop::{Kind, PropFormula};

/// Axiom schemas. The numeric id is the one used in proof files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    /// p ⊃ (q ⊃ p)
    K = 1,
    /// (p ⊃ (q ⊃ r)) ⊃ ((p ⊃ q) ⊃ (p ⊃ r))
    S = 2,
    /// (p ∧ q) ⊃ p
    AndElimL = 3,
    /// (p ∧ q) ⊃ q
    AndElimR = 4,
    /// p ⊃ (q ⊃ (p ∧ q))
    AndIntro = 5,
    /// p ⊃ (p ∨ q)
    OrIntroL = 6,
    /// q ⊃ (p ∨ q)
    OrIntroR = 7,
    /// (p ⊃ r) ⊃ ((q ⊃ r) ⊃ ((p ∨ q) ⊃ r))
    OrElim = 8,
    /// (p ⊃ q) ⊃ ((p ⊃ ¬q) ⊃ ¬p)
    NegIntro = 9,
    /// ¬¬p ⊃ p
    DoubleNeg = 10,
    /// ⊤
    Top = 11,
    /// ¬⊥
    NotBot = 12,
    /// p ⊃ (¬p ⊃ q)
    ExFalso = 13,
}

enum Pat {
    Meta(usize),
    Top,
    Bot,
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Or(Box<Pat>, Box<Pat>),
    Imp(Box<Pat>, Box<Pat>),
}

fn m(i: usize) -> Pat {
    Pat::Meta(i)
}
fn not(a: Pat) -> Pat {
    Pat::Not(Box::new(a))
}
fn and(a: Pat, b: Pat) -> Pat {
    Pat::And(Box::new(a), Box::new(b))
}
fn or(a: Pat, b: Pat) -> Pat {
    Pat::Or(Box::new(a), Box::new(b))
}
fn imp(a: Pat, b: Pat) -> Pat {
    Pat::Imp(Box::new(a), Box::new(b))
}

impl Schema {
    pub const ALL: [Schema; 13] = [
        Schema::K,
        Schema::S,
        Schema::AndElimL,
        Schema::AndElimR,
        Schema::AndIntro,
        Schema::OrIntroL,
        Schema::OrIntroR,
        Schema::OrElim,
        Schema::NegIntro,
        Schema::DoubleNeg,
        Schema::Top,
        Schema::NotBot,
        Schema::ExFalso,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u64) -> Option<Schema> {
        Schema::ALL.iter().copied().find(|s| s.id() as u64 == id)
    }

    /// Number of metavariables.
    pub fn arity(self) -> usize {
        match self {
            Schema::Top | Schema::NotBot => 0,
            Schema::DoubleNeg => 1,
            Schema::S | Schema::OrElim => 3,
            _ => 2,
        }
    }

    fn pattern(self) -> Pat {
        let (p, q, r) = (0, 1, 2);
        match self {
            Schema::K => imp(m(p), imp(m(q), m(p))),
            Schema::S => imp(
                imp(m(p), imp(m(q), m(r))),
                imp(imp(m(p), m(q)), imp(m(p), m(r))),
            ),
            Schema::AndElimL => imp(and(m(p), m(q)), m(p)),
            Schema::AndElimR => imp(and(m(p), m(q)), m(q)),
            Schema::AndIntro => imp(m(p), imp(m(q), and(m(p), m(q)))),
            Schema::OrIntroL => imp(m(p), or(m(p), m(q))),
            Schema::OrIntroR => imp(m(q), or(m(p), m(q))),
            Schema::OrElim => imp(
                imp(m(p), m(r)),
                imp(imp(m(q), m(r)), imp(or(m(p), m(q)), m(r))),
            ),
            Schema::NegIntro => imp(imp(m(p), m(q)), imp(imp(m(p), not(m(q))), not(m(p)))),
            Schema::DoubleNeg => imp(not(not(m(p))), m(p)),
            Schema::Top => Pat::Top,
            Schema::NotBot => not(Pat::Bot),
            Schema::ExFalso => imp(m(p), imp(not(m(p)), m(q))),
        }
    }

    /// The instance with metavariables `p, q, r` replaced by `args`.
    ///
    /// Panics if `args` is shorter than [`Schema::arity`].
    pub fn instance(self, args: &[&PropFormula]) -> PropFormula {
        fn build(p: &Pat, args: &[&PropFormula]) -> PropFormula {
            match p {
                Pat::Meta(i) => args[*i].clone(),
                Pat::Top => PropFormula::top(),
                Pat::Bot => PropFormula::bot(),
                Pat::Not(a) => PropFormula::not(build(a, args)),
                Pat::And(a, b) => PropFormula::and(build(a, args), build(b, args)),
                Pat::Or(a, b) => PropFormula::or(build(a, args), build(b, args)),
                Pat::Imp(a, b) => PropFormula::imp(build(a, args), build(b, args)),
            }
        }
        assert!(
            args.len() >= self.arity(),
            "{self} needs {} arguments",
            self.arity()
        );
        build(&self.pattern(), args)
    }

    /// Whether `f` is an instance of this schema.
    pub fn matches(self, f: &PropFormula) -> bool {
        fn go(p: &Pat, f: &PropFormula, bind: &mut [Option<PropFormula>; 3]) -> bool {
            match (p, f.kind()) {
                (Pat::Meta(i), _) => match &bind[*i] {
                    Some(g) => g == f,
                    None => {
                        bind[*i] = Some(f.clone());
                        true
                    }
                },
                (Pat::Top, Kind::Const(true)) | (Pat::Bot, Kind::Const(false)) => true,
                (Pat::Not(a), Kind::Not(x)) => go(a, x, bind),
                (Pat::And(a, b), Kind::And(x, y))
                | (Pat::Or(a, b), Kind::Or(x, y))
                | (Pat::Imp(a, b), Kind::Imp(x, y)) => go(a, x, bind) && go(b, y, bind),
                _ => false,
            }
        }
        go(&self.pattern(), f, &mut [None, None, None])
    }

    pub fn name(self) -> &'static str {
        match self {
            Schema::K => "K",
            Schema::S => "S",
            Schema::AndElimL => "and-elim-l",
            Schema::AndElimR => "and-elim-r",
            Schema::AndIntro => "and-intro",
            Schema::OrIntroL => "or-intro-l",
            Schema::OrIntroR => "or-intro-r",
            Schema::OrElim => "or-elim",
            Schema::NegIntro => "neg-intro",
            Schema::DoubleNeg => "double-neg",
            Schema::Top => "top",
            Schema::NotBot => "not-bot",
            Schema::ExFalso => "ex-falso",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
