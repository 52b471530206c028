use std::collections::BTreeSet;
use std::fmt;

/// Number-sort term: `0`, `1`, number variables, `+`, `*` and `|X|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(String),
    /// Decimal literal; `0` and `1` are always `Zero` and `One`.
    Num(u64),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Len(String),
}

/// Two-sorted bounded formula. All quantifiers are number quantifiers with an
/// explicit inclusive bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Leq(Term, Term),
    In(String, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall {
        var: String,
        bound: Term,
        body: Box<Formula>,
    },
    Exists {
        var: String,
        bound: Term,
        body: Box<Formula>,
    },
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn len(name: &str) -> Term {
        Term::Len(name.to_string())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn num(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::Num(n),
        }
    }

    pub fn mentions_var(&self, v: &str) -> bool {
        match self {
            Term::Var(x) => x == v,
            Term::Add(a, b) | Term::Mul(a, b) => a.mentions_var(v) || b.mentions_var(v),
            Term::Zero | Term::One | Term::Num(_) | Term::Len(_) => false,
        }
    }

    pub(crate) fn collect_vars(&self, nums: &mut BTreeSet<String>, strs: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                nums.insert(x.clone());
            }
            Term::Len(x) => {
                strs.insert(x.clone());
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(nums, strs);
                b.collect_vars(nums, strs);
            }
            Term::Zero | Term::One | Term::Num(_) => {}
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn leq(a: Term, b: Term) -> Formula {
        Formula::Leq(a, b)
    }

    pub fn member(x: &str, t: Term) -> Formula {
        Formula::In(x.to_string(), t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(var: &str, bound: Term, body: Formula) -> Formula {
        Formula::Forall {
            var: var.to_string(),
            bound,
            body: Box::new(body),
        }
    }

    pub fn exists(var: &str, bound: Term, body: Formula) -> Formula {
        Formula::Exists {
            var: var.to_string(),
            bound,
            body: Box::new(body),
        }
    }

    /// `0 = 0`.
    pub fn truth() -> Formula {
        Formula::Eq(Term::Zero, Term::Zero)
    }

    /// Balanced conjunction; the empty conjunction is `0 = 0`.
    pub fn conj(items: Vec<Formula>) -> Formula {
        balanced(items, Formula::and).unwrap_or_else(Formula::truth)
    }

    /// Free number variables and free string variables.
    pub fn free_variables(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut nums = BTreeSet::new();
        let mut strs = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut nums, &mut strs);
        (nums, strs)
    }

    fn collect_free(
        &self,
        bound: &mut Vec<String>,
        nums: &mut BTreeSet<String>,
        strs: &mut BTreeSet<String>,
    ) {
        let mut term = |t: &Term, bound: &Vec<String>| {
            let mut n = BTreeSet::new();
            t.collect_vars(&mut n, strs);
            nums.extend(n.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                term(a, bound);
                term(b, bound);
            }
            Formula::In(x, t) => {
                term(t, bound);
                strs.insert(x.clone());
            }
            Formula::Not(a) => a.collect_free(bound, nums, strs),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, nums, strs);
                b.collect_free(bound, nums, strs);
            }
            Formula::Forall {
                var,
                bound: t,
                body,
            }
            | Formula::Exists {
                var,
                bound: t,
                body,
            } => {
                term(t, bound);
                bound.push(var.clone());
                body.collect_free(bound, nums, strs);
                bound.pop();
            }
        }
    }

    /// Nesting depth of bounded quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Leq(..) | Formula::In(..) => 0,
            Formula::Not(a) => a.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Forall { body, .. } | Formula::Exists { body, .. } => {
                1 + body.quantifier_depth()
            }
        }
    }

    /// Infix rendering for humans. Not accepted by the parser.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        pretty_into(self, &mut s);
        s
    }
}

/// Folds `items` into a balanced binary tree with `join`.
pub fn balanced<T>(mut items: Vec<T>, join: impl Fn(T, T) -> T + Copy) -> Option<T> {
    fn go<T>(items: &mut std::vec::Drain<'_, T>, n: usize, join: impl Fn(T, T) -> T + Copy) -> T {
        if n == 1 {
            return items.next().expect("count");
        }
        let left = go(items, n / 2, join);
        let right = go(items, n - n / 2, join);
        join(left, right)
    }
    let n = items.len();
    if n == 0 {
        return None;
    }
    let mut drain = items.drain(..);
    Some(go(&mut drain, n, join))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Var(x) => write!(f, "{x}"),
            Term::Num(n) => write!(f, "{n}"),
            Term::Add(a, b) => write!(f, "(+ {a} {b})"),
            Term::Mul(a, b) => write!(f, "(* {a} {b})"),
            Term::Len(x) => write!(f, "(len {x})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Leq(a, b) => write!(f, "(<= {a} {b})"),
            Formula::In(x, t) => write!(f, "(in {x} {t})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::Forall { var, bound, body } => write!(f, "(all {var} {bound} {body})"),
            Formula::Exists { var, bound, body } => write!(f, "(ex {var} {bound} {body})"),
        }
    }
}

fn pretty_term(t: &Term) -> String {
    match t {
        Term::Zero => "0".into(),
        Term::One => "1".into(),
        Term::Var(x) => x.clone(),
        Term::Num(n) => n.to_string(),
        Term::Add(a, b) => format!("({} + {})", pretty_term(a), pretty_term(b)),
        Term::Mul(a, b) => format!("{}·{}", pretty_term(a), pretty_term(b)),
        Term::Len(x) => format!("|{x}|"),
    }
}

fn pretty_into(f: &Formula, s: &mut String) {
    match f {
        Formula::Eq(a, b) => s.push_str(&format!("{} = {}", pretty_term(a), pretty_term(b))),
        Formula::Leq(a, b) => s.push_str(&format!("{} ≤ {}", pretty_term(a), pretty_term(b))),
        Formula::In(x, t) => s.push_str(&format!("{x}({})", pretty_term(t))),
        Formula::Not(a) => {
            s.push('¬');
            pretty_into(a, s);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            let op = match f {
                Formula::And(..) => " ∧ ",
                Formula::Or(..) => " ∨ ",
                _ => " ⊃ ",
            };
            s.push('(');
            pretty_into(a, s);
            s.push_str(op);
            pretty_into(b, s);
            s.push(')');
        }
        Formula::Forall { var, bound, body } | Formula::Exists { var, bound, body } => {
            let q = if matches!(f, Formula::Forall { .. }) {
                '∀'
            } else {
                '∃'
            };
            s.push_str(&format!("{q}{var}≤{} ", pretty_term(bound)));
            pretty_into(body, s);
        }
    }
}
