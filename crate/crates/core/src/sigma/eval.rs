use std::collections::BTreeMap;

use super::ast::{Formula, Term};
use super::string_value::StringValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound number variable `{0}`")]
    UnboundNumber(String),
    #[error("unbound string variable `{0}`")]
    UnboundString(String),
    #[error("arithmetic overflow")]
    Overflow,
}

/// Values for the free variables of a formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    pub numvals: BTreeMap<String, u64>,
    pub strvals: BTreeMap<String, StringValue>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_string(mut self, name: &str, v: StringValue) -> Self {
        self.strvals.insert(name.to_string(), v);
        self
    }

    pub fn with_number(mut self, name: &str, v: u64) -> Self {
        self.numvals.insert(name.to_string(), v);
        self
    }
}

struct Scope<'a> {
    env: &'a Environment,
    bound: Vec<(&'a str, u64)>,
}

impl<'a> Scope<'a> {
    fn num(&self, v: &str) -> Result<u64, EvalError> {
        if let Some((_, x)) = self.bound.iter().rev().find(|(n, _)| *n == v) {
            return Ok(*x);
        }
        self.env
            .numvals
            .get(v)
            .copied()
            .ok_or_else(|| EvalError::UnboundNumber(v.to_string()))
    }

    fn string(&self, v: &str) -> Result<&'a StringValue, EvalError> {
        self.env
            .strvals
            .get(v)
            .ok_or_else(|| EvalError::UnboundString(v.to_string()))
    }

    fn term(&self, t: &Term) -> Result<u64, EvalError> {
        Ok(match t {
            Term::Zero => 0,
            Term::One => 1,
            Term::Num(n) => *n,
            Term::Var(v) => self.num(v)?,
            Term::Add(a, b) => self
                .term(a)?
                .checked_add(self.term(b)?)
                .ok_or(EvalError::Overflow)?,
            Term::Mul(a, b) => self
                .term(a)?
                .checked_mul(self.term(b)?)
                .ok_or(EvalError::Overflow)?,
            Term::Len(x) => self.string(x)?.length(),
        })
    }

    fn formula(&mut self, f: &'a Formula) -> Result<bool, EvalError> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)? == self.term(b)?,
            Formula::Leq(a, b) => self.term(a)? <= self.term(b)?,
            Formula::In(x, t) => {
                let i = self.term(t)?;
                self.string(x)?.bit(i)
            }
            Formula::Not(a) => !self.formula(a)?,
            Formula::And(a, b) => self.formula(a)? && self.formula(b)?,
            Formula::Or(a, b) => self.formula(a)? || self.formula(b)?,
            Formula::Imp(a, b) => !self.formula(a)? || self.formula(b)?,
            Formula::Forall { var, bound, body } | Formula::Exists { var, bound, body } => {
                let universal = matches!(f, Formula::Forall { .. });
                let top = self.term(bound)?;
                let mut result = universal;
                for x in 0..=top {
                    self.bound.push((var.as_str(), x));
                    let v = self.formula(body);
                    self.bound.pop();
                    if v? != universal {
                        result = !universal;
                        break;
                    }
                }
                result
            }
        })
    }
}

pub fn eval_term(t: &Term, env: &Environment) -> Result<u64, EvalError> {
    Scope {
        env,
        bound: Vec::new(),
    }
    .term(t)
}

/// Standard two-sorted semantics; `∀x≤t` ranges over `0..=t`.
pub fn eval_formula(f: &Formula, env: &Environment) -> Result<bool, EvalError> {
    Scope {
        env,
        bound: Vec::new(),
    }
    .formula(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::parse_formula;

    fn x(elems: &[u64]) -> Environment {
        Environment::new().with_string("X", StringValue::from_elements(elems.iter().copied()))
    }

    #[test]
    fn length_terms() {
        assert_eq!(eval_term(&Term::len("X"), &x(&[])).unwrap(), 0);
        assert_eq!(eval_term(&Term::len("X"), &x(&[0, 3])).unwrap(), 4);
        let t = Term::add(Term::One, Term::mul(Term::One, Term::One));
        assert_eq!(eval_term(&t, &Environment::new()).unwrap(), 2);
    }

    #[test]
    fn formulas() {
        assert!(eval_formula(&parse_formula("(in X 2)").unwrap(), &x(&[2])).unwrap());
        let vac = parse_formula("(all x (len X) (imp (in X x) (<= x (len X))))").unwrap();
        for s in [&[][..], &[1], &[0, 4]] {
            assert!(eval_formula(&vac, &x(s)).unwrap());
        }
        // x ranges over 0..=3, none of which is in {5}
        let ex = parse_formula("(ex x (+ 1 (+ 1 1)) (in X x))").unwrap();
        assert!(!eval_formula(&ex, &x(&[5])).unwrap());
        assert!(eval_formula(&ex, &x(&[3])).unwrap());
    }

    #[test]
    fn unbound_variables() {
        let f = parse_formula("(in X y)").unwrap();
        assert_eq!(
            eval_formula(&f, &x(&[])).unwrap_err(),
            EvalError::UnboundNumber("y".into())
        );
        assert_eq!(
            eval_formula(&f, &Environment::new().with_number("y", 0)).unwrap_err(),
            EvalError::UnboundString("X".into())
        );
    }

    #[test]
    fn overflow_reported() {
        let big = Term::num(u64::MAX / 2 + 1);
        let t = Term::mul(big.clone(), Term::num(4));
        assert_eq!(eval_term(&t, &Environment::new()), Err(EvalError::Overflow));
    }
}
