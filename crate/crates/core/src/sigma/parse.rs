use super::ast::{Formula, Term};
use crate::sexp::{self, SExp, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("string quantifier not Σ^B_0: `{var}` at byte {pos}")]
    StringQuantifier { var: String, pos: usize },
    #[error("bound of `{var}` mentions `{var}` at byte {pos}")]
    SelfBound { var: String, pos: usize },
}

fn is_numvar(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

fn is_strvar(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_uppercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    formula(&sexp::parse_exact(text)?)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    Ok(term(&sexp::parse_exact(text)?)?)
}

fn head(e: &SExp) -> Option<(&str, &[SExp])> {
    match e {
        SExp::List { items, .. } => match items.first() {
            Some(SExp::Atom { text, .. }) => Some((text.as_str(), &items[1..])),
            _ => None,
        },
        _ => None,
    }
}

fn arity(e: &SExp, args: &[SExp], n: usize, what: &str) -> Result<(), SyntaxError> {
    if args.len() != n {
        return Err(SyntaxError::new(
            e.pos(),
            format!("`{what}` takes {n} arguments, got {}", args.len()),
        ));
    }
    Ok(())
}

fn strvar(e: &SExp) -> Result<String, SyntaxError> {
    match e {
        SExp::Atom { text, .. } if is_strvar(text) => Ok(text.clone()),
        _ => Err(SyntaxError::new(e.pos(), "expected string variable")),
    }
}

fn term(e: &SExp) -> Result<Term, SyntaxError> {
    match e {
        SExp::Atom { text, pos } => match text.as_str() {
            "0" => Ok(Term::Zero),
            "1" => Ok(Term::One),
            t if is_numvar(t) => Ok(Term::Var(t.to_string())),
            t if t.bytes().all(|b| b.is_ascii_digit()) && !t.starts_with('0') => t
                .parse()
                .map(Term::num)
                .map_err(|_| SyntaxError::new(*pos, format!("numeral `{t}` out of range"))),
            t => Err(SyntaxError::new(*pos, format!("bad term `{t}`"))),
        },
        SExp::List { .. } => {
            let (op, args) = head(e).ok_or_else(|| SyntaxError::new(e.pos(), "bad term"))?;
            match op {
                "+" | "*" => {
                    arity(e, args, 2, op)?;
                    let (a, b) = (term(&args[0])?, term(&args[1])?);
                    Ok(if op == "+" {
                        Term::add(a, b)
                    } else {
                        Term::mul(a, b)
                    })
                }
                "len" => {
                    arity(e, args, 1, op)?;
                    Ok(Term::Len(strvar(&args[0])?))
                }
                _ => Err(SyntaxError::new(
                    e.pos(),
                    format!("unknown term operator `{op}`"),
                )),
            }
        }
    }
}

fn formula(e: &SExp) -> Result<Formula, ParseError> {
    let (op, args) = head(e).ok_or_else(|| SyntaxError::new(e.pos(), "expected formula"))?;
    let f = match op {
        "=" | "<=" => {
            arity(e, args, 2, op)?;
            let (a, b) = (term(&args[0])?, term(&args[1])?);
            if op == "=" {
                Formula::Eq(a, b)
            } else {
                Formula::Leq(a, b)
            }
        }
        "in" => {
            arity(e, args, 2, op)?;
            Formula::In(strvar(&args[0])?, term(&args[1])?)
        }
        "not" => {
            arity(e, args, 1, op)?;
            Formula::not(formula(&args[0])?)
        }
        "and" | "or" | "imp" => {
            arity(e, args, 2, op)?;
            let (a, b) = (formula(&args[0])?, formula(&args[1])?);
            match op {
                "and" => Formula::and(a, b),
                "or" => Formula::or(a, b),
                _ => Formula::imp(a, b),
            }
        }
        "all" | "ex" => {
            // check the variable sort before anything else
            let var = match args.first() {
                Some(SExp::Atom { text, .. }) if is_numvar(text) => text.clone(),
                Some(SExp::Atom { text, pos }) if is_strvar(text) => {
                    return Err(ParseError::StringQuantifier {
                        var: text.clone(),
                        pos: *pos,
                    })
                }
                _ => return Err(SyntaxError::new(e.pos(), "expected number variable").into()),
            };
            arity(e, args, 3, op)?;
            let bound = term(&args[1])?;
            if bound.mentions_var(&var) {
                return Err(ParseError::SelfBound {
                    var,
                    pos: args[1].pos(),
                });
            }
            let body = formula(&args[2])?;
            if op == "all" {
                Formula::forall(&var, bound, body)
            } else {
                Formula::exists(&var, bound, body)
            }
        }
        _ => return Err(SyntaxError::new(e.pos(), format!("unknown connective `{op}`")).into()),
    };
    Ok(f)
}
