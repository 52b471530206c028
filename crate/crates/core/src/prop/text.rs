use std::fmt;

use super::atom::PropAtom;
use super::formula::{Kind, PropFormula};
use crate::sexp::{self, SExp, SyntaxError};

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Const(true) => write!(f, "T"),
            Kind::Const(false) => write!(f, "F"),
            Kind::Atom(a) => write!(f, "{a}"),
            Kind::Not(a) => write!(f, "(~ {a})"),
            Kind::And(a, b) => write!(f, "(& {a} {b})"),
            Kind::Or(a, b) => write!(f, "(| {a} {b})"),
            Kind::Imp(a, b) => write!(f, "(> {a} {b})"),
        }
    }
}

impl fmt::Debug for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn parse_atom(text: &str) -> Option<PropAtom> {
    if let Some(rest) = text.strip_prefix('q') {
        if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Some(PropAtom::named(rest));
        }
        return None;
    }
    let rest = text.strip_prefix('p')?;
    let (var, idx) = rest.split_once('.')?;
    let mut cs = var.chars();
    let ok_var = matches!(cs.next(), Some(c) if c.is_ascii_uppercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok_var || idx.is_empty() || !idx.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(PropAtom::bit(var, idx.parse().ok()?))
}

pub fn prop_from_sexp(e: &SExp) -> Result<PropFormula, SyntaxError> {
    match e {
        SExp::Atom { text, pos } => match text.as_str() {
            "T" => Ok(PropFormula::top()),
            "F" => Ok(PropFormula::bot()),
            t => parse_atom(t)
                .map(PropFormula::atom)
                .ok_or_else(|| SyntaxError::new(*pos, format!("bad atom `{t}`"))),
        },
        SExp::List { items, pos } => {
            let op = match items.first() {
                Some(SExp::Atom { text, .. }) => text.as_str(),
                _ => return Err(SyntaxError::new(*pos, "expected connective")),
            };
            let args = &items[1..];
            let want = if op == "~" { 1 } else { 2 };
            if !matches!(op, "~" | "&" | "|" | ">") {
                return Err(SyntaxError::new(*pos, format!("unknown connective `{op}`")));
            }
            if args.len() != want {
                return Err(SyntaxError::new(
                    *pos,
                    format!("`{op}` takes {want} arguments"),
                ));
            }
            let a = prop_from_sexp(&args[0])?;
            if op == "~" {
                return Ok(PropFormula::not(a));
            }
            let b = prop_from_sexp(&args[1])?;
            Ok(match op {
                "&" => PropFormula::and(a, b),
                "|" => PropFormula::or(a, b),
                _ => PropFormula::imp(a, b),
            })
        }
    }
}

pub fn parse_prop(text: &str) -> Result<PropFormula, SyntaxError> {
    prop_from_sexp(&sexp::parse_exact(text)?)
}

/// Reads one formula starting at `*pos`.
pub fn read_prop(src: &str, pos: &mut usize) -> Result<PropFormula, SyntaxError> {
    prop_from_sexp(&sexp::read_one(src, pos)?)
}
