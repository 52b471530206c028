#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use uniform_reducts::prop::{PropAtom, PropFormula};
use uniform_reducts::sigma::{parse_formula, Formula};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn corpus() -> Vec<(String, Formula)> {
    std::fs::read_to_string(fixture("corpus.txt"))
        .unwrap()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| (l.to_string(), parse_formula(l).unwrap()))
        .collect()
}

/// Random formula over `q0..q(atoms-1)` with at most `budget` tree nodes.
pub fn random_formula(rng: &mut ChaCha8Rng, atoms: usize, budget: usize) -> PropFormula {
    if budget <= 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => PropFormula::top(),
            1 => PropFormula::bot(),
            _ => PropFormula::q(rng.gen_range(0..atoms)),
        };
    }
    match rng.gen_range(0..4) {
        0 => PropFormula::not(random_formula(rng, atoms, budget - 1)),
        op => {
            let left = rng.gen_range(1..budget.max(2));
            let a = random_formula(rng, atoms, left);
            let b = random_formula(rng, atoms, (budget - 1).saturating_sub(left).max(1));
            match op {
                1 => PropFormula::and(a, b),
                2 => PropFormula::or(a, b),
                _ => PropFormula::imp(a, b),
            }
        }
    }
}

pub fn tree_size(f: &PropFormula) -> usize {
    1 + f.children().iter().map(|c| tree_size(c)).sum::<usize>()
}

pub fn random_substitution(
    rng: &mut ChaCha8Rng,
    atoms: &[PropAtom],
) -> uniform_reducts::prop::Substitution {
    let mut sigma = uniform_reducts::prop::Substitution::new();
    for a in atoms {
        if rng.gen_bool(0.7) {
            sigma.insert(a.clone(), random_formula(rng, 3, 5));
        }
    }
    sigma
}

// A second, independent proof checker. It works on the text form only and
// shares nothing with the library beyond the file format.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RF {
    T,
    F,
    Atom(String),
    Not(Box<RF>),
    Bin(char, Box<RF>, Box<RF>),
}

fn tokens(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let s = s.replace(":=", " := ");
    for c in s.chars() {
        match c {
            '(' | ')' | '{' | '}' | ';' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn formula(t: &[String], i: &mut usize) -> Option<RF> {
    let tok = t.get(*i)?.as_str();
    *i += 1;
    match tok {
        "T" => Some(RF::T),
        "F" => Some(RF::F),
        "(" => {
            let op = t.get(*i)?.clone();
            *i += 1;
            let f = match op.as_str() {
                "~" => RF::Not(Box::new(formula(t, i)?)),
                "&" | "|" | ">" => {
                    let a = formula(t, i)?;
                    let b = formula(t, i)?;
                    RF::Bin(op.chars().next().unwrap(), Box::new(a), Box::new(b))
                }
                _ => return None,
            };
            (t.get(*i)?.as_str() == ")").then(|| *i += 1)?;
            Some(f)
        }
        ")" | "{" | "}" | ";" => None,
        a if a.starts_with('q') || a.starts_with('p') => Some(RF::Atom(a.to_string())),
        _ => None,
    }
}

fn imp(a: RF, b: RF) -> RF {
    RF::Bin('>', Box::new(a), Box::new(b))
}

fn schema(id: u64, f: &RF) -> bool {
    use RF::*;
    let m = |f: &RF| -> Option<(RF, RF)> {
        match f {
            Bin('>', a, b) => Some(((**a).clone(), (**b).clone())),
            _ => None,
        }
    };
    let bin = |c: char, f: &RF| -> Option<(RF, RF)> {
        match f {
            Bin(d, a, b) if *d == c => Some(((**a).clone(), (**b).clone())),
            _ => None,
        }
    };
    let not = |f: &RF| -> Option<RF> {
        match f {
            Not(a) => Some((**a).clone()),
            _ => None,
        }
    };
    let check = || -> Option<bool> {
        Some(match id {
            1 => {
                let (p, r) = m(f)?;
                let (_, p2) = m(&r)?;
                p == p2
            }
            2 => {
                let (l, r) = m(f)?;
                let (p, qr) = m(&l)?;
                let (q, rr) = m(&qr)?;
                r == imp(imp(p.clone(), q), imp(p, rr))
            }
            3 | 4 => {
                let (l, r) = m(f)?;
                let (p, q) = bin('&', &l)?;
                r == if id == 3 { p } else { q }
            }
            5 => {
                let (p, r) = m(f)?;
                let (q, pq) = m(&r)?;
                pq == Bin('&', Box::new(p), Box::new(q))
            }
            6 | 7 => {
                let (x, r) = m(f)?;
                let (p, q) = bin('|', &r)?;
                x == if id == 6 { p } else { q }
            }
            8 => {
                let (pr, rest) = m(f)?;
                let (p, r) = m(&pr)?;
                let (qr, rest2) = m(&rest)?;
                let (q, r2) = m(&qr)?;
                let (pq, r3) = m(&rest2)?;
                r == r2 && r == r3 && pq == Bin('|', Box::new(p), Box::new(q))
            }
            9 => {
                let (pq, rest) = m(f)?;
                let (p, q) = m(&pq)?;
                let (pnq, np) = m(&rest)?;
                pnq == imp(p.clone(), Not(Box::new(q))) && np == Not(Box::new(p))
            }
            10 => {
                let (nnp, p) = m(f)?;
                not(&not(&nnp)?)? == p
            }
            11 => *f == T,
            12 => *f == Not(Box::new(F)),
            13 => {
                let (p, r) = m(f)?;
                let (np, _) = m(&r)?;
                np == Not(Box::new(p))
            }
            _ => false,
        })
    };
    check().unwrap_or(false)
}

fn subst(f: &RF, s: &HashMap<String, RF>) -> RF {
    match f {
        RF::Atom(a) => s.get(a).cloned().unwrap_or_else(|| f.clone()),
        RF::Not(a) => RF::Not(Box::new(subst(a, s))),
        RF::Bin(c, a, b) => RF::Bin(*c, Box::new(subst(a, s)), Box::new(subst(b, s))),
        _ => f.clone(),
    }
}

/// Checks every line of a plain proof file locally. `Err` carries the first
/// inconsistent line (or a parse failure).
pub fn reference_check(text: &str) -> Result<(), String> {
    let mut premises: HashMap<u64, RF> = HashMap::new();
    let mut lines: HashMap<u64, RF> = HashMap::new();
    let mut order = 0u64;
    for raw in text.lines() {
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let t = tokens(raw);
        let num = |k: usize| -> Result<u64, String> {
            t.get(k)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad number in `{raw}`"))
        };
        match t[0].as_str() {
            "PREMISE" => {
                let k = num(1)?;
                let mut i = 2;
                let f = formula(&t, &mut i).ok_or("bad premise")?;
                if i != t.len() {
                    return Err("trailing premise tokens".into());
                }
                premises.insert(k, f);
            }
            "LINE" => {
                let id = num(1)?;
                if lines.contains_key(&id) {
                    return Err(format!("duplicate {id}"));
                }
                order += 1;
                let mut i = 2;
                let f = formula(&t, &mut i).ok_or_else(|| format!("bad formula on {id}"))?;
                let rule = t.get(i).ok_or("no rule")?.clone();
                let ok = match rule.as_str() {
                    "AX" => i + 2 == t.len() && schema(num(i + 1)?, &f),
                    "MP" => {
                        let (a, b) = (num(i + 1)?, num(i + 2)?);
                        i + 3 == t.len()
                            && match (lines.get(&a), lines.get(&b)) {
                                (Some(x), Some(y)) => *y == imp(x.clone(), f.clone()),
                                _ => false,
                            }
                    }
                    "PREM" => i + 2 == t.len() && premises.get(&num(i + 1)?) == Some(&f),
                    "SUB" => {
                        let target = lines.get(&num(i + 1)?).cloned();
                        let mut j = i + 2;
                        let mut s = HashMap::new();
                        if t.get(j).map(String::as_str) != Some("{") {
                            return Err("bad substitution".into());
                        }
                        j += 1;
                        while t.get(j).map(String::as_str) != Some("}") {
                            let atom = t.get(j).ok_or("unterminated")?.clone();
                            if t.get(j + 1).map(String::as_str) != Some(":=") {
                                return Err("bad key".into());
                            }
                            j += 2;
                            let g = formula(&t, &mut j).ok_or("bad value")?;
                            s.insert(atom, g);
                            if t.get(j).map(String::as_str) == Some(";") {
                                j += 1;
                            }
                        }
                        j + 1 == t.len() && target.is_some_and(|tf| subst(&tf, &s) == f)
                    }
                    _ => false,
                };
                if !ok {
                    return Err(format!("line {id} is not justified"));
                }
                lines.insert(id, f);
            }
            other => return Err(format!("unexpected `{other}`")),
        }
    }
    if order == 0 {
        return Err("empty".into());
    }
    Ok(())
}
