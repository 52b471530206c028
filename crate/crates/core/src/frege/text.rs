//! Line-oriented proof files.
//!
//! ```text
//! # comment
//! PREMISE <k> <formula>
//! IMPORT <k> <formula> BASEPROOF <base64>
//! LINE <id> <formula> AX <schema-id>
//! LINE <id> <formula> MP <i> <j>
//! LINE <id> <formula> SUB <i> {atom:=formula;...}
//! LINE <id> <formula> PREM <k>
//! LINE <id> <formula> IMPORT <k>
//! ```

use std::fmt::Write;

use base64::engine::general_purpose::STANDARD;
use base64::Engine;

use super::proof::{FPlusProof, Imported, Proof, ProofLine, Rule};
use super::schema::Schema;
use crate::prop::{parse_atom, read_prop, PropFormula, Substitution};
use crate::sexp::skip_ws;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ProofParseError {
    pub line: usize,
    pub msg: String,
}

fn write_rule(out: &mut String, rule: &Rule) {
    match rule {
        Rule::Axiom(s) => write!(out, "AX {}", s.id()),
        Rule::Mp(i, j) => write!(out, "MP {i} {j}"),
        Rule::Sub(i, sigma) => {
            write!(out, "SUB {i} {{").unwrap();
            for (n, (a, f)) in sigma.iter().enumerate() {
                if n > 0 {
                    out.push(';');
                }
                write!(out, "{a}:={f}").unwrap();
            }
            write!(out, "}}")
        }
        Rule::Premise(k) => write!(out, "PREM {k}"),
        Rule::Import(k) => write!(out, "IMPORT {k}"),
    }
    .unwrap();
}

fn write_derivation(out: &mut String, p: &Proof) {
    for (k, f) in p.premises.iter().enumerate() {
        writeln!(out, "PREMISE {k} {f}").unwrap();
    }
    let mut notes = p.notes.iter().peekable();
    for (pos, l) in p.lines.iter().enumerate() {
        while let Some((_, text)) = notes.next_if(|(at, _)| *at <= pos) {
            writeln!(out, "# {text}").unwrap();
        }
        write!(out, "LINE {} {} ", l.id, l.formula).unwrap();
        write_rule(out, &l.rule);
        out.push('\n');
    }
    for (_, text) in notes {
        writeln!(out, "# {text}").unwrap();
    }
}

pub fn render_proof(p: &Proof) -> String {
    let mut out = String::new();
    write_derivation(&mut out, p);
    out
}

pub fn render_fplus(p: &FPlusProof) -> String {
    let mut out = String::new();
    for (k, imp) in p.imports.iter().enumerate() {
        writeln!(
            out,
            "IMPORT {k} {} BASEPROOF {}",
            imp.formula,
            STANDARD.encode(&imp.base_proof)
        )
        .unwrap();
    }
    write_derivation(&mut out, &p.derivation);
    out
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> ProofParseError {
        ProofParseError {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn word(&mut self) -> Result<&'a str, ProofParseError> {
        skip_ws(self.src.as_bytes(), &mut self.pos);
        let rest = &self.src[self.pos..];
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if end == 0 {
            return Err(self.err("unexpected end of line"));
        }
        self.pos += end;
        Ok(&rest[..end])
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T, ProofParseError> {
        let w = self.word()?;
        w.parse()
            .map_err(|_| self.err(format!("expected a number, got `{w}`")))
    }

    fn formula(&mut self) -> Result<PropFormula, ProofParseError> {
        read_prop(self.src, &mut self.pos).map_err(|e| self.err(e.to_string()))
    }

    /// A formula inside `{...}`, where a bare atom ends at `;` or `}`.
    fn map_value(&mut self) -> Result<PropFormula, ProofParseError> {
        skip_ws(self.src.as_bytes(), &mut self.pos);
        let rest = &self.src[self.pos..];
        if rest.starts_with('(') {
            return self.formula();
        }
        let end = rest
            .find(|c: char| c == ';' || c == '}' || c.is_whitespace())
            .unwrap_or(rest.len());
        let mut at = 0;
        let f = read_prop(&rest[..end], &mut at).map_err(|e| self.err(e.to_string()))?;
        self.pos += end;
        Ok(f)
    }

    fn expect(&mut self, s: &str) -> Result<(), ProofParseError> {
        skip_ws(self.src.as_bytes(), &mut self.pos);
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn substitution(&mut self) -> Result<Substitution, ProofParseError> {
        self.expect("{")?;
        let mut sigma = Substitution::new();
        loop {
            skip_ws(self.src.as_bytes(), &mut self.pos);
            let rest = &self.src[self.pos..];
            if rest.starts_with('}') {
                self.pos += 1;
                return Ok(sigma);
            }
            let end = rest.find(":=").ok_or_else(|| self.err("expected `:=`"))?;
            let atom = parse_atom(rest[..end].trim())
                .ok_or_else(|| self.err(format!("bad atom `{}`", rest[..end].trim())))?;
            self.pos += end + 2;
            let f = self.map_value()?;
            if sigma.insert(atom, f).is_some() {
                return Err(self.err("atom substituted twice"));
            }
            skip_ws(self.src.as_bytes(), &mut self.pos);
            if self.src[self.pos..].starts_with(';') {
                self.pos += 1;
            } else if !self.src[self.pos..].starts_with('}') {
                return Err(self.err("expected `;` or `}`"));
            }
        }
    }

    fn end(&mut self) -> Result<(), ProofParseError> {
        skip_ws(self.src.as_bytes(), &mut self.pos);
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("trailing text"))
        }
    }
}

/// Parses an f+ container; a plain proof is one with no `IMPORT` headers.
pub fn parse_fplus(text: &str) -> Result<FPlusProof, ProofParseError> {
    let mut out = FPlusProof::default();
    for (n, raw) in text.lines().enumerate() {
        let mut c = Cursor {
            src: raw,
            pos: 0,
            line: n + 1,
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(note) = trimmed.strip_prefix('#') {
            let at = out.derivation.lines.len();
            out.derivation.notes.push((at, note.trim().to_string()));
            continue;
        }
        match c.word()? {
            "PREMISE" => {
                let k: usize = c.number()?;
                if k != out.derivation.premises.len() {
                    return Err(c.err(format!("premise {k} out of order")));
                }
                let f = c.formula()?;
                c.end()?;
                out.derivation.premises.push(f);
            }
            "IMPORT" => {
                let k: usize = c.number()?;
                if k != out.imports.len() {
                    return Err(c.err(format!("import {k} out of order")));
                }
                if !out.derivation.lines.is_empty() {
                    return Err(c.err("import header after derivation lines"));
                }
                let formula = c.formula()?;
                if c.word()? != "BASEPROOF" {
                    return Err(c.err("expected BASEPROOF"));
                }
                let b64 = c.word()?;
                let base_proof = STANDARD
                    .decode(b64)
                    .map_err(|e| c.err(format!("bad base64: {e}")))?;
                c.end()?;
                out.imports.push(Imported {
                    formula,
                    base_proof,
                });
            }
            "LINE" => {
                let id: u64 = c.number()?;
                let formula = c.formula()?;
                let rule = match c.word()? {
                    "AX" => {
                        let s: u64 = c.number()?;
                        Rule::Axiom(
                            Schema::from_id(s).ok_or_else(|| c.err(format!("no schema {s}")))?,
                        )
                    }
                    "MP" => Rule::Mp(c.number()?, c.number()?),
                    "SUB" => Rule::Sub(c.number()?, c.substitution()?),
                    "PREM" => Rule::Premise(c.number()?),
                    "IMPORT" => Rule::Import(c.number()?),
                    w => return Err(c.err(format!("unknown rule `{w}`"))),
                };
                c.end()?;
                out.derivation.lines.push(ProofLine { id, formula, rule });
            }
            w => return Err(c.err(format!("unknown record `{w}`"))),
        }
    }
    Ok(out)
}

pub fn parse_proof(text: &str) -> Result<Proof, ProofParseError> {
    let p = parse_fplus(text)?;
    if !p.imports.is_empty() {
        return Err(ProofParseError {
            line: 0,
            msg: "plain proof has IMPORT headers".into(),
        });
    }
    Ok(p.derivation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::{parse_prop, PropAtom};

    #[test]
    fn round_trip() {
        let mut sigma = Substitution::new();
        sigma.insert(PropAtom::q(1), parse_prop("(& q2 T)").unwrap());
        sigma.insert(PropAtom::bit("X", 0), parse_prop("F").unwrap());
        sigma.insert(PropAtom::q(7), parse_prop("q3").unwrap());
        let p = FPlusProof {
            imports: vec![Imported {
                formula: parse_prop("(| q1 (~ q1))").unwrap(),
                base_proof: b"truth-table\nbytes".to_vec(),
            }],
            derivation: Proof {
                premises: vec![parse_prop("q9").unwrap()],
                lines: vec![
                    ProofLine {
                        id: 1,
                        formula: parse_prop("(| q1 (~ q1))").unwrap(),
                        rule: Rule::Import(0),
                    },
                    ProofLine {
                        id: 2,
                        formula: parse_prop("(| (& q2 T) (~ (& q2 T)))").unwrap(),
                        rule: Rule::Sub(1, sigma),
                    },
                    ProofLine {
                        id: 3,
                        formula: parse_prop("q9").unwrap(),
                        rule: Rule::Premise(0),
                    },
                ],
                notes: vec![(0, "stage one".into()), (3, "end".into())],
            },
        };
        let text = render_fplus(&p);
        assert_eq!(parse_fplus(&text).unwrap(), p);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_proof("LINE 1 T AX 11\nLINE 2 (& q1 AX 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_proof("LINE 1 T AX 99").is_err());
        assert!(parse_proof("LINE 1 T MP 1").is_err());
        assert!(parse_proof("\u{0}\u{1}garbage").is_err());
    }
}
