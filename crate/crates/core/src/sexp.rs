//! Minimal S-expression reader shared by the formula text formats.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExp {
    Atom { text: String, pos: usize },
    List { items: Vec<SExp>, pos: usize },
}

impl SExp {
    pub fn pos(&self) -> usize {
        match self {
            SExp::Atom { pos, .. } | SExp::List { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

impl SyntaxError {
    pub fn new(pos: usize, msg: impl fmt::Display) -> Self {
        SyntaxError {
            pos,
            msg: msg.to_string(),
        }
    }
}

fn is_delim(c: u8) -> bool {
    c.is_ascii_whitespace() || c == b'(' || c == b')'
}

/// Reads one S-expression starting at `*pos` (leading whitespace skipped) and
/// advances `*pos` past it.
pub fn read_one(src: &str, pos: &mut usize) -> Result<SExp, SyntaxError> {
    let bytes = src.as_bytes();
    skip_ws(bytes, pos);
    if *pos >= bytes.len() {
        return Err(SyntaxError::new(*pos, "unexpected end of input"));
    }
    // explicit stack: formulas produced by the library can be deep
    let mut stack: Vec<(usize, Vec<SExp>)> = Vec::new();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            let open = stack.last().map(|s| s.0).unwrap_or(*pos);
            return Err(SyntaxError::new(open, "unclosed parenthesis"));
        }
        let c = bytes[*pos];
        let done = match c {
            b'(' => {
                stack.push((*pos, Vec::new()));
                *pos += 1;
                None
            }
            b')' => {
                let Some((start, items)) = stack.pop() else {
                    return Err(SyntaxError::new(*pos, "unexpected ')'"));
                };
                *pos += 1;
                Some(SExp::List { items, pos: start })
            }
            _ => {
                let start = *pos;
                while *pos < bytes.len() && !is_delim(bytes[*pos]) {
                    *pos += 1;
                }
                Some(SExp::Atom {
                    text: src[start..*pos].to_string(),
                    pos: start,
                })
            }
        };
        if let Some(e) = done {
            match stack.last_mut() {
                Some((_, items)) => items.push(e),
                None => return Ok(e),
            }
        }
    }
}

/// Parses exactly one S-expression spanning all of `src`.
pub fn parse_exact(src: &str) -> Result<SExp, SyntaxError> {
    let mut pos = 0;
    let e = read_one(src, &mut pos)?;
    skip_ws(src.as_bytes(), &mut pos);
    if pos != src.len() {
        return Err(SyntaxError::new(pos, "trailing input"));
    }
    Ok(e)
}

pub fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested() {
        let e = parse_exact("(a (b c) d)").unwrap();
        match e {
            SExp::List { items, .. } => assert_eq!(items.len(), 3),
            _ => panic!(),
        }
    }

    #[test]
    fn errors_carry_position() {
        assert_eq!(parse_exact("(a b").unwrap_err().pos, 0);
        assert_eq!(parse_exact("a)").unwrap_err().pos, 1);
        assert!(parse_exact("").is_err());
    }
}
