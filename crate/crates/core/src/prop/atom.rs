use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A propositional variable: either bit `i` of a string variable (`pX.i`) or a
/// free-standing named atom (`qNAME`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PropAtom {
    StringBit(Arc<str>, u64),
    Named(Arc<str>),
}

impl PropAtom {
    pub fn bit(var: &str, index: u64) -> Self {
        PropAtom::StringBit(Arc::from(var), index)
    }

    pub fn named(label: &str) -> Self {
        PropAtom::Named(Arc::from(label))
    }

    /// `q<i>`.
    pub fn q(i: usize) -> Self {
        PropAtom::Named(Arc::from(i.to_string().as_str()))
    }

    /// Index `i` of an atom `q<i>`.
    pub fn q_index(&self) -> Option<usize> {
        match self {
            PropAtom::Named(l) => l.parse().ok(),
            PropAtom::StringBit(..) => None,
        }
    }
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

impl Ord for PropAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PropAtom::StringBit(x, i), PropAtom::StringBit(y, j)) => x.cmp(y).then(i.cmp(j)),
            (PropAtom::StringBit(..), PropAtom::Named(_)) => Ordering::Less,
            (PropAtom::Named(_), PropAtom::StringBit(..)) => Ordering::Greater,
            (PropAtom::Named(a), PropAtom::Named(b)) => natural_cmp(a, b),
        }
    }
}

impl PartialOrd for PropAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PropAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropAtom::StringBit(x, i) => write!(f, "p{x}.{i}"),
            PropAtom::Named(l) => write!(f, "q{l}"),
        }
    }
}

impl fmt::Debug for PropAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_ordering() {
        let mut v = vec![
            PropAtom::q(10),
            PropAtom::q(2),
            PropAtom::bit("X", 1),
            PropAtom::q(1),
        ];
        v.sort();
        let s: Vec<String> = v.iter().map(|a| a.to_string()).collect();
        assert_eq!(s, ["pX.1", "q1", "q2", "q10"]);
    }
}
