//! Propositional translation of bounded formulas at fixed string lengths.
//!
//! A string variable `X` of length `n` contributes the atoms
//! `pX.0 .. pX.(n-2)`; its top bit `n-1` is forced true and every position at
//! or above `n` is false. Number terms are evaluated outright and bounded
//! quantifiers expand into balanced conjunctions and disjunctions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::prop::{PropAssignment, PropAtom, PropFormula};
use crate::sigma::{balanced, Formula, StringValue, Term};

/// String lengths and number-variable values for a translation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LengthProfile {
    pub lengths: BTreeMap<String, u64>,
    pub numvals: BTreeMap<String, u64>,
}

impl LengthProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_len(mut self, var: &str, n: u64) -> Self {
        self.lengths.insert(var.to_string(), n);
        self
    }

    pub fn with_num(mut self, var: &str, v: u64) -> Self {
        self.numvals.insert(var.to_string(), v);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileParseError {
    #[error("malformed profile entry `{0}`")]
    Entry(String),
}

/// `X=3,Y=5;x=2`: string lengths, then optionally `;` and number values.
impl FromStr for LengthProfile {
    type Err = ProfileParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (strs, nums) = s.split_once(';').unwrap_or((s, ""));
        let mut prof = LengthProfile::new();
        let entries = |part: &str| -> Result<Vec<(String, u64)>, ProfileParseError> {
            part.split(',')
                .map(str::trim)
                .filter(|e| !e.is_empty())
                .map(|e| {
                    let (k, v) = e
                        .split_once('=')
                        .ok_or_else(|| ProfileParseError::Entry(e.to_string()))?;
                    let v = v
                        .trim()
                        .parse()
                        .map_err(|_| ProfileParseError::Entry(e.to_string()))?;
                    Ok((k.trim().to_string(), v))
                })
                .collect()
        };
        for (k, v) in entries(strs)? {
            if !k.starts_with(|c: char| c.is_ascii_uppercase()) {
                return Err(ProfileParseError::Entry(k));
            }
            prof.lengths.insert(k, v);
        }
        for (k, v) in entries(nums)? {
            if !k.starts_with(|c: char| c.is_ascii_lowercase()) {
                return Err(ProfileParseError::Entry(k));
            }
            prof.numvals.insert(k, v);
        }
        Ok(prof)
    }
}

impl fmt::Display for LengthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self
            .lengths
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}", strs.join(","))?;
        if !self.numvals.is_empty() {
            let nums: Vec<String> = self
                .numvals
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, ";{}", nums.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("profile does not cover string variable `{0}`")]
    UncoveredString(String),
    #[error("profile does not cover number variable `{0}`")]
    UncoveredNumber(String),
    #[error("arithmetic overflow while evaluating a term")]
    Overflow,
}

#[derive(Debug, Clone)]
pub struct TranslateOptions {
    /// Absorb ⊤/⊥ through connectives while translating.
    pub fold: bool,
    /// String variables with a known value: their bits become constants and
    /// their length is taken from the value.
    pub fixed: BTreeMap<String, StringValue>,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            fold: true,
            fixed: BTreeMap::new(),
        }
    }
}

impl TranslateOptions {
    pub fn unfolded() -> Self {
        TranslateOptions {
            fold: false,
            ..Self::default()
        }
    }

    pub fn with_fixed(mut self, var: &str, v: StringValue) -> Self {
        self.fixed.insert(var.to_string(), v);
        self
    }
}

pub fn translate(phi: &Formula, prof: &LengthProfile) -> Result<PropFormula, TranslateError> {
    translate_with(phi, prof, &TranslateOptions::default())
}

pub fn translate_with(
    phi: &Formula,
    prof: &LengthProfile,
    opts: &TranslateOptions,
) -> Result<PropFormula, TranslateError> {
    let (nums, strs) = phi.free_variables();
    if let Some(s) = strs
        .iter()
        .find(|s| !prof.lengths.contains_key(*s) && !opts.fixed.contains_key(*s))
    {
        return Err(TranslateError::UncoveredString(s.clone()));
    }
    if let Some(n) = nums.iter().find(|n| !prof.numvals.contains_key(*n)) {
        return Err(TranslateError::UncoveredNumber(n.clone()));
    }
    let mut t = Translator {
        prof,
        opts,
        bound: Vec::new(),
    };
    t.formula(phi)
}

struct Translator<'a> {
    prof: &'a LengthProfile,
    opts: &'a TranslateOptions,
    bound: Vec<(&'a str, u64)>,
}

impl<'a> Translator<'a> {
    fn len(&self, x: &str) -> Result<u64, TranslateError> {
        if let Some(v) = self.opts.fixed.get(x) {
            return Ok(v.length());
        }
        self.prof
            .lengths
            .get(x)
            .copied()
            .ok_or_else(|| TranslateError::UncoveredString(x.to_string()))
    }

    fn term(&self, t: &Term) -> Result<u64, TranslateError> {
        Ok(match t {
            Term::Zero => 0,
            Term::One => 1,
            Term::Num(n) => *n,
            Term::Var(v) => match self.bound.iter().rev().find(|(n, _)| *n == v) {
                Some((_, x)) => *x,
                None => *self
                    .prof
                    .numvals
                    .get(v)
                    .ok_or_else(|| TranslateError::UncoveredNumber(v.clone()))?,
            },
            Term::Add(a, b) => self
                .term(a)?
                .checked_add(self.term(b)?)
                .ok_or(TranslateError::Overflow)?,
            Term::Mul(a, b) => self
                .term(a)?
                .checked_mul(self.term(b)?)
                .ok_or(TranslateError::Overflow)?,
            Term::Len(x) => self.len(x)?,
        })
    }

    fn not(&self, a: PropFormula) -> PropFormula {
        if self.opts.fold {
            PropFormula::not_folded(a)
        } else {
            PropFormula::not(a)
        }
    }

    fn and(&self, a: PropFormula, b: PropFormula) -> PropFormula {
        if self.opts.fold {
            PropFormula::and_folded(a, b)
        } else {
            PropFormula::and(a, b)
        }
    }

    fn or(&self, a: PropFormula, b: PropFormula) -> PropFormula {
        if self.opts.fold {
            PropFormula::or_folded(a, b)
        } else {
            PropFormula::or(a, b)
        }
    }

    fn imp(&self, a: PropFormula, b: PropFormula) -> PropFormula {
        if self.opts.fold {
            PropFormula::imp_folded(a, b)
        } else {
            PropFormula::imp(a, b)
        }
    }

    fn member(&self, x: &str, j: u64) -> Result<PropFormula, TranslateError> {
        if let Some(v) = self.opts.fixed.get(x) {
            return Ok(PropFormula::constant(v.bit(j)));
        }
        let n = self.len(x)?;
        Ok(if n == 0 || j >= n {
            PropFormula::bot()
        } else if j == n - 1 {
            PropFormula::top()
        } else {
            PropFormula::atom(PropAtom::bit(x, j))
        })
    }

    fn formula(&mut self, f: &'a Formula) -> Result<PropFormula, TranslateError> {
        let fold = self.opts.fold;
        Ok(match f {
            Formula::Eq(a, b) => PropFormula::constant(self.term(a)? == self.term(b)?),
            Formula::Leq(a, b) => PropFormula::constant(self.term(a)? <= self.term(b)?),
            Formula::In(x, t) => {
                let j = self.term(t)?;
                self.member(x, j)?
            }
            Formula::Not(a) => {
                let a = self.formula(a)?;
                self.not(a)
            }
            Formula::And(a, b) => {
                let a = self.formula(a)?;
                if fold && a.as_const() == Some(false) {
                    return Ok(a);
                }
                let b = self.formula(b)?;
                self.and(a, b)
            }
            Formula::Or(a, b) => {
                let a = self.formula(a)?;
                if fold && a.as_const() == Some(true) {
                    return Ok(a);
                }
                let b = self.formula(b)?;
                self.or(a, b)
            }
            Formula::Imp(a, b) => {
                let a = self.formula(a)?;
                if fold && a.as_const() == Some(false) {
                    return Ok(PropFormula::top());
                }
                let b = self.formula(b)?;
                self.imp(a, b)
            }
            Formula::Forall { var, bound, body } | Formula::Exists { var, bound, body } => {
                let universal = matches!(f, Formula::Forall { .. });
                let top = self.term(bound)?;
                let mut parts = Vec::with_capacity(top as usize + 1);
                for x in 0..=top {
                    self.bound.push((var.as_str(), x));
                    let part = self.formula(body);
                    self.bound.pop();
                    let part = part?;
                    // a ⊥ conjunct (⊤ disjunct) absorbs the whole folded tree
                    if fold && part.as_const() == Some(!universal) {
                        return Ok(part);
                    }
                    parts.push(part);
                }
                if universal {
                    balanced(parts, |a, b| self.and(a, b)).expect("non-empty range")
                } else {
                    balanced(parts, |a, b| self.or(a, b)).expect("non-empty range")
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentError {
    #[error("string `{var}` has length {actual}, profile says {expected}")]
    LengthMismatch {
        var: String,
        expected: u64,
        actual: u64,
    },
    #[error("no string given for `{0}`")]
    Missing(String),
}

/// Atom values `pX.j ↦ (j ∈ X)` for `j ≤ n-2`.
pub fn assignment_of_strings(
    prof: &LengthProfile,
    strings: &BTreeMap<String, StringValue>,
) -> Result<PropAssignment, AssignmentError> {
    let mut a = PropAssignment::new();
    for (var, &n) in &prof.lengths {
        let s = strings
            .get(var)
            .ok_or_else(|| AssignmentError::Missing(var.clone()))?;
        if s.length() != n {
            return Err(AssignmentError::LengthMismatch {
                var: var.clone(),
                expected: n,
                actual: s.length(),
            });
        }
        for j in 0..n.saturating_sub(1) {
            a.insert(PropAtom::bit(var, j), s.bit(j));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::{fold, is_tautology_with_cap, parse_prop};
    use crate::sigma::parse_formula;

    fn tr(f: &str, prof: &str) -> PropFormula {
        translate(&parse_formula(f).unwrap(), &prof.parse().unwrap()).unwrap()
    }

    #[test]
    fn atom_rules() {
        assert_eq!(tr("(in X 0)", "X=1"), PropFormula::top());
        assert_eq!(
            tr("(in X (+ 1 (+ 1 (+ 1 (+ 1 1)))))", "X=3"),
            PropFormula::bot()
        );
        assert_eq!(tr("(in X 0)", "X=0"), PropFormula::bot());
        assert_eq!(tr("(in X 1)", "X=3"), PropFormula::bit("X", 1));
        assert_eq!(tr("(= (len X) 0)", "X=0"), PropFormula::top());
    }

    #[test]
    fn exists_below_length() {
        let unfolded = translate_with(
            &parse_formula("(ex x (len X) (in X x))").unwrap(),
            &"X=3".parse().unwrap(),
            &TranslateOptions::unfolded(),
        )
        .unwrap();
        assert_eq!(unfolded, parse_prop("(| (| pX.0 pX.1) (| T F))").unwrap());
        assert!(is_tautology_with_cap(&unfolded, 20).unwrap());
        assert_eq!(tr("(ex x (len X) (in X x))", "X=3"), PropFormula::top());
    }

    #[test]
    fn folded_equals_fold_of_unfolded() {
        let f = parse_formula("(all x (len X) (imp (in X x) (ex y x (in Y y))))").unwrap();
        for (n, m) in [(0, 0), (1, 2), (3, 2), (4, 4)] {
            let prof = LengthProfile::new().with_len("X", n).with_len("Y", m);
            let a = translate(&f, &prof).unwrap();
            let b = translate_with(&f, &prof, &TranslateOptions::unfolded()).unwrap();
            assert_eq!(a, fold(&b));
        }
    }

    #[test]
    fn uncovered_variables() {
        let f = parse_formula("(in X y)").unwrap();
        assert_eq!(
            translate(&f, &"X=2".parse().unwrap()),
            Err(TranslateError::UncoveredNumber("y".into()))
        );
        assert_eq!(
            translate(&f, &";y=1".parse().unwrap()),
            Err(TranslateError::UncoveredString("X".into()))
        );
        assert_eq!(tr("(in X y)", "X=3;y=1"), PropFormula::bit("X", 1));
    }

    #[test]
    fn profile_text() {
        let p: LengthProfile = "X=3,Y=5;x=2".parse().unwrap();
        assert_eq!(p.lengths["Y"], 5);
        assert_eq!(p.numvals["x"], 2);
        assert_eq!(p.to_string(), "X=3,Y=5;x=2");
        assert!("x=3".parse::<LengthProfile>().is_err());
        assert!("X3".parse::<LengthProfile>().is_err());
    }

    #[test]
    fn assignments() {
        let prof = LengthProfile::new().with_len("X", 3);
        let strings = |e: &[u64]| {
            BTreeMap::from([(
                "X".to_string(),
                StringValue::from_elements(e.iter().copied()),
            )])
        };
        let a = assignment_of_strings(&prof, &strings(&[2])).unwrap();
        assert_eq!(a.values().copied().collect::<Vec<_>>(), vec![false, false]);
        let a = assignment_of_strings(&prof, &strings(&[0, 2])).unwrap();
        assert_eq!(a.values().copied().collect::<Vec<_>>(), vec![true, false]);
        assert!(matches!(
            assignment_of_strings(&prof, &strings(&[1])),
            Err(AssignmentError::LengthMismatch { actual: 2, .. })
        ));
    }

    #[test]
    fn fixed_strings_become_constants() {
        let f = parse_formula("(and (in Y 0) (in X 0))").unwrap();
        let opts = TranslateOptions::default().with_fixed("Y", StringValue::from_elements([0, 2]));
        let g = translate_with(&f, &"X=2".parse().unwrap(), &opts).unwrap();
        assert_eq!(g, PropFormula::bit("X", 0));
    }
}
