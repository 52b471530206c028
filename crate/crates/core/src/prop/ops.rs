use std::collections::{BTreeMap, HashMap, HashSet};

use super::atom::PropAtom;
use super::formula::{Kind, PropFormula};

/// Truth values for atoms.
pub type PropAssignment = BTreeMap<PropAtom, bool>;

/// Simultaneous substitution; atoms not in the map are left alone.
pub type Substitution = BTreeMap<PropAtom, PropFormula>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("assignment has no value for atom {0}")]
pub struct MissingAtom(pub PropAtom);

pub fn eval_prop(f: &PropFormula, a: &PropAssignment) -> Result<bool, MissingAtom> {
    fn go(
        f: &PropFormula,
        a: &PropAssignment,
        memo: &mut HashMap<u64, bool>,
    ) -> Result<bool, MissingAtom> {
        if let Some(v) = memo.get(&f.id()) {
            return Ok(*v);
        }
        let v = match f.kind() {
            Kind::Const(b) => *b,
            Kind::Atom(x) => *a.get(x).ok_or_else(|| MissingAtom(x.clone()))?,
            Kind::Not(x) => !go(x, a, memo)?,
            Kind::And(x, y) => go(x, a, memo)? && go(y, a, memo)?,
            Kind::Or(x, y) => go(x, a, memo)? || go(y, a, memo)?,
            Kind::Imp(x, y) => !go(x, a, memo)? || go(y, a, memo)?,
        };
        memo.insert(f.id(), v);
        Ok(v)
    }
    go(f, a, &mut HashMap::new())
}

pub fn substitute(f: &PropFormula, sigma: &Substitution) -> PropFormula {
    let mut memo = HashMap::new();
    substitute_memo(f, sigma, &mut memo)
}

/// Substitution sharing a memo table across calls with the same map.
pub fn substitute_memo(
    f: &PropFormula,
    sigma: &Substitution,
    memo: &mut HashMap<u64, PropFormula>,
) -> PropFormula {
    if f.is_closed() {
        return f.clone();
    }
    if let Some(r) = memo.get(&f.id()) {
        return r.clone();
    }
    let r = match f.kind() {
        Kind::Const(_) => f.clone(),
        Kind::Atom(x) => sigma.get(x).cloned().unwrap_or_else(|| f.clone()),
        Kind::Not(x) => PropFormula::not(substitute_memo(x, sigma, memo)),
        Kind::And(x, y) => PropFormula::and(
            substitute_memo(x, sigma, memo),
            substitute_memo(y, sigma, memo),
        ),
        Kind::Or(x, y) => PropFormula::or(
            substitute_memo(x, sigma, memo),
            substitute_memo(y, sigma, memo),
        ),
        Kind::Imp(x, y) => PropFormula::imp(
            substitute_memo(x, sigma, memo),
            substitute_memo(y, sigma, memo),
        ),
    };
    memo.insert(f.id(), r.clone());
    r
}

/// Distinct subformulas in depth-first pre-order, children left to right.
/// Index 0 is `f` itself. A shared subformula is kept at its last pre-order
/// occurrence, so every node comes before all of its children.
pub fn subformulas(f: &PropFormula) -> Vec<PropFormula> {
    // reverse of a right-to-left post-order walk
    let mut seen = HashSet::new();
    let mut post = Vec::new();
    let mut stack = vec![(f.clone(), false)];
    while let Some((g, expanded)) = stack.pop() {
        if expanded {
            post.push(g);
            continue;
        }
        if !seen.insert(g.id()) {
            continue;
        }
        stack.push((g.clone(), true));
        for k in g.children() {
            if !seen.contains(&k.id()) {
                stack.push((k.clone(), false));
            }
        }
    }
    post.reverse();
    post
}

/// Constant-absorbing constructors. These are the only simplifications
/// performed by [`fold`] and by folded translation.
impl PropFormula {
    pub fn not_folded(a: PropFormula) -> PropFormula {
        match a.as_const() {
            Some(b) => PropFormula::constant(!b),
            None => PropFormula::not(a),
        }
    }

    pub fn and_folded(a: PropFormula, b: PropFormula) -> PropFormula {
        match (a.as_const(), b.as_const()) {
            (Some(false), _) | (_, Some(false)) => PropFormula::bot(),
            (Some(true), _) => b,
            (_, Some(true)) => a,
            _ => PropFormula::and(a, b),
        }
    }

    pub fn or_folded(a: PropFormula, b: PropFormula) -> PropFormula {
        match (a.as_const(), b.as_const()) {
            (Some(true), _) | (_, Some(true)) => PropFormula::top(),
            (Some(false), _) => b,
            (_, Some(false)) => a,
            _ => PropFormula::or(a, b),
        }
    }

    pub fn imp_folded(a: PropFormula, b: PropFormula) -> PropFormula {
        match (a.as_const(), b.as_const()) {
            (Some(true), _) => b,
            (Some(false), _) => PropFormula::top(),
            (_, Some(true)) => PropFormula::top(),
            (_, Some(false)) => PropFormula::not(a),
            _ => PropFormula::imp(a, b),
        }
    }
}

/// Bottom-up constant folding.
pub fn fold(f: &PropFormula) -> PropFormula {
    fn go(f: &PropFormula, memo: &mut HashMap<u64, PropFormula>) -> PropFormula {
        if let Some(r) = memo.get(&f.id()) {
            return r.clone();
        }
        let r = match f.kind() {
            Kind::Const(_) | Kind::Atom(_) => f.clone(),
            Kind::Not(x) => PropFormula::not_folded(go(x, memo)),
            Kind::And(x, y) => PropFormula::and_folded(go(x, memo), go(y, memo)),
            Kind::Or(x, y) => PropFormula::or_folded(go(x, memo), go(y, memo)),
            Kind::Imp(x, y) => PropFormula::imp_folded(go(x, memo), go(y, memo)),
        };
        memo.insert(f.id(), r.clone());
        r
    }
    go(f, &mut HashMap::new())
}

/// Value of a closed formula.
pub fn eval_closed(f: &PropFormula) -> Option<bool> {
    if !f.is_closed() {
        return None;
    }
    eval_prop(f, &PropAssignment::new()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::parse_prop;

    fn p(s: &str) -> PropFormula {
        parse_prop(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        let empty = PropAssignment::new();
        assert!(eval_prop(&PropFormula::top(), &empty).unwrap());
        let a: PropAssignment = [(PropAtom::q(1), false)].into();
        assert!(eval_prop(&p("(> q1 q1)"), &a).unwrap());
        let b: PropAssignment = [(PropAtom::bit("X", 0), true)].into();
        assert!(!eval_prop(&p("(& pX.0 (~ pX.0))"), &b).unwrap());
        assert_eq!(
            eval_prop(&p("q7"), &empty),
            Err(MissingAtom(PropAtom::q(7)))
        );
    }

    #[test]
    fn substitution_examples() {
        let s: Substitution = [(PropAtom::q(1), PropFormula::top())].into();
        assert_eq!(substitute(&p("q1"), &s), PropFormula::top());
        let s: Substitution = [(PropAtom::q(1), p("q2"))].into();
        assert_eq!(substitute(&p("(> q1 q2)"), &s), p("(> q2 q2)"));
        let s: Substitution = [
            (PropAtom::bit("Z", 0), p("(| q1 q2)")),
            (PropAtom::bit("Z", 1), p("pZ.0")),
        ]
        .into();
        assert_eq!(substitute(&p("(& pZ.0 pZ.1)"), &s), p("(& (| q1 q2) pZ.0)"));
    }

    #[test]
    fn subformula_order() {
        let f = p("(& q1 q2)");
        assert_eq!(subformulas(&f), vec![f.clone(), p("q1"), p("q2")]);
        let f = p("(~ (~ q1))");
        assert_eq!(subformulas(&f), vec![f.clone(), p("(~ q1)"), p("q1")]);
        let f = p("(| q1 q1)");
        assert_eq!(subformulas(&f), vec![f.clone(), p("q1")]);
        let f = p("(& (| q1 q2) (~ q2))");
        assert_eq!(
            subformulas(&f),
            vec![f.clone(), p("(| q1 q2)"), p("q1"), p("(~ q2)"), p("q2")]
        );
    }

    #[test]
    fn subformulas_put_parents_first() {
        let f = p("(& q1 (| q1 (& q2 (~ q1))))");
        let subs = subformulas(&f);
        let pos = |g: &PropFormula| subs.iter().position(|h| h == g).unwrap();
        for (i, g) in subs.iter().enumerate() {
            for k in g.children() {
                assert!(pos(k) > i);
            }
        }
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn folding() {
        assert_eq!(fold(&p("(& q1 T)")), p("q1"));
        assert_eq!(fold(&p("(| F q1)")), p("q1"));
        assert_eq!(fold(&p("(> q1 F)")), p("(~ q1)"));
        assert_eq!(fold(&p("(> (& T (~ F)) T)")), PropFormula::top());
        assert_eq!(fold(&p("(& q1 q2)")), p("(& q1 q2)"));
    }

    #[test]
    fn identity_substitution_is_node_identical() {
        let f = p("(> (& q1 (~ pX.0)) (| q2 T))");
        assert_eq!(substitute(&f, &Substitution::new()).id(), f.id());
    }
}
